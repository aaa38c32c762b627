#include "doctest.h"
#include "weylprop/errors.hpp"
#include "weylprop/pq.hpp"
#include "weylprop/suites.hpp"
#include "weylprop/weyl.hpp"

using namespace weylprop;

namespace {

GradedBasis one_even() { return GradedBasis({{"q", 0}}); }

SymOp identity1(const GradedBasis& b) {
  SymOp f(1, 1, 0);
  for (const auto& m : monomials(b, 1)) f.add(b, m, m, 1);
  return f;
}

WeylElement as_element(int g, const SymOp& f) {
  WeylElement h;
  h.degree = f.degree;
  h.add(g, f);
  return h;
}

SymOp at_hbar(const WeylElement& h, int g, int in, int out) {
  const SymOp* f = h.find({g, in, out});
  return f ? *f : SymOp(in, out, h.degree);
}

TensorOp identity_t1(const GradedBasis& b) {
  TensorOp x(1, 1, 0);
  for (const auto& w : tensor_words(b, 1)) x.add_row(w, TensorVector(w, 1));
  return x;
}

}  // namespace

TEST_CASE("pq commutation") {
  const auto b = one_even();
  const PQExpression p(PQTerm{0, {}, SymMonomial{{0}}}, 1);
  const PQExpression q(PQTerm{0, SymMonomial{{0}}, {}}, 1);
  PQExpression expected(PQTerm{0, SymMonomial{{0}}, SymMonomial{{0}}}, 1);
  expected.add(PQTerm{1, {}, {}}, 1);
  CHECK(pq_product(b, p, q) == expected);

  const GradedBasis two({{"a", 0}, {"b", 1}});
  const PQExpression pa(PQTerm{0, {}, SymMonomial{{0}}}, 1);
  const PQExpression qb(PQTerm{0, SymMonomial{{1}}, {}}, 1);
  const auto r = pq_product(two, pa, qb);
  REQUIRE(r.size() == 1);
  CHECK(r.begin()->first.hbar == 0);

  const PQExpression pb(PQTerm{0, {}, SymMonomial{{1}}}, 1);
  CHECK(pq_product(two, pb, pb).empty());
}

TEST_CASE("gluing vanishes out of range") {
  const auto b = GradedBasis({{"x", 0}, {"y", 1}});
  Rng rng(7);
  const auto f = random_symop(rng, b, 1, 2, 1, 0.8);
  const auto g = random_symop(rng, b, 2, 1, 0, 0.8);
  CHECK(sym_circ_k(b, g, f, 3).is_zero());
  CHECK(tensor_circ_k(b, tensor_from_sym(b, g), tensor_from_sym(b, f), 3).is_zero());
  CHECK(identity1(b) == identity1(b));
  CHECK(tensor_circ_k(b, identity_t1(b), identity_t1(b), 1) == identity_t1(b));
}

TEST_CASE("tensor gluing o_0 is associative") {
  const auto b = GradedBasis({{"x", 0}, {"y", 1}});
  Rng rng(11);
  const auto f = tensor_from_sym(b, random_symop(rng, b, 1, 1, 1, 0.9));
  const auto g = tensor_from_sym(b, random_symop(rng, b, 1, 2, 0, 0.9));
  const auto h = tensor_from_sym(b, random_symop(rng, b, 2, 1, -1, 0.9));
  CHECK(tensor_circ_k(b, tensor_circ_k(b, f, g, 0), h, 0) == tensor_circ_k(b, f, tensor_circ_k(b, g, h, 0), 0));
}

TEST_CASE("identity gluings on one even generator") {
  const auto b = one_even();
  const auto id = identity1(b);
  CHECK(sym_circ_k(b, id, id, 1) == id);
  const auto c0 = sym_circ_k(b, id, id, 0);
  const auto v = c0.apply(SymMonomial{{0, 0}});
  CHECK(v == SymVector(SymMonomial{{0, 0}}, 2));
  CHECK(sym_circ_k(b, id, id, 2).is_zero());
}

TEST_CASE("star of identities is q^2p^2 + hbar qp") {
  const auto b = one_even();
  const auto id = identity1(b);
  const auto s = star(b, id, id, Truncation{2, 3});
  PQExpression expected(PQTerm{0, SymMonomial{{0, 0}}, SymMonomial{{0, 0}}}, 1);
  expected.add(PQTerm{1, SymMonomial{{0}}, SymMonomial{{0}}}, 1);
  CHECK(op_to_pq(b, s) == expected);
  CHECK(format_pq(b, op_to_pq(b, s)) == "q²p² + ħ qp");
  CHECK(op_to_pq(b, id) == PQExpression(PQTerm{0, SymMonomial{{0}}, SymMonomial{{0}}}, 1));
}

TEST_CASE("star matches the pq product and its leading term is o_0") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto b = random_basis(rng, 2, true);
    const int i = 1 + trial % 2;
    const int j = 1 + (trial / 2) % 2;
    const auto df = reachable_degrees(b, i, j);
    const auto dg = reachable_degrees(b, j, i);
    const auto f = random_symop(rng, b, i, j, df[static_cast<std::size_t>(trial) % df.size()], 0.7);
    const auto g = random_symop(rng, b, j, i, dg[static_cast<std::size_t>(trial) % dg.size()], 0.7);
    const Truncation bounds{2, 6};
    const auto s = star(b, g, f, bounds);
    auto lhs = op_to_pq(b, s);
    auto rhs = pq_product(b, op_to_pq(b, g), op_to_pq(b, f));
    PQExpression cut;
    for (const auto& [t, c] : rhs)
      if (t.hbar <= 2) cut.add(t, c);
    CHECK(lhs == cut);
    const auto c0 = sym_circ_k(b, g, f, 0);
    if (!c0.is_zero()) CHECK(at_hbar(s, 0, c0.in, c0.out) == c0);
  }
}

TEST_CASE("o_0 is graded commutative; the hbar part of the commutator is the bracket") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto b = random_basis(rng, 2, true);
    const auto df = reachable_degrees(b, 1, 2);
    const auto dg = reachable_degrees(b, 2, 1);
    const auto f = random_symop(rng, b, 1, 2, df[static_cast<std::size_t>(trial) % df.size()], 0.8);
    const auto g = random_symop(rng, b, 2, 1, dg[static_cast<std::size_t>(trial) % dg.size()], 0.8);
    const int sign = (f.degree * g.degree) % 2 == 0 ? 1 : -1;
    auto fg = sym_circ_k(b, f, g, 0);
    auto gf = sym_circ_k(b, g, f, 0);
    gf *= Scalar(sign);
    CHECK(fg == gf);
    CHECK(fg.degree == f.degree + g.degree);

    const Truncation bounds{2, 6};
    const auto a = star(b, f, g, bounds);
    const auto c = star(b, g, f, bounds);
    auto bracket = sym_circ_k(b, f, g, 1);
    auto other = sym_circ_k(b, g, f, 1);
    // Components of the commutator at hbar^1 with the arities of both gluings.
    for (auto [in, out] : {std::pair{bracket.in, bracket.out}, std::pair{other.in, other.out}}) {
      SymOp lhs = at_hbar(a, 1, in, out);
      SymOp rhs = at_hbar(c, 1, in, out);
      rhs *= Scalar(-sign);
      lhs += rhs;
      SymOp expect(in, out, f.degree + g.degree);
      if (bracket.in == in && bracket.out == out) expect += bracket;
      if (other.in == in && other.out == out) {
        SymOp o = other;
        o *= Scalar(-sign);
        expect += o;
      }
      CHECK(lhs == expect);
    }
  }
}

TEST_CASE("star is associative through hbar^2") {
  Rng rng(17);
  const auto b = GradedBasis({{"x", 0}, {"y", 1}});
  for (int trial = 0; trial < 5; ++trial) {
    WeylElement f = as_element(0, random_symop(rng, b, 1, 1, 1, 0.8));
    WeylElement g = as_element(0, random_symop(rng, b, 1, 2, 0, 0.8));
    WeylElement h = as_element(0, random_symop(rng, b, 2, 1, -1, 0.8));
    const Truncation bounds{2, 6};
    CHECK(star(b, star(b, f, g, bounds), h, bounds) == star(b, f, star(b, g, h, bounds), bounds));
  }
}

TEST_CASE("op_to_pq and pq_to_op are inverse") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto b = random_basis(rng, 3, true);
    const int i = 1 + trial % 3;
    const int j = 1 + (trial / 3) % 3;
    const auto ds = reachable_degrees(b, i, j);
    const auto f = random_symop(rng, b, i, j, ds[static_cast<std::size_t>(trial) % ds.size()], 0.5);
    if (f.is_zero()) continue;
    const auto e = op_to_pq(b, f);
    CHECK(is_normal_ordered(b, e));
    for (const auto& [t, c] : e) CHECK(pq_term_degree(b, t) == f.degree);
    const auto back = pq_to_op(b, e);
    CHECK(back == as_element(0, f));
  }
}

TEST_CASE("square zero verdicts") {
  const GradedBasis b({{"a", 1}, {"c", 0}});
  SymOp d(1, 1, -1);
  d.add(b, SymMonomial{{0}}, SymMonomial{{1}}, 1);
  WeylElement h = as_element(0, d);
  h.reduced = true;
  CHECK(square_zero_report(b, h, Truncation{2, 3}).zero);

  const auto even = one_even();
  WeylElement qp = as_element(0, identity1(even));
  qp.reduced = true;
  const auto v = square_zero_report(even, qp, Truncation{2, 3});
  CHECK_FALSE(v.zero);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->component == ComponentKey{1, 1, 1});

  WeylElement bad;
  bad.degree = -1;
  SymOp z(0, 1, -1);
  z.entries[SymMonomial{}] = SymVector(SymMonomial{{1}}, 1);
  bad.components[{0, 0, 1}] = z;
  CHECK_THROWS_AS(square_zero_report(b, bad, Truncation{2, 3}), UnreducedError);
}

TEST_CASE("compare circ k edge cases") {
  const GradedBasis b({{"x", 0}, {"y", 1}});
  SymOp id(1, 1, 0);
  for (const auto& m : monomials(b, 1)) id.add(b, m, m, 1);
  CHECK(compare_circ_k_check(b, id, id, 0));
  CHECK(compare_circ_k_check(b, id, id, 1));
  const auto sides = compare_circ_k_sides(b, id, id, 2);
  CHECK(sides.symmetric_side.is_zero());
  CHECK(sides.tensor_side.is_zero());
}
