#include <numeric>

#include "doctest.h"
#include "weylprop/graded.hpp"

using namespace weylprop;

namespace {

GradedBasis mixed() { return GradedBasis({{"x", 0}, {"y", 1}, {"z", 2}, {"w", -1}}); }

// Sign by counting inversions among odd entries, written out longhand.
int brute_koszul(const GradedBasis& b, const Permutation& sigma, const TensorWord& w) {
  int inv = 0;
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t c = a + 1; c < w.size(); ++c)
      if (b.odd(w.entries[a]) && b.odd(w.entries[c]) && sigma[a] > sigma[c]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

TensorWord brute_act(const Permutation& sigma, const TensorWord& w) {
  TensorWord out{std::vector<int>(w.size())};
  for (std::size_t a = 0; a < w.size(); ++a) out.entries[static_cast<std::size_t>(sigma[a])] = w.entries[a];
  return out;
}

Integer fact(int k) { return k <= 1 ? Integer(1) : Integer(k) * fact(k - 1); }

}  // namespace

TEST_CASE("koszul sign matches inversion count on odd entries") {
  const auto b = mixed();
  for (int k = 1; k <= 4; ++k)
    for (const auto& w : tensor_words(b, k))
      for (const auto& sigma : all_permutations(k)) {
        CHECK(koszul_sign(b, sigma, w) == brute_koszul(b, sigma, w));
        const auto s = act(b, sigma, w);
        CHECK(s.word == brute_act(sigma, w));
        CHECK(s.sign == brute_koszul(b, sigma, w));
      }
}

TEST_CASE("reversal sign is the koszul sign of the reversal") {
  const auto b = mixed();
  for (int k = 0; k <= 5; ++k) {
    Permutation rev(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) rev[static_cast<std::size_t>(a)] = k - 1 - a;
    for (const auto& w : tensor_words(b, k)) CHECK(reversal_sign(b, w.entries) == brute_koszul(b, rev, w));
  }
}

TEST_CASE("permutations compose and invert") {
  for (const auto& a : all_permutations(4)) {
    CHECK(compose(a, inverse(a)) == identity_permutation(4));
    for (const auto& c : all_permutations(4))
      CHECK(permutation_sign(compose(a, c)) == permutation_sign(a) * permutation_sign(c));
  }
  CHECK(all_permutations(5).size() == 120);
}

TEST_CASE("shuffle counts are binomial") {
  for (int k = 0; k <= 6; ++k)
    for (int l = 0; l <= k; ++l) {
      CHECK(Integer(static_cast<long>(shuffles(k, l).size())) == binomial(k, l));
      CHECK(Integer(static_cast<long>(unshuffles(k, l).size())) == binomial(k, l));
    }
}

TEST_CASE("iota is the literal average over all permutations") {
  const auto b = mixed();
  for (int k = 0; k <= 4; ++k)
    for (const auto& m : monomials(b, k)) {
      TensorVector literal;
      for (const auto& sigma : all_permutations(k)) {
        TensorWord w{m.entries};
        literal.add(brute_act(sigma, w), Scalar(brute_koszul(b, sigma, w)));
      }
      literal *= ratio(1, fact(k));
      CHECK(iota(b, m) == literal);
      // s o iota = id
      CHECK(s_project(b, iota(b, m)) == SymVector(m, 1));
    }
}

TEST_CASE("odd squares vanish in S V") {
  const auto b = mixed();
  CHECK_FALSE(s_project(b, TensorWord{{1, 1}}).has_value());
  CHECK(s_project(b, TensorWord{{0, 0}}).has_value());
  for (const auto& m : monomials(b, 3)) {
    for (std::size_t a = 1; a < m.entries.size(); ++a)
      if (b.odd(m.entries[a])) CHECK(m.entries[a] != m.entries[a - 1]);
  }
}

TEST_CASE("s_project sorts with the koszul sign") {
  const auto b = mixed();
  const auto p = s_project(b, TensorWord{{3, 1}});  // w y, both odd
  REQUIRE(p.has_value());
  CHECK(p->monomial.entries == std::vector<int>{1, 3});
  CHECK(p->sign == -1);
  const auto q = s_project(b, TensorWord{{2, 1}});
  REQUIRE(q.has_value());
  CHECK(q->sign == 1);
}

TEST_CASE("formal vectors drop cancelled terms") {
  SymVector v(SymMonomial{{0}}, 2);
  v.add(SymMonomial{{0}}, -2);
  CHECK(v.empty());
}
