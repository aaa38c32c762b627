#include <bit>

#include "doctest.h"
#include "weylprop/cobar.hpp"
#include "weylprop/errors.hpp"

using namespace weylprop;

namespace {

PropGraph two_vertex(GenLabel lower, std::uint32_t lower_in, std::uint32_t lower_out, GenLabel upper,
                     std::uint32_t upper_in, std::uint32_t upper_out, int k, int r, int t) {
  PropGraph g;
  g.r = r;
  g.t = t;
  g.labels = {lower, upper};
  g.in_legs = {lower_in, upper_in};
  g.out_legs = {lower_out, upper_out};
  g.edges = {0, k, 0, 0};
  return g;
}

bool maps_onto(const PropGraph& a, const PropGraph& b, const Permutation& pi) {
  const std::size_t p = a.size();
  for (std::size_t v = 0; v < p; ++v) {
    const auto w = static_cast<std::size_t>(pi[v]);
    if (a.labels[v] != b.labels[w] || a.in_legs[v] != b.in_legs[w] || a.out_legs[v] != b.out_legs[w]) return false;
    for (std::size_t x = 0; x < p; ++x)
      if (a.edge(v, x) != b.edge(w, static_cast<std::size_t>(pi[x]))) return false;
  }
  return true;
}

struct BruteCount {
  std::size_t nonzero = 0;
  std::size_t null = 0;
};

// Every flag-matched graph with p vertices, grouped by trying all vertex permutations.
BruteCount brute_classes(int r, int t, int g, int p) {
  const auto P = static_cast<std::size_t>(p);
  std::vector<PropGraph> reps;
  std::vector<char> odd;
  const auto perms = all_permutations(p);
  const int e_cap = g + p - 1;
  std::vector<int> in_box(static_cast<std::size_t>(r), 0), out_box(static_cast<std::size_t>(t), 0);
  auto next = [](std::vector<int>& v, int base) {
    for (auto& x : v) {
      if (++x < base) return true;
      x = 0;
    }
    return false;
  };
  std::vector<std::size_t> off;
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = 0; b < P; ++b)
      if (a != b) off.push_back(a * P + b);
  do {
    do {
      std::vector<int> e(off.size(), 0);
      do {
        int total = 0;
        for (int x : e) total += x;
        const int vertex_genus = g - (total - p + 1);
        if (vertex_genus < 0) continue;
        PropGraph base;
        base.r = r;
        base.t = t;
        base.labels.assign(P, {});
        base.in_legs.assign(P, 0);
        base.out_legs.assign(P, 0);
        base.edges.assign(P * P, 0);
        for (std::size_t i = 0; i < off.size(); ++i) base.edges[off[i]] = e[i];
        for (int l = 0; l < r; ++l) base.in_legs[static_cast<std::size_t>(in_box[static_cast<std::size_t>(l)])] |= 1u << l;
        for (int l = 0; l < t; ++l) base.out_legs[static_cast<std::size_t>(out_box[static_cast<std::size_t>(l)])] |= 1u << l;
        for (std::size_t v = 0; v < P; ++v) {
          int in = std::popcount(base.in_legs[v]);
          int out = std::popcount(base.out_legs[v]);
          for (std::size_t w = 0; w < P; ++w) {
            in += base.edge(w, v);
            out += base.edge(v, w);
          }
          base.labels[v] = {in, out, 0};
        }
        std::vector<int> gv(P, 0);
        do {
          int s = 0;
          for (int x : gv) s += x;
          if (s != vertex_genus) continue;
          PropGraph c = base;
          for (std::size_t v = 0; v < P; ++v) c.labels[v].g = gv[v];
          try {
            validate(c);
          } catch (const InputError&) {
            continue;
          }
          bool found = false;
          for (const auto& rep : reps) {
            for (const auto& pi : perms)
              if (maps_onto(c, rep, pi)) {
                found = true;
                break;
              }
            if (found) break;
          }
          if (found) continue;
          bool has_odd = false;
          for (const auto& pi : perms)
            if (permutation_sign(pi) < 0 && maps_onto(c, c, pi)) has_odd = true;
          reps.push_back(c);
          odd.push_back(has_odd ? 1 : 0);
        } while (next(gv, vertex_genus + 1));
      } while (next(e, e_cap + 1));
    } while (next(out_box, p));
  } while (next(in_box, p));
  BruteCount c;
  for (char o : odd) (o ? c.null : c.nonzero)++;
  return c;
}

BasisLevel level_at(int r, int t, int g, int p) {
  BasisLevel level = first_level(r, t, g);
  for (int q = 2; q <= p; ++q) level = next_level(level, r, t, g, Execution::serial);
  return level;
}

}  // namespace

TEST_CASE("label validity") {
  CHECK(is_valid_label({2, 1, 0}));
  CHECK_FALSE(is_valid_label({1, 1, 0}));
  CHECK(is_valid_label({1, 1, 1}));
  CHECK_FALSE(is_valid_label({0, 1, 1}));
}

TEST_CASE("canonicalization signs") {
  const auto single = single_vertex({2, 1, 0});
  auto c = canonicalize(single);
  REQUIRE(c.has_value());
  CHECK(c->first == single);
  CHECK(c->second == 1);

  // mu o_1 mu with the two vertex orders.
  const auto a = two_vertex({2, 1, 0}, 0b011, 0, {2, 1, 0}, 0b100, 0b1, 1, 3, 1);
  PropGraph b = a;
  std::swap(b.labels[0], b.labels[1]);
  std::swap(b.in_legs[0], b.in_legs[1]);
  std::swap(b.out_legs[0], b.out_legs[1]);
  b.edges = {0, 0, 1, 0};
  const auto ca = canonicalize(a);
  const auto cb = canonicalize(b);
  REQUIRE(ca.has_value());
  REQUIRE(cb.has_value());
  CHECK(ca->first == cb->first);
  CHECK(ca->second == -cb->second);

  // idempotence
  const auto again = canonicalize(ca->first);
  REQUIRE(again.has_value());
  CHECK(again->first == ca->first);
  CHECK(again->second == 1);
}

TEST_CASE("odd automorphisms kill a class") {
  // Delta below, mu on top, two identical (1,1,1) vertices in between.
  PropGraph g;
  g.r = 1;
  g.t = 1;
  g.labels = {{1, 2, 0}, {1, 1, 1}, {1, 1, 1}, {2, 1, 0}};
  g.in_legs = {1, 0, 0, 0};
  g.out_legs = {0, 0, 0, 1};
  g.edges.assign(16, 0);
  g.edges[0 * 4 + 1] = 1;
  g.edges[0 * 4 + 2] = 1;
  g.edges[1 * 4 + 3] = 1;
  g.edges[2 * 4 + 3] = 1;
  CHECK(canonical_form(g).zero);
  CHECK_FALSE(canonicalize(g).has_value());
}

TEST_CASE("invalid graphs are rejected") {
  PropGraph g = single_vertex({2, 1, 0});
  g.labels[0] = {3, 1, 0};
  CHECK_THROWS_AS(validate(g), InputError);
  CHECK_THROWS_AS(canonicalize(g), InputError);
  auto cyc = two_vertex({2, 2, 0}, 1, 1, {2, 2, 0}, 2, 2, 1, 2, 2);
  cyc.edges[2] = 1;  // back edge
  CHECK_THROWS_AS(validate(cyc), InputError);
}

TEST_CASE("small bases") {
  const auto b1 = enumerate_basis(2, 1, 0, 1);
  REQUIRE(b1.size() == 1);
  CHECK(b1[0] == single_vertex({2, 1, 0}));
  CHECK(enumerate_basis(2, 1, 0, 2).empty());
  CHECK(enumerate_basis(3, 1, 0, 2).size() == 3);
}

TEST_CASE("enumeration matches brute-force isomorphism classes") {
  for (auto [r, t, g, p] : {std::array{2, 1, 0, 2}, {3, 1, 0, 2}, {1, 3, 0, 2}, {2, 2, 0, 2}, {1, 1, 1, 2},
                            {2, 1, 1, 2}, {2, 2, 1, 2}, {3, 1, 0, 3}, {2, 2, 0, 3}, {1, 1, 1, 3}, {1, 1, 2, 2},
                            {2, 1, 1, 3}, {1, 2, 1, 3}, {1, 1, 2, 3}}) {
    CAPTURE(r);
    CAPTURE(t);
    CAPTURE(g);
    CAPTURE(p);
    const auto level = level_at(r, t, g, p);
    const auto brute = brute_classes(r, t, g, p);
    CHECK(level.graphs.size() == brute.nonzero);
    CHECK(level.null_graphs.size() == brute.null);
    for (const auto& x : level.graphs) {
      CHECK(x.genus() == g);
      CHECK(x.degree() == -p);
    }
  }
}

TEST_CASE("serial and parallel levels agree") {
  BasisLevel a = first_level(2, 2, 1);
  BasisLevel b = a;
  for (int q = 2; q <= 4; ++q) {
    a = next_level(a, 2, 2, 1, Execution::serial);
    b = next_level(b, 2, 2, 1, Execution::parallel);
    CHECK(a.graphs == b.graphs);
    CHECK(a.null_graphs == b.null_graphs);
  }
}

TEST_CASE("graph codes round trip") {
  for (const auto& x : enumerate_basis(2, 2, 1, 3)) CHECK(decode(encode(x), 2, 2) == x);
}

TEST_CASE("differential of generators") {
  CHECK(d_generator({2, 1, 0}).empty());
  CHECK(d_generator({1, 2, 0}).empty());

  const auto d111 = d_generator({1, 1, 1});
  REQUIRE(d111.size() == 1);
  const auto expected = canonicalize(two_vertex({1, 2, 0}, 1, 0, {2, 1, 0}, 0, 1, 2, 1, 1));
  REQUIRE(expected.has_value());
  CHECK(d111.begin()->first == expected->first);
  CHECK(abs(d111.begin()->second) == ratio(1, 2));

  const auto d310 = d_generator({3, 1, 0});
  CHECK(d310.size() == 3);
  for (const auto& [x, c] : d310) {
    CHECK(x.size() == 2);
    CHECK(abs(c) == 1);
  }
  CHECK(differential(single_vertex({2, 2, 1})) == d_generator({2, 2, 1}));
}

TEST_CASE("d squared vanishes and d is graded") {
  for (int r = 1; r <= 3; ++r)
    for (int t = 1; t + r <= 4; ++t)
      for (int g = 0; g <= 1; ++g) {
        if (!is_valid_label({r, t, g})) continue;
        const auto d1 = d_generator({r, t, g});
        CHECK(differential(d1).empty());
        for (const auto& [x, c] : d1) {
          CHECK(x.genus() == g);
          CHECK(x.r == r);
          CHECK(x.t == t);
          CHECK(x.size() == 2);
        }
        for (int p = 2; p <= 3; ++p)
          for (const auto& x : enumerate_basis(r, t, g, p)) {
            const auto dx = differential(x);
            for (const auto& [y, c] : dx) CHECK(y.size() == x.size() + 1);
            CHECK(differential(dx).empty());
          }
      }
}

TEST_CASE("split columns are scale times d") {
  const int r = 2, t = 2, g = 1;
  const auto l1 = first_level(r, t, g);
  std::vector<GraphCode> codes, nulls;
  for (const auto& x : l1.graphs) codes.push_back(encode(x));
  for (const auto& x : l1.null_graphs) nulls.push_back(encode(x));
  auto step = split_level(codes, nulls, r, t, g, true, Execution::serial);
  REQUIRE(step.columns.size() == codes.size());
  const auto scale = differential_scale(g);
  for (std::size_t j = 0; j < codes.size(); ++j) {
    GraphVector expect = differential(l1.graphs[j]);
    GraphVector got;
    for (auto [row, v] : step.columns[j]) got.add(decode(step.graphs[row], r, t), ratio(v, scale));
    CHECK(got == expect);
  }
}
