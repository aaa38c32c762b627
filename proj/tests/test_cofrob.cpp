#include <set>

#include "doctest.h"
#include "weylprop/cofrob.hpp"
#include "weylprop/errors.hpp"

using namespace weylprop;

namespace {

// All ways to put legs 1..size into labelled boxes, deduplicated by the block
// structure: a slower route to set partitions than restricted growth strings.
std::set<std::vector<std::vector<int>>> partitions_by_boxes(int size) {
  std::set<std::vector<std::vector<int>>> out;
  std::vector<int> box(static_cast<std::size_t>(size), 0);
  while (true) {
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(size));
    for (int l = 0; l < size; ++l) blocks[static_cast<std::size_t>(box[static_cast<std::size_t>(l)])].push_back(l + 1);
    std::erase_if(blocks, [](const auto& x) { return x.empty(); });
    std::sort(blocks.begin(), blocks.end());
    out.insert(blocks);
    int pos = 0;
    while (pos < size && ++box[static_cast<std::size_t>(pos)] == size) box[static_cast<std::size_t>(pos++)] = 0;
    if (pos == size) break;
  }
  return out;
}

// Every assignment of edge counts <= e_max and weights <= chi, kept when valid.
std::set<std::pair<TwoLevelGraph, Scalar>> brute_decompose(int m, int n, int chi) {
  std::set<std::pair<TwoLevelGraph, Scalar>> out;
  const int e_max = chi + 2;
  for (const auto& lp : partitions_by_boxes(m))
    for (const auto& up : partitions_by_boxes(n)) {
      const std::size_t a = lp.size();
      const std::size_t b = up.size();
      std::vector<int> vals(a * b + a + b, 0);
      while (true) {
        TwoLevelGraph g;
        g.m = m;
        g.n = n;
        for (std::size_t u = 0; u < a; ++u) g.lower.push_back({lp[u], vals[a * b + u]});
        for (std::size_t v = 0; v < b; ++v) g.upper.push_back({up[v], vals[a * b + a + v]});
        g.edges.assign(vals.begin(), vals.begin() + static_cast<long>(a * b));
        if (is_valid_two_level(g, m, n, chi)) {
          Integer den = 1;
          for (int e : g.edges)
            for (int x = 2; x <= e; ++x) den *= x;
          out.insert({g, ratio(1, den)});
        }
        std::size_t pos = 0;
        while (pos < vals.size()) {
          const int cap = pos < a * b ? e_max : chi;
          if (++vals[pos] <= cap) break;
          vals[pos++] = 0;
        }
        if (pos == vals.size()) break;
      }
    }
  return out;
}

}  // namespace

TEST_CASE("piece validity and genus") {
  CHECK(is_valid_piece(1, 1, 0));
  CHECK(is_valid_piece(2, 1, 1));
  CHECK_FALSE(is_valid_piece(2, 1, 0));
  CHECK_FALSE(is_valid_piece(1, 1, -2));
  CHECK_FALSE(is_valid_piece(0, 1, 1));
  CHECK(genus_of(1, 1, 0) == 0);
  CHECK(genus_of(2, 1, 1) == 0);
  CHECK(genus_of(1, 1, 2) == 1);
  CHECK_THROWS_AS(genus_of(2, 1, 0), InputError);
  CHECK_THROWS_AS(decompose(2, 1, 0), InputError);
}

TEST_CASE("decompose of the counit piece") {
  const auto& d = decompose(1, 1, 0);
  REQUIRE(d.size() == 1);
  CHECK(d[0].coeff == 1);
  CHECK(d[0].graph.edges == std::vector<int>{1});
  CHECK(d[0].graph.lower[0].chi == 0);
  CHECK(d[0].graph.upper[0].chi == 0);
}

TEST_CASE("decompose (1,1,2) has three terms") {
  const auto& d = decompose(1, 1, 2);
  REQUIRE(d.size() == 3);
  int halves = 0;
  for (const auto& t : d) {
    if (t.graph.edges[0] == 2) {
      ++halves;
      CHECK(t.coeff == ratio(1, 2));
      CHECK(t.graph.lower[0].chi == 1);
      CHECK(t.graph.upper[0].chi == 1);
    } else {
      CHECK(t.coeff == 1);
      CHECK(t.graph.lower[0].chi + t.graph.upper[0].chi == 2);
    }
  }
  CHECK(halves == 1);
}

TEST_CASE("decompose agrees with brute force on small pieces") {
  for (int m = 1; m <= 2; ++m)
    for (int n = 1; n <= 2; ++n)
      for (int chi = m + n - 2; chi <= m + n + 1; chi += 2) {
        CAPTURE(m);
        CAPTURE(n);
        CAPTURE(chi);
        std::set<std::pair<TwoLevelGraph, Scalar>> got;
        for (const auto& t : decompose(m, n, chi)) got.insert({t.graph, t.coeff});
        CHECK(got.size() == decompose(m, n, chi).size());
        CHECK(got == brute_decompose(m, n, chi));
      }
}

TEST_CASE("every emitted graph is valid with a positive coefficient") {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (int g = 0; g <= 2; ++g) {
        const int chi = 2 * g - 2 + m + n;
        if (!is_valid_piece(m, n, chi)) continue;
        for (const auto& t : decompose(m, n, chi)) {
          CHECK(is_valid_two_level(t.graph, m, n, chi));
          CHECK(t.coeff > 0);
          CHECK(t.coeff == eta(t.graph));
        }
      }
}

TEST_CASE("coassociativity by full expansion on small pieces") {
  for (auto [m, n, chi] : {std::tuple{1, 1, 0}, {1, 1, 2}, {2, 2, 2}, {2, 1, 3}, {2, 2, 4}}) {
    CAPTURE(m);
    CAPTURE(n);
    CAPTURE(chi);
    const auto left = expand_iterated(m, n, chi, true);
    const auto right = expand_iterated(m, n, chi, false);
    CHECK(left == right);
    // Vertex weights are even, so reordering vertices never contributes a sign.
    for (const auto& [g, c] : left) {
      CHECK(c > 0);
      CHECK(c == three_level_coefficient(g));
    }
    CHECK(check_coassoc(m, n, chi));
  }
}

TEST_CASE("streamed and materialized coassociativity agree") {
  const auto r = coassoc_report(3, 2, 5, 10'000'000);
  CHECK(r.equal);
  CHECK(r.graphs_compared == expand_iterated(3, 2, 5, true).size());
  CHECK_THROWS_AS(coassoc_report(3, 2, 5, 10), BudgetExhausted);
}

TEST_CASE("counit laws") {
  CHECK(counit_check(1, 1, 0));
  CHECK(counit_check(2, 1, 1));
  CHECK(counit_check(3, 2, 5));
  CHECK(counit_check(2, 3, 7));
}
