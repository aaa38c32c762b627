#include <random>

#include "doctest.h"
#include "weylprop/linalg.hpp"

using namespace weylprop;

namespace {

// Row reduction over Q with the first nonzero pivot, no fraction-free tricks.
std::size_t naive_rank(std::vector<std::vector<Scalar>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const Scalar f = a[i][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

struct Sample {
  SparseMatrix sparse;
  RationalMatrix dense;
  std::vector<std::vector<Scalar>> rows;
};

// Random sparse integer matrix; with low_rank set, columns are combinations of a few others.
Sample sample(std::mt19937_64& rng, std::size_t r, std::size_t c, double density, bool low_rank) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> v(-3, 3);
  std::vector<std::vector<std::int64_t>> cols(c, std::vector<std::int64_t>(r, 0));
  const std::size_t free = low_rank ? c / 3 + 1 : c;
  for (std::size_t j = 0; j < c; ++j) {
    if (j < free) {
      for (std::size_t i = 0; i < r; ++i)
        if (u(rng) < density) cols[j][i] = v(rng);
    } else {
      for (int k = 0; k < 2; ++k) {
        const auto src = std::uniform_int_distribution<std::size_t>(0, free - 1)(rng);
        const int f = v(rng);
        for (std::size_t i = 0; i < r; ++i) cols[j][i] += f * cols[src][i];
      }
    }
  }
  Sample s;
  s.sparse.rows = r;
  s.sparse.cols = c;
  s.dense = RationalMatrix(r, c);
  s.rows.assign(r, std::vector<Scalar>(c));
  for (std::size_t j = 0; j < c; ++j) {
    SparseColumn col;
    for (std::size_t i = 0; i < r; ++i) {
      if (cols[j][i] == 0) continue;
      col.push_back({static_cast<std::uint32_t>(i), cols[j][i]});
      s.dense.at(i, j) = static_cast<long>(cols[j][i]);
      s.rows[i][j] = static_cast<long>(cols[j][i]);
    }
    s.sparse.columns.push_back(std::move(col));
  }
  return s;
}

}  // namespace

TEST_CASE("trivial ranks") {
  SparseMatrix zero{4, 5, std::vector<SparseColumn>(5)};
  CHECK(rank(zero) == 0);
  CHECK(rank_mod(zero, 2147483629u) == 0);
  SparseMatrix id{6, 6, {}};
  for (std::uint32_t i = 0; i < 6; ++i) id.columns.push_back({{i, 1}});
  CHECK(rank(id) == 6);
  CHECK(rank_mod(id, 2147483629u) == 6);
  CHECK(peel(id).rank == 6);
}

TEST_CASE("ranks agree with naive rational elimination") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 25;
    const std::size_t c = 1 + rng() % 25;
    const double density = 0.05 + 0.1 * static_cast<double>(trial % 5);
    const auto s = sample(rng, r, c, density, trial % 2 == 1);
    const auto expect = naive_rank(s.rows);
    CHECK(rank(s.sparse) == expect);
    CHECK(rank(s.dense) == expect);
    CHECK(rank_mod(s.sparse, 2147483629u) == expect);
  }
}

TEST_CASE("modular rank on larger sparse matrices") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    const auto s = sample(rng, 120, 150, 0.03, trial % 2 == 0);
    CHECK(rank_mod(s.sparse, 2147483629u) == naive_rank(s.rows));
  }
}

TEST_CASE("a small prime can only lose rank") {
  SparseMatrix m{2, 2, {{{0, 2}, {1, 1}}, {{0, 1}, {1, 1}}}};  // det 1
  CHECK(rank(m) == 2);
  SparseMatrix n{2, 2, {{{0, 3}, {1, 1}}, {{0, 1}, {1, 2}}}};  // det 5
  CHECK(rank(n) == 2);
  CHECK(rank_mod(n, 5) == 1);
}

TEST_CASE("column space membership") {
  std::mt19937_64 rng(12);
  const auto s = sample(rng, 10, 6, 0.4, true);
  // A combination of columns lies in the span.
  std::vector<Scalar> combo(10);
  for (std::size_t j = 0; j < 6; ++j)
    for (auto [i, v] : s.sparse.columns[j]) combo[i] += Scalar(static_cast<long>(v)) * ratio(static_cast<long>(j) + 1, 3);
  std::vector<std::pair<std::uint32_t, Scalar>> b;
  for (std::uint32_t i = 0; i < 10; ++i)
    if (combo[i] != 0) b.push_back({i, combo[i]});
  CHECK(in_column_space(s.sparse, b));
  CHECK(in_column_space(s.sparse, {}));
  // Appending a vector raises the rank exactly when it is outside the span.
  std::vector<std::pair<std::uint32_t, Scalar>> e{{0, 1}};
  auto rows = s.rows;
  for (std::size_t i = 0; i < 10; ++i) rows[i].push_back(i == 0 ? 1 : 0);
  CHECK(in_column_space(s.sparse, e) == (naive_rank(rows) == naive_rank(s.rows)));
}

TEST_CASE("product is zero") {
  SparseMatrix d1{2, 1, {{{0, 1}, {1, -1}}}};
  SparseMatrix d2{1, 2, {{{0, 1}}, {{0, 1}}}};
  CHECK(product_is_zero(d2, d1));
  SparseMatrix d3{1, 2, {{{0, 1}}, {{0, 2}}}};
  CHECK_FALSE(product_is_zero(d3, d1));
}
