#include "weylprop/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "weylprop/errors.hpp"

namespace weylprop {

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.size();
  return n;
}

std::size_t rank(const RationalMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  // Clear denominators row by row; this does not change the rank.
  std::vector<std::vector<Integer>> a(m.rows, std::vector<Integer>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols; ++j) a[i][j] = m.at(i, j).get_num() * (l / m.at(i, j).get_den());
  }
  // Bareiss: after step k every entry is an exact k x k minor.
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
    std::size_t piv = r;
    while (piv < m.rows && a[piv][col] == 0) ++piv;
    if (piv == m.rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      for (std::size_t j = col + 1; j < m.cols; ++j) {
        a[i][j] = (a[r][col] * a[i][j] - a[i][col] * a[r][j]) / prev;
      }
      a[i][col] = 0;
    }
    prev = a[r][col];
    ++r;
  }
  return r;
}

PeeledMatrix peel(const SparseMatrix& m) {
  const std::size_t nr = m.rows;
  const std::size_t nc = m.cols;
  std::vector<std::uint32_t> col_count(nc);
  std::vector<std::uint32_t> row_count(nr, 0);
  std::vector<std::uint32_t> row_start(nr + 1, 0);
  for (std::size_t c = 0; c < nc; ++c) {
    col_count[c] = static_cast<std::uint32_t>(m.columns[c].size());
    for (const auto& e : m.columns[c]) {
      if (e.first >= nr) throw DimensionError("sparse matrix row index out of range");
      if (e.second == 0) throw InputError("sparse matrix stores an explicit zero");
      ++row_count[e.first];
    }
  }
  for (std::size_t r = 0; r < nr; ++r) row_start[r + 1] = row_start[r] + row_count[r];
  std::vector<std::uint32_t> row_cols(row_start[nr]);
  {
    std::vector<std::uint32_t> fill(row_start.begin(), row_start.end() - 1);
    for (std::size_t c = 0; c < nc; ++c)
      for (const auto& e : m.columns[c]) row_cols[fill[e.first]++] = static_cast<std::uint32_t>(c);
  }
  std::vector<char> col_alive(nc, 1);
  std::vector<char> row_alive(nr, 1);
  PeeledMatrix out;

  auto kill_row = [&](std::uint32_t r, std::vector<std::uint32_t>& cols_queue) {
    row_alive[r] = 0;
    for (auto i = row_start[r]; i < row_start[r + 1]; ++i) {
      const auto c = row_cols[i];
      if (col_alive[c] && --col_count[c] <= 1) cols_queue.push_back(c);
    }
  };
  auto kill_col = [&](std::uint32_t c, std::vector<std::uint32_t>& rows_queue) {
    col_alive[c] = 0;
    for (const auto& e : m.columns[c]) {
      if (row_alive[e.first] && --row_count[e.first] == 1) rows_queue.push_back(e.first);
    }
  };

  std::vector<std::uint32_t> cq;
  std::vector<std::uint32_t> rq;
  for (std::size_t c = 0; c < nc; ++c)
    if (col_count[c] <= 1) cq.push_back(static_cast<std::uint32_t>(c));
  for (std::size_t r = 0; r < nr; ++r)
    if (row_count[r] == 1) rq.push_back(static_cast<std::uint32_t>(r));
  while (!cq.empty() || !rq.empty()) {
    if (!cq.empty()) {
      const auto c = cq.back();
      cq.pop_back();
      if (!col_alive[c] || col_count[c] > 1) continue;
      if (col_count[c] == 0) {
        col_alive[c] = 0;
        continue;
      }
      // A column with one surviving entry: pivot there and clear its row.
      std::uint32_t r = 0;
      for (const auto& e : m.columns[c])
        if (row_alive[e.first]) r = e.first;
      ++out.rank;
      col_alive[c] = 0;
      kill_row(r, cq);
      continue;
    }
    const auto r = rq.back();
    rq.pop_back();
    if (!row_alive[r] || row_count[r] != 1) continue;
    // A row met by one surviving column: that column is independent of the rest.
    std::uint32_t c = 0;
    for (auto i = row_start[r]; i < row_start[r + 1]; ++i)
      if (col_alive[row_cols[i]]) c = row_cols[i];
    ++out.rank;
    row_alive[r] = 0;
    kill_col(c, rq);
  }

  // Compact the survivors.
  std::vector<std::uint32_t> new_row(nr, 0);
  std::size_t rows = 0;
  for (std::size_t r = 0; r < nr; ++r)
    if (row_alive[r]) new_row[r] = static_cast<std::uint32_t>(rows++);
  out.remainder.rows = rows;
  for (std::size_t c = 0; c < nc; ++c) {
    if (!col_alive[c]) continue;
    SparseColumn col;
    for (const auto& e : m.columns[c])
      if (row_alive[e.first]) col.emplace_back(new_row[e.first], e.second);
    out.remainder.columns.push_back(std::move(col));
  }
  out.remainder.cols = out.remainder.columns.size();
  return out;
}

namespace {

// Rows are renamed so that sparse rows get large keys; the largest key of a
// column is its pivot candidate, which keeps fill-in down.
std::vector<std::uint32_t> row_keys(const SparseMatrix& m) {
  std::vector<std::uint32_t> count(m.rows, 0);
  for (const auto& c : m.columns)
    for (const auto& e : c) ++count[e.first];
  std::vector<std::uint32_t> rows(m.rows);
  std::iota(rows.begin(), rows.end(), 0);
  std::stable_sort(rows.begin(), rows.end(), [&](std::uint32_t a, std::uint32_t b) { return count[a] > count[b]; });
  std::vector<std::uint32_t> key(m.rows);
  for (std::size_t i = 0; i < rows.size(); ++i) key[rows[i]] = static_cast<std::uint32_t>(i);
  return key;
}

std::vector<std::size_t> column_order(const SparseMatrix& m) {
  std::vector<std::size_t> order(m.cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.columns[a].size() < m.columns[b].size(); });
  return order;
}

// Left-looking elimination: reduce each column against the pivots found so
// far until its largest key is not yet a pivot. Ops supplies the arithmetic.
template <class Ops>
std::size_t left_looking_rank(const SparseMatrix& m, Ops& ops) {
  using T = typename Ops::Value;
  using Vec = std::vector<std::pair<std::uint32_t, T>>;
  const auto key = row_keys(m);
  std::vector<std::int32_t> pivot_of(m.rows, -1);
  std::vector<Vec> pivots;
  Vec v;
  Vec scratch;
  for (auto c : column_order(m)) {
    v.clear();
    for (const auto& e : m.columns[c]) {
      T x = ops.from(e.second);
      if (!ops.is_zero(x)) v.emplace_back(key[e.first], std::move(x));
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    while (!v.empty()) {
      const auto p = pivot_of[v.back().first];
      if (p < 0) break;
      ops.reduce(v, pivots[static_cast<std::size_t>(p)], scratch);
      std::swap(v, scratch);
    }
    if (!v.empty()) {
      pivot_of[v.back().first] = static_cast<std::int32_t>(pivots.size());
      ops.normalize(v);
      pivots.push_back(v);
    }
  }
  return pivots.size();
}

// Exact arithmetic over Z: v <- a v - b p with a, b the pivot entries, then
// divide out the content.
struct IntegerOps {
  using Value = Integer;
  using Vec = std::vector<std::pair<std::uint32_t, Integer>>;
  Value from(std::int64_t x) const { return Integer(static_cast<long>(x)); }
  bool is_zero(const Value& x) const { return x == 0; }
  void normalize(Vec& v) const {
    Integer g = 0;
    for (const auto& e : v) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
      if (g == 1) return;
    }
    for (auto& e : v) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  }
  void reduce(const Vec& v, const Vec& p, Vec& out) const {
    Integer a = p.back().second;
    Integer b = v.back().second;
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= g;
    b /= g;
    out.clear();
    std::size_t i = 0;
    std::size_t j = 0;
    Integer x;
    while (i < v.size() || j < p.size()) {
      if (j == p.size() || (i < v.size() && v[i].first < p[j].first)) {
        out.emplace_back(v[i].first, a * v[i].second);
        ++i;
      } else if (i == v.size() || p[j].first < v[i].first) {
        out.emplace_back(p[j].first, -b * p[j].second);
        ++j;
      } else {
        x = a * v[i].second - b * p[j].second;
        if (x != 0) out.emplace_back(v[i].first, x);
        ++i;
        ++j;
      }
    }
    normalize(out);
  }
};

constexpr std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = mul_mod(result, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return result;
}

using ModRow = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

// Structural pivots in the style of Faugere-Lachartre: every row whose
// leftmost column is not yet taken becomes a pivot with no arithmetic at all,
// and the remaining rows are reduced against them to form the Schur
// complement, which is handled the same way.
std::size_t structural_rank_mod(std::vector<ModRow> a, std::size_t ncols, std::uint64_t prime) {
  std::size_t total = 0;
  std::vector<std::uint32_t> count(ncols);
  std::vector<std::uint32_t> order(ncols);
  std::vector<std::uint32_t> position(ncols);
  std::vector<std::int64_t> pivot(ncols);
  while (true) {
    a.erase(std::remove_if(a.begin(), a.end(), [](const ModRow& v) { return v.empty(); }), a.end());
    if (a.empty()) return total;
    // Sparse columns go left so that they are the ones claimed by pivots.
    std::fill(count.begin(), count.end(), 0);
    for (const auto& v : a)
      for (const auto& e : v) ++count[e.first];
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) { return count[x] < count[y]; });
    for (std::uint32_t i = 0; i < ncols; ++i) position[order[i]] = i;
    for (auto& v : a) {
      for (auto& e : v) e.first = position[e.first];
      std::sort(v.begin(), v.end());
    }
    std::fill(pivot.begin(), pivot.end(), -1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto& p = pivot[a[i].front().first];
      if (p < 0 || a[static_cast<std::size_t>(p)].size() > a[i].size()) p = static_cast<std::int64_t>(i);
    }
    std::vector<char> is_pivot(a.size(), 0);
    for (std::size_t j = 0; j < ncols; ++j) {
      if (pivot[j] < 0) continue;
      ++total;
      auto& v = a[static_cast<std::size_t>(pivot[j])];
      is_pivot[static_cast<std::size_t>(pivot[j])] = 1;
      const auto inv = inverse_mod(v.front().second, prime);
      for (auto& e : v) e.second = mul_mod(e.second, inv, prime);
    }
    std::vector<ModRow> schur(a.size());
    const auto n = static_cast<std::int64_t>(a.size());
#pragma omp parallel
    {
      std::vector<std::uint64_t> x(ncols, 0);
      std::vector<std::uint32_t> touched;
      std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
#pragma omp for schedule(dynamic, 256)
      for (std::int64_t i = 0; i < n; ++i) {
        if (is_pivot[static_cast<std::size_t>(i)]) continue;
        touched.clear();
        for (const auto& [c, value] : a[static_cast<std::size_t>(i)]) {
          x[c] = value;
          touched.push_back(c);
          if (pivot[c] >= 0) heap.push(c);
        }
        // Pivot rows only reach to the right, so columns leave the heap in order.
        while (!heap.empty()) {
          const auto j = heap.top();
          heap.pop();
          while (!heap.empty() && heap.top() == j) heap.pop();
          const auto f = x[j];
          if (f == 0) continue;
          for (const auto& [c, value] : a[static_cast<std::size_t>(pivot[j])]) {
            if (x[c] == 0) {
              touched.push_back(c);
              if (pivot[c] >= 0 && c != j) heap.push(c);
            }
            x[c] = (x[c] + mul_mod(prime - f, value, prime)) % prime;
          }
        }
        auto& out = schur[static_cast<std::size_t>(i)];
        for (auto c : touched) {
          if (x[c] != 0 && pivot[c] < 0) out.emplace_back(c, x[c]);
          x[c] = 0;
        }
        std::sort(out.begin(), out.end());
      }
    }
    a = std::move(schur);
  }
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
  const PeeledMatrix peeled = peel(m);
  IntegerOps ops;
  return peeled.rank + left_looking_rank(peeled.remainder, ops);
}

std::size_t rank_mod(const SparseMatrix& m, std::uint32_t prime) {
  if (prime < 2) throw InputError("rank_mod needs a prime modulus");
  // Rows of a boundary map are the sparse side, so eliminate rows.
  std::vector<ModRow> rows(m.rows);
  const auto q = static_cast<std::int64_t>(prime);
  for (std::size_t c = 0; c < m.cols; ++c) {
    for (const auto& [r, value] : m.columns[c]) {
      if (r >= m.rows) throw DimensionError("sparse matrix row index out of range");
      const auto x = static_cast<std::uint64_t>(((value % q) + q) % q);
      if (x != 0) rows[r].emplace_back(static_cast<std::uint32_t>(c), x);
    }
  }
  return structural_rank_mod(std::move(rows), m.cols, prime);
}

bool in_column_space(const SparseMatrix& m, const std::vector<std::pair<std::uint32_t, Scalar>>& b) {
  Integer l = 1;
  for (const auto& e : b) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
  SparseColumn col;
  for (const auto& e : b) {
    if (e.first >= m.rows) throw DimensionError("vector index out of range");
    const Integer v = e.second.get_num() * (l / e.second.get_den());
    if (v == 0) continue;
    if (!v.fits_slong_p()) throw InputError("vector entry too large");
    col.emplace_back(e.first, v.get_si());
  }
  std::sort(col.begin(), col.end());
  if (col.empty()) return true;
  SparseMatrix extended = m;
  extended.columns.push_back(std::move(col));
  extended.cols += 1;
  return rank(extended) == rank(m);
}

bool product_is_zero(const SparseMatrix& m2, const SparseMatrix& m1) {
  if (m1.rows != m2.cols) throw DimensionError("matrix product dimensions do not match");
  std::vector<__int128> acc(m2.rows, 0);
  std::vector<std::uint32_t> touched;
  for (const auto& col : m1.columns) {
    touched.clear();
    for (const auto& [k, x] : col) {
      for (const auto& [i, y] : m2.columns[k]) {
        if (acc[i] == 0) touched.push_back(i);
        acc[i] += static_cast<__int128>(x) * y;
      }
    }
    bool zero = true;
    for (auto i : touched) {
      if (acc[i] != 0) zero = false;
      acc[i] = 0;
    }
    if (!zero) return false;
  }
  return true;
}

}  // namespace weylprop
