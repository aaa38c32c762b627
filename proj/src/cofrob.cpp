#include "weylprop/cofrob.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <memory>
#include <stdexcept>
#include <mutex>
#include <optional>
#include <numeric>

#include "weylprop/errors.hpp"

namespace weylprop {

bool is_valid_piece(int m, int n, int chi) {
  return m >= 1 && n >= 1 && chi >= m + n - 2 && ((chi - m - n) % 2 == 0);
}

int genus_of(int m, int n, int chi) {
  if (!is_valid_piece(m, n, chi)) {
    throw InputError("coFrob(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(chi) +
                     ") is the zero piece");
  }
  return (chi + 2 - m - n) / 2;
}

int TwoLevelGraph::lower_out(std::size_t u) const {
  int s = 0;
  for (std::size_t v = 0; v < upper.size(); ++v) s += e(u, v);
  return s;
}

int TwoLevelGraph::upper_in(std::size_t v) const {
  int s = 0;
  for (std::size_t u = 0; u < lower.size(); ++u) s += e(u, v);
  return s;
}

int TwoLevelGraph::total_chi() const {
  int s = 0;
  for (const auto& x : lower) s += x.chi;
  for (const auto& x : upper) s += x.chi;
  return s;
}

namespace {

bool is_partition(const std::vector<LevelVertex>& blocks, int size) {
  std::vector<int> seen(static_cast<std::size_t>(size) + 1, 0);
  int last_min = 0;
  for (const auto& b : blocks) {
    if (b.legs.empty() || !std::is_sorted(b.legs.begin(), b.legs.end())) return false;
    if (b.legs.front() <= last_min) return false;
    last_min = b.legs.front();
    for (int l : b.legs) {
      if (l < 1 || l > size || seen[static_cast<std::size_t>(l)]++) return false;
    }
  }
  return std::all_of(seen.begin() + 1, seen.end(), [](int c) { return c == 1; });
}

bool connected(std::size_t a, std::size_t b, const std::vector<int>& edges) {
  std::vector<std::size_t> parent(a + b);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t u = 0; u < a; ++u)
    for (std::size_t v = 0; v < b; ++v)
      if (edges[u * b + v] > 0) parent[find(u)] = find(a + v);
  const std::size_t root = find(0);
  for (std::size_t x = 1; x < a + b; ++x)
    if (find(x) != root) return false;
  return true;
}

}  // namespace

bool is_valid_two_level(const TwoLevelGraph& g, int m, int n, int chi) {
  if (g.m != m || g.n != n || g.lower.empty() || g.upper.empty()) return false;
  if (g.edges.size() != g.lower.size() * g.upper.size()) return false;
  if (!is_partition(g.lower, m) || !is_partition(g.upper, n)) return false;
  if (std::any_of(g.edges.begin(), g.edges.end(), [](int e) { return e < 0; })) return false;
  for (std::size_t u = 0; u < g.lower.size(); ++u) {
    const int out = g.lower_out(u);
    if (out <= 0 || !is_valid_piece(static_cast<int>(g.lower[u].legs.size()), out, g.lower[u].chi)) return false;
  }
  for (std::size_t v = 0; v < g.upper.size(); ++v) {
    const int in = g.upper_in(v);
    if (in <= 0 || !is_valid_piece(in, static_cast<int>(g.upper[v].legs.size()), g.upper[v].chi)) return false;
  }
  return g.total_chi() == chi && connected(g.lower.size(), g.upper.size(), g.edges);
}

Scalar eta(const TwoLevelGraph& g) {
  Integer den = 1;
  for (int e : g.edges) den *= factorial(e);
  return ratio(1, den);
}

namespace {

// Set partitions of {1..size} as blocks ordered by smallest element, in
// lexicographic order of their restricted growth strings.
std::vector<std::vector<LevelVertex>> set_partitions(int size) {
  std::vector<std::vector<LevelVertex>> out;
  std::vector<int> rgs(static_cast<std::size_t>(size), 0);
  auto rec = [&](auto&& self, int pos, int blocks) -> void {
    if (pos == size) {
      std::vector<LevelVertex> p(static_cast<std::size_t>(blocks));
      for (int x = 0; x < size; ++x) p[static_cast<std::size_t>(rgs[static_cast<std::size_t>(x)])].legs.push_back(x + 1);
      out.push_back(std::move(p));
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      rgs[static_cast<std::size_t>(pos)] = b;
      self(self, pos + 1, std::max(blocks, b + 1));
    }
  };
  if (size > 0) rec(rec, 0, 0);
  return out;
}

// One coFrob piece's decomposition, packed: per term the two partitions by
// index, then a*b edge counts, a lower and b upper weights as bytes.
struct PackedTerm {
  std::uint32_t lower_part = 0;
  std::uint32_t upper_part = 0;
  std::size_t offset = 0;
  std::uint64_t den = 1;  // prod e(u,v)!
  std::uint8_t a = 0;
  std::uint8_t b = 0;
};

struct PieceTable {
  std::vector<std::vector<LevelVertex>> lowers;
  std::vector<std::vector<LevelVertex>> uppers;
  std::vector<PackedTerm> terms;
  std::vector<std::uint8_t> bytes;

  int edge(const PackedTerm& t, std::size_t u, std::size_t v) const { return bytes[t.offset + u * t.b + v]; }
  int lower_chi(const PackedTerm& t, std::size_t u) const { return bytes[t.offset + t.a * t.b + u]; }
  int upper_chi(const PackedTerm& t, std::size_t v) const { return bytes[t.offset + t.a * t.b + t.a + v]; }
  int lower_out(const PackedTerm& t, std::size_t u) const {
    int s = 0;
    for (std::size_t v = 0; v < t.b; ++v) s += edge(t, u, v);
    return s;
  }
  int upper_in(const PackedTerm& t, std::size_t v) const {
    int s = 0;
    for (std::size_t u = 0; u < t.a; ++u) s += edge(t, u, v);
    return s;
  }
};

std::uint64_t checked_mul(std::uint64_t x, std::uint64_t y) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(x, y, &out)) throw std::overflow_error("coFrob coefficient denominator overflows 64 bits");
  return out;
}

std::uint64_t small_factorial(int e) {
  std::uint64_t f = 1;
  for (int x = 2; x <= e; ++x) f = checked_mul(f, static_cast<std::uint64_t>(x));
  return f;
}

void append_terms(int m, int n, int chi, std::uint32_t lower_id, std::uint32_t upper_id, PieceTable& table) {
  const auto& lower = table.lowers[lower_id];
  const auto& upper = table.uppers[upper_id];
  const std::size_t a = lower.size();
  const std::size_t b = upper.size();
  // Sum over vertices of (legs + edges - 2) is m + n + 2E - 2(a + b) and cannot exceed chi.
  const int max_edges = (chi - m - n) / 2 + static_cast<int>(a + b);
  if (max_edges <= 0) return;
  if (max_edges > 255 || chi > 255) throw InputError("coFrob piece too large to decompose");
  std::vector<int> edges(a * b, 0);
  std::vector<int> base(a + b, 0);
  std::vector<int> extra(a + b, 0);

  auto emit_weights = [&]() {
    int used = 0;
    for (std::size_t u = 0; u < a; ++u) {
      int out = 0;
      for (std::size_t v = 0; v < b; ++v) out += edges[u * b + v];
      base[u] = static_cast<int>(lower[u].legs.size()) + out - 2;
      used += base[u];
    }
    for (std::size_t v = 0; v < b; ++v) {
      int in = 0;
      for (std::size_t u = 0; u < a; ++u) in += edges[u * b + v];
      base[a + v] = static_cast<int>(upper[v].legs.size()) + in - 2;
      used += base[a + v];
    }
    const int slack = chi - used;
    if (slack < 0 || slack % 2 != 0) return;
    std::uint64_t den = 1;
    for (int e : edges) den = checked_mul(den, small_factorial(e));
    // Distribute slack/2 extra units of 2; lexicographic on the weight vector.
    auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
      if (pos + 1 == a + b) {
        extra[pos] = left;
        PackedTerm t{lower_id, upper_id, table.bytes.size(), den, static_cast<std::uint8_t>(a),
                     static_cast<std::uint8_t>(b)};
        for (int e : edges) table.bytes.push_back(static_cast<std::uint8_t>(e));
        for (std::size_t x = 0; x < a + b; ++x) table.bytes.push_back(static_cast<std::uint8_t>(base[x] + 2 * extra[x]));
        table.terms.push_back(t);
        return;
      }
      for (int x = 0; x <= left; ++x) {
        extra[pos] = x;
        self(self, pos + 1, left - x);
      }
    };
    rec(rec, 0, slack / 2);
  };

  auto rec = [&](auto&& self, std::size_t cell, int total) -> void {
    if (cell == a * b) {
      for (std::size_t v = 0; v < b; ++v) {
        int s = 0;
        for (std::size_t u = 0; u < a; ++u) s += edges[u * b + v];
        if (s == 0) return;
      }
      if (!connected(a, b, edges)) return;
      emit_weights();
      return;
    }
    const std::size_t u = cell / b;
    const bool row_end = cell % b == b - 1;
    for (int x = 0; total + x <= max_edges; ++x) {
      edges[cell] = x;
      if (row_end) {
        int s = 0;
        for (std::size_t v = 0; v < b; ++v) s += edges[u * b + v];
        if (s == 0) continue;
      }
      self(self, cell + 1, total + x);
    }
    edges[cell] = 0;
  };
  rec(rec, 0, 0);
}

std::unique_ptr<PieceTable> compute_table(int m, int n, int chi) {
  auto table = std::make_unique<PieceTable>();
  table->lowers = set_partitions(m);
  table->uppers = set_partitions(n);
  for (std::uint32_t l = 0; l < table->lowers.size(); ++l)
    for (std::uint32_t u = 0; u < table->uppers.size(); ++u) append_terms(m, n, chi, l, u, *table);
  table->terms.shrink_to_fit();
  table->bytes.shrink_to_fit();
  return table;
}

// Memoized and thread-safe; tables are never freed.
const PieceTable& table_for(int m, int n, int chi) {
  if (!is_valid_piece(m, n, chi)) {
    throw InputError("decompose: coFrob(" + std::to_string(m) + "," + std::to_string(n) + "," +
                     std::to_string(chi) + ") is the zero piece");
  }
  static std::mutex mutex;
  static std::map<CoFrobPiece, std::unique_ptr<PieceTable>> memo;
  const CoFrobPiece key{m, n, chi};
  {
    std::lock_guard lock(mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return *it->second;
  }
  auto computed = compute_table(m, n, chi);
  std::lock_guard lock(mutex);
  return *memo.try_emplace(key, std::move(computed)).first->second;
}

TwoLevelGraph materialize(const PieceTable& table, const PackedTerm& t, int m, int n) {
  TwoLevelGraph g{m, n, table.lowers[t.lower_part], table.uppers[t.upper_part], {}};
  for (std::size_t u = 0; u < t.a; ++u) g.lower[u].chi = table.lower_chi(t, u);
  for (std::size_t v = 0; v < t.b; ++v) g.upper[v].chi = table.upper_chi(t, v);
  g.edges.assign(table.bytes.begin() + static_cast<long>(t.offset),
                 table.bytes.begin() + static_cast<long>(t.offset + t.a * t.b));
  return g;
}

}  // namespace

std::vector<Decomposition> decompose(int m, int n, int chi) {
  const auto& table = table_for(m, n, chi);
  std::vector<Decomposition> out;
  out.reserve(table.terms.size());
  for (const auto& t : table.terms) out.push_back({materialize(table, t, m, n), ratio(1, Integer(std::to_string(t.den)))});
  return out;
}

std::size_t decomposition_size(int m, int n, int chi) { return table_for(m, n, chi).terms.size(); }

Scalar three_level_coefficient(const ThreeLevelGraph& g) {
  Integer den = 1;
  for (const auto& w : g.middle) {
    for (int e : w.from_lower) den *= factorial(e);
    for (int e : w.to_upper) den *= factorial(e);
  }
  std::size_t a = 0;
  while (a < g.middle.size()) {
    std::size_t b = a;
    while (b < g.middle.size() && g.middle[b] == g.middle[a]) ++b;
    den *= factorial(static_cast<int>(b - a));
    a = b;
  }
  return ratio(1, den);
}

namespace {

// A three-level graph as bytes: counts A, B, M; A bottom vertices and B top
// vertices as (leg mask, 2 bytes; weight); then M middle records
// (weight, A edge counts from below, B edge counts to the top), sorted.
// Bottom and top vertices are ordered by smallest leg, so equal graphs have
// equal keys.
using Key = std::vector<std::uint8_t>;

struct KeyView {
  const std::uint8_t* p;
  std::size_t a, b, m;
  std::size_t record() const { return 1 + a + b; }
  unsigned bottom_mask(std::size_t x) const { return p[3 + 3 * x] | (p[4 + 3 * x] << 8); }
  int bottom_chi(std::size_t x) const { return p[5 + 3 * x]; }
  unsigned top_mask(std::size_t y) const { return p[3 + 3 * (a + y)] | (p[4 + 3 * (a + y)] << 8); }
  int top_chi(std::size_t y) const { return p[5 + 3 * (a + y)]; }
  const std::uint8_t* middle(std::size_t w) const { return p + 3 + 3 * (a + b) + w * record(); }
  int middle_chi(std::size_t w) const { return middle(w)[0]; }
  int from_lower(std::size_t w, std::size_t x) const { return middle(w)[1 + x]; }
  int to_upper(std::size_t w, std::size_t y) const { return middle(w)[1 + a + y]; }
  std::size_t size() const { return 3 + 3 * (a + b) + m * record(); }
};

KeyView view(const std::uint8_t* p) { return {p, p[0], p[1], p[2]}; }

std::uint64_t closed_form_den(const KeyView& k) {
  std::uint64_t den = 1;
  for (std::size_t w = 0; w < k.m; ++w)
    for (std::size_t c = 1; c < k.record(); ++c) den = checked_mul(den, small_factorial(k.middle(w)[c]));
  std::size_t w = 0;
  while (w < k.m) {
    std::size_t z = w;
    while (z < k.m && std::memcmp(k.middle(z), k.middle(w), k.record()) == 0) ++z;
    den = checked_mul(den, small_factorial(static_cast<int>(z - w)));
    w = z;
  }
  return den;
}

// Merges the vertices joined through the middle level on one side into single
// vertices, giving the unique two-level graph whose other-side expansion can
// produce the key. Validity of the result shows the key lies in that expansion's support.
bool collapse_is_valid(const KeyView& k, bool merge_lower) {
  const std::size_t merged = merge_lower ? k.a : k.b;
  const std::size_t fixed = merge_lower ? k.b : k.a;
  std::size_t parent[64];
  if (merged + k.m + fixed > 64) throw InputError("three-level graph too large");
  std::iota(parent, parent + merged + k.m, 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t w = 0; w < k.m; ++w) {
    bool attached = false;
    for (std::size_t x = 0; x < merged; ++x) {
      const int c = merge_lower ? k.from_lower(w, x) : k.to_upper(w, x);
      if (c > 0) {
        parent[find(merged + w)] = find(x);
        attached = true;
      }
    }
    if (!attached) return false;
  }
  // Classes in order of their first member, which is smallest-leg order.
  std::size_t class_of[64];
  std::size_t classes = 0;
  int legs[64] = {};
  int chi[64] = {};
  for (std::size_t x = 0; x < merged; ++x) {
    const std::size_t r = find(x);
    if (r == x) class_of[r] = classes++;
  }
  for (std::size_t x = 0; x < merged; ++x) {
    const std::size_t c = class_of[find(x)];
    legs[c] += std::popcount(merge_lower ? k.bottom_mask(x) : k.top_mask(x));
    chi[c] += merge_lower ? k.bottom_chi(x) : k.top_chi(x);
  }
  std::vector<int> edges(classes * fixed, 0);
  for (std::size_t w = 0; w < k.m; ++w) {
    const std::size_t c = class_of[find(merged + w)];
    chi[c] += k.middle_chi(w);
    for (std::size_t y = 0; y < fixed; ++y) edges[c * fixed + y] += merge_lower ? k.to_upper(w, y) : k.from_lower(w, y);
  }
  for (std::size_t c = 0; c < classes; ++c) {
    int e = 0;
    for (std::size_t y = 0; y < fixed; ++y) e += edges[c * fixed + y];
    if (e <= 0) return false;
    if (!(merge_lower ? is_valid_piece(legs[c], e, chi[c]) : is_valid_piece(e, legs[c], chi[c]))) return false;
  }
  for (std::size_t y = 0; y < fixed; ++y) {
    int e = 0;
    for (std::size_t c = 0; c < classes; ++c) e += edges[c * fixed + y];
    const int l = std::popcount(merge_lower ? k.top_mask(y) : k.bottom_mask(y));
    const int x = merge_lower ? k.top_chi(y) : k.bottom_chi(y);
    if (e <= 0 || !(merge_lower ? is_valid_piece(e, l, x) : is_valid_piece(l, e, x))) return false;
  }
  return connected(classes, fixed, edges);
}

unsigned mask_of(const std::vector<int>& legs) {
  unsigned m = 0;
  for (int l : legs) m |= 1u << (l - 1);
  return m;
}

// Expands one side of one generating term into a flat list of keys.
class Expander {
 public:
  struct Entry {
    std::size_t offset;
    std::size_t size;
    std::uint64_t den;
  };

  std::vector<std::uint8_t> arena;
  std::vector<Entry> entries;

  void run(const PieceTable& top_table, const PackedTerm& top, bool expand_lower_level) {
    arena.clear();
    entries.clear();
    const std::size_t a = top.a;
    const std::size_t b = top.b;
    const auto& lows = top_table.lowers[top.lower_part];
    const auto& ups = top_table.uppers[top.upper_part];
    const std::size_t expanded = expand_lower_level ? a : b;
    // flags[x]: for each flag of vertex x toward the other level, the vertex it reaches.
    std::vector<std::vector<std::size_t>> flags(expanded);
    std::vector<const PieceTable*> subs(expanded);
    std::vector<std::vector<int>> legs(expanded);
    for (std::size_t x = 0; x < expanded; ++x) {
      const std::size_t other = expand_lower_level ? b : a;
      for (std::size_t y = 0; y < other; ++y) {
        const int e = expand_lower_level ? top_table.edge(top, x, y) : top_table.edge(top, y, x);
        for (int c = 0; c < e; ++c) flags[x].push_back(y);
      }
      legs[x] = expand_lower_level ? lows[x].legs : ups[x].legs;
      const int l = static_cast<int>(legs[x].size());
      const int f = static_cast<int>(flags[x].size());
      const int w = expand_lower_level ? top_table.lower_chi(top, x) : top_table.upper_chi(top, x);
      subs[x] = expand_lower_level ? &table_for(l, f, w) : &table_for(f, l, w);
      if (subs[x]->terms.empty()) return;
    }
    fixed_.clear();
    for (std::size_t y = 0; y < (expand_lower_level ? b : a); ++y) {
      const auto& v = expand_lower_level ? ups[y] : lows[y];
      fixed_.push_back({mask_of(v.legs), expand_lower_level ? top_table.upper_chi(top, y) : top_table.lower_chi(top, y)});
    }
    std::vector<std::size_t> idx(expanded, 0);
    while (true) {
      emit(top, subs, idx, flags, legs, expand_lower_level);
      std::size_t pos = 0;
      while (pos < expanded && ++idx[pos] == subs[pos]->terms.size()) idx[pos++] = 0;
      if (pos == expanded) return;
    }
  }

 private:
  struct Outer {
    unsigned mask;
    int chi;
  };
  std::vector<Outer> fixed_;
  std::vector<Outer> outer_;           // vertices produced on the expanded side
  std::vector<std::size_t> order_;     // outer_ sorted by smallest leg
  std::vector<std::size_t> rank_;      // position of outer_[i] in that order
  std::vector<std::uint8_t> middle_;   // records, unsorted
  std::vector<std::size_t> morder_;

  void emit(const PackedTerm& top, const std::vector<const PieceTable*>& subs, const std::vector<std::size_t>& idx,
            const std::vector<std::vector<std::size_t>>& flags, const std::vector<std::vector<int>>& legs,
            bool lower) {
    const std::size_t expanded = subs.size();
    std::uint64_t den = top.den;
    // Outer vertices of every sub-decomposition, mapped to global legs.
    outer_.clear();
    std::size_t mcount = 0;
    for (std::size_t x = 0; x < expanded; ++x) {
      const auto& s = *subs[x];
      const auto& h = s.terms[idx[x]];
      den = checked_mul(den, h.den);
      const auto& blocks = lower ? s.lowers[h.lower_part] : s.uppers[h.upper_part];
      for (std::size_t z = 0; z < blocks.size(); ++z) {
        unsigned mask = 0;
        for (int l : blocks[z].legs) mask |= 1u << (legs[x][static_cast<std::size_t>(l - 1)] - 1);
        outer_.push_back({mask, lower ? s.lower_chi(h, z) : s.upper_chi(h, z)});
      }
      mcount += lower ? h.b : h.a;
    }
    const std::size_t n_outer = outer_.size();
    order_.resize(n_outer);
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](std::size_t p, std::size_t q) {
      return std::countr_zero(outer_[p].mask) < std::countr_zero(outer_[q].mask);
    });
    rank_.resize(n_outer);
    for (std::size_t i = 0; i < n_outer; ++i) rank_[order_[i]] = i;

    const std::size_t A = lower ? n_outer : fixed_.size();
    const std::size_t B = lower ? fixed_.size() : n_outer;
    const std::size_t rec = 1 + A + B;
    middle_.assign(mcount * rec, 0);
    std::size_t w_at = 0;
    std::size_t outer_at = 0;
    for (std::size_t x = 0; x < expanded; ++x) {
      const auto& s = *subs[x];
      const auto& h = s.terms[idx[x]];
      const std::size_t n_mid = lower ? h.b : h.a;
      const std::size_t n_out = lower ? h.a : h.b;
      const auto& mid_blocks = lower ? s.uppers[h.upper_part] : s.lowers[h.lower_part];
      for (std::size_t w = 0; w < n_mid; ++w, ++w_at) {
        std::uint8_t* r = middle_.data() + w_at * rec;
        r[0] = static_cast<std::uint8_t>(lower ? s.upper_chi(h, w) : s.lower_chi(h, w));
        // edges between this middle vertex and the outer vertices of the same sub-decomposition
        for (std::size_t z = 0; z < n_out; ++z) {
          const int e = lower ? s.edge(h, z, w) : s.edge(h, w, z);
          const std::size_t col = rank_[outer_at + z];
          r[(lower ? 1 : 1 + A) + col] = static_cast<std::uint8_t>(e);
        }
        // its flag legs lead to fixed vertices
        for (int l : mid_blocks[w].legs) {
          const std::size_t y = flags[x][static_cast<std::size_t>(l - 1)];
          ++r[(lower ? 1 + A : 1) + y];
        }
      }
      outer_at += n_out;
    }
    morder_.resize(mcount);
    std::iota(morder_.begin(), morder_.end(), 0);
    std::sort(morder_.begin(), morder_.end(), [&](std::size_t p, std::size_t q) {
      return std::memcmp(middle_.data() + p * rec, middle_.data() + q * rec, rec) < 0;
    });

    const std::size_t start = arena.size();
    arena.push_back(static_cast<std::uint8_t>(A));
    arena.push_back(static_cast<std::uint8_t>(B));
    arena.push_back(static_cast<std::uint8_t>(mcount));
    auto put = [&](const Outer& o) {
      arena.push_back(static_cast<std::uint8_t>(o.mask & 0xff));
      arena.push_back(static_cast<std::uint8_t>(o.mask >> 8));
      arena.push_back(static_cast<std::uint8_t>(o.chi));
    };
    if (lower) {
      for (auto i : order_) put(outer_[i]);
      for (const auto& o : fixed_) put(o);
    } else {
      for (const auto& o : fixed_) put(o);
      for (auto i : order_) put(outer_[i]);
    }
    for (auto w : morder_) arena.insert(arena.end(), middle_.begin() + static_cast<long>(w * rec),
                                        middle_.begin() + static_cast<long>((w + 1) * rec));
    entries.push_back({start, arena.size() - start, den});
  }
};

// Sorts the expander's keys and merges equal ones; visit(key view, coefficient
// denominators of the merged entries).
template <class Visit>
void for_each_merged(Expander& ex, Visit&& visit) {
  auto less = [&](const Expander::Entry& p, const Expander::Entry& q) {
    const int c = std::memcmp(ex.arena.data() + p.offset, ex.arena.data() + q.offset, std::min(p.size, q.size));
    return c != 0 ? c < 0 : p.size < q.size;
  };
  auto equal = [&](const Expander::Entry& p, const Expander::Entry& q) {
    return p.size == q.size && std::memcmp(ex.arena.data() + p.offset, ex.arena.data() + q.offset, p.size) == 0;
  };
  std::sort(ex.entries.begin(), ex.entries.end(), less);
  std::size_t i = 0;
  while (i < ex.entries.size()) {
    std::size_t j = i + 1;
    while (j < ex.entries.size() && equal(ex.entries[i], ex.entries[j])) ++j;
    visit(view(ex.arena.data() + ex.entries[i].offset), ex.entries.data() + i, j - i);
    i = j;
  }
}

ThreeLevelGraph decode_key(const KeyView& k) {
  auto legs = [](unsigned mask) {
    std::vector<int> out;
    for (int l = 0; l < 16; ++l)
      if (mask >> l & 1u) out.push_back(l + 1);
    return out;
  };
  ThreeLevelGraph g;
  for (std::size_t x = 0; x < k.a; ++x) g.lower.push_back({legs(k.bottom_mask(x)), k.bottom_chi(x)});
  for (std::size_t y = 0; y < k.b; ++y) g.upper.push_back({legs(k.top_mask(y)), k.top_chi(y)});
  for (std::size_t w = 0; w < k.m; ++w) {
    MiddleVertex mv{k.middle_chi(w), {}, {}};
    for (std::size_t x = 0; x < k.a; ++x) mv.from_lower.push_back(k.from_lower(w, x));
    for (std::size_t y = 0; y < k.b; ++y) mv.to_upper.push_back(k.to_upper(w, y));
    g.middle.push_back(std::move(mv));
  }
  return g;
}

Scalar sum_of_inverses(const Expander::Entry* e, std::size_t count) {
  Scalar s = 0;
  for (std::size_t i = 0; i < count; ++i) s += ratio(1, Integer(std::to_string(e[i].den)));
  return s;
}

void check_leg_counts(int m, int n) {
  if (m > 16 || n > 16) throw InputError("coassociativity is checked for at most 16 legs per side");
}

}  // namespace

ThreeLevelVector expand_iterated(int m, int n, int chi, bool expand_lower_level) {
  check_leg_counts(m, n);
  const auto& table = table_for(m, n, chi);
  ThreeLevelVector out;
  Expander ex;
  for (const auto& t : table.terms) {
    ex.run(table, t, expand_lower_level);
    for_each_merged(ex, [&](const KeyView& k, const Expander::Entry* e, std::size_t count) {
      out[decode_key(k)] += sum_of_inverses(e, count);
    });
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

namespace {

struct SideTally {
  bool ok = true;
  std::size_t support = 0;
};

// Streams one side of the comparison, one generating two-level graph at a time.
// Terms from different generators never coincide: the generator is recovered
// from the three-level graph by collapsing the expanded level.
SideTally tally_side(const PieceTable& table, bool expand_lower_level) {
  const auto count = static_cast<long>(table.terms.size());
  std::vector<char> ok(table.terms.size(), 1);
  std::vector<std::size_t> support(table.terms.size(), 0);
#pragma omp parallel
  {
    Expander ex;
#pragma omp for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      ex.run(table, table.terms[static_cast<std::size_t>(i)], expand_lower_level);
      bool good = true;
      std::size_t distinct = 0;
      for_each_merged(ex, [&](const KeyView& k, const Expander::Entry* e, std::size_t c) {
        if (!good) return;
        ++distinct;
        // The other side must be able to produce the graph, with the same closed-form coefficient.
        const std::uint64_t den = closed_form_den(k);
        const bool coeff_ok = c == 1 ? e[0].den == den : sum_of_inverses(e, c) == ratio(1, Integer(std::to_string(den)));
        good = coeff_ok && collapse_is_valid(k, !expand_lower_level);
      });
      ok[static_cast<std::size_t>(i)] = good ? 1 : 0;
      support[static_cast<std::size_t>(i)] = distinct;
    }
  }
  SideTally tally;
  tally.ok = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
  for (auto s : support) tally.support += s;
  return tally;
}

}  // namespace

CoassocReport coassoc_report(int m, int n, int chi, std::size_t projection_budget) {
  check_leg_counts(m, n);
  const auto& table = table_for(m, n, chi);
  // Count the three-level terms both expansions could produce before generating any.
  std::size_t planned = 0;
  auto bump = [&](std::size_t x) {
    planned = (x > projection_budget || planned > projection_budget - x) ? projection_budget + 1 : planned + x;
  };
  for (const auto& t : table.terms) {
    std::size_t left = 1;
    std::size_t right = 1;
    const auto& lows = table.lowers[t.lower_part];
    const auto& ups = table.uppers[t.upper_part];
    for (std::size_t u = 0; u < t.a && left <= projection_budget; ++u) {
      left *= table_for(static_cast<int>(lows[u].legs.size()), table.lower_out(t, u), table.lower_chi(t, u)).terms.size();
    }
    for (std::size_t v = 0; v < t.b && right <= projection_budget; ++v) {
      right *= table_for(table.upper_in(t, v), static_cast<int>(ups[v].legs.size()), table.upper_chi(t, v)).terms.size();
    }
    bump(left);
    bump(right);
  }
  if (planned > projection_budget) {
    throw BudgetExhausted("coassociativity check of coFrob(" + std::to_string(m) + "," + std::to_string(n) + "," +
                          std::to_string(chi) + ") needs more than " + std::to_string(projection_budget) +
                          " three-level terms");
  }

  // Both sides agree with the closed form term by term; each side's support lies
  // in the other's, and the supports have equal size.
  const SideTally left = tally_side(table, true);
  const SideTally right = tally_side(table, false);
  CoassocReport report;
  report.equal = left.ok && right.ok && left.support == right.support;
  report.graphs_compared = left.support;
  report.terms_planned = planned;
  return report;
}

bool check_coassoc(int m, int n, int chi, std::size_t projection_budget) {
  return coassoc_report(m, n, chi, projection_budget).equal;
}

bool counit_check(int m, int n, int chi) {
  const auto& table = table_for(m, n, chi);
  auto trivial = [](std::size_t legs, int arity, int weight) { return legs == 1 && arity == 1 && weight == 0; };
  int lower_hits = 0;
  int upper_hits = 0;
  bool ok = true;
  for (const auto& t : table.terms) {
    const auto& lows = table.lowers[t.lower_part];
    const auto& ups = table.uppers[t.upper_part];
    bool all_lower = true;
    for (std::size_t u = 0; u < t.a; ++u)
      all_lower = all_lower && trivial(lows[u].legs.size(), table.lower_out(t, u), table.lower_chi(t, u));
    bool all_upper = true;
    for (std::size_t v = 0; v < t.b; ++v)
      all_upper = all_upper && trivial(ups[v].legs.size(), table.upper_in(t, v), table.upper_chi(t, v));
    // The survivor must be x itself on the other level, with coefficient 1.
    if (all_lower) {
      ++lower_hits;
      ok = ok && t.b == 1 && table.upper_chi(t, 0) == chi && t.den == 1;
    }
    if (all_upper) {
      ++upper_hits;
      ok = ok && t.a == 1 && table.lower_chi(t, 0) == chi && t.den == 1;
    }
  }
  return ok && lower_hits == 1 && upper_hits == 1;
}

}  // namespace weylprop
