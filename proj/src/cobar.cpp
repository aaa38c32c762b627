#include "weylprop/cobar.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "weylprop/errors.hpp"

namespace weylprop {

bool is_valid_label(const GenLabel& label) {
  return label.r >= 1 && label.t >= 1 && label.g >= 0 && !(label.r == 1 && label.t == 1 && label.g == 0);
}

int PropGraph::edge_count() const { return std::accumulate(edges.begin(), edges.end(), 0); }

int PropGraph::genus() const {
  int g = 0;
  for (const auto& l : labels) g += l.g;
  return g + edge_count() - static_cast<int>(labels.size()) + 1;
}

PropGraph single_vertex(const GenLabel& label) {
  PropGraph g;
  g.r = label.r;
  g.t = label.t;
  g.labels = {label};
  g.in_legs = {(std::uint32_t{1} << label.r) - 1};
  g.out_legs = {(std::uint32_t{1} << label.t) - 1};
  g.edges = {0};
  return g;
}

void validate(const PropGraph& g) {
  const std::size_t p = g.size();
  if (p == 0) throw InputError("graph has no vertices");
  if (g.r < 1 || g.t < 1 || g.r > 31 || g.t > 31) throw InputError("graph arity out of range");
  if (g.in_legs.size() != p || g.out_legs.size() != p || g.edges.size() != p * p) {
    throw InputError("graph arrays have inconsistent sizes");
  }
  std::uint32_t in_seen = 0;
  std::uint32_t out_seen = 0;
  for (std::size_t v = 0; v < p; ++v) {
    if (!is_valid_label(g.labels[v])) throw InputError("vertex label is not a reduced coFrob generator");
    if (g.in_legs[v] & in_seen || g.out_legs[v] & out_seen) throw InputError("external leg attached twice");
    in_seen |= g.in_legs[v];
    out_seen |= g.out_legs[v];
    if (g.edge(v, v) != 0) throw InputError("self-loop at a vertex");
    int in = std::popcount(g.in_legs[v]);
    int out = std::popcount(g.out_legs[v]);
    for (std::size_t w = 0; w < p; ++w) {
      if (g.edge(w, v) < 0) throw InputError("negative edge multiplicity");
      in += g.edge(w, v);
      out += g.edge(v, w);
    }
    if (in != g.labels[v].r || out != g.labels[v].t) throw InputError("vertex arity does not match its flags");
  }
  if (in_seen != (std::uint32_t{1} << g.r) - 1 || out_seen != (std::uint32_t{1} << g.t) - 1) {
    throw InputError("external legs are not all attached");
  }
  // Connectivity of the underlying undirected graph.
  std::vector<char> seen(p, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < p; ++w) {
      if (!seen[w] && (g.edge(v, w) > 0 || g.edge(w, v) > 0)) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw InputError("graph is disconnected");
  // Kahn's algorithm for directed cycles.
  std::vector<int> indegree(p, 0);
  for (std::size_t v = 0; v < p; ++v)
    for (std::size_t w = 0; w < p; ++w)
      if (g.edge(w, v) > 0) ++indegree[v];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < p; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t removed = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t w = 0; w < p; ++w)
      if (g.edge(v, w) > 0 && --indegree[w] == 0) ready.push_back(w);
  }
  if (removed != p) throw InputError("graph has a directed cycle");
}

namespace {

constexpr std::size_t kMaxVertices = 16;

// Fixed-size working copy of a graph, so the inner loops never allocate.
struct Work {
  int r = 0;
  int t = 0;
  std::size_t p = 0;
  std::array<GenLabel, kMaxVertices> lab{};
  std::array<std::uint32_t, kMaxVertices> in{};
  std::array<std::uint32_t, kMaxVertices> out{};
  std::array<std::array<std::uint8_t, kMaxVertices>, kMaxVertices> e{};
};

using Order = std::array<std::uint8_t, kMaxVertices>;

Work to_work(const PropGraph& g) {
  if (g.size() > kMaxVertices) throw InputError("graphs with more than 16 vertices are not supported");
  Work w;
  w.r = g.r;
  w.t = g.t;
  w.p = g.size();
  for (std::size_t v = 0; v < w.p; ++v) {
    w.lab[v] = g.labels[v];
    w.in[v] = g.in_legs[v];
    w.out[v] = g.out_legs[v];
    for (std::size_t u = 0; u < w.p; ++u) {
      const int m = g.edge(v, u);
      if (m < 0 || m > 255) throw InputError("edge multiplicity out of range");
      w.e[v][u] = static_cast<std::uint8_t>(m);
    }
  }
  return w;
}

PropGraph to_graph(const Work& w, const Order& order) {
  PropGraph g;
  g.r = w.r;
  g.t = w.t;
  g.labels.resize(w.p);
  g.in_legs.resize(w.p);
  g.out_legs.resize(w.p);
  g.edges.resize(w.p * w.p);
  for (std::size_t a = 0; a < w.p; ++a) {
    g.labels[a] = w.lab[order[a]];
    g.in_legs[a] = w.in[order[a]];
    g.out_legs[a] = w.out[order[a]];
    for (std::size_t b = 0; b < w.p; ++b) g.edges[a * w.p + b] = w.e[order[a]][order[b]];
  }
  return g;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t distinct(std::array<std::uint64_t, kMaxVertices> h, std::size_t p) {
  std::sort(h.begin(), h.begin() + static_cast<long>(p));
  return static_cast<std::size_t>(std::unique(h.begin(), h.begin() + static_cast<long>(p)) - h.begin());
}

// Color refinement with hashed signatures. Colliding signatures only merge
// cells, which costs search time but never correctness: the colors are
// functions of the isomorphism-invariant signatures.
std::array<std::uint64_t, kMaxVertices> refined_hashes(const Work& w) {
  std::array<std::uint64_t, kMaxVertices> h{};
  for (std::size_t v = 0; v < w.p; ++v) {
    std::uint64_t x = mix(static_cast<std::uint64_t>(w.lab[v].r));
    x = mix(x ^ static_cast<std::uint64_t>(w.lab[v].t));
    x = mix(x ^ static_cast<std::uint64_t>(w.lab[v].g));
    x = mix(x ^ w.in[v]);
    h[v] = mix(x ^ (static_cast<std::uint64_t>(w.out[v]) << 32));
  }
  std::size_t classes = distinct(h, w.p);
  while (classes < w.p) {
    std::array<std::uint64_t, kMaxVertices> next{};
    for (std::size_t v = 0; v < w.p; ++v) {
      std::uint64_t up = 0;
      std::uint64_t down = 0;
      for (std::size_t u = 0; u < w.p; ++u) {
        if (w.e[v][u]) up += mix(h[u] + w.e[v][u]);
        if (w.e[u][v]) down += mix(h[u] ^ (0x5bd1e995ULL * w.e[u][v]));
      }
      next[v] = mix(h[v] ^ mix(up) ^ (mix(down) << 1));
    }
    const std::size_t next_classes = distinct(next, w.p);
    h = next;
    if (next_classes <= classes) break;
    classes = next_classes;
  }
  return h;
}

int order_sign(const Order& order, std::size_t p) {
  int inv = 0;
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = a + 1; b < p; ++b)
      if (order[a] > order[b]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

// Lexicographic comparison of the graphs read off in orders x and y.
int compare_orders(const Work& w, const Order& x, const Order& y) {
  for (std::size_t a = 0; a < w.p; ++a) {
    const auto i = x[a];
    const auto j = y[a];
    if (i == j) continue;
    if (auto c = w.lab[i] <=> w.lab[j]; c != 0) return c < 0 ? -1 : 1;
    if (w.in[i] != w.in[j]) return w.in[i] < w.in[j] ? -1 : 1;
    if (w.out[i] != w.out[j]) return w.out[i] < w.out[j] ? -1 : 1;
  }
  for (std::size_t a = 0; a < w.p; ++a) {
    for (std::size_t b = 0; b < w.p; ++b) {
      const auto s = w.e[x[a]][x[b]];
      const auto u = w.e[y[a]][y[b]];
      if (s != u) return s < u ? -1 : 1;
    }
  }
  return 0;
}

struct Canon {
  Order order{};
  int sign = 1;
  bool zero = false;
};

// Vertices sorted by refined color, then every ordering inside every color
// cell is tried and the smallest reading wins.
Canon canonical_order(const Work& w) {
  const auto h = refined_hashes(w);
  Order order{};
  std::iota(order.begin(), order.begin() + static_cast<long>(w.p), 0);
  std::sort(order.begin(), order.begin() + static_cast<long>(w.p),
            [&](std::uint8_t a, std::uint8_t b) { return h[a] != h[b] ? h[a] < h[b] : a < b; });
  std::array<std::pair<std::size_t, std::size_t>, kMaxVertices> cells{};
  std::size_t cell_count = 0;
  bool trivial = true;
  for (std::size_t a = 0; a < w.p;) {
    std::size_t b = a;
    while (b < w.p && h[order[b]] == h[order[a]]) ++b;
    if (b - a > 1) {
      cells[cell_count++] = {a, b};
      trivial = false;
    }
    a = b;
  }
  Canon best;
  best.order = order;
  best.sign = order_sign(order, w.p);
  if (trivial) return best;

  bool first = true;
  auto rec = [&](auto&& self, std::size_t cell) -> void {
    if (cell == cell_count) {
      if (first) {
        best.order = order;
        best.sign = order_sign(order, w.p);
        first = false;
        return;
      }
      const int c = compare_orders(w, order, best.order);
      if (c < 0) {
        best.order = order;
        best.sign = order_sign(order, w.p);
        best.zero = false;
      } else if (c == 0 && order_sign(order, w.p) != best.sign) {
        best.zero = true;
      }
      return;
    }
    const auto [a, b] = cells[cell];
    auto* lo = order.begin() + static_cast<long>(a);
    auto* hi = order.begin() + static_cast<long>(b);
    std::sort(lo, hi);
    do {
      self(self, cell + 1);
    } while (std::next_permutation(lo, hi));
  };
  rec(rec, 0);
  return best;
}

std::size_t leg_bytes(int r, int t) { return static_cast<std::size_t>((std::max(r, t) + 7) / 8); }

void put_legs(GraphCode& code, std::uint32_t legs, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i) code.push_back(static_cast<char>((legs >> (8 * (width - 1 - i))) & 0xff));
}

GraphCode encode_work(const Work& w, const Order& order) {
  const std::size_t width = leg_bytes(w.r, w.t);
  GraphCode code;
  code.reserve(1 + w.p * (3 + 2 * width) + w.p * w.p);
  code.push_back(static_cast<char>(w.p));
  for (std::size_t a = 0; a < w.p; ++a) {
    const auto v = order[a];
    code.push_back(static_cast<char>(w.lab[v].r));
    code.push_back(static_cast<char>(w.lab[v].t));
    code.push_back(static_cast<char>(w.lab[v].g));
    put_legs(code, w.in[v], width);
    put_legs(code, w.out[v], width);
  }
  for (std::size_t a = 0; a < w.p; ++a)
    for (std::size_t b = 0; b < w.p; ++b) code.push_back(static_cast<char>(w.e[order[a]][order[b]]));
  return code;
}

Work decode_work(const GraphCode& code, int r, int t) {
  const std::size_t width = leg_bytes(r, t);
  auto byte = [&](std::size_t i) { return static_cast<std::uint8_t>(code.at(i)); };
  Work w;
  w.r = r;
  w.t = t;
  w.p = byte(0);
  if (w.p == 0 || w.p > kMaxVertices || code.size() != 1 + w.p * (3 + 2 * width) + w.p * w.p) {
    throw InputError("malformed graph code");
  }
  std::size_t i = 1;
  auto legs = [&]() {
    std::uint32_t x = 0;
    for (std::size_t k = 0; k < width; ++k) x = (x << 8) | byte(i++);
    return x;
  };
  for (std::size_t v = 0; v < w.p; ++v) {
    w.lab[v].r = byte(i++);
    w.lab[v].t = byte(i++);
    w.lab[v].g = byte(i++);
    w.in[v] = legs();
    w.out[v] = legs();
  }
  for (std::size_t a = 0; a < w.p; ++a)
    for (std::size_t b = 0; b < w.p; ++b) w.e[a][b] = byte(i++);
  return w;
}

Order identity_order(std::size_t p) {
  Order o{};
  std::iota(o.begin(), o.begin() + static_cast<long>(p), 0);
  return o;
}

// One way to send some of a vertex's flags to the lower half of a split.
struct FlagChoice {
  std::uint32_t legs = 0;                        // external legs taken
  std::array<std::uint8_t, kMaxVertices> counts{};  // edges taken from each neighbor
  std::int64_t ways = 1;                         // product of binomials
};

std::int64_t small_binomial(int n, int k) {
  std::int64_t b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// All choices grouped by how many flags they take.
std::vector<std::vector<FlagChoice>> flag_choices(std::uint32_t legs, const std::array<std::uint8_t, kMaxVertices>& mult,
                                                  std::size_t p, int total) {
  std::vector<std::vector<FlagChoice>> by_size(static_cast<std::size_t>(total) + 1);
  FlagChoice cur;
  auto rec = [&](auto&& self, std::size_t slot, int size, std::int64_t ways) -> void {
    if (slot == p) {
      std::uint32_t sub = legs;
      while (true) {
        FlagChoice c = cur;
        c.legs = sub;
        c.ways = ways;
        by_size[static_cast<std::size_t>(size + std::popcount(sub))].push_back(c);
        if (sub == 0) break;
        sub = (sub - 1) & legs;
      }
      return;
    }
    for (int a = 0; a <= mult[slot]; ++a) {
      cur.counts[slot] = static_cast<std::uint8_t>(a);
      self(self, slot + 1, size + a, ways * small_binomial(mult[slot], a));
    }
    cur.counts[slot] = 0;
  };
  rec(rec, 0, 0, 1);
  return by_size;
}

// Calls visit(h, ways, k) for every split of vertex x; the coefficient of h in
// d is ways / k! (before the vertex sign and reordering sign).
template <class Visit>
void split_vertex(const Work& w, std::size_t x, Visit&& visit) {
  if (w.p + 1 > kMaxVertices) throw InputError("graphs with more than 16 vertices are not supported");
  const GenLabel label = w.lab[x];
  std::array<std::uint8_t, kMaxVertices> in_mult{};
  std::array<std::uint8_t, kMaxVertices> out_mult{};
  for (std::size_t y = 0; y < w.p; ++y) {
    in_mult[y] = w.e[y][x];
    out_mult[y] = w.e[x][y];
  }
  const auto ins = flag_choices(w.in[x], in_mult, w.p, label.r);
  const auto outs = flag_choices(w.out[x], out_mult, w.p, label.t);

  // Old vertex y maps to y below x and to y + 1 above; x becomes upper (x) and lower (x + 1).
  auto slot = [&](std::size_t y) { return y < x ? y : y + 1; };
  const std::size_t up = x;
  const std::size_t lo = x + 1;
  Work h;
  h.r = w.r;
  h.t = w.t;
  h.p = w.p + 1;
  for (std::size_t y = 0; y < w.p; ++y) {
    if (y == x) continue;
    h.lab[slot(y)] = w.lab[y];
    h.in[slot(y)] = w.in[y];
    h.out[slot(y)] = w.out[y];
    for (std::size_t z = 0; z < w.p; ++z)
      if (z != x) h.e[slot(y)][slot(z)] = w.e[y][z];
  }

  for (int k = 1; k <= label.g + 1; ++k) {
    for (int g1 = 0; g1 <= label.g + 1 - k; ++g1) {
      const int g2 = label.g + 1 - k - g1;
      for (int i = 1; i <= label.r; ++i) {
        for (int j = k; j <= label.t + k - 1; ++j) {
          const GenLabel lower{i, j, g1};
          const GenLabel upper{label.r - i + k, label.t - j + k, g2};
          if (!is_valid_label(lower) || !is_valid_label(upper)) continue;
          h.lab[up] = upper;
          h.lab[lo] = lower;
          h.e[lo][up] = static_cast<std::uint8_t>(k);
          for (const auto& in : ins[static_cast<std::size_t>(i)]) {
            h.in[lo] = in.legs;
            h.in[up] = w.in[x] & ~in.legs;
            for (std::size_t y = 0; y < w.p; ++y) {
              if (y == x) continue;
              h.e[slot(y)][lo] = in.counts[y];
              h.e[slot(y)][up] = static_cast<std::uint8_t>(in_mult[y] - in.counts[y]);
            }
            for (const auto& out : outs[static_cast<std::size_t>(j - k)]) {
              h.out[lo] = out.legs;
              h.out[up] = w.out[x] & ~out.legs;
              for (std::size_t y = 0; y < w.p; ++y) {
                if (y == x) continue;
                h.e[lo][slot(y)] = out.counts[y];
                h.e[up][slot(y)] = static_cast<std::uint8_t>(out_mult[y] - out.counts[y]);
              }
              visit(h, in.ways * out.ways, k);
            }
          }
        }
      }
    }
  }
}

}  // namespace

CanonicalGraph canonical_form(const PropGraph& g) {
  const Work w = to_work(g);
  const Canon c = canonical_order(w);
  CanonicalGraph out;
  out.graph = to_graph(w, c.order);
  out.sign = c.sign;
  out.zero = c.zero;
  return out;
}

std::optional<std::pair<PropGraph, int>> canonicalize(const PropGraph& g) {
  validate(g);
  auto c = canonical_form(g);
  if (c.zero) return std::nullopt;
  return std::make_pair(std::move(c.graph), c.sign);
}

GraphCode encode(const PropGraph& g) {
  const Work w = to_work(g);
  return encode_work(w, identity_order(w.p));
}

PropGraph decode(const GraphCode& code, int r, int t) {
  const Work w = decode_work(code, r, t);
  return to_graph(w, identity_order(w.p));
}

void for_each_split(const PropGraph& g, std::size_t x, const std::function<void(PropGraph&&, const Scalar&)>& visit) {
  const Work w = to_work(g);
  split_vertex(w, x, [&](const Work& h, std::int64_t ways, int k) {
    visit(to_graph(h, identity_order(h.p)), ratio(Integer(static_cast<long>(ways)), factorial(k)));
  });
}

GraphVector differential(const PropGraph& canonical_graph) {
  const Work w = to_work(canonical_graph);
  GraphVector out;
  for (std::size_t x = 0; x < w.p; ++x) {
    const int sign = (x % 2 == 0) ? 1 : -1;
    split_vertex(w, x, [&](const Work& h, std::int64_t ways, int k) {
      const Canon c = canonical_order(h);
      if (c.zero) return;
      out.add(to_graph(h, c.order), ratio(Integer(static_cast<long>(ways * sign * c.sign)), factorial(k)));
    });
  }
  return out;
}

GraphVector differential(const GraphVector& v) {
  GraphVector out;
  for (const auto& [g, c] : v) out.add(differential(g), c);
  return out;
}

GraphVector d_generator(const GenLabel& label) {
  if (!is_valid_label(label)) {
    throw InputError("d_generator: (" + std::to_string(label.r) + "," + std::to_string(label.t) + "," +
                     std::to_string(label.g) + ") is not a reduced generator");
  }
  return differential(single_vertex(label));
}

int max_vertices(int r, int t, int g) { return 2 * g - 2 + r + t; }

std::int64_t differential_scale(int g) {
  std::int64_t s = 1;
  for (int i = 2; i <= g + 1; ++i) s *= i;
  return s;
}

SplitStep split_level(const std::vector<GraphCode>& graphs, const std::vector<GraphCode>& null_graphs, int r, int t,
                      int g, bool with_columns, Execution exec) {
  const std::int64_t scale = differential_scale(g);
  const std::size_t sources = graphs.size() + null_graphs.size();
  struct Hit {
    GraphCode code;
    std::int64_t coeff;
    bool zero;
  };
  std::unordered_map<GraphCode, std::uint32_t> nonzero_id;
  std::unordered_set<GraphCode> null;
  std::vector<GraphCode> by_id;
  SplitStep step;
  if (with_columns) step.columns.resize(graphs.size());

  // Splits are computed in parallel chunk by chunk, then merged in source
  // order so ids (and everything downstream) do not depend on the thread count.
  constexpr std::size_t chunk = 2048;
  std::vector<std::vector<Hit>> hits(chunk);
  for (std::size_t begin = 0; begin < sources; begin += chunk) {
    const std::size_t end = std::min(sources, begin + chunk);
    auto work = [&](std::size_t s) {
      auto& out = hits[s - begin];
      out.clear();
      const GraphCode& code = s < graphs.size() ? graphs[s] : null_graphs[s - graphs.size()];
      const Work w = decode_work(code, r, t);
      for (std::size_t x = 0; x < w.p; ++x) {
        const int sign = (x % 2 == 0) ? 1 : -1;
        split_vertex(w, x, [&](const Work& h, std::int64_t ways, int k) {
          const Canon c = canonical_order(h);
          out.push_back({encode_work(h, c.order), ways * sign * c.sign * (scale / differential_scale(k - 1)), c.zero});
        });
      }
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
      for (long s = static_cast<long>(begin); s < static_cast<long>(end); ++s) work(static_cast<std::size_t>(s));
    } else {
      for (std::size_t s = begin; s < end; ++s) work(s);
    }
    for (std::size_t s = begin; s < end; ++s) {
      const bool column = with_columns && s < graphs.size();
      std::vector<std::pair<std::uint32_t, std::int64_t>> entries;
      for (auto& hit : hits[s - begin]) {
        if (hit.zero) {
          null.insert(std::move(hit.code));
          continue;
        }
        auto [it, inserted] = nonzero_id.try_emplace(hit.code, static_cast<std::uint32_t>(by_id.size()));
        if (inserted) by_id.push_back(std::move(hit.code));
        if (column) entries.emplace_back(it->second, hit.coeff);
      }
      if (column) {
        std::sort(entries.begin(), entries.end());
        auto& col = step.columns[s];
        for (const auto& [row, v] : entries) {
          if (!col.empty() && col.back().first == row) {
            col.back().second += v;
          } else {
            col.emplace_back(row, v);
          }
        }
        std::erase_if(col, [](const auto& e) { return e.second == 0; });
      }
      hits[s - begin].clear();
    }
  }
  nonzero_id.clear();

  // Rows in code order.
  std::vector<std::uint32_t> sorted(by_id.size());
  std::iota(sorted.begin(), sorted.end(), 0);
  std::sort(sorted.begin(), sorted.end(), [&](std::uint32_t a, std::uint32_t b) { return by_id[a] < by_id[b]; });
  std::vector<std::uint32_t> position(by_id.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) position[sorted[i]] = static_cast<std::uint32_t>(i);
  step.graphs.reserve(by_id.size());
  for (auto id : sorted) step.graphs.push_back(std::move(by_id[id]));
  for (auto& col : step.columns) {
    for (auto& e : col) e.first = position[e.first];
    std::sort(col.begin(), col.end());
  }
  step.null_graphs.assign(null.begin(), null.end());
  std::sort(step.null_graphs.begin(), step.null_graphs.end());
  return step;
}

BasisLevel first_level(int r, int t, int g) {
  BasisLevel level;
  const GenLabel label{r, t, g};
  if (is_valid_label(label)) level.graphs.push_back(single_vertex(label));
  return level;
}

BasisLevel next_level(const BasisLevel& previous, int r, int t, int g, Execution exec) {
  std::vector<GraphCode> graphs;
  std::vector<GraphCode> null_graphs;
  for (const auto& x : previous.graphs) graphs.push_back(encode(x));
  for (const auto& x : previous.null_graphs) null_graphs.push_back(encode(x));
  std::sort(graphs.begin(), graphs.end());
  std::sort(null_graphs.begin(), null_graphs.end());
  const SplitStep step = split_level(graphs, null_graphs, r, t, g, false, exec);
  BasisLevel level;
  for (const auto& c : step.graphs) level.graphs.push_back(decode(c, r, t));
  for (const auto& c : step.null_graphs) level.null_graphs.push_back(decode(c, r, t));
  return level;
}

std::vector<PropGraph> enumerate_basis(int r, int t, int g, int p) {
  if (p < 1) return {};
  BasisLevel level = first_level(r, t, g);
  for (int q = 2; q <= p; ++q) {
    if (level.graphs.empty() && level.null_graphs.empty()) return {};
    level = next_level(level, r, t, g);
  }
  return level.graphs;
}

}  // namespace weylprop
