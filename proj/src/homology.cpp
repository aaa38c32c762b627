#include "weylprop/homology.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "weylprop/errors.hpp"

namespace weylprop {

std::size_t ChainCell::dim(int p) const {
  if (p < 1 || p > degrees()) return 0;
  return bases[static_cast<std::size_t>(p - 1)].size();
}

PropGraph ChainCell::graph(int p, std::size_t i) const {
  return decode(bases.at(static_cast<std::size_t>(p - 1)).at(i), key.r, key.t);
}

std::optional<std::size_t> ChainCell::index_of(int p, const PropGraph& canonical) const {
  if (p < 1 || p > degrees()) return std::nullopt;
  const auto& basis = bases[static_cast<std::size_t>(p - 1)];
  const GraphCode code = encode(canonical);
  auto it = std::lower_bound(basis.begin(), basis.end(), code);
  if (it == basis.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - basis.begin());
}

namespace {

void store_level(const BasisCache* cache, const CellKey& key, int p, const std::vector<GraphCode>& graphs,
                 const std::vector<GraphCode>& nulls) {
  if (cache == nullptr || std::filesystem::exists(cache->file_for(key.r, key.t, key.g, p))) return;
  BasisLevel level;
  for (const auto& c : graphs) level.graphs.push_back(decode(c, key.r, key.t));
  for (const auto& c : nulls) level.null_graphs.push_back(decode(c, key.r, key.t));
  cache->store(key.r, key.t, key.g, p, level);
}

}  // namespace

ChainCell build_complex(int r, int t, int g, BuildLimits limits, const BasisCache* cache, Execution exec) {
  if (r < 1 || t < 1 || g < 0) throw InputError("cell needs r, t >= 1 and g >= 0");
  ChainCell cell;
  cell.key = {r, t, g};
  cell.scale = differential_scale(g);
  if (!is_valid_label({r, t, g})) return cell;  // (1,1,0): no generators at all

  const int top = max_vertices(r, t, g);
  const int p_max = limits.p_max > 0 ? std::min(limits.p_max, top) : top;
  std::vector<GraphCode> graphs{encode(single_vertex({r, t, g}))};
  std::vector<GraphCode> nulls;
  store_level(cache, cell.key, 1, graphs, nulls);
  for (int p = 1; p < p_max; ++p) {
    SplitStep step = split_level(graphs, nulls, r, t, g, true, exec);
    if (step.graphs.size() + step.null_graphs.size() > limits.max_basis) {
      cell.bases.push_back(std::move(graphs));
      cell.truncated = true;
      cell.truncation_reason = "degree -" + std::to_string(p + 1) + " has more than " +
                               std::to_string(limits.max_basis) + " classes";
      return cell;
    }
    SparseMatrix d;
    d.rows = step.graphs.size();
    d.cols = graphs.size();
    d.columns = std::move(step.columns);
    cell.bases.push_back(std::move(graphs));
    cell.boundaries.push_back(std::move(d));
    graphs = std::move(step.graphs);
    nulls = std::move(step.null_graphs);
    store_level(cache, cell.key, p + 1, graphs, nulls);
  }
  const bool last_nonempty = !graphs.empty() || !nulls.empty();
  cell.bases.push_back(std::move(graphs));
  if (p_max < top && last_nonempty) {
    // A level below the top has a vertex of weight >= 2, which always splits.
    cell.truncated = true;
    cell.truncation_reason = "stopped at degree -" + std::to_string(p_max);
    return cell;
  }
  // Past the top degree there is nothing: the last boundary maps to zero.
  SparseMatrix last;
  last.cols = cell.bases.back().size();
  last.columns.resize(last.cols);
  cell.boundaries.push_back(std::move(last));
  return cell;
}

BettiRow truncated_row(const ChainCell& cell) {
  BettiRow row;
  row.key = cell.key;
  row.complete = false;
  for (const auto& b : cell.bases) row.dims.push_back(b.size());
  return row;
}

BettiRow betti(const ChainCell& cell, RankOptions options) {
  if (cell.truncated) {
    throw TruncatedError("cell (" + std::to_string(cell.key.r) + "," + std::to_string(cell.key.t) + "," +
                         std::to_string(cell.key.g) + ") is truncated: " + cell.truncation_reason);
  }
  const std::size_t n = cell.bases.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!product_is_zero(cell.boundaries[i + 1], cell.boundaries[i])) {
      throw std::logic_error("boundary maps do not compose to zero");
    }
  }
  BettiRow row;
  row.key = cell.key;
  row.complete = true;
  for (const auto& b : cell.bases) row.dims.push_back(b.size());

  // Lower bounds: exact ranks for small maps, modular ranks for large ones.
  std::vector<std::size_t> lower(n, 0);
  std::vector<char> known(n, 0);
  row.methods.assign(n, RankMethod::exact);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = cell.boundaries[i];
    if (d.nonzeros() <= options.exact_nonzeros) {
      lower[i] = rank(d);
      known[i] = 1;
    } else {
      lower[i] = rank_mod(d, options.prime);
    }
  }
  // Since d^2 = 0, rank d_i + rank d_{i+1} <= dim of the space between them;
  // a modular rank that reaches this bound is the rational rank.
  auto certify = [&]() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (known[i]) continue;
        const auto& d = cell.boundaries[i];
        std::size_t upper = std::min(d.rows, d.cols);
        if (i > 0) upper = std::min(upper, row.dims[i] - lower[i - 1]);
        if (i + 1 < n) upper = std::min(upper, row.dims[i + 1] - lower[i + 1]);
        if (lower[i] == upper) {
          known[i] = 1;
          row.methods[i] = RankMethod::certified;
          changed = true;
        }
      }
    }
  };
  certify();
  // Anything left is eliminated exactly, smallest first.
  while (true) {
    std::optional<std::size_t> next;
    for (std::size_t i = 0; i < n; ++i) {
      if (known[i]) continue;
      if (!next || cell.boundaries[i].nonzeros() < cell.boundaries[*next].nonzeros()) next = i;
    }
    if (!next) break;
    lower[*next] = rank(cell.boundaries[*next]);
    known[*next] = 1;
    row.methods[*next] = RankMethod::exact;
    certify();
  }
  row.ranks = lower;
  for (std::size_t i = 0; i < n; ++i) {
    const long b = static_cast<long>(row.dims[i]) - static_cast<long>(row.ranks[i]) -
                   (i > 0 ? static_cast<long>(row.ranks[i - 1]) : 0L);
    row.betti.push_back(b);
    const long sign = (i % 2 == 0) ? -1 : 1;  // degree -(i + 1)
    row.euler_chains += sign * static_cast<long>(row.dims[i]);
    row.euler_betti += sign * b;
  }
  return row;
}

namespace {

// Canonical terms of x in the cell and their common vertex count.
std::pair<GraphVector, int> homogeneous_in_cell(const GraphVector& x, const ChainCell& cell) {
  GraphVector canonical;
  int p = 0;
  for (const auto& [graph, c] : x) {
    if (graph.r != cell.key.r || graph.t != cell.key.t || graph.genus() != cell.key.g) {
      throw InputError("graph vector does not lie in this cell");
    }
    const int q = static_cast<int>(graph.size());
    if (p != 0 && q != p) throw InputError("graph vector is not homogeneous in degree");
    p = q;
    if (auto cg = canonicalize(graph)) canonical.add(cg->first, c * cg->second);
  }
  return {canonical, p};
}

}  // namespace

bool is_cycle(const GraphVector& x, const ChainCell& cell) {
  if (cell.truncated) throw TruncatedError("membership test on a truncated cell");
  const auto [v, p] = homogeneous_in_cell(x, cell);
  (void)p;
  return differential(v).empty();
}

bool is_boundary(const GraphVector& x, const ChainCell& cell) {
  if (cell.truncated) throw TruncatedError("membership test on a truncated cell");
  const auto [v, p] = homogeneous_in_cell(x, cell);
  if (v.empty()) return true;
  if (p < 2) return false;  // nothing maps into degree -1
  std::vector<std::pair<std::uint32_t, Scalar>> b;
  for (const auto& [graph, c] : v) {
    const auto idx = cell.index_of(p, graph);
    if (!idx) throw InputError("graph is not a basis class of this cell");
    b.emplace_back(static_cast<std::uint32_t>(*idx), c);
  }
  return in_column_space(cell.boundaries[static_cast<std::size_t>(p - 2)], b);
}

namespace {

std::uint32_t bit(int leg) { return std::uint32_t{1} << (leg - 1); }

// Upper vertex 0, lower vertex 1, e edges from lower to upper.
PropGraph two_vertex(int r, int t, GenLabel upper, std::uint32_t upper_in, std::uint32_t upper_out, GenLabel lower,
                     std::uint32_t lower_in, std::uint32_t lower_out, int e) {
  PropGraph g;
  g.r = r;
  g.t = t;
  g.labels = {upper, lower};
  g.in_legs = {upper_in, lower_in};
  g.out_legs = {upper_out, lower_out};
  g.edges = {0, 0, e, 0};
  return g;
}

}  // namespace

const std::vector<std::string>& relation_names() {
  static const std::vector<std::string> names{"jacobi", "cojacobi", "five_term", "involutivity"};
  return names;
}

CellKey relation_cell(const std::string& name) {
  if (name == "jacobi") return {3, 1, 0};
  if (name == "cojacobi") return {1, 3, 0};
  if (name == "five_term") return {2, 2, 0};
  if (name == "involutivity") return {1, 1, 1};
  throw InputError("unknown relation class \"" + name + "\"");
}

GraphVector relation_class(const std::string& name) {
  const GenLabel mu{2, 1, 0};
  const GenLabel delta{1, 2, 0};
  std::vector<PropGraph> graphs;
  if (name == "jacobi") {
    // [mu] o_1 [mu] (1 + sigma + sigma^2): the leg that meets the upper bracket.
    for (int a = 1; a <= 3; ++a) graphs.push_back(two_vertex(3, 1, mu, bit(a), bit(1), mu, 0b111 & ~bit(a), 0, 1));
  } else if (name == "cojacobi") {
    for (int b = 1; b <= 3; ++b) graphs.push_back(two_vertex(1, 3, delta, 0, 0b111 & ~bit(b), delta, bit(1), bit(b), 1));
  } else if (name == "five_term") {
    graphs.push_back(two_vertex(2, 2, delta, 0, 0b11, mu, 0b11, 0, 1));
    for (int i = 1; i <= 2; ++i)
      for (int o = 1; o <= 2; ++o)
        graphs.push_back(two_vertex(2, 2, mu, 0b11 & ~bit(i), 0b11 & ~bit(o), delta, bit(i), bit(o), 1));
  } else if (name == "involutivity") {
    graphs.push_back(two_vertex(1, 1, mu, 0, bit(1), delta, bit(1), 0, 2));
  } else {
    throw InputError("unknown relation class \"" + name + "\"");
  }
  GraphVector out;
  for (const auto& g : graphs)
    if (auto c = canonicalize(g)) out.add(c->first, Scalar(c->second));
  return out;
}

std::vector<CellKey> grid_cells(int rt_sum_max, int arity_max, int g_max) {
  std::vector<CellKey> cells;
  const int bound = std::max(rt_sum_max, 2 * arity_max);
  for (int r = 1; r <= bound; ++r) {
    for (int t = 1; t <= bound; ++t) {
      if (rt_sum_max > 0 && r + t > rt_sum_max) continue;
      if (arity_max > 0 && (r > arity_max || t > arity_max)) continue;
      for (int g = 0; g <= g_max; ++g) {
        if (r == 1 && t == 1 && g == 0) continue;
        cells.push_back({r, t, g});
      }
    }
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

bool is_large_cell(const CellKey& key) { return key.r + key.t + 2 * key.g >= 9; }

HomologyTable homology_table(const std::vector<CellKey>& cells, BuildLimits limits, const BasisCache* cache,
                             RankOptions options) {
  HomologyTable table;
  table.rows.resize(cells.size());
  std::vector<std::string> errors(cells.size());
  auto run = [&](std::size_t a) {
    const auto& key = cells[a];
    try {
      const ChainCell cell = build_complex(key.r, key.t, key.g, limits, cache);
      table.rows[a] = cell.truncated ? truncated_row(cell) : betti(cell, options);
    } catch (const std::exception& e) {
      errors[a] = e.what();
    }
  };
  // Large cells one at a time (parallel inside), so two of them never share memory.
  std::vector<std::size_t> small;
  std::vector<std::size_t> large;
  for (std::size_t a = 0; a < cells.size(); ++a)
    (is_large_cell(cells[a]) ? large : small).push_back(a);
  const auto n = static_cast<long>(small.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) run(small[static_cast<std::size_t>(i)]);
  for (auto a : large) run(a);
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);
  std::sort(table.rows.begin(), table.rows.end(), [](const BettiRow& x, const BettiRow& y) { return x.key < y.key; });
  return table;
}

std::string table_csv(const HomologyTable& table) {
  std::ostringstream out;
  out << "r,t,g,degree,dim_chains,betti\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.dims.size(); ++i) {
      out << row.key.r << ',' << row.key.t << ',' << row.key.g << ',' << -static_cast<long>(i + 1) << ','
          << row.dims[i] << ',';
      if (row.complete) out << row.betti[i];
      out << '\n';
    }
  }
  return out.str();
}

nlohmann::json table_json(const HomologyTable& table) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json degrees = nlohmann::json::array();
    for (std::size_t i = 0; i < row.dims.size(); ++i) {
      nlohmann::json d = {{"degree", -static_cast<long>(i + 1)}, {"dim_chains", row.dims[i]}};
      if (row.complete) {
        d["betti"] = row.betti[i];
        d["boundary_rank"] = row.ranks[i];
        d["rank_method"] = row.methods[i] == RankMethod::exact ? "exact" : "certified";
      }
      degrees.push_back(d);
    }
    nlohmann::json c = {{"r", row.key.r},
                        {"t", row.key.t},
                        {"g", row.key.g},
                        {"status", row.complete ? "complete" : "truncated"},
                        {"degrees", degrees}};
    if (row.complete) {
      c["euler_chains"] = row.euler_chains;
      c["euler_betti"] = row.euler_betti;
    }
    cells.push_back(c);
  }
  return {{"cells", cells}};
}

}  // namespace weylprop
