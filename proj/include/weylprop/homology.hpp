#pragma once

// Per-cell chain complexes (Omega(coFrob)(r,t,g), d), their Betti numbers,
// boundary/cycle membership, and the four relation classes of involutive Lie
// bialgebras.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "weylprop/basis_cache.hpp"
#include "weylprop/cobar.hpp"
#include "weylprop/linalg.hpp"

namespace weylprop {

struct CellKey {
  int r = 0;
  int t = 0;
  int g = 0;
  auto operator<=>(const CellKey&) const = default;
};

struct BuildLimits {
  int p_max = 0;                     // 0: up to max_vertices(r, t, g)
  std::size_t max_basis = 20'000'000;  // classes (nonzero and null) allowed in one degree
};

/// Degree -p has basis bases[p - 1] (codes in code order). boundaries[p - 1]
/// is scale * d from degree -p to degree -(p + 1): columns index degree -p,
/// rows degree -(p + 1). A truncated cell stops at its last complete degree
/// and has no boundary out of it.
struct ChainCell {
  CellKey key;
  bool truncated = false;
  std::string truncation_reason;
  std::int64_t scale = 1;
  std::vector<std::vector<GraphCode>> bases;
  std::vector<SparseMatrix> boundaries;

  int degrees() const { return static_cast<int>(bases.size()); }
  std::size_t dim(int p) const;
  PropGraph graph(int p, std::size_t i) const;
  std::optional<std::size_t> index_of(int p, const PropGraph& canonical) const;
};

/// Enumerates degree by degree, building each boundary alongside the next
/// basis. Levels are stored in the cache when one is given.
ChainCell build_complex(int r, int t, int g, BuildLimits limits = {}, const BasisCache* cache = nullptr,
                        Execution exec = Execution::parallel);

/// How the rank of one boundary map was obtained.
enum class RankMethod {
  exact,     // fraction-free elimination over Z
  certified  // modular rank matched by the upper bound that d^2 = 0 and the neighboring ranks give
};

struct BettiRow {
  CellKey key;
  bool complete = false;
  std::vector<std::size_t> dims;    // dims[p - 1] = dim of degree -p
  std::vector<std::size_t> ranks;   // ranks[p - 1] = rank of the boundary out of degree -p
  std::vector<RankMethod> methods;
  std::vector<long> betti;          // betti[p - 1], complete cells only
  long euler_chains = 0;            // sum (-1)^p dim
  long euler_betti = 0;             // sum (-1)^p betti
};

/// Options for rank computation: maps with at most exact_nonzeros entries are
/// always eliminated exactly; larger ones go through a certified modular rank
/// and fall back to exact elimination if the certificate does not close.
struct RankOptions {
  std::size_t exact_nonzeros = 20'000;
  std::uint32_t prime = 2147483629u;
};

/// Throws TruncatedError on a truncated cell, and std::logic_error when
/// consecutive boundaries do not compose to zero.
BettiRow betti(const ChainCell& cell, RankOptions options = {});

/// A row for a truncated cell: dimensions of the complete degrees, no Betti numbers.
BettiRow truncated_row(const ChainCell& cell);

/// x must be homogeneous (one vertex count) in the cell; throws InputError otherwise.
bool is_cycle(const GraphVector& x, const ChainCell& cell);
bool is_boundary(const GraphVector& x, const ChainCell& cell);

/// jacobi (3,1,0), cojacobi (1,3,0), five_term (2,2,0), involutivity (1,1,1).
/// Two-vertex graphs listed upper vertex first, each with coefficient +1
/// before canonical reordering. Throws InputError on an unknown name.
GraphVector relation_class(const std::string& name);
CellKey relation_cell(const std::string& name);
const std::vector<std::string>& relation_names();

/// Cells with r, t >= 1, r + t <= rt_sum_max (when > 0), r, t <= arity_max
/// (when > 0), g <= g_max; the empty cell (1,1,0) is skipped. Sorted.
std::vector<CellKey> grid_cells(int rt_sum_max, int arity_max, int g_max);

struct HomologyTable {
  std::vector<BettiRow> rows;  // sorted by cell
};

/// r + t + 2g >= 9: cells that may need gigabytes.
bool is_large_cell(const CellKey& key);

/// Builds and reduces every cell. Small cells are distributed over threads;
/// large cells follow one at a time, each using all threads. Results do not
/// depend on the thread count. Truncated cells get truncated_row.
HomologyTable homology_table(const std::vector<CellKey>& cells, BuildLimits limits, const BasisCache* cache,
                             RankOptions options = {});

/// Header r,t,g,degree,dim_chains,betti; betti is empty on truncated cells.
std::string table_csv(const HomologyTable& table);
nlohmann::json table_json(const HomologyTable& table);

}  // namespace weylprop
