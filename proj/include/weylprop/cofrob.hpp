#pragma once

// The coFrob coproperad: one generator per valid (m, n, chi), decomposition
// over connected two-level graphs weighted by prod 1/e(u,v)!, and counit.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "weylprop/rational.hpp"

namespace weylprop {

struct CoFrobPiece {
  int m = 0;
  int n = 0;
  int chi = 0;
  auto operator<=>(const CoFrobPiece&) const = default;
};

bool is_valid_piece(int m, int n, int chi);
/// (chi + 2 - m - n) / 2. Throws InputError on an invalid piece.
int genus_of(int m, int n, int chi);

/// A vertex of a two-level graph: the external legs it carries (1-based labels,
/// increasing) and its weight.
struct LevelVertex {
  std::vector<int> legs;
  int chi = 0;
  auto operator<=>(const LevelVertex&) const = default;
};

/// Lower vertices carry inputs, upper vertices carry outputs; edges run upward.
/// Vertices on each level are ordered by their smallest leg.
struct TwoLevelGraph {
  int m = 0;
  int n = 0;
  std::vector<LevelVertex> lower;
  std::vector<LevelVertex> upper;
  std::vector<int> edges;  // edges[u * upper.size() + v] = e(u, v)

  int e(std::size_t u, std::size_t v) const { return edges[u * upper.size() + v]; }
  int lower_out(std::size_t u) const;
  int upper_in(std::size_t v) const;
  int total_chi() const;
  auto operator<=>(const TwoLevelGraph&) const = default;
};

/// All structural requirements on a decomposition term of (m, n, chi).
bool is_valid_two_level(const TwoLevelGraph& g, int m, int n, int chi);

/// prod over (u, v) of 1/e(u,v)!.
Scalar eta(const TwoLevelGraph& g);

struct Decomposition {
  TwoLevelGraph graph;
  Scalar coeff;
};

/// Delta(1_{m,n,chi}) in enumeration order: input partition, output partition,
/// edge matrix, weights. Terms are kept packed in a thread-safe memo and
/// expanded here on each call. Throws InputError on an invalid piece.
std::vector<Decomposition> decompose(int m, int n, int chi);
/// Number of terms of decompose(m, n, chi), from the memo.
std::size_t decomposition_size(int m, int n, int chi);

/// Middle vertex of a three-level graph, identified by its weight and its edge
/// counts to the (labelled) bottom and top levels.
struct MiddleVertex {
  int chi = 0;
  std::vector<int> from_lower;
  std::vector<int> to_upper;
  auto operator<=>(const MiddleVertex&) const = default;
};

/// Canonical form: lower and upper blocks ordered by smallest leg, middle vertices sorted.
struct ThreeLevelGraph {
  std::vector<LevelVertex> lower;
  std::vector<MiddleVertex> middle;
  std::vector<LevelVertex> upper;
  auto operator<=>(const ThreeLevelGraph&) const = default;
};

using ThreeLevelVector = std::map<ThreeLevelGraph, Scalar>;

struct CoassocReport {
  bool equal = false;
  std::size_t graphs_compared = 0;
  std::size_t terms_planned = 0;
};

/// Both iterated decompositions as formal sums of canonical three-level graphs:
/// lower vertices expanded ((Delta (x) id) Delta) or upper vertices expanded.
ThreeLevelVector expand_iterated(int m, int n, int chi, bool expand_lower_level);

/// Compares the two iterated decompositions without materializing either one:
/// each side is expanded one generating two-level graph at a time into
/// byte-encoded three-level graphs, which are sorted and merged; every
/// coefficient is checked against prod 1/e12! prod 1/e23! prod 1/|W_i|! (W_i
/// being classes of identical middle vertices), every term is checked to lie in
/// the other side's support, and the support sizes are compared. Throws
/// BudgetExhausted when more than projection_budget three-level terms would be
/// generated.
CoassocReport coassoc_report(int m, int n, int chi, std::size_t projection_budget);
bool check_coassoc(int m, int n, int chi, std::size_t projection_budget = 50'000'000);

/// Both counit laws: exactly one term survives each projection and it has coefficient 1.
bool counit_check(int m, int n, int chi);

/// Closed-form coefficient a three-level graph must carry on both sides.
Scalar three_level_coefficient(const ThreeLevelGraph& g);

}  // namespace weylprop
