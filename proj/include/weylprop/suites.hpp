#pragma once

// Property suites behind `weylprop verify`: each runs a family of exact checks
// and reports one line per case. Randomized suites take an explicit seed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "weylprop/correspondence.hpp"
#include "weylprop/weyl.hpp"

namespace weylprop {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct CaseResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;

  bool passed() const;
  std::size_t failures() const;
};

using Rng = std::mt19937_64;

/// dim elements named x0, x1, ... with degrees in [-1, 2]; at least one odd
/// when need_odd is set.
GradedBasis random_basis(Rng& rng, int dim, bool need_odd);
/// Degrees reachable by a nonzero map S^in V -> S^out V.
std::vector<int> reachable_degrees(const GradedBasis& basis, int in, int out);
/// Each admissible (x -> y) entry is present with probability density, with a
/// small nonzero rational coefficient. May come out empty.
SymOp random_symop(Rng& rng, const GradedBasis& basis, int in, int out, int degree, double density);
/// A reduced element of the given degree with components g <= bounds.g_max and
/// 1 <= in, out <= bounds.arity_max, each present with probability density.
WeylElement random_reduced(Rng& rng, const GradedBasis& basis, int degree, Truncation bounds, double density);
/// The symmetrization sum_{sigma, tau} tau X sigma of a random tensor map, as a family.
StructureFamily random_family(Rng& rng, const GradedBasis& basis, int degree, Truncation bounds, double density);

/// Every x -> y with x in S^in V, y in S^out V, as a SymOp of its own degree.
std::vector<SymOp> elementary_ops(const GradedBasis& basis, int in, int out);

/// Coordinate-free star product against the p-q normal-ordering product, through hbar^2.
SuiteReport star_oracle_suite(int pairs, std::uint64_t seed);
/// s^k (id (x) iota s^l) = s^k and both diagrams of the k-l factor lemma on all words of length <= k_max.
SuiteReport lemma_suite(int k_max);
/// The symmetric/tensor gluing comparison on all pairs of elementary maps with
/// arities <= arity_max over a two-dimensional mixed-parity V, for every k.
SuiteReport compare_circk_suite(int arity_max);
/// Coassociativity and both counit laws of coFrob for m <= m_max, n <= n_max, genus <= g_max.
SuiteReport coassoc_suite(int m_max, int n_max, int g_max, std::size_t budget = 1'000'000'000);
/// d(d x) = 0 on every generator with r + t <= rt_max, g <= g_max, and on every
/// basis graph of those cells with at most p_max vertices.
SuiteReport dsq_suite(int rt_max, int g_max, int p_max);
/// Square-zero verdicts against properadic relation verdicts component by
/// component, plus both roundtrips, on `count` elements over dim V <= dim_max.
SuiteReport theorem_suite(int count, std::uint64_t seed, int dim_max, Truncation bounds = {2, 3});

}  // namespace weylprop
