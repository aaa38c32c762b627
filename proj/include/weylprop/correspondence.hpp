#pragma once

// Structure families {phi_{r,t,g}} of graded symmetric maps T^r V -> T^t V and
// their packaging as Weyl elements. The (1,1,0) slot, when present, holds
// -d for the differential d of V, so every coherence relation is the
// homogeneous quadratic sum_k 1/k! sum tau (phi o_k phi) sigma = 0.

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "weylprop/weyl.hpp"

namespace weylprop {

struct FamilyKey {
  int r = 0;
  int t = 0;
  int g = 0;
  auto operator<=>(const FamilyKey&) const = default;
};

struct StructureFamily {
  int degree = -1;
  std::map<FamilyKey, TensorOp> maps;

  /// Adds op into the (op.in, op.out, g) slot.
  void add(int g, const TensorOp& op);
  const TensorOp* find(const FamilyKey& key) const;
  bool operator==(const StructureFamily& other) const;
};

/// sigma phi = phi = phi sigma' for all leg permutations, with Koszul signs.
bool is_symmetric(const GradedBasis& basis, const TensorOp& phi);

/// Component (g, r, t) of H is (1/t!) s phi_{r,t,g} iota. Throws UnreducedError
/// on a zero-arity map and InputError on a non-symmetric one.
WeylElement family_to_weyl(const GradedBasis& basis, const StructureFamily& f);

/// phi_{r,t,g} = t! iota H_r^{t (g)} s. Throws UnreducedError on unreduced H.
StructureFamily weyl_to_family(const GradedBasis& basis, const WeylElement& h);

/// The (r, t, g) coherence relation evaluated on every word of T^r V:
/// sum over (m, n, g2), (i, j, g1), k >= 1 with m - k + i = r, n + j - k = t,
/// g1 + g2 + k - 1 = g of 1/k! sum_{sigma, tau} tau (phi_{m,n,g2} o_k phi_{i,j,g1}) sigma,
/// sigma over (r, m - k) unshuffles of the inputs and tau over (t, n) output shuffles.
TensorOp relation_tensor(const GradedBasis& basis, const StructureFamily& f, const FamilyKey& key);

struct RelationWitness {
  FamilyKey key;
  TensorWord input;
  TensorVector output;
};

struct RelationVerdict {
  bool zero = true;
  std::optional<RelationWitness> witness;
  std::vector<FamilyKey> nonzero;  // ordered by (r + t, g, r, t)
};

/// Every relation with r, t <= bounds.arity_max and g <= bounds.g_max. The
/// relation of genus g matches the hbar^(g+1) part of H * H, so compare with
/// square_zero_report at g_max + 1.
RelationVerdict check_relations(const GradedBasis& basis, const StructureFamily& f, Truncation bounds,
                                Execution exec = Execution::parallel);

}  // namespace weylprop
