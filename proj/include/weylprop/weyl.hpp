#pragma once

// Operators between symmetric and tensor powers, the partial gluings o_k on
// both sides, the star product, and square-zero checking.

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "weylprop/graded.hpp"

namespace weylprop {

enum class Execution { serial, parallel };

/// Linear map S^in V -> S^out V of fixed degree, given on canonical monomials.
struct SymOp {
  int in = 0;
  int out = 0;
  int degree = 0;
  std::map<SymMonomial, SymVector> entries;

  SymOp() = default;
  SymOp(int in_arity, int out_arity, int deg) : in(in_arity), out(out_arity), degree(deg) {}

  /// Adds coeff * (x -> y). Throws InputError on arity or degree mismatch.
  void add(const GradedBasis& basis, const SymMonomial& x, const SymMonomial& y, const Scalar& coeff);
  void add_row(const SymMonomial& x, const SymVector& image);

  SymVector apply(const SymMonomial& x) const;
  SymVector apply(const SymVector& v) const;

  bool is_zero() const { return entries.empty(); }
  SymOp& operator+=(const SymOp& other);
  SymOp& operator*=(const Scalar& s);
  bool operator==(const SymOp& other) const;
};

/// Linear map T^in V -> T^out V given on (a subset of) the full word basis.
struct TensorOp {
  int in = 0;
  int out = 0;
  int degree = 0;
  std::map<TensorWord, TensorVector> entries;

  TensorOp() = default;
  TensorOp(int in_arity, int out_arity, int deg) : in(in_arity), out(out_arity), degree(deg) {}

  void add_row(const TensorWord& x, const TensorVector& image);
  TensorVector apply(const TensorWord& x) const;
  TensorVector apply(const TensorVector& v) const;

  bool is_zero() const { return entries.empty(); }
  TensorOp& operator+=(const TensorOp& other);
  TensorOp& operator*=(const Scalar& s);
  bool operator==(const TensorOp& other) const;
};

/// iota o f o s on every word of T^in V.
TensorOp tensor_from_sym(const GradedBasis& basis, const SymOp& f);
/// s o phi o iota on every canonical monomial of S^in V.
SymOp sym_from_tensor(const GradedBasis& basis, const TensorOp& phi);

/// (phi (x) id^{j-k}) o (id^{m-k} (x) psi); zero when k > m or k > j.
TensorOp tensor_circ_k(const GradedBasis& basis, const TensorOp& phi, const TensorOp& psi, int k);

/// C(m+i-k, i) C(j, k) s((iota g s) o_k (iota f s)) iota; zero when k > m or k > j.
SymOp sym_circ_k(const GradedBasis& basis, const SymOp& g, const SymOp& f, int k);

/// tau o X o sigma for TensorOps, with Koszul signs on both sides.
TensorOp permute_outputs(const GradedBasis& basis, const Permutation& tau, const TensorOp& x);
TensorOp permute_inputs(const GradedBasis& basis, const TensorOp& x, const Permutation& sigma);

struct ComponentKey {
  int g = 0;  // hbar power
  int in = 0;
  int out = 0;
  auto operator<=>(const ComponentKey&) const = default;
};

/// Explicit cutoff: results are exact for genus <= g_max and arities <= arity_max,
/// and absent above.
struct Truncation {
  int g_max = 2;
  int arity_max = 3;
};

/// sum_g hbar^g sigma_(g) with sigma_(g) split into (sigma_(g))_i^j : S^i V -> S^j V.
struct WeylElement {
  int degree = 0;
  bool reduced = false;
  Truncation bounds{};
  std::map<ComponentKey, SymOp> components;

  /// Adds op into component (g, op.in, op.out).
  void add(int g, const SymOp& op);
  const SymOp* find(const ComponentKey& key) const;
  bool has_zero_arity_component() const;
  bool is_zero() const { return components.empty(); }
  bool operator==(const WeylElement& other) const;
};

/// a * b = sum_k (a o_k b) hbar^k, with hbar weights of the factors added.
WeylElement star(const GradedBasis& basis, const WeylElement& a, const WeylElement& b,
                 Truncation bounds, Execution exec = Execution::parallel);
WeylElement star(const GradedBasis& basis, const SymOp& g, const SymOp& f, Truncation bounds);

struct SquareZeroWitness {
  ComponentKey component;
  SymMonomial input;
  SymVector output;
};

struct SquareZeroVerdict {
  bool zero = true;
  std::optional<SquareZeroWitness> witness;
  /// Every nonzero component of H*H within the bounds, in report order.
  std::vector<ComponentKey> nonzero_components;
  WeylElement square;
};

/// Computes H*H within the bounds. Components are scanned by increasing total
/// arity, then genus, then input arity. Throws UnreducedError if H has a
/// component with zero input or output arity.
SquareZeroVerdict square_zero_report(const GradedBasis& basis, const WeylElement& h, Truncation bounds,
                                     Execution exec = Execution::parallel);

struct CompareCircSides {
  TensorOp symmetric_side;  // ((j+n-k)! k! / (n! j!)) iota (g o_k f) s
  TensorOp tensor_side;     // sum_{sigma, tau} tau ((iota g s) o_k (iota f s)) sigma
};

/// Evaluates both sides of the symmetric/tensor gluing comparison on the full word basis.
CompareCircSides compare_circ_k_sides(const GradedBasis& basis, const SymOp& f, const SymOp& g, int k);
bool compare_circ_k_check(const GradedBasis& basis, const SymOp& f, const SymOp& g, int k);

}  // namespace weylprop
