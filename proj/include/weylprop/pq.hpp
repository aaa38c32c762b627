#pragma once

// Coordinate form of the Weyl algebra: normal-ordered words q_J p^I hbar^g
// subject to [p^l, q_l'] = hbar delta and graded commutativity otherwise.
// This is an independent route to the star product.

#include <compare>
#include <string>
#include <vector>

#include "weylprop/graded.hpp"
#include "weylprop/weyl.hpp"

namespace weylprop {

/// c * q_{q} p^{p} hbar^{hbar}; q and p are canonical monomials.
struct PQTerm {
  int hbar = 0;
  SymMonomial q;
  SymMonomial p;
  auto operator<=>(const PQTerm&) const = default;
};

using PQExpression = FormalVector<PQTerm>;

struct PQLetter {
  bool is_p = false;
  int index = 0;
  auto operator<=>(const PQLetter&) const = default;
};

/// Rewrites an arbitrary word of q's and p's into normal order. The leftmost p
/// standing directly before a q is moved right first.
PQExpression normal_order(const GradedBasis& basis, const std::vector<PQLetter>& word, int hbar = 0);

/// Free product of two normal-ordered expressions, put back into normal order.
PQExpression pq_product(const GradedBasis& basis, const PQExpression& a, const PQExpression& b);

/// True when every term has canonical q and p monomials.
bool is_normal_ordered(const GradedBasis& basis, const PQExpression& e);

/// f = sum f_I^J q_J p^I; the coefficient on q_J p^I is f(q_I)[q_J] * ||I|| / prod(mult(I)!).
PQExpression op_to_pq(const GradedBasis& basis, const SymOp& f, int genus = 0);
PQExpression op_to_pq(const GradedBasis& basis, const WeylElement& h);

/// Inverse of op_to_pq. Throws InputError on non-normal-ordered or degree-inhomogeneous input.
WeylElement pq_to_op(const GradedBasis& basis, const PQExpression& e);

/// Degree |q_J| - |q_I| of a single term.
int pq_term_degree(const GradedBasis& basis, const PQTerm& t);

/// Human-readable form, e.g. "q²p² + ħ qp". Dual names replace a leading 'q' by 'p'.
std::string format_pq(const GradedBasis& basis, const PQExpression& e);

}  // namespace weylprop
