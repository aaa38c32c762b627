#pragma once

// Graded vector space foundations: a homogeneous basis, tensor words and
// symmetric monomials over it, Koszul-signed permutation actions, shuffles,
// and the symmetrization / projection pair between TV and SV.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylprop/rational.hpp"

namespace weylprop {

struct BasisElement {
  std::string name;
  int degree = 0;

  bool operator==(const BasisElement&) const = default;
};

/// Ordered homogeneous basis. The construction order is the canonical order
/// used to sort symmetric monomials.
class GradedBasis {
 public:
  GradedBasis() = default;
  explicit GradedBasis(std::vector<BasisElement> elements);

  std::size_t size() const { return elements_.size(); }
  const BasisElement& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<BasisElement>& elements() const { return elements_; }

  int degree(int index) const { return elements_.at(static_cast<std::size_t>(index)).degree; }
  bool odd(int index) const { return (degree(index) & 1) != 0; }
  std::optional<int> index_of(const std::string& name) const;

  bool operator==(const GradedBasis&) const = default;

 private:
  std::vector<BasisElement> elements_;
};

/// One-line notation: perm[a] is the image of position a (0-based).
using Permutation = std::vector<int>;

Permutation identity_permutation(int k);
Permutation inverse(const Permutation& p);
/// (a * b)(x) = a(b(x)).
Permutation compose(const Permutation& a, const Permutation& b);
int permutation_sign(const Permutation& p);
std::vector<Permutation> all_permutations(int k);

/// v_1 (x) ... (x) v_k as an ordered list of basis indices.
struct TensorWord {
  std::vector<int> entries;

  std::size_t size() const { return entries.size(); }
  auto operator<=>(const TensorWord&) const = default;
};

/// Element of S^k V stored as a basis-order sorted index list. Repeated odd
/// indices never occur in a stored monomial (such products vanish).
struct SymMonomial {
  std::vector<int> entries;

  std::size_t size() const { return entries.size(); }
  auto operator<=>(const SymMonomial&) const = default;
};

/// Finite formal combination with exact coefficients; zero terms are never stored.
template <class Key>
class FormalVector {
 public:
  using Map = std::map<Key, Scalar>;

  FormalVector() = default;
  FormalVector(const Key& key, const Scalar& coeff) { add(key, coeff); }

  void add(const Key& key, const Scalar& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(const FormalVector& other, const Scalar& scale = 1) {
    if (scale == 0) return;
    for (const auto& [key, c] : other.terms_) add(key, c * scale);
  }

  FormalVector& operator+=(const FormalVector& other) {
    add(other);
    return *this;
  }
  FormalVector& operator-=(const FormalVector& other) {
    add(other, -1);
    return *this;
  }
  FormalVector& operator*=(const Scalar& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [key, c] : terms_) c *= s;
    }
    return *this;
  }

  Scalar coeff(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  bool operator==(const FormalVector& other) const { return terms_ == other.terms_; }

 private:
  Map terms_;
};

using TensorVector = FormalVector<TensorWord>;
using SymVector = FormalVector<SymMonomial>;

int word_degree(const GradedBasis& basis, const std::vector<int>& entries);
int odd_count(const GradedBasis& basis, const std::vector<int>& entries);

/// epsilon(sigma, word): sign of the permutation sigma induces on odd entries.
int koszul_sign(const GradedBasis& basis, const Permutation& sigma, const TensorWord& word);

struct SignedWord {
  int sign = 1;
  TensorWord word;
};

/// sigma(v_1 .. v_k) = eps * v_{sigma^-1(1)} .. v_{sigma^-1(k)}.
SignedWord act(const GradedBasis& basis, const Permutation& sigma, const TensorWord& word);
TensorVector act(const GradedBasis& basis, const Permutation& sigma, const TensorVector& vec);

/// ||word||: +1 when the odd count is 0 or 1 mod 4, else -1.
int reversal_sign(const GradedBasis& basis, const std::vector<int>& entries);

/// (k,l)-shuffles: sigma(0)<..<sigma(l-1) and sigma(l)<..<sigma(k-1). Lexicographic order.
std::vector<Permutation> shuffles(int k, int l);
std::vector<Permutation> unshuffles(int k, int l);

/// Canonical sort of a word with its Koszul sign; nullopt when an odd index repeats.
struct Projection {
  SymMonomial monomial;
  int sign = 1;
};
std::optional<Projection> s_project(const GradedBasis& basis, const TensorWord& word);
SymVector s_project(const GradedBasis& basis, const TensorVector& vec);

/// iota[v] = (1/k!) sum_sigma sigma v.
TensorVector iota(const GradedBasis& basis, const SymMonomial& m);
TensorVector iota(const GradedBasis& basis, const SymVector& vec);

/// mu^{k,l}: sum over (k,l)-unshuffles; nu_{k,l}: sum over (k,l)-shuffles.
TensorVector mu_unshuffle_sum(const GradedBasis& basis, int k, int l, const TensorWord& word);
TensorVector nu_shuffle_sum(const GradedBasis& basis, int k, int l, const TensorWord& word);
TensorVector mu_unshuffle_sum(const GradedBasis& basis, int k, int l, const TensorVector& vec);
TensorVector nu_shuffle_sum(const GradedBasis& basis, int k, int l, const TensorVector& vec);

/// Element of S^l V (x) S^{k-l} V.
using MonomialPair = std::pair<SymMonomial, SymMonomial>;
using PairVector = FormalVector<MonomialPair>;

/// (s (x) s): project the first l and last k-l entries separately.
PairVector split_project(const GradedBasis& basis, const TensorVector& vec, int l);

/// Tensor concatenation with no sign.
TensorWord concat(const TensorWord& a, const TensorWord& b);
TensorVector tensor(const TensorVector& a, const TensorVector& b);

/// Canonical monomials of S^k V in lexicographic order.
std::vector<SymMonomial> monomials(const GradedBasis& basis, int k);
/// All words of T^k V in lexicographic order.
std::vector<TensorWord> tensor_words(const GradedBasis& basis, int k);

/// prod over distinct indices of (multiplicity)!.
Integer multiplicity_factorial(const std::vector<int>& sorted_entries);

}  // namespace weylprop
