#include "weylprop/graded.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "weylprop/errors.hpp"

namespace weylprop {

GradedBasis::GradedBasis(std::vector<BasisElement> elements) : elements_(std::move(elements)) {
  std::set<std::string> seen;
  for (const auto& e : elements_) {
    if (!seen.insert(e.name).second) throw InputError("duplicate basis name '" + e.name + "'");
  }
}

std::optional<int> GradedBasis::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

Permutation identity_permutation(int k) {
  Permutation p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t a = 0; a < p.size(); ++a) out[static_cast<std::size_t>(p[a])] = static_cast<int>(a);
  return out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw DimensionError("compose: permutation sizes differ");
  Permutation out(a.size());
  for (std::size_t x = 0; x < b.size(); ++x) out[x] = a[static_cast<std::size_t>(b[x])];
  return out;
}

int permutation_sign(const Permutation& p) {
  int inversions = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++inversions;
  return (inversions & 1) ? -1 : 1;
}

std::vector<Permutation> all_permutations(int k) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(k);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int word_degree(const GradedBasis& basis, const std::vector<int>& entries) {
  int d = 0;
  for (int e : entries) d += basis.degree(e);
  return d;
}

int odd_count(const GradedBasis& basis, const std::vector<int>& entries) {
  int c = 0;
  for (int e : entries) c += basis.odd(e) ? 1 : 0;
  return c;
}

int koszul_sign(const GradedBasis& basis, const Permutation& sigma, const TensorWord& word) {
  if (sigma.size() != word.size()) {
    throw DimensionError("koszul_sign: permutation of " + std::to_string(sigma.size()) +
                         " letters applied to a word of length " + std::to_string(word.size()));
  }
  int swaps = 0;
  for (std::size_t a = 0; a < sigma.size(); ++a) {
    if (!basis.odd(word.entries[a])) continue;
    for (std::size_t b = a + 1; b < sigma.size(); ++b) {
      if (basis.odd(word.entries[b]) && sigma[a] > sigma[b]) ++swaps;
    }
  }
  return (swaps & 1) ? -1 : 1;
}

SignedWord act(const GradedBasis& basis, const Permutation& sigma, const TensorWord& word) {
  SignedWord out;
  out.sign = koszul_sign(basis, sigma, word);
  out.word.entries.resize(word.size());
  for (std::size_t a = 0; a < word.size(); ++a) {
    out.word.entries[static_cast<std::size_t>(sigma[a])] = word.entries[a];
  }
  return out;
}

TensorVector act(const GradedBasis& basis, const Permutation& sigma, const TensorVector& vec) {
  TensorVector out;
  for (const auto& [w, c] : vec) {
    auto sw = act(basis, sigma, w);
    out.add(sw.word, c * sw.sign);
  }
  return out;
}

int reversal_sign(const GradedBasis& basis, const std::vector<int>& entries) {
  const int c = odd_count(basis, entries) % 4;
  return (c == 0 || c == 1) ? 1 : -1;
}

std::vector<Permutation> shuffles(int k, int l) {
  if (k < 0 || l < 0 || l > k) {
    throw DimensionError("shuffles: need 0 <= l <= k, got k=" + std::to_string(k) +
                         " l=" + std::to_string(l));
  }
  // Choose the image set of the first l positions; the rest fill increasingly.
  std::vector<Permutation> out;
  std::vector<bool> chosen(static_cast<std::size_t>(k), false);
  std::fill(chosen.begin(), chosen.begin() + l, true);
  do {
    Permutation p(static_cast<std::size_t>(k));
    int first = 0;
    int second = l;
    for (int x = 0; x < k; ++x) {
      if (chosen[static_cast<std::size_t>(x)]) {
        p[static_cast<std::size_t>(first++)] = x;
      } else {
        p[static_cast<std::size_t>(second++)] = x;
      }
    }
    out.push_back(std::move(p));
  } while (std::prev_permutation(chosen.begin(), chosen.end()));
  return out;
}

std::vector<Permutation> unshuffles(int k, int l) {
  auto out = shuffles(k, l);
  for (auto& p : out) p = inverse(p);
  return out;
}

std::optional<Projection> s_project(const GradedBasis& basis, const TensorWord& word) {
  Projection out;
  out.monomial.entries = word.entries;
  auto& e = out.monomial.entries;
  int swaps = 0;
  // Insertion sort counting odd/odd transpositions.
  for (std::size_t a = 1; a < e.size(); ++a) {
    for (std::size_t b = a; b > 0 && e[b - 1] > e[b]; --b) {
      if (basis.odd(e[b - 1]) && basis.odd(e[b])) ++swaps;
      std::swap(e[b - 1], e[b]);
    }
  }
  for (std::size_t a = 1; a < e.size(); ++a) {
    if (e[a] == e[a - 1] && basis.odd(e[a])) return std::nullopt;
  }
  out.sign = (swaps & 1) ? -1 : 1;
  return out;
}

SymVector s_project(const GradedBasis& basis, const TensorVector& vec) {
  SymVector out;
  for (const auto& [w, c] : vec) {
    if (auto p = s_project(basis, w)) out.add(p->monomial, c * p->sign);
  }
  return out;
}

Integer multiplicity_factorial(const std::vector<int>& sorted_entries) {
  Integer out = 1;
  std::size_t a = 0;
  while (a < sorted_entries.size()) {
    std::size_t b = a;
    while (b < sorted_entries.size() && sorted_entries[b] == sorted_entries[a]) ++b;
    out *= factorial(static_cast<int>(b - a));
    a = b;
  }
  return out;
}

TensorVector iota(const GradedBasis& basis, const SymMonomial& m) {
  // Distinct arrangements of the multiset; each arises from prod(mult!) permutations
  // with a common sign because only even entries repeat.
  TensorVector out;
  const int k = static_cast<int>(m.size());
  const Scalar weight = ratio(multiplicity_factorial(m.entries), factorial(k));
  TensorWord w{m.entries};
  do {
    auto p = s_project(basis, w);
    out.add(w, weight * p->sign);
  } while (std::next_permutation(w.entries.begin(), w.entries.end()));
  return out;
}

TensorVector iota(const GradedBasis& basis, const SymVector& vec) {
  TensorVector out;
  for (const auto& [m, c] : vec) out.add(iota(basis, m), c);
  return out;
}

namespace {

TensorVector sum_over(const GradedBasis& basis, const std::vector<Permutation>& perms,
                      const TensorWord& word) {
  TensorVector out;
  for (const auto& p : perms) {
    auto sw = act(basis, p, word);
    out.add(sw.word, sw.sign);
  }
  return out;
}

void check_length(int k, const TensorWord& word) {
  if (static_cast<std::size_t>(k) != word.size()) {
    throw DimensionError("word of length " + std::to_string(word.size()) +
                         " where length " + std::to_string(k) + " was expected");
  }
}

}  // namespace

TensorVector mu_unshuffle_sum(const GradedBasis& basis, int k, int l, const TensorWord& word) {
  check_length(k, word);
  return sum_over(basis, unshuffles(k, l), word);
}

TensorVector nu_shuffle_sum(const GradedBasis& basis, int k, int l, const TensorWord& word) {
  check_length(k, word);
  return sum_over(basis, shuffles(k, l), word);
}

TensorVector mu_unshuffle_sum(const GradedBasis& basis, int k, int l, const TensorVector& vec) {
  TensorVector out;
  for (const auto& [w, c] : vec) out.add(mu_unshuffle_sum(basis, k, l, w), c);
  return out;
}

TensorVector nu_shuffle_sum(const GradedBasis& basis, int k, int l, const TensorVector& vec) {
  TensorVector out;
  for (const auto& [w, c] : vec) out.add(nu_shuffle_sum(basis, k, l, w), c);
  return out;
}

PairVector split_project(const GradedBasis& basis, const TensorVector& vec, int l) {
  PairVector out;
  for (const auto& [w, c] : vec) {
    if (l < 0 || static_cast<std::size_t>(l) > w.size()) throw DimensionError("split_project: l out of range");
    TensorWord head{std::vector<int>(w.entries.begin(), w.entries.begin() + l)};
    TensorWord tail{std::vector<int>(w.entries.begin() + l, w.entries.end())};
    auto ph = s_project(basis, head);
    auto pt = s_project(basis, tail);
    if (!ph || !pt) continue;
    out.add({ph->monomial, pt->monomial}, c * ph->sign * pt->sign);
  }
  return out;
}

TensorWord concat(const TensorWord& a, const TensorWord& b) {
  TensorWord out = a;
  out.entries.insert(out.entries.end(), b.entries.begin(), b.entries.end());
  return out;
}

TensorVector tensor(const TensorVector& a, const TensorVector& b) {
  TensorVector out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) out.add(concat(wa, wb), ca * cb);
  return out;
}

std::vector<SymMonomial> monomials(const GradedBasis& basis, int k) {
  std::vector<SymMonomial> out;
  const int dim = static_cast<int>(basis.size());
  if (k == 0) {
    out.push_back({});
    return out;
  }
  if (dim == 0) return out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back({cur});
      return;
    }
    for (int x = start; x < dim; ++x) {
      if (!cur.empty() && cur.back() == x && basis.odd(x)) continue;
      cur.push_back(x);
      self(self, x);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<TensorWord> tensor_words(const GradedBasis& basis, int k) {
  std::vector<TensorWord> out;
  const int dim = static_cast<int>(basis.size());
  if (k > 0 && dim == 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(k), 0);
  while (true) {
    out.push_back({cur});
    int pos = k - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == dim - 1) {
      cur[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++cur[static_cast<std::size_t>(pos)];
  }
  return out;
}

}  // namespace weylprop
