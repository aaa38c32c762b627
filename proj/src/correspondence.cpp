#include "weylprop/correspondence.hpp"

#include <algorithm>
#include <tuple>

#include "weylprop/errors.hpp"

namespace weylprop {

void StructureFamily::add(int g, const TensorOp& op) {
  if (op.is_zero()) return;
  FamilyKey key{op.in, op.out, g};
  auto it = maps.find(key);
  if (it == maps.end()) {
    maps.emplace(key, op);
    return;
  }
  it->second += op;
  if (it->second.is_zero()) maps.erase(it);
}

const TensorOp* StructureFamily::find(const FamilyKey& key) const {
  auto it = maps.find(key);
  return it == maps.end() ? nullptr : &it->second;
}

bool StructureFamily::operator==(const StructureFamily& other) const {
  return degree == other.degree && maps == other.maps;
}

namespace {

Permutation adjacent_transposition(int k, int a) {
  Permutation p = identity_permutation(k);
  std::swap(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(a) + 1]);
  return p;
}

}  // namespace

bool is_symmetric(const GradedBasis& basis, const TensorOp& phi) {
  // Adjacent transpositions generate, so checking them is enough.
  for (const auto& w : tensor_words(basis, phi.in)) {
    const TensorVector image = phi.apply(w);
    for (int a = 0; a + 1 < phi.in; ++a) {
      const SignedWord sw = act(basis, adjacent_transposition(phi.in, a), w);
      TensorVector moved = phi.apply(sw.word);
      moved *= sw.sign;
      if (!(moved == image)) return false;
    }
    for (int a = 0; a + 1 < phi.out; ++a) {
      if (!(act(basis, adjacent_transposition(phi.out, a), image) == image)) return false;
    }
  }
  return true;
}

WeylElement family_to_weyl(const GradedBasis& basis, const StructureFamily& f) {
  WeylElement h;
  h.degree = f.degree;
  h.reduced = true;
  for (const auto& [key, phi] : f.maps) {
    if (key.r < 1 || key.t < 1) throw UnreducedError("structure family has a map with zero input or output arity");
    if (phi.degree != f.degree) throw InputError("structure family map has the wrong degree");
    if (!is_symmetric(basis, phi)) throw InputError("structure family map is not graded symmetric");
    SymOp op = sym_from_tensor(basis, phi);
    op *= ratio(1, factorial(key.t));
    h.add(key.g, op);
  }
  return h;
}

StructureFamily weyl_to_family(const GradedBasis& basis, const WeylElement& h) {
  if (h.has_zero_arity_component()) {
    throw UnreducedError("Weyl element has a component with zero input or output arity");
  }
  StructureFamily f;
  f.degree = h.degree;
  for (const auto& [key, op] : h.components) {
    TensorOp phi = tensor_from_sym(basis, op);
    phi *= Scalar(factorial(key.out));
    f.add(key.g, phi);
  }
  return f;
}

TensorOp relation_tensor(const GradedBasis& basis, const StructureFamily& f, const FamilyKey& key) {
  TensorOp out(key.r, key.t, 2 * f.degree);
  const auto words = tensor_words(basis, key.r);
  for (const auto& [outer_key, outer] : f.maps) {
    for (const auto& [inner_key, inner] : f.maps) {
      const int m = outer_key.r;
      const int n = outer_key.t;
      const int i = inner_key.r;
      const int j = inner_key.t;
      for (int k = 1; k <= std::min(m, j); ++k) {
        if (m - k + i != key.r || n + j - k != key.t || inner_key.g + outer_key.g + k - 1 != key.g) continue;
        const TensorOp glued = tensor_circ_k(basis, outer, inner, k);
        const Scalar weight = ratio(1, factorial(k));
        const auto input_perms = unshuffles(key.r, m - k);
        const auto output_perms = shuffles(key.t, n);
        for (const auto& w : words) {
          TensorVector acc;
          for (const auto& sigma : input_perms) {
            const SignedWord sw = act(basis, sigma, w);
            const TensorVector image = glued.apply(sw.word);
            if (image.empty()) continue;
            for (const auto& tau : output_perms) acc.add(act(basis, tau, image), weight * sw.sign);
          }
          out.add_row(w, acc);
        }
      }
    }
  }
  return out;
}

RelationVerdict check_relations(const GradedBasis& basis, const StructureFamily& f, Truncation bounds,
                                Execution exec) {
  std::vector<FamilyKey> keys;
  for (int r = 1; r <= bounds.arity_max; ++r)
    for (int t = 1; t <= bounds.arity_max; ++t)
      for (int g = 0; g <= bounds.g_max; ++g) keys.push_back({r, t, g});
  std::sort(keys.begin(), keys.end(), [](const FamilyKey& x, const FamilyKey& y) {
    return std::tuple(x.r + x.t, x.g, x.r, x.t) < std::tuple(y.r + y.t, y.g, y.r, y.t);
  });
  std::vector<TensorOp> results(keys.size());
  const auto n = static_cast<long>(keys.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long a = 0; a < n; ++a) {
      results[static_cast<std::size_t>(a)] = relation_tensor(basis, f, keys[static_cast<std::size_t>(a)]);
    }
  } else {
    for (long a = 0; a < n; ++a) {
      results[static_cast<std::size_t>(a)] = relation_tensor(basis, f, keys[static_cast<std::size_t>(a)]);
    }
  }
  RelationVerdict verdict;
  for (std::size_t a = 0; a < keys.size(); ++a) {
    if (results[a].is_zero()) continue;
    verdict.nonzero.push_back(keys[a]);
    if (!verdict.witness) {
      const auto& [w, image] = *results[a].entries.begin();
      verdict.witness = RelationWitness{keys[a], w, image};
    }
  }
  verdict.zero = verdict.nonzero.empty();
  return verdict;
}

}  // namespace weylprop
