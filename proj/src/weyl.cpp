#include "weylprop/weyl.hpp"

#include <algorithm>
#include <tuple>

#include "weylprop/errors.hpp"

namespace weylprop {

// ---------------------------------------------------------------- SymOp

void SymOp::add(const GradedBasis& basis, const SymMonomial& x, const SymMonomial& y, const Scalar& coeff) {
  if (static_cast<int>(x.size()) != in || static_cast<int>(y.size()) != out) {
    throw InputError("SymOp entry arity (" + std::to_string(x.size()) + "->" + std::to_string(y.size()) +
                     ") does not match operator arity (" + std::to_string(in) + "->" + std::to_string(out) + ")");
  }
  if (word_degree(basis, y.entries) - word_degree(basis, x.entries) != degree) {
    throw InputError("SymOp entry does not have degree " + std::to_string(degree));
  }
  add_row(x, SymVector(y, coeff));
}

void SymOp::add_row(const SymMonomial& x, const SymVector& image) {
  if (image.empty()) return;
  auto& row = entries[x];
  row += image;
  if (row.empty()) entries.erase(x);
}

SymVector SymOp::apply(const SymMonomial& x) const {
  auto it = entries.find(x);
  return it == entries.end() ? SymVector{} : it->second;
}

SymVector SymOp::apply(const SymVector& v) const {
  SymVector out;
  for (const auto& [x, c] : v) {
    auto it = entries.find(x);
    if (it != entries.end()) out.add(it->second, c);
  }
  return out;
}

SymOp& SymOp::operator+=(const SymOp& other) {
  for (const auto& [x, row] : other.entries) add_row(x, row);
  return *this;
}

SymOp& SymOp::operator*=(const Scalar& s) {
  if (s == 0) {
    entries.clear();
    return *this;
  }
  for (auto& [x, row] : entries) row *= s;
  return *this;
}

bool SymOp::operator==(const SymOp& other) const {
  return std::tie(in, out, degree, entries) == std::tie(other.in, other.out, other.degree, other.entries);
}

// ---------------------------------------------------------------- TensorOp

void TensorOp::add_row(const TensorWord& x, const TensorVector& image) {
  if (image.empty()) return;
  auto& row = entries[x];
  row += image;
  if (row.empty()) entries.erase(x);
}

TensorVector TensorOp::apply(const TensorWord& x) const {
  auto it = entries.find(x);
  return it == entries.end() ? TensorVector{} : it->second;
}

TensorVector TensorOp::apply(const TensorVector& v) const {
  TensorVector out;
  for (const auto& [x, c] : v) {
    auto it = entries.find(x);
    if (it != entries.end()) out.add(it->second, c);
  }
  return out;
}

TensorOp& TensorOp::operator+=(const TensorOp& other) {
  for (const auto& [x, row] : other.entries) add_row(x, row);
  return *this;
}

TensorOp& TensorOp::operator*=(const Scalar& s) {
  if (s == 0) {
    entries.clear();
    return *this;
  }
  for (auto& [x, row] : entries) row *= s;
  return *this;
}

bool TensorOp::operator==(const TensorOp& other) const {
  return std::tie(in, out, degree, entries) == std::tie(other.in, other.out, other.degree, other.entries);
}

// ---------------------------------------------------------------- lifts and gluing

namespace {

/// Memoized word -> image map; either a TensorOp lookup or iota f s for a SymOp.
class WordMap {
 public:
  WordMap(const GradedBasis& basis, const SymOp& f) : basis_(&basis), sym_(&f) {}
  explicit WordMap(const TensorOp& phi) : tensor_(&phi) {}

  const TensorVector& operator()(const TensorWord& w) {
    if (tensor_ != nullptr) {
      auto it = tensor_->entries.find(w);
      return it == tensor_->entries.end() ? empty_ : it->second;
    }
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    TensorVector image;
    if (auto p = s_project(*basis_, w)) {
      auto it_row = sym_->entries.find(p->monomial);
      if (it_row != sym_->entries.end()) {
        image = iota(*basis_, it_row->second);
        image *= p->sign;
      }
    }
    return cache_.emplace(w, std::move(image)).first->second;
  }

 private:
  const GradedBasis* basis_ = nullptr;
  const SymOp* sym_ = nullptr;
  const TensorOp* tensor_ = nullptr;
  std::map<TensorWord, TensorVector> cache_;
  TensorVector empty_;
};

/// ((phi (x) id^{j-k}) o (id^{m-k} (x) psi))(w) for one input word of length m-k+i.
void glue_word(const GradedBasis& basis, WordMap& phi, int m, WordMap& psi, int psi_degree, int k,
               const TensorWord& w, const Scalar& scale, TensorVector& out) {
  const auto split = w.entries.begin() + (m - k);
  const std::vector<int> head(w.entries.begin(), split);
  const TensorWord tail{std::vector<int>(split, w.entries.end())};
  // id (x) psi passes psi across the head.
  const int pass = (psi_degree & 1) && (word_degree(basis, head) & 1) ? -1 : 1;
  for (const auto& [c, cc] : psi(tail)) {
    TensorWord into_phi{head};
    into_phi.entries.insert(into_phi.entries.end(), c.entries.begin(), c.entries.begin() + k);
    const std::vector<int> rest(c.entries.begin() + k, c.entries.end());
    for (const auto& [d, dc] : phi(into_phi)) {
      TensorWord result = d;
      result.entries.insert(result.entries.end(), rest.begin(), rest.end());
      out.add(result, scale * cc * dc * pass);
    }
  }
}

}  // namespace

TensorOp tensor_from_sym(const GradedBasis& basis, const SymOp& f) {
  TensorOp out(f.in, f.out, f.degree);
  WordMap lift(basis, f);
  for (const auto& w : tensor_words(basis, f.in)) out.add_row(w, lift(w));
  return out;
}

SymOp sym_from_tensor(const GradedBasis& basis, const TensorOp& phi) {
  SymOp out(phi.in, phi.out, phi.degree);
  for (const auto& x : monomials(basis, phi.in)) {
    out.add_row(x, s_project(basis, phi.apply(iota(basis, x))));
  }
  return out;
}

TensorOp tensor_circ_k(const GradedBasis& basis, const TensorOp& phi, const TensorOp& psi, int k) {
  const int m = phi.in;
  const int j = psi.out;
  TensorOp out(m + psi.in - k, phi.out + j - k, phi.degree + psi.degree);
  if (k < 0 || k > m || k > j) return out;
  WordMap phi_map(phi);
  WordMap psi_map(psi);
  for (const auto& w : tensor_words(basis, out.in)) {
    TensorVector image;
    glue_word(basis, phi_map, m, psi_map, psi.degree, k, w, 1, image);
    out.add_row(w, image);
  }
  return out;
}

SymOp sym_circ_k(const GradedBasis& basis, const SymOp& g, const SymOp& f, int k) {
  const int m = g.in;
  const int i = f.in;
  const int j = f.out;
  SymOp out(m + i - k, g.out + j - k, g.degree + f.degree);
  if (k < 0 || k > m || k > j || g.is_zero() || f.is_zero()) return out;
  const Scalar prefactor(binomial(out.in, i) * binomial(j, k));
  WordMap g_lift(basis, g);
  WordMap f_lift(basis, f);
  for (const auto& x : monomials(basis, out.in)) {
    TensorVector glued;
    for (const auto& [w, c] : iota(basis, x)) {
      glue_word(basis, g_lift, m, f_lift, f.degree, k, w, c, glued);
    }
    SymVector image = s_project(basis, glued);
    image *= prefactor;
    out.add_row(x, image);
  }
  return out;
}

TensorOp permute_outputs(const GradedBasis& basis, const Permutation& tau, const TensorOp& x) {
  TensorOp out(x.in, x.out, x.degree);
  for (const auto& [w, row] : x.entries) out.add_row(w, act(basis, tau, row));
  return out;
}

TensorOp permute_inputs(const GradedBasis& basis, const TensorOp& x, const Permutation& sigma) {
  TensorOp out(x.in, x.out, x.degree);
  for (const auto& w : tensor_words(basis, x.in)) {
    auto sw = act(basis, sigma, w);
    auto image = x.apply(sw.word);
    image *= sw.sign;
    out.add_row(w, image);
  }
  return out;
}

// ---------------------------------------------------------------- WeylElement and star

void WeylElement::add(int g, const SymOp& op) {
  if (op.is_zero()) return;
  ComponentKey key{g, op.in, op.out};
  auto it = components.find(key);
  if (it == components.end()) {
    components.emplace(key, op);
    return;
  }
  it->second += op;
  if (it->second.is_zero()) components.erase(it);
}

const SymOp* WeylElement::find(const ComponentKey& key) const {
  auto it = components.find(key);
  return it == components.end() ? nullptr : &it->second;
}

bool WeylElement::has_zero_arity_component() const {
  return std::any_of(components.begin(), components.end(),
                     [](const auto& kv) { return kv.first.in == 0 || kv.first.out == 0; });
}

bool WeylElement::operator==(const WeylElement& other) const {
  return degree == other.degree && components == other.components;
}

namespace {

struct StarTask {
  const std::pair<const ComponentKey, SymOp>* left;
  const std::pair<const ComponentKey, SymOp>* right;
  int k;
  ComponentKey target;
};

}  // namespace

WeylElement star(const GradedBasis& basis, const WeylElement& a, const WeylElement& b, Truncation bounds,
                 Execution exec) {
  WeylElement out;
  out.degree = a.degree + b.degree;
  out.bounds = bounds;
  out.reduced = false;

  std::vector<StarTask> tasks;
  for (const auto& left : a.components) {
    for (const auto& right : b.components) {
      const auto& [kg, g] = left;
      const auto& [kf, f] = right;
      for (int k = 0; k <= std::min(g.in, f.out); ++k) {
        ComponentKey target{kg.g + kf.g + k, g.in + f.in - k, g.out + f.out - k};
        if (target.g > bounds.g_max || target.in > bounds.arity_max || target.out > bounds.arity_max) continue;
        tasks.push_back({&left, &right, k, target});
      }
    }
  }

  std::vector<SymOp> results(tasks.size());
  const auto n = static_cast<long>(tasks.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < n; ++t) {
      const auto& task = tasks[static_cast<std::size_t>(t)];
      results[static_cast<std::size_t>(t)] = sym_circ_k(basis, task.left->second, task.right->second, task.k);
    }
  } else {
    for (long t = 0; t < n; ++t) {
      const auto& task = tasks[static_cast<std::size_t>(t)];
      results[static_cast<std::size_t>(t)] = sym_circ_k(basis, task.left->second, task.right->second, task.k);
    }
  }
  // Summation in task order keeps the result independent of the schedule.
  for (std::size_t t = 0; t < tasks.size(); ++t) out.add(tasks[t].target.g, results[t]);
  return out;
}

WeylElement star(const GradedBasis& basis, const SymOp& g, const SymOp& f, Truncation bounds) {
  WeylElement a;
  a.degree = g.degree;
  a.add(0, g);
  WeylElement b;
  b.degree = f.degree;
  b.add(0, f);
  return star(basis, a, b, bounds);
}

SquareZeroVerdict square_zero_report(const GradedBasis& basis, const WeylElement& h, Truncation bounds,
                                     Execution exec) {
  if (h.has_zero_arity_component()) {
    throw UnreducedError("Weyl element has a component with zero input or output arity");
  }
  SquareZeroVerdict verdict;
  verdict.square = star(basis, h, h, bounds, exec);

  std::vector<ComponentKey> keys;
  for (const auto& [key, op] : verdict.square.components) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), [](const ComponentKey& x, const ComponentKey& y) {
    return std::tuple(x.in + x.out, x.g, x.in, x.out) < std::tuple(y.in + y.out, y.g, y.in, y.out);
  });
  verdict.nonzero_components = keys;
  verdict.zero = keys.empty();
  if (!keys.empty()) {
    const auto& op = verdict.square.components.at(keys.front());
    const auto& [x, image] = *op.entries.begin();
    verdict.witness = SquareZeroWitness{keys.front(), x, image};
  }
  return verdict;
}

CompareCircSides compare_circ_k_sides(const GradedBasis& basis, const SymOp& f, const SymOp& g, int k) {
  const int i = f.in;
  const int j = f.out;
  const int m = g.in;
  const int n = g.out;
  CompareCircSides sides;
  const int total_in = m + i - k;
  const int total_out = n + j - k;
  sides.symmetric_side = TensorOp(total_in, total_out, f.degree + g.degree);
  sides.tensor_side = TensorOp(total_in, total_out, f.degree + g.degree);
  if (k < 0 || k > m || k > j) return sides;

  const SymOp glued = sym_circ_k(basis, g, f, k);
  TensorOp lhs = tensor_from_sym(basis, glued);
  lhs *= ratio(factorial(total_out) * factorial(k), factorial(n) * factorial(j));
  sides.symmetric_side = std::move(lhs);

  const TensorOp inner = tensor_circ_k(basis, tensor_from_sym(basis, g), tensor_from_sym(basis, f), k);
  const auto input_perms = unshuffles(total_in, m - k);
  const auto output_perms = shuffles(total_out, n);
  for (const auto& w : tensor_words(basis, total_in)) {
    TensorVector acc;
    for (const auto& sigma : input_perms) {
      auto sw = act(basis, sigma, w);
      const TensorVector image = inner.apply(sw.word);
      for (const auto& tau : output_perms) acc.add(act(basis, tau, image), sw.sign);
    }
    sides.tensor_side.add_row(w, acc);
  }
  return sides;
}

bool compare_circ_k_check(const GradedBasis& basis, const SymOp& f, const SymOp& g, int k) {
  const auto sides = compare_circ_k_sides(basis, f, g, k);
  return sides.symmetric_side == sides.tensor_side;
}

}  // namespace weylprop
