#include "weylprop/pq.hpp"

#include <map>
#include <set>
#include <sstream>

#include "weylprop/errors.hpp"

namespace weylprop {

namespace {

using Word = std::vector<PQLetter>;

class NormalOrderer {
 public:
  explicit NormalOrderer(const GradedBasis& basis) : basis_(basis) {}

  const PQExpression& run(const Word& word) {
    auto it = memo_.find(word);
    if (it != memo_.end()) return it->second;
    PQExpression result = rewrite(word);
    return memo_.emplace(word, std::move(result)).first->second;
  }

 private:
  PQExpression rewrite(const Word& word) {
    std::size_t a = 0;
    while (a + 1 < word.size() && !(word[a].is_p && !word[a + 1].is_p)) ++a;
    if (a + 1 >= word.size()) return sorted(word);

    PQExpression out;
    // p q = (-1)^{|p||q|} q p + hbar delta
    Word swapped = word;
    std::swap(swapped[a], swapped[a + 1]);
    const int sign = basis_.odd(word[a].index) && basis_.odd(word[a + 1].index) ? -1 : 1;
    out.add(run(swapped), sign);
    if (word[a].index == word[a + 1].index) {
      Word contracted;
      contracted.reserve(word.size() - 2);
      for (std::size_t b = 0; b < word.size(); ++b) {
        if (b != a && b != a + 1) contracted.push_back(word[b]);
      }
      for (const auto& [t, c] : run(contracted)) {
        PQTerm shifted = t;
        shifted.hbar += 1;
        out.add(shifted, c);
      }
    }
    return out;
  }

  // All q's already precede all p's; sort each block with Koszul signs.
  PQExpression sorted(const Word& word) {
    TensorWord qs;
    TensorWord ps;
    for (const auto& l : word) (l.is_p ? ps : qs).entries.push_back(l.index);
    auto pq = s_project(basis_, qs);
    auto pp = s_project(basis_, ps);
    PQExpression out;
    if (pq && pp) out.add(PQTerm{0, pq->monomial, pp->monomial}, pq->sign * pp->sign);
    return out;
  }

  const GradedBasis& basis_;
  std::map<Word, PQExpression> memo_;
};

Word term_word(const PQTerm& t) {
  Word w;
  for (int x : t.q.entries) w.push_back({false, x});
  for (int x : t.p.entries) w.push_back({true, x});
  return w;
}

bool canonical(const GradedBasis& basis, const SymMonomial& m) {
  for (int x : m.entries) {
    if (x < 0 || static_cast<std::size_t>(x) >= basis.size()) return false;
  }
  for (std::size_t a = 1; a < m.size(); ++a) {
    if (m.entries[a] < m.entries[a - 1]) return false;
    if (m.entries[a] == m.entries[a - 1] && basis.odd(m.entries[a])) return false;
  }
  return true;
}

}  // namespace

PQExpression normal_order(const GradedBasis& basis, const std::vector<PQLetter>& word, int hbar) {
  NormalOrderer orderer(basis);
  PQExpression out;
  for (const auto& [t, c] : orderer.run(word)) {
    PQTerm shifted = t;
    shifted.hbar += hbar;
    out.add(shifted, c);
  }
  return out;
}

PQExpression pq_product(const GradedBasis& basis, const PQExpression& a, const PQExpression& b) {
  NormalOrderer orderer(basis);
  PQExpression out;
  for (const auto& [ta, ca] : a) {
    const Word wa = term_word(ta);
    for (const auto& [tb, cb] : b) {
      Word w = wa;
      const Word wb = term_word(tb);
      w.insert(w.end(), wb.begin(), wb.end());
      for (const auto& [t, c] : orderer.run(w)) {
        PQTerm shifted = t;
        shifted.hbar += ta.hbar + tb.hbar;
        out.add(shifted, c * ca * cb);
      }
    }
  }
  return out;
}

bool is_normal_ordered(const GradedBasis& basis, const PQExpression& e) {
  for (const auto& [t, c] : e) {
    if (t.hbar < 0 || !canonical(basis, t.q) || !canonical(basis, t.p)) return false;
  }
  return true;
}

int pq_term_degree(const GradedBasis& basis, const PQTerm& t) {
  return word_degree(basis, t.q.entries) - word_degree(basis, t.p.entries);
}

PQExpression op_to_pq(const GradedBasis& basis, const SymOp& f, int genus) {
  PQExpression out;
  for (const auto& [x, image] : f.entries) {
    const Scalar weight = ratio(reversal_sign(basis, x.entries), multiplicity_factorial(x.entries));
    for (const auto& [y, c] : image) out.add(PQTerm{genus, y, x}, c * weight);
  }
  return out;
}

PQExpression op_to_pq(const GradedBasis& basis, const WeylElement& h) {
  PQExpression out;
  for (const auto& [key, op] : h.components) out += op_to_pq(basis, op, key.g);
  return out;
}

WeylElement pq_to_op(const GradedBasis& basis, const PQExpression& e) {
  if (!is_normal_ordered(basis, e)) throw InputError("pq_to_op: expression is not normal-ordered");
  WeylElement out;
  std::set<int> degrees;
  for (const auto& [t, c] : e) degrees.insert(pq_term_degree(basis, t));
  if (degrees.size() > 1) throw InputError("pq_to_op: expression is not homogeneous");
  out.degree = degrees.empty() ? 0 : *degrees.begin();
  for (const auto& [t, c] : e) {
    SymOp op(static_cast<int>(t.p.size()), static_cast<int>(t.q.size()), out.degree);
    const Scalar weight = Scalar(multiplicity_factorial(t.p.entries)) * reversal_sign(basis, t.p.entries);
    op.add_row(t.p, SymVector(t.q, c * weight));
    out.add(t.hbar, op);
  }
  bool reduced = true;
  for (const auto& [key, op] : out.components) reduced = reduced && key.in > 0 && key.out > 0;
  out.reduced = reduced;
  return out;
}

namespace {

std::string superscript(int n) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s;
  for (char ch : std::to_string(n)) s += digits[ch - '0'];
  return s;
}

std::string dual_name(const std::string& name) {
  if (!name.empty() && name[0] == 'q') return "p" + name.substr(1);
  return "p_" + name;
}

void append_monomial(std::ostringstream& os, const GradedBasis& basis, const SymMonomial& m, bool dual) {
  std::size_t a = 0;
  while (a < m.size()) {
    std::size_t b = a;
    while (b < m.size() && m.entries[b] == m.entries[a]) ++b;
    const auto& name = basis[static_cast<std::size_t>(m.entries[a])].name;
    os << (dual ? dual_name(name) : name);
    if (b - a > 1) os << superscript(static_cast<int>(b - a));
    a = b;
  }
}

}  // namespace

std::string format_pq(const GradedBasis& basis, const PQExpression& e) {
  if (e.empty()) return "0";
  // Lower hbar powers first, then larger monomials first.
  std::vector<std::pair<PQTerm, Scalar>> terms(e.begin(), e.end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    if (x.first.hbar != y.first.hbar) return x.first.hbar < y.first.hbar;
    const auto dx = x.first.q.size() + x.first.p.size();
    const auto dy = y.first.q.size() + y.first.p.size();
    if (dx != dy) return dx > dy;
    return x.first < y.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : terms) {
    Scalar mag = c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag < 0) mag = -mag;
    first = false;
    const bool unit_monomial = t.q.size() + t.p.size() == 0;
    bool need_space = false;
    if (mag != 1 || (unit_monomial && t.hbar == 0)) {
      os << format_scalar(mag);
      need_space = true;
    }
    if (t.hbar > 0) {
      if (need_space) os << " ";
      os << "ħ";
      if (t.hbar > 1) os << superscript(t.hbar);
      need_space = true;
    }
    if (!unit_monomial) {
      if (need_space) os << " ";
      append_monomial(os, basis, t.q, false);
      append_monomial(os, basis, t.p, true);
    }
  }
  return os.str();
}

}  // namespace weylprop
