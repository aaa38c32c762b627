#include "weylprop/opspec.hpp"

#include <fstream>
#include <set>
#include <tuple>

#include "weylprop/errors.hpp"

namespace weylprop {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) throw InputError(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

Scalar coeff_field(const json& j) {
  const json& v = field(j, "coeff");
  if (v.is_string()) return parse_scalar(v.get<std::string>());
  if (v.is_number_integer()) return Scalar(v.get<long>());
  throw InputError("field \"coeff\" must be a \"num/den\" string or an integer");
}

std::vector<int> word_field(const GradedBasis& basis, const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_array()) throw InputError(std::string("field \"") + name + "\" must be an array of basis names");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw InputError("basis names must be strings");
    auto idx = basis.index_of(x.get<std::string>());
    if (!idx) throw InputError("unknown basis element \"" + x.get<std::string>() + "\"");
    out.push_back(*idx);
  }
  return out;
}

SymMonomial monomial_field(const GradedBasis& basis, const json& j, const char* name) {
  SymMonomial m{word_field(basis, j, name)};
  auto proj = s_project(basis, TensorWord{m.entries});
  if (!proj || proj->monomial != m) {
    throw InputError(std::string("field \"") + name + "\" is not a canonical monomial (sorted, no repeated odd element)");
  }
  return m;
}

json names(const GradedBasis& basis, const std::vector<int>& entries) {
  json a = json::array();
  for (int i : entries) a.push_back(basis[static_cast<std::size_t>(i)].name);
  return a;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace

GradedBasis parse_basis(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("\"basis\" must be a nonempty array");
  std::vector<BasisElement> elements;
  std::set<std::string> seen;
  for (const auto& e : j) {
    const json& name = field(e, "name");
    if (!name.is_string() || name.get<std::string>().empty()) throw InputError("basis names must be nonempty strings");
    if (!seen.insert(name.get<std::string>()).second) throw InputError("duplicate basis name " + name.dump());
    elements.push_back({name.get<std::string>(), int_field(e, "degree")});
  }
  return GradedBasis(std::move(elements));
}

json basis_json(const GradedBasis& basis) {
  json a = json::array();
  for (const auto& e : basis.elements()) a.push_back({{"name", e.name}, {"degree", e.degree}});
  return a;
}

OperatorSpec parse_operator_spec(const json& j) {
  OperatorSpec spec;
  spec.basis = parse_basis(field(j, "basis"));
  spec.element.degree = int_field(j, "degree");
  if (j.contains("reduced")) {
    if (!j.at("reduced").is_boolean()) throw InputError("field \"reduced\" must be a boolean");
    spec.element.reduced = j.at("reduced").get<bool>();
  }
  const json& comps = field(j, "components");
  if (!comps.is_array()) throw InputError("\"components\" must be an array");
  std::set<std::tuple<int, SymMonomial, SymMonomial>> keys;
  for (const auto& c : comps) {
    const int g = int_field(c, "g");
    if (g < 0) throw InputError("component genus must be nonnegative");
    SymMonomial x = monomial_field(spec.basis, c, "in");
    SymMonomial y = monomial_field(spec.basis, c, "out");
    if (!keys.insert({g, x, y}).second) throw InputError("duplicate component (g, in, out)");
    const Scalar coeff = coeff_field(c);
    if (coeff == 0) continue;
    SymOp op(static_cast<int>(x.size()), static_cast<int>(y.size()), spec.element.degree);
    op.add(spec.basis, x, y, coeff);
    spec.element.add(g, op);
  }
  if (spec.element.reduced && spec.element.has_zero_arity_component()) {
    throw UnreducedError("spec is marked reduced but has a component with zero input or output arity");
  }
  return spec;
}

OperatorSpec load_operator_spec(const std::string& path) { return parse_operator_spec(read_file(path)); }

json operator_spec_json(const GradedBasis& basis, const WeylElement& h) {
  json comps = json::array();
  for (const auto& [key, op] : h.components) {
    for (const auto& [x, image] : op.entries) {
      for (const auto& [y, c] : image) {
        comps.push_back({{"g", key.g},
                         {"in", names(basis, x.entries)},
                         {"out", names(basis, y.entries)},
                         {"coeff", format_scalar(c)}});
      }
    }
  }
  return {{"basis", basis_json(basis)}, {"degree", h.degree}, {"reduced", !h.has_zero_arity_component()},
          {"components", comps}};
}

FamilySpec parse_family_spec(const json& j) {
  FamilySpec spec;
  spec.basis = parse_basis(field(j, "basis"));
  spec.family.degree = int_field(j, "degree");
  const json& comps = field(j, "components");
  if (!comps.is_array()) throw InputError("\"components\" must be an array");
  std::set<std::tuple<int, int, int, TensorWord, TensorWord>> keys;
  for (const auto& c : comps) {
    const int r = int_field(c, "r");
    const int t = int_field(c, "t");
    const int g = int_field(c, "g");
    if (r < 1 || t < 1) throw UnreducedError("family map with zero input or output arity");
    if (g < 0) throw InputError("family genus must be nonnegative");
    TensorWord x{word_field(spec.basis, c, "in")};
    TensorWord y{word_field(spec.basis, c, "out")};
    if (static_cast<int>(x.size()) != r || static_cast<int>(y.size()) != t) {
      throw InputError("family entry word lengths do not match (r, t)");
    }
    if (word_degree(spec.basis, y.entries) - word_degree(spec.basis, x.entries) != spec.family.degree) {
      throw InputError("family entry has the wrong degree");
    }
    if (!keys.insert({r, t, g, x, y}).second) throw InputError("duplicate family entry (r, t, g, in, out)");
    const Scalar coeff = coeff_field(c);
    if (coeff == 0) continue;
    TensorOp op(r, t, spec.family.degree);
    op.add_row(x, TensorVector(y, coeff));
    spec.family.add(g, op);
  }
  return spec;
}

FamilySpec load_family_spec(const std::string& path) { return parse_family_spec(read_file(path)); }

json family_spec_json(const GradedBasis& basis, const StructureFamily& f) {
  json comps = json::array();
  for (const auto& [key, phi] : f.maps) {
    for (const auto& [x, image] : phi.entries) {
      for (const auto& [y, c] : image) {
        comps.push_back({{"r", key.r},
                         {"t", key.t},
                         {"g", key.g},
                         {"in", names(basis, x.entries)},
                         {"out", names(basis, y.entries)},
                         {"coeff", format_scalar(c)}});
      }
    }
  }
  return {{"basis", basis_json(basis)}, {"degree", f.degree}, {"components", comps}};
}

}  // namespace weylprop
