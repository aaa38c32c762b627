#pragma once

// JSON ingestion and emission for operator specs (Weyl elements) and family
// specs (structure families keyed by (r, t, g) with tensor-basis entries).
//
// Operator spec:
//   {"basis": [{"name": "x", "degree": 0}, ...], "degree": -1, "reduced": true,
//    "components": [{"g": 0, "in": ["x"], "out": ["x", "y"], "coeff": "1/2"}, ...]}
// Family spec:
//   {"basis": [...], "degree": -1,
//    "components": [{"r": 2, "t": 1, "g": 0, "in": ["x", "y"], "out": ["x"], "coeff": "1"}, ...]}

#include <string>

#include "json.hpp"
#include "weylprop/correspondence.hpp"
#include "weylprop/weyl.hpp"

namespace weylprop {

struct OperatorSpec {
  GradedBasis basis;
  WeylElement element;
};

struct FamilySpec {
  GradedBasis basis;
  StructureFamily family;
};

/// Throws InputError on malformed JSON, unknown basis names, non-canonical
/// monomials, inhomogeneous degree or duplicate (g, in, out) keys.
OperatorSpec parse_operator_spec(const nlohmann::json& j);
OperatorSpec load_operator_spec(const std::string& path);
nlohmann::json operator_spec_json(const GradedBasis& basis, const WeylElement& h);

FamilySpec parse_family_spec(const nlohmann::json& j);
FamilySpec load_family_spec(const std::string& path);
nlohmann::json family_spec_json(const GradedBasis& basis, const StructureFamily& f);

GradedBasis parse_basis(const nlohmann::json& j);
nlohmann::json basis_json(const GradedBasis& basis);

}  // namespace weylprop
