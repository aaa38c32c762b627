#pragma once

// The free properad on the reduced coFrob generators 1_{r,t,g} (all of degree
// -1) as a graph complex, with the cobar differential.
//
// Symmetric actions on flags are trivial, so a graph is determined by its
// vertex labels, which external legs sit at which vertex, and the number of
// parallel edges between each ordered pair of vertices. The vertex order is
// the tensor order of the odd generators and only matters up to sign.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weylprop/graded.hpp"
#include "weylprop/weyl.hpp"

namespace weylprop {

struct GenLabel {
  int r = 0;
  int t = 0;
  int g = 0;
  auto operator<=>(const GenLabel&) const = default;
};

/// r, t >= 1, g >= 0 and not the counit piece (1,1,0).
bool is_valid_label(const GenLabel& label);

struct PropGraph {
  int r = 0;  // external inputs 1..r
  int t = 0;  // external outputs 1..t
  std::vector<GenLabel> labels;
  std::vector<std::uint32_t> in_legs;   // bit l set: input leg l+1 enters this vertex
  std::vector<std::uint32_t> out_legs;  // bit l set: output leg l+1 leaves this vertex
  std::vector<int> edges;               // edges[a * p + b]: outputs of a feeding inputs of b

  std::size_t size() const { return labels.size(); }
  int edge(std::size_t a, std::size_t b) const { return edges[a * labels.size() + b]; }
  int edge_count() const;
  /// Sum of vertex genera plus the first Betti number of the underlying graph.
  int genus() const;
  int degree() const { return -static_cast<int>(labels.size()); }
  auto operator<=>(const PropGraph&) const = default;
};

using GraphVector = FormalVector<PropGraph>;

/// The one-vertex graph carrying 1_{r,t,g} with legs in order.
PropGraph single_vertex(const GenLabel& label);

/// Throws InputError unless every vertex label is valid, its arities match its
/// flags, each external leg sits at exactly one vertex, and the graph is
/// connected and free of directed cycles.
void validate(const PropGraph& g);

struct CanonicalGraph {
  PropGraph graph;
  int sign = 1;   // sign of the vertex reordering
  bool zero = false;  // an automorphism permutes the vertices oddly
};

/// Canonical representative of the isomorphism class (without validation).
CanonicalGraph canonical_form(const PropGraph& g);
/// Validates, then returns (canonical graph, sign), or nullopt when the class vanishes.
std::optional<std::pair<PropGraph, int>> canonicalize(const PropGraph& g);

/// Compact byte string for a graph of arity (r, t): vertex count, then per
/// vertex r, t, g and the leg masks, then the edge matrix. Byte order of codes
/// is the basis order used everywhere. At most 16 vertices.
using GraphCode = std::string;
GraphCode encode(const PropGraph& g);
PropGraph decode(const GraphCode& code, int r, int t);

/// Every term of d at vertex x: x replaced by the upper vertex (at x) and the
/// lower vertex (at x + 1) joined by k >= 1 edges, weighted by the number of
/// flag choices realizing it divided by k!. The graph passed on is not canonical.
void for_each_split(const PropGraph& g, std::size_t x, const std::function<void(PropGraph&&, const Scalar&)>& visit);

/// d(1_label) as a canonical graph vector.
GraphVector d_generator(const GenLabel& label);

/// Derivation extension of d: vertex x contributes with sign (-1)^x.
GraphVector differential(const GraphVector& v);
GraphVector differential(const PropGraph& canonical_graph);

/// Canonical classes with p vertices of total arity (r, t) and genus g.
struct BasisLevel {
  std::vector<PropGraph> graphs;       // nonzero classes, in code order
  std::vector<PropGraph> null_graphs;  // classes killed by an odd automorphism, in code order
};

/// Largest possible vertex count: each vertex uses at least 1 of 2g - 2 + r + t.
int max_vertices(int r, int t, int g);

/// (g + 1)!: every k! in d divides it, so scale * d has integer entries in a cell of genus g.
std::int64_t differential_scale(int g);

/// Level p + 1 of a cell from level p (both as sorted codes), plus, on request,
/// the columns of scale * d on the nonzero classes of level p: (row index into
/// the new nonzero classes, entry). The null classes of level p are split too,
/// since a class can arise only from them.
struct SplitStep {
  std::vector<GraphCode> graphs;
  std::vector<GraphCode> null_graphs;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> columns;
};
SplitStep split_level(const std::vector<GraphCode>& graphs, const std::vector<GraphCode>& null_graphs, int r, int t,
                      int g, bool with_columns, Execution exec = Execution::parallel);

/// Level p from level p - 1 by splitting every vertex of every class in every
/// way; level 1 is the single generator. Parallel over the classes of level p - 1.
BasisLevel next_level(const BasisLevel& previous, int r, int t, int g, Execution exec = Execution::parallel);
BasisLevel first_level(int r, int t, int g);

/// enumerate_basis(r,t,g,p): all levels up to p computed in memory.
std::vector<PropGraph> enumerate_basis(int r, int t, int g, int p);

}  // namespace weylprop
