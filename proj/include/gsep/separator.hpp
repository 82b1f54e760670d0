#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsep/embedded_graph.hpp"

namespace gsep {

using Weight = std::int64_t;

struct SeparatorReport {
  bool ok = false;
  Weight total_weight = 0;
  Weight max_component = 0;
  std::vector<Weight> component_weights;  // descending
  double balance = 0.0;                   // max_component / total_weight
};

/// Recomputes the components of G - S and checks every one weighs at most
/// alpha times the total. Unit weights when `weights` is empty.
SeparatorReport verify_separator(const EmbeddedGraph& g,
                                 const std::vector<Vertex>& separator,
                                 double alpha,
                                 const std::vector<Weight>& weights = {});

struct SeparatorResult {
  std::vector<Vertex> vertices;  // sorted
  double alpha = 2.0 / 3.0;
  Weight total_weight = 0;
  std::vector<Weight> component_weights;  // descending
  std::vector<std::vector<Vertex>> removed_cycles;
  bool size_bound_checked = false;
  std::vector<std::string> trace;
};

/// Fills the report fields of a result from its vertex set.
void finalize_result(const EmbeddedGraph& g, SeparatorResult& result,
                     const std::vector<Weight>& weights = {});

/// Balanced separator of a genus-0 graph: repeatedly cuts the heaviest
/// component with two BFS levels and one fundamental cycle of a
/// triangulation until every component weighs at most 2/3 of the total.
/// Throws Error{NotPlanar} if some component has positive genus.
SeparatorResult weighted_planar_separator(const EmbeddedGraph& g,
                                          const std::vector<Weight>& weights);

/// Balanced separator for any genus. A heavy component of positive genus is
/// cut by two BFS levels plus the part between them of the fundamental
/// cycles of the edges left over by a tree-cotree decomposition, which
/// leaves planar pieces; planar pieces are finished as above.
SeparatorResult weighted_surface_separator(const EmbeddedGraph& g,
                                           const std::vector<Weight>& weights);

/// Shrinks an alpha-separator. First keeps only the vertices of S next to
/// the best union of components of G - S that still balances, then returns
/// vertices to the graph, deepest first, whenever the component they would
/// join stays within alpha times the total weight. The result is still an
/// alpha-separator and is inclusion-minimal.
std::vector<Vertex> trim_separator(const EmbeddedGraph& g, std::vector<Vertex> separator,
                                   double alpha, const std::vector<Weight>& weights = {});

/// Shared driver of the two separators above, starting from `initial` and
/// stopping once every component weighs at most alpha times the total.
std::vector<Vertex> grow_separator(const EmbeddedGraph& g,
                                   const std::vector<Weight>& weights,
                                   double alpha, std::vector<Vertex> initial);

}  // namespace gsep
