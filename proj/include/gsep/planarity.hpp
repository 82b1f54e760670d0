#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gsep/embedded_graph.hpp"

namespace gsep {

struct AbstractGraph {
  int n = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
};

struct PlanarityResult {
  bool planar = false;
  std::optional<EmbeddedGraph> embedding;  // genus 0 on every component
};

/// Boyer-Myrvold planarity test with a rotation-system witness. Loops and
/// parallel edges are allowed; they are re-inserted next to their first copy.
PlanarityResult is_planar(const AbstractGraph& graph);

/// One side of the cycle, as a closed subsurface, is a disk: the cycle
/// separates the dual and some side R has V_R - E_R + F_R = 1 counting the
/// cycle's own vertices and edges. Throws Error{NotACycle}.
bool is_contractible(const EmbeddedGraph& g, std::span<const Dart> cycle);

/// Fast contractibility answers for many cycles of one embedded graph.
///
/// Separation is decided from Z/2 intersection numbers with a homology basis
/// of dual cycles built from a tree-cotree decomposition; a separating cycle
/// is then checked for a disk side by flooding both sides in lockstep and
/// measuring only the smaller one.
class ContractibilityOracle {
 public:
  explicit ContractibilityOracle(const EmbeddedGraph& g);

  bool is_separating(std::span<const Dart> cycle) const;
  bool is_contractible(std::span<const Dart> cycle) const;

  int genus() const { return total_genus_; }

 private:
  const EmbeddedGraph* g_;
  int words_ = 0;
  std::vector<std::uint64_t> labels_;  // words_ per edge
  Components comps_;
  std::vector<int> comp_genus_;
  int total_genus_ = 0;
};

}  // namespace gsep
