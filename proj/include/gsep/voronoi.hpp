#pragma once

#include <optional>
#include <vector>

#include "gsep/embedded_graph.hpp"
#include "gsep/planarity.hpp"

namespace gsep {

/// BFS layers from v: levels[i] holds the vertices at distance i, sorted.
std::vector<std::vector<Vertex>> bfs_levels(const EmbeddedGraph& g, Vertex v);

struct KNeighborhood {
  std::vector<Vertex> vertices;  // sorted; never contains the centre
  int radius = 0;                // the last level taken
};

/// Union of levels 1..d around v with d the least value reaching k vertices.
/// Throws Error{ComponentTooSmall} if v's component has at most k vertices.
KNeighborhood k_neighborhood(const EmbeddedGraph& g, Vertex v, int k);

/// Greedy k-maximal independent set: scans vertices by index and keeps v when
/// N_k(v) misses every neighborhood kept so far. Components with at most k
/// vertices throw Error{ComponentTooSmall}.
std::vector<Vertex> k_max_independent_set(const EmbeddedGraph& g, int k);

/// Boss of v evaluated directly from the nearness order: the boss whose
/// neighborhood has the nearest member to v, ties by that member's index.
Vertex boss_by_definition(const EmbeddedGraph& g,
                          const std::vector<Vertex>& bosses,
                          const std::vector<KNeighborhood>& neighborhoods,
                          Vertex v);

struct VoronoiDecomposition {
  int k = 0;
  std::vector<Vertex> bosses;  // sorted
  std::vector<KNeighborhood> neighborhoods;
  std::vector<int> region_of;      // per vertex: index into bosses
  std::vector<Dart> parent;        // per vertex: dart towards its tree parent
  std::vector<int> depth;          // per vertex: depth in its region tree
  std::vector<int> nb_distance;    // per vertex: distance to the nearest neighborhood
  std::vector<std::vector<Vertex>> members;  // per region, BFS order from the boss
  int self_boss_violations = 0;    // bosses whose own nearest neighborhood is foreign

  int num_regions() const { return static_cast<int>(bosses.size()); }
  Vertex boss_of(Vertex v) const { return bosses[region_of[v]]; }
  bool is_tree_edge(const EmbeddedGraph& g, EdgeId e) const;
};

/// Assigns every vertex to its boss with one multi-source BFS from all
/// neighborhoods, and builds a BFS tree inside each region. A boss is always
/// assigned to itself. Throws Error{InvariantViolation} if a region is
/// disconnected.
VoronoiDecomposition voronoi_regions(const EmbeddedGraph& g,
                                     const std::vector<Vertex>& bosses, int k);

struct RegionPair {
  int first = 0;
  int second = 0;
  EdgeId link = kNone;  // lowest-index edge joining them
};

/// Pairs of distinct regions joined by at least one edge, sorted.
std::vector<RegionPair> adjacent_regions(const EmbeddedGraph& g,
                                         const VoronoiDecomposition& vd);

/// Fundamental cycles of the spanning tree of vor(r1) u vor(r2) formed by the
/// two region trees and the lowest-index edge between them (separately per
/// tree when the regions do not touch); r1 == r2 scans a single region.
/// Returns the shortest non-separating cycle, or when none exists and
/// `allow_separating` is set, the shortest separating non-contractible one.
std::optional<std::vector<Dart>> noncontractible_in_two_regions(
    const EmbeddedGraph& g, const VoronoiDecomposition& vd, int r1, int r2,
    const ContractibilityOracle& oracle, bool allow_separating = true);

/// Runs the two-region search over every adjacent pair (and every region
/// that touches no other) and returns the globally shortest cycle,
/// preferring non-separating ones.
std::optional<std::vector<Dart>> scan_region_pairs(
    const EmbeddedGraph& g, const VoronoiDecomposition& vd,
    const ContractibilityOracle& oracle);

}  // namespace gsep
