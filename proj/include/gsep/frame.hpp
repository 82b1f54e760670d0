#pragma once

// Frame-graph construction over a triangulated graph and its Voronoi
// decomposition. Dual objects are expressed through primal ids: dual vertex
// f is face f, and the dual dart crossing primal dart d has the same id and
// runs from the face left of d to the face right of d. Its left dual face is
// head(d) and its right dual face is tail(d).

#include <optional>
#include <vector>

#include "gsep/embedded_graph.hpp"
#include "gsep/planarity.hpp"
#include "gsep/separator.hpp"
#include "gsep/voronoi.hpp"

namespace gsep {

/// One boundary cycle of a vertex set X in the dual, given by the crossing
/// darts (tail in X, head outside) in cyclic order, together with the closed
/// walk on X that follows it. The walk keeps X on its right.
struct BoundaryWalk {
  std::vector<Dart> crossing;
  std::vector<Dart> inner;
};

/// All dual boundary cycles of the vertex set `in_set`, scanning only darts
/// leaving `members`.
std::vector<BoundaryWalk> boundary_walks(const EmbeddedGraph& g,
                                         const std::vector<char>& in_set,
                                         const std::vector<Vertex>& members);

/// Removes dart/reverse pairs from a closed walk and splits what is left
/// into simple cycles.
std::vector<std::vector<Dart>> cancel_reverse_pairs(const EmbeddedGraph& g,
                                                    const std::vector<Dart>& walk);

/// Primal edges of region r whose dual edge is a ridge edge: non-tree edges
/// whose fundamental cycle has a boundary cycle of the region on each side.
std::vector<EdgeId> ridge_edges(const EmbeddedGraph& g, const VoronoiDecomposition& vd, int r);

struct Connector {
  std::vector<Dart> darts;  // dual darts, by crossed primal dart
  FaceId start = kNone;     // first and last dual vertex
  FaceId end = kNone;
  bool closed = false;      // a cycle of degree-2 dual vertices
};

struct BranchStructure {
  std::vector<char> boundary;  // per primal edge: its dual edge is in B
  std::vector<char> ridge;     // per primal edge: its dual edge is in R
  std::vector<int> degree;     // per face: degree in the dual subgraph on B u R
  std::vector<FaceId> branch_vertices;
  std::vector<Connector> connectors;
  int dangling_ends = 0;       // connector ends of degree 1

  bool in_b_or_r(EdgeId e) const { return boundary[e] || ridge[e]; }
};

BranchStructure branch_structure(const EmbeddedGraph& g, const VoronoiDecomposition& vd);

enum class LoopType { A, B };
enum class OverlapPolicy { Allow, Report };

struct PreFrameLoop {
  std::vector<Dart> darts;  // closed walk
  int connector = -1;
  LoopType type = LoopType::A;
  Vertex left_boss = kNone;
  Vertex right_boss = kNone;
  std::vector<FaceId> body;  // dual vertices of the connector body
  bool overlapping = false;  // some dart occurs twice
};

/// One loop per connector: tree path up from the right end of the first
/// dart, down to the right end of the last dart, the last dart, up and down
/// the tree on the left side, and the reverse of the first dart. Closed
/// connectors use the walk along their right side. Policy Report throws
/// Error{OverlappingTreePaths} on a repeated dart.
std::vector<PreFrameLoop> pre_frame_loops(const EmbeddedGraph& g, const VoronoiDecomposition& vd,
                                          const BranchStructure& bs,
                                          OverlapPolicy policy = OverlapPolicy::Allow);

struct LoopCensus {
  std::vector<int> face_region;  // faces labelled by the loop's edges
  std::vector<int> region_vertices;
  int inside_region = -1;        // region holding the body; -1 if no body
  int big_outside_region = -1;   // largest other region
  int on_loop = 0;
  int n0 = 0;   // strictly inside
  int n11 = 0;  // other regions except the largest (type B)
  int n12 = 0;  // largest other region (type B)
  int outside = 0;
};

LoopCensus loop_inside_census(const EmbeddedGraph& g, const PreFrameLoop& loop);

std::vector<Vertex> loop_vertices(const EmbeddedGraph& g, const std::vector<Dart>& walk);

/// The loop's vertices, if they already split G into pieces of at most
/// alpha * n vertices.
std::optional<SeparatorResult> loop_is_separator(const EmbeddedGraph& g, const PreFrameLoop& loop,
                                                 double alpha);

/// Loop vertices plus a planar separator of the inside, weighted by the
/// vertices strictly inside. Throws Error{InsideNotPlanar} if the inside
/// has positive genus and Error{InvariantViolation} if it is empty.
SeparatorResult separator_from_large_inside(const EmbeddedGraph& g, const PreFrameLoop& loop,
                                            const LoopCensus& census);

/// A simple cycle together with the face set of its inside.
struct InsideCycle {
  std::vector<Dart> darts;
  std::vector<FaceId> inside;  // sorted
  int inside_vertices = 0;
};

struct FrameCycles {
  std::vector<InsideCycle> members;   // the set C: type A loops, merged type B
  std::vector<int> maximal;           // members not inside another
  std::vector<std::vector<Dart>> cycles;
};

FrameCycles frame_cycles(const EmbeddedGraph& g, const std::vector<PreFrameLoop>& loops,
                         const std::vector<LoopCensus>& census);

struct Core {
  Vertex boss = kNone;
  int nb_radius = 0;  // largest d with |levels 0..d| < k
  int radius = 0;     // d_core
  std::vector<Vertex> vertices;
  std::optional<InsideCycle> cycle;  // none when the core is the boss alone
};

Core core_of(const EmbeddedGraph& g, const VoronoiDecomposition& vd, int r);

enum class CycleSide { Interior, Exterior };

struct LevelCycle {
  CycleSide side = CycleSide::Interior;
  int level = 0;
  std::vector<Dart> darts;
  bool small = false;
  bool contractible = true;
  bool light = false;
  std::vector<FaceId> inside;  // the disk side, filled for small light cycles
  int inside_vertices = 0;
};

struct LevelStructures {
  std::vector<int> level;  // per vertex distance to the nearest neighborhood
  std::vector<LevelCycle> cycles;
  std::vector<int> noncontractible_small;  // indices into cycles
};

LevelStructures level_structures(const EmbeddedGraph& g, const VoronoiDecomposition& vd,
                                 const ContractibilityOracle& oracle);

/// Disk side of a contractible cycle and its vertex count when it holds
/// fewer than `limit` vertices; nullopt when the cycle is not contractible
/// or no disk side is that small.
std::optional<InsideCycle> small_disk_side(const EmbeddedGraph& g, const std::vector<Dart>& cycle,
                                           const ContractibilityOracle& oracle, int limit);

struct FloorsAndCeilings {
  std::vector<InsideCycle> floors;
  std::vector<InsideCycle> ceilings;
  int core_floors = 0;
  int conflicts = 0;  // ceilings overlapping a floor without nesting
};

FloorsAndCeilings floor_and_ceiling_cycles(const EmbeddedGraph& g, const VoronoiDecomposition& vd,
                                           const LevelStructures& levels,
                                           const std::vector<Core>& cores,
                                           const BranchStructure& bs);

struct FrameReport {
  int n = 0;
  int k = 0;
  int genus = 0;
  int faces = 0;
  Weight max_face_weight = 0;
  int max_face_size = 0;
  bool two_connected = false;
  int articulation_points = 0;
  bool conserved = false;  // face weights + frame vertices = n
  bool weights_ok = false;     // every face weight < n/3
  bool face_size_ok = false;   // max face size <= face_constant * sqrt(k)
  bool face_count_ok = false;  // faces <= count_constant * (n/k + g)
  double face_size_ratio = 0;  // max face size / sqrt(k)
  double face_count_ratio = 0; // faces / (n/k + g)
  int max_cycle_overlaps = 0;   // most floors and ceilings met by one frame cycle
  bool all_ok() const { return weights_ok && two_connected && face_size_ok && face_count_ok; }
};

struct FrameGraph {
  SubEmbedding graph;               // the modified frame graph inside G
  std::vector<Weight> face_weight;  // per face of graph.graph
  FrameReport report;
};

struct FrameConstants {
  double face_size = 23.0;
  double face_count = 50.0;
};

/// Weights of the faces of a subgraph: every vertex of G off the subgraph
/// counts for exactly one face of the region of the surface it lies in.
std::vector<Weight> subgraph_face_weights(const EmbeddedGraph& g, const SubEmbedding& sub);

/// Edges of the frame graph (frame-cycle edges and all branch-triangle
/// edges), as a mask over G's edges.
std::vector<char> frame_graph_edges(const EmbeddedGraph& g, const FrameCycles& fc,
                                    const BranchStructure& bs);

/// Replaces frame edges inside floors and ceilings that hold a frame vertex
/// by those cycles, weights the faces and measures the four properties.
/// With `strict`, a failed property throws Error{InvariantViolation}.
FrameGraph modified_frame_graph(const EmbeddedGraph& g, const std::vector<char>& frame_edges,
                                const FloorsAndCeilings& fc, int k,
                                const FrameConstants& constants = {}, bool strict = false);

/// Per frame cycle, the number of floors and ceilings that hold one of its
/// edges inside.
std::vector<int> frame_cycle_overlaps(const EmbeddedGraph& g, const FrameCycles& cycles,
                                      const FloorsAndCeilings& fc);

}  // namespace gsep
