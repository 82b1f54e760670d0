#pragma once

// Rotation-system representation of graphs 2-cell embedded on orientable
// surfaces.
//
// Every undirected edge e owns two darts: Dart(e, true) runs from the first
// endpoint to the second, Dart(e, false) runs back. A dart's id is
// 2*e + (forward ? 0 : 1), so rev() is a single xor. Each vertex stores the
// cyclic order of darts leaving it. The left face of a dart d is the orbit of
// d under face_next(d) = rot_next(rev(d)).

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace gsep {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;
using FaceId = std::int32_t;

inline constexpr std::int32_t kNone = -1;

class Dart {
 public:
  constexpr Dart() = default;
  constexpr Dart(EdgeId edge, bool forward)
      : id_(2 * edge + (forward ? 0 : 1)) {}

  static constexpr Dart from_id(std::int32_t id) {
    Dart d;
    d.id_ = id;
    return d;
  }

  constexpr EdgeId edge() const { return id_ >> 1; }
  constexpr bool forward() const { return (id_ & 1) == 0; }
  constexpr Dart rev() const { return from_id(id_ ^ 1); }
  constexpr std::int32_t id() const { return id_; }
  constexpr bool valid() const { return id_ >= 0; }

  constexpr auto operator<=>(const Dart&) const = default;

 private:
  std::int32_t id_ = kNone;
};

struct Face {
  FaceId id = kNone;
  std::vector<Dart> darts;  // face lies to the left of each dart
};

class EmbeddedGraph {
 public:
  EmbeddedGraph() = default;

  /// Validates the rotation system and traces faces.
  /// Throws Error{IndexOutOfRange} or Error{MalformedRotation}.
  static EmbeddedGraph build(int n,
                             std::vector<std::pair<Vertex, Vertex>> edge_ends,
                             std::vector<std::vector<Dart>> rotation);

  int num_vertices() const { return static_cast<int>(rotation_.size()); }
  int num_edges() const { return static_cast<int>(ends_.size()); }
  int num_darts() const { return 2 * num_edges(); }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  std::pair<Vertex, Vertex> edge_ends(EdgeId e) const { return ends_[e]; }
  const std::vector<std::pair<Vertex, Vertex>>& all_edge_ends() const {
    return ends_;
  }
  Vertex tail(Dart d) const {
    return d.forward() ? ends_[d.edge()].first : ends_[d.edge()].second;
  }
  Vertex head(Dart d) const { return tail(d.rev()); }
  Vertex other(EdgeId e, Vertex v) const {
    return ends_[e].first == v ? ends_[e].second : ends_[e].first;
  }
  bool is_loop(EdgeId e) const { return ends_[e].first == ends_[e].second; }

  std::span<const Dart> rotation(Vertex v) const { return rotation_[v]; }
  const std::vector<std::vector<Dart>>& all_rotations() const {
    return rotation_;
  }
  int degree(Vertex v) const { return static_cast<int>(rotation_[v].size()); }

  Dart rot_next(Dart d) const;
  Dart rot_prev(Dart d) const;
  Dart face_next(Dart d) const { return rot_next(d.rev()); }

  FaceId face_of(Dart d) const { return face_of_[d.id()]; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(FaceId f) const { return faces_[f]; }

 private:
  void trace_faces();

  std::vector<std::pair<Vertex, Vertex>> ends_;
  std::vector<std::vector<Dart>> rotation_;
  std::vector<std::int32_t> pos_;  // dart id -> index in its tail's rotation
  std::vector<FaceId> face_of_;
  std::vector<Face> faces_;
};

/// Connected components: per-vertex component id in order of first vertex.
struct Components {
  int count = 0;
  std::vector<int> of;
};
Components connected_components(const EmbeddedGraph& g);

struct GenusReport {
  std::vector<int> per_component;  // indexed like connected_components()
  int total = 0;
};

/// Euler genus of each connected component. An isolated vertex is a sphere.
/// Throws Error{NonIntegerGenus} when V - E + F is odd or exceeds 2.
GenusReport euler_genus(const EmbeddedGraph& g);

struct DualGraph {
  int num_nodes = 0;
  // dual edge e crosses primal edge e and joins face_of(Dart(e, true)) to
  // face_of(Dart(e, false)).
  std::vector<std::pair<FaceId, FaceId>> edge_ends;
  std::vector<int> degree;
};
DualGraph dual(const EmbeddedGraph& g);

/// The dual as an embedded graph: dual vertex f is primal face f, dual edge e
/// crosses primal edge e, and the dual dart with id i crosses primal dart i
/// leaving its left face. Dual faces correspond to primal vertices.
EmbeddedGraph dual_embedding(const EmbeddedGraph& g);

/// Adds fan chords from the lowest-index vertex of every face with more than
/// three darts. Throws Error{DegenerateFace} on faces with fewer than three.
EmbeddedGraph triangulate(const EmbeddedGraph& g);

bool is_triangulated(const EmbeddedGraph& g);

/// Checks that darts form a closed walk without repeated vertices.
/// Throws Error{NotACycle}.
void validate_cycle(const EmbeddedGraph& g, std::span<const Dart> cycle);

struct CycleSides {
  std::vector<FaceId> left;
  std::vector<FaceId> right;
  bool separating = false;
};

/// Classifies faces by flood fill in the dual without crossing the cycle.
CycleSides cycle_sides(const EmbeddedGraph& g, std::span<const Dart> cycle);

/// Labels faces by connectivity across edges whose mask entry is false.
/// Returns the number of regions; `label` is resized to num_faces().
int label_face_regions(const EmbeddedGraph& g,
                       const std::vector<char>& blocked_edge,
                       std::vector<int>& label);

/// Boundary of a face set as closed walks with the region on the left, split
/// at repeated vertices into simple cycles.
std::vector<std::vector<Dart>> region_boundary(const EmbeddedGraph& g,
                                               const std::vector<char>& in_region);

/// Splits a closed walk at repeated vertices into simple closed walks.
std::vector<std::vector<Dart>> split_closed_walk(const EmbeddedGraph& g,
                                                 std::vector<Dart> walk);

/// Subgraph with renumbered vertices and edges plus maps back to the parent.
struct SubEmbedding {
  EmbeddedGraph graph;
  std::vector<Vertex> to_parent_vertex;
  std::vector<Vertex> from_parent_vertex;  // kNone when dropped
  std::vector<EdgeId> to_parent_edge;
};

/// Keeps the given vertices and edges (an edge survives only when both ends
/// do); rotations are restricted in cyclic order and faces re-traced.
SubEmbedding sub_embedding(const EmbeddedGraph& g,
                           const std::vector<char>& keep_vertex,
                           const std::vector<char>& keep_edge);

SubEmbedding induced_embedding(const EmbeddedGraph& g,
                               const std::vector<char>& keep_vertex);

/// Drops loops and all but the first edge of every parallel class.
SubEmbedding simplify(const EmbeddedGraph& g);

}  // namespace gsep
