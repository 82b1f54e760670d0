#include "gsep/embedded_graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <string>

#include "gsep/errors.hpp"

namespace gsep {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedRotation: return "MalformedRotation";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonIntegerGenus: return "NonIntegerGenus";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::ComponentTooSmall: return "ComponentTooSmall";
    case ErrorCode::OverlappingTreePaths: return "OverlappingTreePaths";
    case ErrorCode::InsideNotPlanar: return "InsideNotPlanar";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::NotPlanar: return "NotPlanar";
    case ErrorCode::IterationLimitExceeded: return "IterationLimitExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TooSmall: return "TooSmall";
  }
  return "Unknown";
}

EmbeddedGraph EmbeddedGraph::build(int n,
                                   std::vector<std::pair<Vertex, Vertex>> edge_ends,
                                   std::vector<std::vector<Dart>> rotation) {
  if (n < 0) throw Error(ErrorCode::IndexOutOfRange, "negative vertex count");
  if (static_cast<int>(rotation.size()) != n) {
    throw Error(ErrorCode::MalformedRotation,
                "expected " + std::to_string(n) + " rotations, got " +
                    std::to_string(rotation.size()));
  }
  const int m = static_cast<int>(edge_ends.size());
  for (int e = 0; e < m; ++e) {
    auto [u, v] = edge_ends[e];
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "edge " + std::to_string(e) + " has an endpoint out of range");
    }
  }

  EmbeddedGraph g;
  g.ends_ = std::move(edge_ends);
  g.rotation_ = std::move(rotation);
  g.pos_.assign(2 * m, kNone);
  for (Vertex v = 0; v < n; ++v) {
    const auto& rot = g.rotation_[v];
    for (std::size_t i = 0; i < rot.size(); ++i) {
      Dart d = rot[i];
      if (d.id() < 0 || d.id() >= 2 * m) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "dart id " + std::to_string(d.id()) + " at vertex " +
                        std::to_string(v));
      }
      if (g.tail(d) != v) {
        throw Error(ErrorCode::MalformedRotation,
                    "dart of edge " + std::to_string(d.edge()) +
                        " listed at non-tail vertex " + std::to_string(v));
      }
      if (g.pos_[d.id()] != kNone) {
        throw Error(ErrorCode::MalformedRotation,
                    "dart of edge " + std::to_string(d.edge()) +
                        " listed twice");
      }
      g.pos_[d.id()] = static_cast<std::int32_t>(i);
    }
  }
  for (int id = 0; id < 2 * m; ++id) {
    if (g.pos_[id] == kNone) {
      throw Error(ErrorCode::MalformedRotation,
                  "dart of edge " + std::to_string(id / 2) + " missing");
    }
  }
  g.trace_faces();
  return g;
}

Dart EmbeddedGraph::rot_next(Dart d) const {
  const auto& rot = rotation_[tail(d)];
  std::size_t i = static_cast<std::size_t>(pos_[d.id()]) + 1;
  return rot[i == rot.size() ? 0 : i];
}

Dart EmbeddedGraph::rot_prev(Dart d) const {
  const auto& rot = rotation_[tail(d)];
  std::size_t i = static_cast<std::size_t>(pos_[d.id()]);
  return rot[i == 0 ? rot.size() - 1 : i - 1];
}

void EmbeddedGraph::trace_faces() {
  face_of_.assign(num_darts(), kNone);
  faces_.clear();
  for (int id = 0; id < num_darts(); ++id) {
    if (face_of_[id] != kNone) continue;
    Face f;
    f.id = static_cast<FaceId>(faces_.size());
    Dart d = Dart::from_id(id);
    do {
      face_of_[d.id()] = f.id;
      f.darts.push_back(d);
      d = face_next(d);
    } while (d.id() != id);
    faces_.push_back(std::move(f));
  }
}

Components connected_components(const EmbeddedGraph& g) {
  Components c;
  c.of.assign(g.num_vertices(), kNone);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (c.of[s] != kNone) continue;
    c.of[s] = c.count;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Dart d : g.rotation(v)) {
        Vertex w = g.head(d);
        if (c.of[w] == kNone) {
          c.of[w] = c.count;
          stack.push_back(w);
        }
      }
    }
    ++c.count;
  }
  return c;
}

GenusReport euler_genus(const EmbeddedGraph& g) {
  Components comps = connected_components(g);
  std::vector<long> chi(comps.count, 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    chi[comps.of[v]] += 1;
    if (g.degree(v) == 0) chi[comps.of[v]] += 1;  // the sphere's single face
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) chi[comps.of[g.edge_ends(e).first]] -= 1;
  for (const Face& f : g.faces()) chi[comps.of[g.tail(f.darts.front())]] += 1;

  GenusReport report;
  report.per_component.resize(comps.count);
  for (int c = 0; c < comps.count; ++c) {
    long twice = 2 - chi[c];
    if (twice < 0 || twice % 2 != 0) {
      throw Error(ErrorCode::NonIntegerGenus,
                  "component " + std::to_string(c) + " has Euler characteristic " +
                      std::to_string(chi[c]));
    }
    report.per_component[c] = static_cast<int>(twice / 2);
    report.total += report.per_component[c];
  }
  return report;
}

DualGraph dual(const EmbeddedGraph& g) {
  DualGraph d;
  d.num_nodes = g.num_faces();
  d.degree.assign(d.num_nodes, 0);
  d.edge_ends.reserve(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    FaceId a = g.face_of(Dart(e, true));
    FaceId b = g.face_of(Dart(e, false));
    d.edge_ends.emplace_back(a, b);
    ++d.degree[a];
    ++d.degree[b];
  }
  return d;
}

EmbeddedGraph dual_embedding(const EmbeddedGraph& g) {
  std::vector<std::pair<Vertex, Vertex>> ends;
  ends.reserve(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    ends.emplace_back(g.face_of(Dart(e, true)), g.face_of(Dart(e, false)));
  }
  std::vector<std::vector<Dart>> rot(g.num_faces());
  for (const Face& f : g.faces()) rot[f.id] = f.darts;
  return EmbeddedGraph::build(g.num_faces(), std::move(ends), std::move(rot));
}

bool is_triangulated(const EmbeddedGraph& g) {
  return std::all_of(g.faces().begin(), g.faces().end(),
                     [](const Face& f) { return f.darts.size() == 3; });
}

EmbeddedGraph triangulate(const EmbeddedGraph& g) {
  for (const Face& f : g.faces()) {
    if (f.darts.size() < 3) {
      throw Error(ErrorCode::DegenerateFace,
                  "face " + std::to_string(f.id) + " has " +
                      std::to_string(f.darts.size()) + " darts");
    }
  }
  if (is_triangulated(g)) return g;

  auto ends = g.all_edge_ends();
  std::vector<std::int32_t> next(g.num_darts());
  for (int id = 0; id < g.num_darts(); ++id) {
    next[id] = g.rot_next(Dart::from_id(id)).id();
  }
  auto insert_after = [&](Dart at, Dart d) {
    if (static_cast<std::size_t>(d.id()) >= next.size()) next.resize(d.id() + 1);
    next[d.id()] = next[at.id()];
    next[at.id()] = d.id();
  };

  for (const Face& f : g.faces()) {
    const int m = static_cast<int>(f.darts.size());
    if (m == 3) continue;
    int anchor = 0;
    for (int i = 1; i < m; ++i) {
      Vertex vi = g.tail(f.darts[i]);
      Vertex va = g.tail(f.darts[anchor]);
      if (vi < va || (vi == va && f.darts[i] < f.darts[anchor])) anchor = i;
    }
    std::vector<Dart> d(m);
    for (int i = 0; i < m; ++i) d[i] = f.darts[(anchor + i) % m];
    const Vertex v0 = g.tail(d[0]);
    const Dart corner = d[m - 1].rev();
    for (int j = 2; j <= m - 2; ++j) {
      const Vertex vj = g.tail(d[j]);
      const EdgeId e = static_cast<EdgeId>(ends.size());
      ends.emplace_back(v0, vj);
      const Dart chord(e, true);
      insert_after(corner, chord);
      insert_after(d[j - 1].rev(), chord.rev());
    }
  }

  const int n = g.num_vertices();
  std::vector<std::vector<Dart>> rot(n);
  for (Vertex v = 0; v < n; ++v) {
    auto orig = g.rotation(v);
    if (orig.empty()) continue;
    Dart start = orig.front();
    Dart d = start;
    do {
      rot[v].push_back(d);
      d = Dart::from_id(next[d.id()]);
    } while (d != start);
  }
  return EmbeddedGraph::build(n, std::move(ends), std::move(rot));
}

void validate_cycle(const EmbeddedGraph& g, std::span<const Dart> cycle) {
  if (cycle.empty()) throw Error(ErrorCode::NotACycle, "empty dart sequence");
  std::vector<char> seen(g.num_vertices(), 0);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    Dart d = cycle[i];
    if (d.id() < 0 || d.id() >= g.num_darts()) {
      throw Error(ErrorCode::NotACycle, "dart out of range");
    }
    Dart nxt = cycle[(i + 1) % cycle.size()];
    if (g.head(d) != g.tail(nxt)) {
      throw Error(ErrorCode::NotACycle, "darts " + std::to_string(i) +
                                            " and its successor do not chain");
    }
    Vertex t = g.tail(d);
    if (seen[t]) {
      throw Error(ErrorCode::NotACycle,
                  "vertex " + std::to_string(t) + " repeated");
    }
    seen[t] = 1;
  }
}

int label_face_regions(const EmbeddedGraph& g,
                       const std::vector<char>& blocked_edge,
                       std::vector<int>& label) {
  label.assign(g.num_faces(), kNone);
  int regions = 0;
  std::vector<FaceId> queue;
  for (FaceId s = 0; s < g.num_faces(); ++s) {
    if (label[s] != kNone) continue;
    label[s] = regions;
    queue.assign(1, s);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (Dart d : g.face(queue[qi]).darts) {
        if (blocked_edge[d.edge()]) continue;
        FaceId t = g.face_of(d.rev());
        if (label[t] == kNone) {
          label[t] = regions;
          queue.push_back(t);
        }
      }
    }
    ++regions;
  }
  return regions;
}

CycleSides cycle_sides(const EmbeddedGraph& g, std::span<const Dart> cycle) {
  validate_cycle(g, cycle);
  std::vector<char> blocked(g.num_edges(), 0);
  for (Dart d : cycle) blocked[d.edge()] = 1;
  std::vector<int> label;
  label_face_regions(g, blocked, label);
  const int lreg = label[g.face_of(cycle.front())];
  const int rreg = label[g.face_of(cycle.front().rev())];
  CycleSides sides;
  sides.separating = lreg != rreg;
  for (FaceId f = 0; f < g.num_faces(); ++f) {
    if (label[f] == lreg) sides.left.push_back(f);
    if (label[f] == rreg) sides.right.push_back(f);
  }
  return sides;
}

std::vector<std::vector<Dart>> split_closed_walk(const EmbeddedGraph& g,
                                                 std::vector<Dart> walk) {
  std::vector<std::vector<Dart>> out;
  if (walk.empty()) return out;
  std::map<Vertex, std::size_t> pos;
  std::vector<Dart> stack;
  pos[g.tail(walk.front())] = 0;
  for (Dart d : walk) {
    stack.push_back(d);
    Vertex v = g.head(d);
    auto it = pos.find(v);
    if (it != pos.end()) {
      const std::size_t p = it->second;
      std::vector<Dart> cyc(stack.begin() + static_cast<std::ptrdiff_t>(p), stack.end());
      for (std::size_t i = p + 1; i < stack.size(); ++i) pos.erase(g.tail(stack[i]));
      stack.resize(p);
      out.push_back(std::move(cyc));
    } else {
      pos[v] = stack.size();
    }
  }
  return out;
}

std::vector<std::vector<Dart>> region_boundary(const EmbeddedGraph& g,
                                               const std::vector<char>& in_region) {
  auto is_boundary = [&](Dart d) {
    return in_region[g.face_of(d)] && !in_region[g.face_of(d.rev())];
  };
  std::vector<char> used(g.num_darts(), 0);
  std::vector<std::vector<Dart>> cycles;
  for (int id = 0; id < g.num_darts(); ++id) {
    Dart start = Dart::from_id(id);
    if (used[id] || !is_boundary(start)) continue;
    std::vector<Dart> walk;
    Dart d = start;
    do {
      used[d.id()] = 1;
      walk.push_back(d);
      Dart x = g.face_next(d);
      while (!is_boundary(x)) x = g.rot_next(x);
      d = x;
    } while (d != start);
    for (auto& c : split_closed_walk(g, std::move(walk))) cycles.push_back(std::move(c));
  }
  return cycles;
}

SubEmbedding sub_embedding(const EmbeddedGraph& g,
                           const std::vector<char>& keep_vertex,
                           const std::vector<char>& keep_edge) {
  SubEmbedding s;
  s.from_parent_vertex.assign(g.num_vertices(), kNone);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!keep_vertex[v]) continue;
    s.from_parent_vertex[v] = static_cast<Vertex>(s.to_parent_vertex.size());
    s.to_parent_vertex.push_back(v);
  }
  std::vector<EdgeId> new_edge(g.num_edges(), kNone);
  std::vector<std::pair<Vertex, Vertex>> ends;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edge_ends(e);
    if (!keep_edge[e] || !keep_vertex[u] || !keep_vertex[v]) continue;
    new_edge[e] = static_cast<EdgeId>(ends.size());
    ends.emplace_back(s.from_parent_vertex[u], s.from_parent_vertex[v]);
    s.to_parent_edge.push_back(e);
  }
  std::vector<std::vector<Dart>> rot(s.to_parent_vertex.size());
  for (std::size_t i = 0; i < s.to_parent_vertex.size(); ++i) {
    for (Dart d : g.rotation(s.to_parent_vertex[i])) {
      if (new_edge[d.edge()] != kNone) rot[i].push_back(Dart(new_edge[d.edge()], d.forward()));
    }
  }
  s.graph = EmbeddedGraph::build(static_cast<int>(s.to_parent_vertex.size()),
                                 std::move(ends), std::move(rot));
  return s;
}

SubEmbedding induced_embedding(const EmbeddedGraph& g,
                               const std::vector<char>& keep_vertex) {
  return sub_embedding(g, keep_vertex, std::vector<char>(g.num_edges(), 1));
}

SubEmbedding simplify(const EmbeddedGraph& g) {
  std::vector<char> keep(g.num_edges(), 0);
  std::map<std::pair<Vertex, Vertex>, EdgeId> first;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edge_ends(e);
    if (u == v) continue;
    auto key = std::minmax(u, v);
    if (first.emplace(key, e).second) keep[e] = 1;
  }
  return sub_embedding(g, std::vector<char>(g.num_vertices(), 1), keep);
}

}  // namespace gsep
