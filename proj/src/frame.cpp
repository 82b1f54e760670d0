#include "gsep/frame.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

#include "gsep/errors.hpp"

namespace gsep {
namespace {

// Darts from v up its region tree to the boss.
std::vector<Dart> path_to_boss(const EmbeddedGraph& g, const VoronoiDecomposition& vd, Vertex v) {
  std::vector<Dart> out;
  while (vd.parent[v].valid()) {
    out.push_back(vd.parent[v]);
    v = g.head(vd.parent[v]);
  }
  return out;
}

std::vector<Dart> reversed(std::vector<Dart> path) {
  std::reverse(path.begin(), path.end());
  for (Dart& d : path) d = d.rev();
  return path;
}

void append(std::vector<Dart>& out, const std::vector<Dart>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

// Fundamental cycle of a non-tree dart inside its region tree, starting with d.
std::vector<Dart> region_cycle(const EmbeddedGraph& g, const VoronoiDecomposition& vd, Dart d) {
  Vertex a = g.tail(d), b = g.head(d);
  std::vector<Dart> up_a, up_b;
  while (a != b) {
    if (vd.depth[a] >= vd.depth[b]) {
      up_a.push_back(vd.parent[a]);
      a = g.head(vd.parent[a]);
    } else {
      up_b.push_back(vd.parent[b]);
      b = g.head(vd.parent[b]);
    }
  }
  std::vector<Dart> cycle{d};
  append(cycle, up_b);
  append(cycle, reversed(up_a));
  return cycle;
}

std::vector<char> face_mask(const EmbeddedGraph& g, const std::vector<FaceId>& faces) {
  std::vector<char> mask(g.num_faces(), 0);
  for (FaceId f : faces) mask[f] = 1;
  return mask;
}

// Vertices whose every incident face lies in the sorted face set.
int interior_vertex_count(const EmbeddedGraph& g, const std::vector<char>& in_face,
                          const std::vector<FaceId>& faces) {
  std::unordered_set<Vertex> seen;
  int count = 0;
  for (FaceId f : faces) {
    for (Dart d : g.face(f).darts) {
      const Vertex v = g.tail(d);
      if (!seen.insert(v).second) continue;
      bool all = true;
      for (Dart x : g.rotation(v)) all = all && in_face[g.face_of(x)];
      count += all;
    }
  }
  return count;
}

InsideCycle make_inside_cycle(const EmbeddedGraph& g, std::vector<Dart> darts,
                              std::vector<FaceId> inside) {
  std::sort(inside.begin(), inside.end());
  InsideCycle c;
  c.darts = std::move(darts);
  c.inside_vertices = interior_vertex_count(g, face_mask(g, inside), inside);
  c.inside = std::move(inside);
  return c;
}

// Faces reached from `seeds` without crossing blocked edges.
std::vector<FaceId> flood_faces(const EmbeddedGraph& g, const std::vector<FaceId>& seeds,
                                const std::unordered_set<EdgeId>& blocked) {
  std::unordered_set<FaceId> seen(seeds.begin(), seeds.end());
  std::vector<FaceId> queue(seen.begin(), seen.end());
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (Dart d : g.face(queue[qi]).darts) {
      if (blocked.count(d.edge())) continue;
      const FaceId t = g.face_of(d.rev());
      if (seen.insert(t).second) queue.push_back(t);
    }
  }
  return queue;
}

// Keeps the members whose face set is not contained in an earlier kept one,
// scanning by decreasing size.
std::vector<int> maximal_by_inclusion(const std::vector<const std::vector<FaceId>*>& sets) {
  std::vector<int> order(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sets[a]->size() > sets[b]->size(); });
  std::vector<int> kept;
  for (int i : order) {
    if (sets[i]->empty()) continue;
    bool contained = false;
    for (int j : kept) {
      if (std::includes(sets[j]->begin(), sets[j]->end(), sets[i]->begin(), sets[i]->end())) {
        contained = true;
        break;
      }
    }
    if (!contained) kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

bool overlaps_without_nesting(const std::vector<FaceId>& a, const std::vector<FaceId>& b) {
  std::vector<FaceId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return !common.empty() && common.size() != a.size() && common.size() != b.size();
}

}  // namespace

std::vector<BoundaryWalk> boundary_walks(const EmbeddedGraph& g, const std::vector<char>& in_set,
                                         const std::vector<Vertex>& members) {
  std::vector<BoundaryWalk> out;
  std::unordered_set<std::int32_t> used;
  for (Vertex u : members) {
    for (Dart start : g.rotation(u)) {
      if (in_set[g.head(start)] || used.count(start.id())) continue;
      BoundaryWalk w;
      Dart c = start;
      do {
        used.insert(c.id());
        w.crossing.push_back(c);
        Dart n = g.rot_next(c);
        while (in_set[g.head(n)]) {
          w.inner.push_back(n);
          n = g.face_next(n);
        }
        c = n;
      } while (c != start);
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<std::vector<Dart>> cancel_reverse_pairs(const EmbeddedGraph& g,
                                                    const std::vector<Dart>& walk) {
  std::map<std::int32_t, int> count;
  for (Dart d : walk) ++count[d.id()];
  std::map<std::int32_t, int> drop;
  for (auto [id, c] : count) {
    auto it = count.find(id ^ 1);
    if (it != count.end()) drop[id] = std::min(c, it->second);
  }
  std::vector<Dart> rest;
  for (Dart d : walk) {
    auto it = drop.find(d.id());
    if (it != drop.end() && it->second > 0) {
      --it->second;
      continue;
    }
    rest.push_back(d);
  }

  // Closed trails that follow the walk order where possible.
  std::map<Vertex, std::set<int>> out_at;
  for (int i = 0; i < static_cast<int>(rest.size()); ++i) out_at[g.tail(rest[i])].insert(i);
  std::vector<char> used(rest.size(), 0);
  std::vector<std::vector<Dart>> cycles;
  for (int s = 0; s < static_cast<int>(rest.size()); ++s) {
    if (used[s]) continue;
    std::vector<Dart> trail;
    int cur = s;
    while (true) {
      used[cur] = 1;
      out_at[g.tail(rest[cur])].erase(cur);
      trail.push_back(rest[cur]);
      auto& next = out_at[g.head(rest[cur])];
      if (next.empty()) break;
      auto it = next.upper_bound(cur);
      cur = it != next.end() ? *it : *next.begin();
    }
    if (g.head(trail.back()) != g.tail(trail.front())) {
      throw Error(ErrorCode::InvariantViolation, "unbalanced walk after cancellation");
    }
    for (auto& c : split_closed_walk(g, std::move(trail))) cycles.push_back(std::move(c));
  }
  return cycles;
}

std::vector<EdgeId> ridge_edges(const EmbeddedGraph& g, const VoronoiDecomposition& vd, int r) {
  const auto& members = vd.members[r];
  std::vector<char> in_region(g.num_vertices(), 0);
  for (Vertex v : members) in_region[v] = 1;
  const auto walks = boundary_walks(g, in_region, members);
  if (walks.size() < 2) return {};

  std::unordered_set<FaceId> region_faces;
  for (Vertex v : members) {
    for (Dart d : g.rotation(v)) region_faces.insert(g.face_of(d));
  }
  std::vector<FaceId> rep;
  for (const auto& w : walks) rep.push_back(g.face_of(w.crossing.front().rev()));

  std::vector<EdgeId> out;
  std::unordered_set<FaceId> left;
  std::unordered_set<EdgeId> blocked;
  std::vector<FaceId> queue;
  for (Vertex u : members) {
    for (Dart d : g.rotation(u)) {
      const Vertex v = g.head(d);
      if (!d.forward()) continue;
      if (!in_region[v] || vd.is_tree_edge(g, d.edge())) continue;
      blocked.clear();
      const auto cyc = region_cycle(g, vd, d);
      for (Dart x : cyc) blocked.insert(x.edge());
      left.clear();
      queue.assign(1, g.face_of(d));
      left.insert(queue.front());
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        for (Dart x : g.face(queue[qi]).darts) {
          if (blocked.count(x.edge())) continue;
          const FaceId t = g.face_of(x.rev());
          if (region_faces.count(t) && left.insert(t).second) queue.push_back(t);
        }
      }
      if (left.count(g.face_of(d.rev()))) continue;
      bool on_left = false, on_right = false;
      for (FaceId f : rep) (left.count(f) ? on_left : on_right) = true;
      if (on_left && on_right && cycle_sides(g, cyc).separating) out.push_back(d.edge());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BranchStructure branch_structure(const EmbeddedGraph& g, const VoronoiDecomposition& vd) {
  BranchStructure bs;
  bs.boundary.assign(g.num_edges(), 0);
  bs.ridge.assign(g.num_edges(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edge_ends(e);
    bs.boundary[e] = vd.region_of[u] != vd.region_of[v];
  }
  for (int r = 0; r < vd.num_regions(); ++r) {
    for (EdgeId e : ridge_edges(g, vd, r)) bs.ridge[e] = 1;
  }
  bs.degree.assign(g.num_faces(), 0);
  for (FaceId f = 0; f < g.num_faces(); ++f) {
    for (Dart d : g.face(f).darts) bs.degree[f] += bs.in_b_or_r(d.edge());
    if (bs.degree[f] >= 3) bs.branch_vertices.push_back(f);
    if (bs.degree[f] == 1) ++bs.dangling_ends;
  }

  // The other B u R dart of the face entered through `in`.
  auto next_dart = [&](Dart in) {
    for (Dart x : g.face(g.face_of(in.rev())).darts) {
      if (x != in.rev() && bs.in_b_or_r(x.edge())) return x;
    }
    return Dart();
  };
  std::vector<char> visited(g.num_faces(), 0);
  for (FaceId f = 0; f < g.num_faces(); ++f) {
    if (bs.degree[f] == 0 || bs.degree[f] == 2) continue;
    for (Dart d : g.face(f).darts) {
      if (!bs.in_b_or_r(d.edge())) continue;
      Connector c;
      c.start = f;
      c.darts.push_back(d);
      FaceId h = g.face_of(d.rev());
      while (bs.degree[h] == 2) {
        visited[h] = 1;
        c.darts.push_back(next_dart(c.darts.back()));
        h = g.face_of(c.darts.back().rev());
      }
      c.end = h;
      if (c.darts.front().id() < c.darts.back().rev().id()) bs.connectors.push_back(std::move(c));
    }
  }
  for (FaceId f = 0; f < g.num_faces(); ++f) {
    if (bs.degree[f] != 2 || visited[f]) continue;
    Connector c;
    c.closed = true;
    for (Dart d : g.face(f).darts) {
      if (bs.in_b_or_r(d.edge()) && (!c.darts.empty() ? d.id() < c.darts[0].id() : true)) {
        c.darts.assign(1, d);
      }
    }
    visited[f] = 1;
    FaceId h = g.face_of(c.darts.back().rev());
    while (h != f) {
      visited[h] = 1;
      c.darts.push_back(next_dart(c.darts.back()));
      h = g.face_of(c.darts.back().rev());
    }
    bs.connectors.push_back(std::move(c));
  }
  return bs;
}

std::vector<PreFrameLoop> pre_frame_loops(const EmbeddedGraph& g, const VoronoiDecomposition& vd,
                                          const BranchStructure& bs, OverlapPolicy policy) {
  std::vector<PreFrameLoop> loops;
  for (int ci = 0; ci < static_cast<int>(bs.connectors.size()); ++ci) {
    const Connector& c = bs.connectors[ci];
    const Dart first = c.darts.front();
    const Dart last = c.darts.back();
    PreFrameLoop loop;
    loop.connector = ci;
    loop.right_boss = vd.boss_of(g.tail(first));
    loop.left_boss = vd.boss_of(g.head(first));
    if (c.closed) {
      const std::size_t m = c.darts.size();
      for (std::size_t i = 0; i < m; ++i) {
        const Dart next = c.darts[(i + 1) % m];
        for (Dart x = g.face_next(c.darts[i].rev()); x != next; x = g.face_next(x)) {
          loop.darts.push_back(x);
        }
        loop.body.push_back(g.face_of(c.darts[i]));
      }
      if (loop.darts.empty()) continue;
    } else {
      if (vd.boss_of(g.tail(last)) != loop.right_boss ||
          vd.boss_of(g.head(last)) != loop.left_boss) {
        throw Error(ErrorCode::InvariantViolation, "connector changes region along its body");
      }
      append(loop.darts, path_to_boss(g, vd, g.tail(first)));
      append(loop.darts, reversed(path_to_boss(g, vd, g.tail(last))));
      loop.darts.push_back(last);
      append(loop.darts, path_to_boss(g, vd, g.head(last)));
      append(loop.darts, reversed(path_to_boss(g, vd, g.head(first))));
      loop.darts.push_back(first.rev());
      for (std::size_t i = 0; i + 1 < c.darts.size(); ++i) {
        loop.body.push_back(g.face_of(c.darts[i].rev()));
      }
    }
    loop.type = loop.left_boss != loop.right_boss ? LoopType::A : LoopType::B;
    std::unordered_set<std::int32_t> ids;
    for (Dart d : loop.darts) loop.overlapping = !ids.insert(d.id()).second || loop.overlapping;
    if (loop.overlapping && policy == OverlapPolicy::Report) {
      throw Error(ErrorCode::OverlappingTreePaths,
                  "loop of connector " + std::to_string(ci) + " repeats a dart");
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

std::vector<Vertex> loop_vertices(const EmbeddedGraph& g, const std::vector<Dart>& walk) {
  std::vector<Vertex> out;
  for (Dart d : walk) out.push_back(g.tail(d));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LoopCensus loop_inside_census(const EmbeddedGraph& g, const PreFrameLoop& loop) {
  LoopCensus c;
  std::vector<char> blocked(g.num_edges(), 0);
  for (Dart d : loop.darts) blocked[d.edge()] = 1;
  const int regions = label_face_regions(g, blocked, c.face_region);
  c.region_vertices.assign(regions, 0);
  std::vector<char> on_loop(g.num_vertices(), 0);
  for (Dart d : loop.darts) on_loop[g.tail(d)] = 1;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (on_loop[v]) {
      ++c.on_loop;
    } else if (g.degree(v) > 0) {
      ++c.region_vertices[c.face_region[g.face_of(g.rotation(v).front())]];
    }
  }
  if (!loop.body.empty()) {
    c.inside_region = c.face_region[loop.body.front()];
    c.n0 = c.region_vertices[c.inside_region];
  }
  for (int r = 0; r < regions; ++r) {
    if (r == c.inside_region) continue;
    c.outside += c.region_vertices[r];
    if (c.big_outside_region < 0 ||
        c.region_vertices[r] > c.region_vertices[c.big_outside_region]) {
      c.big_outside_region = r;
    }
  }
  if (c.big_outside_region >= 0) c.n12 = c.region_vertices[c.big_outside_region];
  c.n11 = c.outside - c.n12;
  return c;
}

std::optional<SeparatorResult> loop_is_separator(const EmbeddedGraph& g, const PreFrameLoop& loop,
                                                 double alpha) {
  SeparatorResult r;
  r.alpha = alpha;
  r.vertices = loop_vertices(g, loop.darts);
  if (!verify_separator(g, r.vertices, alpha).ok) return std::nullopt;
  finalize_result(g, r);
  r.trace.push_back("pre-frame loop of connector " + std::to_string(loop.connector));
  return r;
}

SeparatorResult separator_from_large_inside(const EmbeddedGraph& g, const PreFrameLoop& loop,
                                            const LoopCensus& census) {
  if (census.inside_region < 0 || census.n0 == 0) {
    throw Error(ErrorCode::InvariantViolation, "loop has an empty inside");
  }
  std::vector<char> on_loop(g.num_vertices(), 0);
  for (Dart d : loop.darts) on_loop[g.tail(d)] = 1;
  std::vector<char> inside(g.num_vertices(), 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    inside[v] = !on_loop[v] && g.degree(v) > 0 &&
                census.face_region[g.face_of(g.rotation(v).front())] == census.inside_region;
  }
  const SubEmbedding sub = induced_embedding(g, inside);
  if (euler_genus(sub.graph).total != 0) {
    throw Error(ErrorCode::InsideNotPlanar, "inside of a large loop has positive genus");
  }
  const SeparatorResult part = weighted_planar_separator(
      sub.graph, std::vector<Weight>(sub.graph.num_vertices(), 1));
  SeparatorResult r;
  r.vertices = loop_vertices(g, loop.darts);
  for (Vertex v : part.vertices) r.vertices.push_back(sub.to_parent_vertex[v]);
  std::sort(r.vertices.begin(), r.vertices.end());
  r.vertices.erase(std::unique(r.vertices.begin(), r.vertices.end()), r.vertices.end());
  finalize_result(g, r);
  r.trace.push_back("large inside of connector " + std::to_string(loop.connector));
  return r;
}

FrameCycles frame_cycles(const EmbeddedGraph& g, const std::vector<PreFrameLoop>& loops,
                         const std::vector<LoopCensus>& census) {
  FrameCycles fc;
  std::vector<char> merged;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const LoopCensus& c = census[i];
    std::vector<FaceId> inside;
    std::vector<Dart> darts;
    if (loops[i].type == LoopType::A) {
      if (c.inside_region < 0) continue;
      for (FaceId f = 0; f < g.num_faces(); ++f) {
        if (c.face_region[f] == c.inside_region) inside.push_back(f);
      }
      darts = loops[i].darts;
    } else {
      std::vector<char> mask(g.num_faces(), 0);
      for (FaceId f = 0; f < g.num_faces(); ++f) {
        if (c.face_region[f] != c.big_outside_region) {
          mask[f] = 1;
          inside.push_back(f);
        }
      }
      if (inside.empty() || static_cast<int>(inside.size()) == g.num_faces()) continue;
      for (const auto& cyc : region_boundary(g, mask)) append(darts, cyc);
    }
    fc.members.push_back(make_inside_cycle(g, std::move(darts), std::move(inside)));
    merged.push_back(loops[i].type == LoopType::B);
  }
  std::vector<const std::vector<FaceId>*> sets;
  for (const auto& m : fc.members) sets.push_back(&m.inside);
  fc.maximal = maximal_by_inclusion(sets);

  std::set<std::vector<Dart>> seen;
  for (int i : fc.maximal) {
    std::vector<std::vector<Dart>> parts;
    if (merged[i]) {
      parts = split_closed_walk(g, fc.members[i].darts);
    } else {
      parts = cancel_reverse_pairs(g, fc.members[i].darts);
    }
    for (auto& p : parts) {
      auto key = p;
      std::rotate(key.begin(), std::min_element(key.begin(), key.end()), key.end());
      if (seen.insert(key).second) fc.cycles.push_back(std::move(p));
    }
  }
  return fc;
}

Core core_of(const EmbeddedGraph& g, const VoronoiDecomposition& vd, int r) {
  Core core;
  core.boss = vd.bosses[r];
  const int k = vd.k;
  const int root = static_cast<int>(std::floor(std::sqrt(static_cast<double>(k))));

  std::vector<std::vector<Vertex>> levels{{core.boss}};
  std::unordered_set<Vertex> seen{core.boss};
  int total = 1;
  while (total < k) {
    std::vector<Vertex> next;
    for (Vertex u : levels.back()) {
      for (Dart d : g.rotation(u)) {
        if (seen.insert(g.head(d)).second) next.push_back(g.head(d));
      }
    }
    if (next.empty()) break;
    total += static_cast<int>(next.size());
    levels.push_back(std::move(next));
  }
  int acc = 0;
  for (int d = 0; d < static_cast<int>(levels.size()); ++d) {
    acc += static_cast<int>(levels[d].size());
    if (acc < k) core.nb_radius = d;
  }
  for (int d = 0; d <= core.nb_radius; ++d) {
    if (static_cast<int>(levels[d].size()) <= root) core.radius = d;
  }
  for (int d = 0; d <= core.radius; ++d)
    core.vertices.insert(core.vertices.end(), levels[d].begin(), levels[d].end());
  std::sort(core.vertices.begin(), core.vertices.end());
  if (core.radius == 0) return core;

  std::vector<char> in_core(g.num_vertices(), 0);
  for (Vertex v : core.vertices) in_core[v] = 1;
  const auto walks = boundary_walks(g, in_core, core.vertices);
  std::vector<FaceId> seeds;
  for (Vertex v : core.vertices) {
    for (Dart d : g.rotation(v)) seeds.push_back(g.face_of(d));
  }
  int best = -1;
  long best_outside = -1;
  FaceId best_min = kNone;
  for (int i = 0; i < static_cast<int>(walks.size()); ++i) {
    std::unordered_set<FaceId> wall;
    for (Dart x : walks[i].crossing) {
      wall.insert(g.face_of(x));
      wall.insert(g.face_of(x.rev()));
    }
    std::vector<char> reached(g.num_faces(), 0);
    std::vector<FaceId> queue;
    for (FaceId f : seeds) {
      if (!wall.count(f) && !reached[f]) {
        reached[f] = 1;
        queue.push_back(f);
      }
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (Dart x : g.face(queue[qi]).darts) {
        const FaceId t = g.face_of(x.rev());
        if (!reached[t] && !wall.count(t)) {
          reached[t] = 1;
          queue.push_back(t);
        }
      }
    }
    const long outside = static_cast<long>(g.num_faces()) - static_cast<long>(queue.size()) -
                         static_cast<long>(wall.size());
    const FaceId min_face = *std::min_element(wall.begin(), wall.end());
    if (outside > best_outside || (outside == best_outside && min_face < best_min)) {
      best = i;
      best_outside = outside;
      best_min = min_face;
    }
  }
  if (best < 0) return core;
  std::vector<Dart> longest;
  for (auto& c : cancel_reverse_pairs(g, walks[best].inner)) {
    if (c.size() > longest.size()) longest = std::move(c);
  }
  if (longest.empty()) return core;
  std::unordered_set<EdgeId> blocked;
  for (Dart d : longest) blocked.insert(d.edge());
  std::vector<FaceId> around;
  for (Dart d : g.rotation(core.boss)) around.push_back(g.face_of(d));
  core.cycle = make_inside_cycle(g, longest, flood_faces(g, around, blocked));
  return core;
}

std::optional<InsideCycle> small_disk_side(const EmbeddedGraph& g, const std::vector<Dart>& cycle,
                                           const ContractibilityOracle& oracle, int limit) {
  if (cycle.empty() || !oracle.is_contractible(cycle)) return std::nullopt;
  std::unordered_set<EdgeId> blocked;
  for (Dart d : cycle) blocked.insert(d.edge());
  const long cap = 2L * limit + static_cast<long>(cycle.size()) + 4;
  std::vector<std::int8_t> side(g.num_faces(), -1);
  std::vector<FaceId> queue[2] = {{g.face_of(cycle.front())}, {g.face_of(cycle.front().rev())}};
  if (queue[0][0] == queue[1][0]) return std::nullopt;
  side[queue[0][0]] = 0;
  side[queue[1][0]] = 1;
  std::size_t qi[2] = {0, 0};
  int done = -1;
  while (done < 0) {
    bool progressed = false;
    for (int s = 0; s < 2 && done < 0; ++s) {
      if (static_cast<long>(queue[s].size()) > cap) continue;
      if (qi[s] == queue[s].size()) {
        done = s;
        break;
      }
      progressed = true;
      for (Dart x : g.face(queue[s][qi[s]++]).darts) {
        if (blocked.count(x.edge())) continue;
        const FaceId t = g.face_of(x.rev());
        if (side[t] == 1 - s) return std::nullopt;
        if (side[t] < 0) {
          side[t] = static_cast<std::int8_t>(s);
          queue[s].push_back(t);
        }
      }
    }
    if (!progressed && done < 0) return std::nullopt;
  }

  // Closure characteristic of the finished side decides whether it is the disk.
  const std::vector<FaceId>& faces = queue[done];
  std::unordered_set<Vertex> verts;
  std::unordered_set<EdgeId> edges;
  for (FaceId f : faces) {
    for (Dart d : g.face(f).darts) {
      verts.insert(g.tail(d));
      edges.insert(d.edge());
    }
  }
  const long chi = static_cast<long>(verts.size()) - static_cast<long>(edges.size()) +
                   static_cast<long>(faces.size());
  const int on_cycle = static_cast<int>(cycle.size());
  const int this_side = static_cast<int>(verts.size()) - on_cycle;
  if (chi == 1) {
    if (this_side >= limit) return std::nullopt;
    InsideCycle c;
    c.darts = cycle;
    c.inside = faces;
    std::sort(c.inside.begin(), c.inside.end());
    c.inside_vertices = this_side;
    return c;
  }
  const int other = g.num_vertices() - on_cycle - this_side;
  if (other >= limit) return std::nullopt;
  std::vector<char> mine(g.num_faces(), 0);
  for (FaceId f : faces) mine[f] = 1;
  InsideCycle c;
  c.darts = cycle;
  for (FaceId f = 0; f < g.num_faces(); ++f) {
    if (!mine[f]) c.inside.push_back(f);
  }
  c.inside_vertices = other;
  return c;
}

LevelStructures level_structures(const EmbeddedGraph& g, const VoronoiDecomposition& vd,
                                 const ContractibilityOracle& oracle) {
  LevelStructures ls;
  ls.level = vd.nb_distance;
  const int n = g.num_vertices();
  const int root = static_cast<int>(std::floor(std::sqrt(static_cast<double>(vd.k))));
  const int light_limit = (n + 2) / 3;
  std::vector<char> seen(n, 0), in_set(n, 0);
  for (Vertex s = 0; s < n; ++s) {
    const int l = ls.level[s];
    if (l < 1 || seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t qi = 0; qi < comp.size(); ++qi) {
      for (Dart d : g.rotation(comp[qi])) {
        const Vertex w = g.head(d);
        if (!seen[w] && ls.level[w] == l) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    for (Vertex v : comp) in_set[v] = 1;
    for (const auto& walk : boundary_walks(g, in_set, comp)) {
      const CycleSide side =
          ls.level[g.head(walk.crossing.front())] < l ? CycleSide::Interior : CycleSide::Exterior;
      for (auto& darts : cancel_reverse_pairs(g, walk.inner)) {
        LevelCycle c;
        c.side = side;
        c.level = l;
        c.small = static_cast<int>(darts.size()) <= root;
        c.darts = std::move(darts);
        if (c.small) {
          c.contractible = oracle.is_contractible(c.darts);
          if (!c.contractible) {
            ls.noncontractible_small.push_back(static_cast<int>(ls.cycles.size()));
          } else if (auto disk = small_disk_side(g, c.darts, oracle, light_limit)) {
            c.light = true;
            c.inside = std::move(disk->inside);
            c.inside_vertices = disk->inside_vertices;
          }
        }
        ls.cycles.push_back(std::move(c));
      }
    }
    for (Vertex v : comp) in_set[v] = 0;
  }
  return ls;
}

FloorsAndCeilings floor_and_ceiling_cycles(const EmbeddedGraph& g, const VoronoiDecomposition&,
                                           const LevelStructures& levels,
                                           const std::vector<Core>& cores,
                                           const BranchStructure& bs) {
  FloorsAndCeilings out;
  std::vector<const LevelCycle*> interior, exterior;
  std::vector<FaceId> branch = bs.branch_vertices;
  std::sort(branch.begin(), branch.end());
  for (const LevelCycle& c : levels.cycles) {
    if (!c.small || !c.contractible || !c.light) continue;
    if (c.side == CycleSide::Interior) {
      interior.push_back(&c);
    } else {
      std::vector<FaceId> common;
      std::set_intersection(c.inside.begin(), c.inside.end(), branch.begin(), branch.end(),
                            std::back_inserter(common));
      if (!common.empty()) exterior.push_back(&c);
    }
  }
  auto take_maximal = [](const std::vector<const LevelCycle*>& cands) {
    std::vector<const std::vector<FaceId>*> sets;
    for (const LevelCycle* c : cands) sets.push_back(&c->inside);
    std::vector<InsideCycle> kept;
    for (int i : maximal_by_inclusion(sets)) {
      InsideCycle ic;
      ic.darts = cands[i]->darts;
      ic.inside = cands[i]->inside;
      ic.inside_vertices = cands[i]->inside_vertices;
      kept.push_back(std::move(ic));
    }
    return kept;
  };
  out.floors = take_maximal(interior);
  const std::size_t level_floors = out.floors.size();
  for (const Core& core : cores) {
    if (!core.cycle) continue;
    bool covered = false;
    const FaceId f = g.face_of(g.rotation(core.boss).front());
    for (std::size_t i = 0; i < level_floors && !covered; ++i) {
      const auto& fl = out.floors[i];
      if (!std::binary_search(fl.inside.begin(), fl.inside.end(), f)) continue;
      bool on_cycle = false;
      for (Dart d : fl.darts) on_cycle = on_cycle || g.tail(d) == core.boss;
      covered = !on_cycle;
    }
    if (!covered) {
      out.floors.push_back(*core.cycle);
      ++out.core_floors;
    }
  }
  out.ceilings = take_maximal(exterior);
  for (const auto& c : out.ceilings) {
    for (const auto& f : out.floors) out.conflicts += overlaps_without_nesting(c.inside, f.inside);
  }
  return out;
}

std::vector<Weight> subgraph_face_weights(const EmbeddedGraph& g, const SubEmbedding& sub) {
  std::vector<char> blocked(g.num_edges(), 0);
  for (EdgeId e : sub.to_parent_edge) blocked[e] = 1;
  std::vector<int> label;
  const int regions = label_face_regions(g, blocked, label);
  std::vector<Weight> count(regions, 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (sub.from_parent_vertex[v] != kNone || g.degree(v) == 0) continue;
    ++count[label[g.face_of(g.rotation(v).front())]];
  }
  const EmbeddedGraph& h = sub.graph;
  std::vector<FaceId> owner(regions, kNone);
  for (int id = 0; id < h.num_darts(); ++id) {
    const Dart hd = Dart::from_id(id);
    const Dart pd(sub.to_parent_edge[hd.edge()], hd.forward());
    const int r = label[g.face_of(pd)];
    if (owner[r] == kNone) owner[r] = h.face_of(hd);
  }
  std::vector<Weight> w(h.num_faces(), 0);
  for (int r = 0; r < regions; ++r) {
    if (owner[r] != kNone) w[owner[r]] += count[r];
  }
  return w;
}

std::vector<char> frame_graph_edges(const EmbeddedGraph& g, const FrameCycles& fc,
                                    const BranchStructure& bs) {
  std::vector<char> keep(g.num_edges(), 0);
  for (const auto& c : fc.cycles) {
    for (Dart d : c) keep[d.edge()] = 1;
  }
  for (FaceId f : bs.branch_vertices) {
    for (Dart d : g.face(f).darts) keep[d.edge()] = 1;
  }
  return keep;
}

namespace {

// Articulation points of a graph, by an iterative low-link scan.
int articulation_points(const EmbeddedGraph& h, int& components) {
  const int n = h.num_vertices();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<char> cut(n, 0);
  int time = 0;
  components = 0;
  struct Frame {
    Vertex v;
    EdgeId via;
    int next;
  };
  for (Vertex s = 0; s < n; ++s) {
    if (disc[s] >= 0) continue;
    ++components;
    int root_children = 0;
    std::vector<Frame> stack{{s, kNone, 0}};
    disc[s] = low[s] = time++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto rot = h.rotation(f.v);
      if (f.next < static_cast<int>(rot.size())) {
        const Dart d = rot[f.next++];
        if (d.edge() == f.via) continue;
        const Vertex w = h.head(d);
        if (disc[w] < 0) {
          disc[w] = low[w] = time++;
          if (f.v == s) ++root_children;
          stack.push_back({w, d.edge(), 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const Vertex v = f.v;
        stack.pop_back();
        if (!stack.empty()) {
          const Vertex p = stack.back().v;
          low[p] = std::min(low[p], low[v]);
          if (p != s && low[v] >= disc[p]) cut[p] = 1;
        }
      }
    }
    if (root_children > 1) cut[s] = 1;
  }
  int count = 0;
  for (char c : cut) count += c;
  return count;
}

}  // namespace

FrameGraph modified_frame_graph(const EmbeddedGraph& g, const std::vector<char>& frame_edges,
                                const FloorsAndCeilings& fc, int k,
                                const FrameConstants& constants, bool strict) {
  std::vector<const InsideCycle*> cycles;
  for (const auto& c : fc.floors) cycles.push_back(&c);
  for (const auto& c : fc.ceilings) cycles.push_back(&c);

  std::vector<char> inside_used(g.num_edges(), 0), keep(g.num_edges(), 0);
  for (const InsideCycle* c : cycles) {
    const std::vector<char> mask = face_mask(g, c->inside);
    std::vector<EdgeId> covered;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (frame_edges[e] && mask[g.face_of(Dart(e, true))] && mask[g.face_of(Dart(e, false))]) {
        covered.push_back(e);
      }
    }
    if (covered.empty()) continue;
    for (EdgeId e : covered) inside_used[e] = 1;
    for (Dart d : c->darts) keep[d.edge()] = 1;
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (frame_edges[e] && !inside_used[e]) keep[e] = 1;
  }
  std::vector<char> keep_vertex(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!keep[e]) continue;
    keep_vertex[g.edge_ends(e).first] = 1;
    keep_vertex[g.edge_ends(e).second] = 1;
  }

  FrameGraph fg;
  fg.graph = sub_embedding(g, keep_vertex, keep);
  fg.face_weight = subgraph_face_weights(g, fg.graph);
  const EmbeddedGraph& h = fg.graph.graph;

  FrameReport& r = fg.report;
  r.n = g.num_vertices();
  r.k = k;
  r.genus = euler_genus(g).total;
  r.faces = h.num_faces();
  Weight total = 0;
  for (Weight w : fg.face_weight) {
    r.max_face_weight = std::max(r.max_face_weight, w);
    total += w;
  }
  for (const Face& f : h.faces()) {
    r.max_face_size = std::max(r.max_face_size, static_cast<int>(f.darts.size()));
  }
  int components = 0;
  r.articulation_points = articulation_points(h, components);
  r.two_connected = components == 1 && r.articulation_points == 0 && h.num_vertices() >= 3;
  r.conserved = total + h.num_vertices() == r.n;
  r.weights_ok = 3 * r.max_face_weight < r.n;
  const double root_k = std::sqrt(static_cast<double>(k));
  const double count_scale = static_cast<double>(r.n) / k + r.genus;
  r.face_size_ratio = r.max_face_size / root_k;
  r.face_count_ratio = r.faces / count_scale;
  r.face_size_ok = r.max_face_size <= constants.face_size * root_k;
  r.face_count_ok = r.faces <= constants.face_count * count_scale;
  if (strict) {
    const char* failed = !r.weights_ok      ? "face weight"
                         : !r.two_connected ? "2-connectivity"
                         : !r.face_size_ok  ? "face size"
                         : !r.face_count_ok ? "face count"
                                            : nullptr;
    if (failed) {
      throw Error(ErrorCode::InvariantViolation,
                  std::string("modified frame graph fails the ") + failed + " property");
    }
  }
  return fg;
}

std::vector<int> frame_cycle_overlaps(const EmbeddedGraph& g, const FrameCycles& cycles,
                                      const FloorsAndCeilings& fc) {
  std::vector<std::vector<char>> masks;
  for (const auto& c : fc.floors) masks.push_back(face_mask(g, c.inside));
  for (const auto& c : fc.ceilings) masks.push_back(face_mask(g, c.inside));
  std::vector<int> out;
  for (const auto& c : cycles.cycles) {
    int count = 0;
    for (const auto& mask : masks) {
      bool hit = false;
      for (Dart d : c) hit = hit || (mask[g.face_of(d)] && mask[g.face_of(d.rev())]);
      count += hit;
    }
    out.push_back(count);
  }
  return out;
}

}  // namespace gsep
