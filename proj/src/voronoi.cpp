#include "gsep/voronoi.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

#include "gsep/errors.hpp"

namespace gsep {
namespace {

// Reusable bounded BFS with a generation counter instead of clearing.
class BallSearch {
 public:
  explicit BallSearch(const EmbeddedGraph& g) : g_(g), stamp_(g.num_vertices(), 0) {}

  // Levels 1..d around v, d minimal with at least k vertices; nullopt when the
  // component runs out first.
  std::optional<KNeighborhood> run(Vertex v, int k) {
    ++gen_;
    stamp_[v] = gen_;
    std::vector<Vertex> frontier{v}, next;
    KNeighborhood out;
    while (static_cast<int>(out.vertices.size()) < k) {
      next.clear();
      for (Vertex u : frontier) {
        for (Dart d : g_.rotation(u)) {
          const Vertex w = g_.head(d);
          if (stamp_[w] == gen_) continue;
          stamp_[w] = gen_;
          next.push_back(w);
        }
      }
      if (next.empty()) return std::nullopt;
      ++out.radius;
      out.vertices.insert(out.vertices.end(), next.begin(), next.end());
      frontier.swap(next);
    }
    std::sort(out.vertices.begin(), out.vertices.end());
    return out;
  }

 private:
  const EmbeddedGraph& g_;
  std::vector<int> stamp_;
  int gen_ = 0;
};

std::vector<int> bfs_distances(const EmbeddedGraph& g, Vertex s) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::vector<Vertex> queue{s};
  dist[s] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Vertex u = queue[qi];
    for (Dart d : g.rotation(u)) {
      const Vertex w = g.head(d);
      if (dist[w] >= 0) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

}  // namespace

std::vector<std::vector<Vertex>> bfs_levels(const EmbeddedGraph& g, Vertex v) {
  std::vector<int> dist = bfs_distances(g, v);
  std::vector<std::vector<Vertex>> levels;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (dist[u] < 0) continue;
    if (dist[u] >= static_cast<int>(levels.size())) levels.resize(dist[u] + 1);
    levels[dist[u]].push_back(u);
  }
  return levels;
}

KNeighborhood k_neighborhood(const EmbeddedGraph& g, Vertex v, int k) {
  BallSearch search(g);
  auto nb = search.run(v, k);
  if (!nb) {
    throw Error(ErrorCode::ComponentTooSmall,
                "component of vertex " + std::to_string(v) + " has at most " +
                    std::to_string(k) + " vertices");
  }
  return *nb;
}

std::vector<Vertex> k_max_independent_set(const EmbeddedGraph& g, int k) {
  BallSearch search(g);
  std::vector<char> taken(g.num_vertices(), 0);
  std::vector<Vertex> bosses;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto nb = search.run(v, k);
    if (!nb) {
      throw Error(ErrorCode::ComponentTooSmall,
                  "component of vertex " + std::to_string(v) + " has at most " +
                      std::to_string(k) + " vertices");
    }
    bool free = true;
    for (Vertex u : nb->vertices) {
      if (taken[u]) {
        free = false;
        break;
      }
    }
    if (!free) continue;
    for (Vertex u : nb->vertices) taken[u] = 1;
    bosses.push_back(v);
  }
  return bosses;
}

Vertex boss_by_definition(const EmbeddedGraph& g, const std::vector<Vertex>& bosses,
                          const std::vector<KNeighborhood>& neighborhoods, Vertex v) {
  std::vector<int> dist = bfs_distances(g, v);
  constexpr int kFar = std::numeric_limits<int>::max();
  std::tuple<int, Vertex, Vertex> best{kFar, kFar, kNone};
  for (std::size_t i = 0; i < bosses.size(); ++i) {
    for (Vertex u : neighborhoods[i].vertices) {
      if (dist[u] < 0) continue;
      best = std::min(best, std::tuple<int, Vertex, Vertex>{dist[u], u, bosses[i]});
    }
  }
  return std::get<2>(best);
}

bool VoronoiDecomposition::is_tree_edge(const EmbeddedGraph& g, EdgeId e) const {
  auto [u, v] = g.edge_ends(e);
  return (parent[u].valid() && parent[u].edge() == e) ||
         (parent[v].valid() && parent[v].edge() == e);
}

VoronoiDecomposition voronoi_regions(const EmbeddedGraph& g,
                                     const std::vector<Vertex>& bosses, int k) {
  const int n = g.num_vertices();
  VoronoiDecomposition vd;
  vd.k = k;
  vd.bosses = bosses;
  std::sort(vd.bosses.begin(), vd.bosses.end());
  const int r = vd.num_regions();
  std::vector<int> owner(n, kNone);
  std::vector<char> is_boss(n, 0);
  for (int i = 0; i < r; ++i) {
    vd.neighborhoods.push_back(k_neighborhood(g, vd.bosses[i], k));
    for (Vertex u : vd.neighborhoods.back().vertices) owner[u] = i;
    is_boss[vd.bosses[i]] = 1;
  }

  // Multi-source BFS from all neighborhood vertices; each vertex inherits the
  // smallest nearest source among its predecessors.
  auto nearest_sources = [&](bool with_bosses, std::vector<int>& dist,
                             std::vector<Vertex>& nearest) {
    dist.assign(n, -1);
    nearest.assign(n, kNone);
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < n; ++v) {
      if (owner[v] != kNone || (with_bosses && is_boss[v])) {
        dist[v] = 0;
        nearest[v] = v;
        queue.push_back(v);
      }
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Vertex u = queue[qi];
      for (Dart d : g.rotation(u)) {
        const Vertex w = g.head(d);
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          nearest[w] = nearest[u];
          queue.push_back(w);
        } else if (dist[w] == dist[u] + 1 && nearest[u] < nearest[w]) {
          nearest[w] = nearest[u];
        }
      }
    }
  };
  std::vector<Vertex> nearest, nearest_nb;
  std::vector<int> dist;
  nearest_sources(false, vd.nb_distance, nearest_nb);
  nearest_sources(true, dist, nearest);

  // A boss is a source of its own region even when it also lies in another
  // boss's neighborhood.
  std::vector<int> source_region = owner;
  for (int i = 0; i < r; ++i) {
    const Vertex b = vd.bosses[i];
    if (owner[b] != kNone || (nearest_nb[b] != kNone && owner[nearest_nb[b]] != i)) {
      ++vd.self_boss_violations;
    }
    source_region[b] = i;
  }
  vd.region_of.assign(n, kNone);
  for (Vertex v = 0; v < n; ++v) {
    if (nearest[v] != kNone) vd.region_of[v] = source_region[nearest[v]];
  }

  // BFS tree of every region from its boss.
  vd.parent.assign(n, Dart());
  vd.depth.assign(n, -1);
  vd.members.assign(r, {});
  for (int i = 0; i < r; ++i) {
    auto& q = vd.members[i];
    const Vertex b = vd.bosses[i];
    vd.depth[b] = 0;
    q.push_back(b);
    for (std::size_t qi = 0; qi < q.size(); ++qi) {
      const Vertex u = q[qi];
      for (Dart d : g.rotation(u)) {
        const Vertex w = g.head(d);
        if (vd.region_of[w] != i || vd.depth[w] >= 0) continue;
        vd.depth[w] = vd.depth[u] + 1;
        vd.parent[w] = d.rev();
        q.push_back(w);
      }
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (vd.region_of[v] == kNone) {
      throw Error(ErrorCode::InvariantViolation,
                  "vertex " + std::to_string(v) + " has no boss");
    }
    if (vd.depth[v] < 0) {
      throw Error(ErrorCode::InvariantViolation,
                  "Voronoi region of boss " + std::to_string(vd.boss_of(v)) +
                      " is disconnected");
    }
  }
  return vd;
}

std::vector<RegionPair> adjacent_regions(const EmbeddedGraph& g,
                                         const VoronoiDecomposition& vd) {
  std::map<std::pair<int, int>, EdgeId> link;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edge_ends(e);
    const int a = vd.region_of[u], b = vd.region_of[v];
    if (a == b) continue;
    link.emplace(std::minmax(a, b), e);
  }
  std::vector<RegionPair> out;
  for (auto [key, e] : link) out.push_back({key.first, key.second, e});
  return out;
}

std::optional<std::vector<Dart>> noncontractible_in_two_regions(
    const EmbeddedGraph& g, const VoronoiDecomposition& vd, int r1, int r2,
    const ContractibilityOracle& oracle, bool allow_separating) {
  // Lowest-index edge joining the two regions, if any.
  EdgeId link = kNone;
  if (r1 != r2) {
    for (Vertex u : vd.members[r1]) {
      for (Dart d : g.rotation(u)) {
        if (vd.region_of[g.head(d)] == r2 && (link == kNone || d.edge() < link)) {
          link = d.edge();
        }
      }
    }
  }
  std::vector<Vertex> verts = vd.members[r1];
  if (r1 != r2) verts.insert(verts.end(), vd.members[r2].begin(), vd.members[r2].end());
  auto inside = [&](Vertex v) {
    return vd.region_of[v] == r1 || vd.region_of[v] == r2;
  };

  // Spanning forest of the union rooted at the bosses: region trees plus the
  // link, re-rooted from the first boss.
  std::vector<Dart> up(g.num_vertices());
  std::vector<int> depth(g.num_vertices(), -1);
  auto is_tree = [&](EdgeId e) { return e == link || vd.is_tree_edge(g, e); };
  std::vector<Vertex> queue;
  for (Vertex root : {vd.bosses[r1], vd.bosses[r2]}) {
    if (depth[root] >= 0) continue;
    depth[root] = 0;
    up[root] = Dart();
    queue.assign(1, root);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Vertex u = queue[qi];
      for (Dart d : g.rotation(u)) {
        const Vertex w = g.head(d);
        if (!inside(w) || depth[w] >= 0 || !is_tree(d.edge())) continue;
        depth[w] = depth[u] + 1;
        up[w] = d.rev();
        queue.push_back(w);
      }
    }
  }

  std::optional<std::vector<Dart>> best_plain, best_sep;
  std::vector<Dart> a_path, b_path, cycle;
  for (Vertex x : verts) {
    for (Dart d : g.rotation(x)) {
      if (!d.forward() || is_tree(d.edge())) continue;
      const Vertex y = g.head(d);
      if (!inside(y)) continue;
      // Cycle: y up to the common ancestor, down to x, then d.
      Vertex a = x, b = y;
      a_path.clear();
      b_path.clear();
      while (a != b) {
        if (depth[a] >= depth[b]) {
          a_path.push_back(up[a]);
          a = g.head(up[a]);
        } else {
          b_path.push_back(up[b]);
          b = g.head(up[b]);
        }
        if (depth[a] < 0 || depth[b] < 0) break;
      }
      if (a != b) continue;  // different trees of a disconnected union
      cycle = b_path;
      for (auto it = a_path.rbegin(); it != a_path.rend(); ++it) cycle.push_back(it->rev());
      cycle.push_back(d);
      const auto better = [&](const std::optional<std::vector<Dart>>& cur) {
        return !cur || cycle.size() < cur->size();
      };
      if (!oracle.is_separating(cycle)) {
        if (better(best_plain)) best_plain = cycle;
      } else if (allow_separating && !best_plain && better(best_sep) &&
                 !oracle.is_contractible(cycle)) {
        best_sep = cycle;
      }
    }
  }
  return best_plain ? best_plain : best_sep;
}

std::optional<std::vector<Dart>> scan_region_pairs(const EmbeddedGraph& g,
                                                   const VoronoiDecomposition& vd,
                                                   const ContractibilityOracle& oracle) {
  if (oracle.genus() == 0) return std::nullopt;
  std::vector<std::pair<int, int>> jobs;
  std::vector<char> touched(vd.num_regions(), 0);
  for (const RegionPair& p : adjacent_regions(g, vd)) {
    jobs.emplace_back(p.first, p.second);
    touched[p.first] = touched[p.second] = 1;
  }
  for (int i = 0; i < vd.num_regions(); ++i) {
    if (!touched[i]) jobs.emplace_back(i, i);
  }
  for (bool allow_separating : {false, true}) {
    std::optional<std::vector<Dart>> best;
    for (auto [a, b] : jobs) {
      auto c = noncontractible_in_two_regions(g, vd, a, b, oracle, allow_separating);
      if (c && (!best || c->size() < best->size())) best = std::move(c);
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace gsep
