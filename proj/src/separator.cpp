#include "gsep/separator.hpp"

#include <algorithm>
#include <numeric>

#include "gsep/errors.hpp"

namespace gsep {
namespace {

struct BfsTree {
  std::vector<int> level;
  std::vector<Dart> up;  // towards the root
  std::vector<std::vector<Vertex>> at;
};

BfsTree bfs_tree(const EmbeddedGraph& g, Vertex root) {
  BfsTree t;
  t.level.assign(g.num_vertices(), -1);
  t.up.assign(g.num_vertices(), Dart());
  std::vector<Vertex> queue{root};
  t.level[root] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Vertex u = queue[qi];
    if (t.level[u] >= static_cast<int>(t.at.size())) t.at.emplace_back();
    t.at[t.level[u]].push_back(u);
    for (Dart d : g.rotation(u)) {
      const Vertex w = g.head(d);
      if (t.level[w] >= 0) continue;
      t.level[w] = t.level[u] + 1;
      t.up[w] = d.rev();
      queue.push_back(w);
    }
  }
  return t;
}

bool is_tree_edge(const EmbeddedGraph& g, const BfsTree& t, EdgeId e) {
  auto [u, v] = g.edge_ends(e);
  return (t.up[u].valid() && t.up[u].edge() == e) || (t.up[v].valid() && t.up[v].edge() == e);
}

// Vertices of the fundamental cycle of edge e.
std::vector<Vertex> fundamental_cycle(const EmbeddedGraph& g, const BfsTree& t, EdgeId e) {
  auto [a, b] = g.edge_ends(e);
  std::vector<Vertex> left, right;
  while (a != b) {
    if (t.level[a] >= t.level[b]) {
      left.push_back(a);
      a = g.head(t.up[a]);
    } else {
      right.push_back(b);
      b = g.head(t.up[b]);
    }
  }
  left.push_back(a);
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

Vertex heaviest(const std::vector<Weight>& w) {
  return static_cast<Vertex>(std::max_element(w.begin(), w.end()) - w.begin());
}

// Smallest level m with weight(levels <= m) >= W / 2.
int median_level(const BfsTree& t, const std::vector<Weight>& w, Weight total) {
  Weight acc = 0;
  for (int l = 0; l < static_cast<int>(t.at.size()); ++l) {
    for (Vertex v : t.at[l]) acc += w[v];
    if (2 * acc >= total) return l;
  }
  return static_cast<int>(t.at.size()) - 1;
}

// Picks l1 <= m < l2 minimising level size plus `per_level` cost of every
// level between the cut and the median. -1 and depth stand for "no cut".
std::pair<int, int> pick_levels(const BfsTree& t, int m,
                                const std::vector<Weight>& per_level) {
  const int depth = static_cast<int>(t.at.size());
  auto size = [&](int l) -> Weight {
    return l < 0 || l >= depth ? 0 : static_cast<Weight>(t.at[l].size());
  };
  int l1 = m;
  Weight best = size(m), acc = 0;
  for (int l = m - 1; l >= -1; --l) {
    acc += per_level[l + 1];
    if (size(l) + acc < best) {
      best = size(l) + acc;
      l1 = l;
    }
  }
  int l2 = m + 1;
  best = size(m + 1);
  acc = 0;
  for (int l = m + 1; l <= depth; ++l) {
    if (size(l) + acc < best) {
      best = size(l) + acc;
      l2 = l;
    }
    if (l < depth) acc += per_level[l];
  }
  return {l1, l2};
}

std::vector<Vertex> level_cut(const BfsTree& t, int l1, int l2) {
  std::vector<Vertex> out;
  const int depth = static_cast<int>(t.at.size());
  if (l1 >= 0) out = t.at[l1];
  if (l2 < depth) out.insert(out.end(), t.at[l2].begin(), t.at[l2].end());
  return out;
}

// Cut of a connected genus-0 component: two levels around the weighted
// median plus, if the band between them is still heavy, the part inside the
// band of the best-balanced fundamental cycle.
std::vector<Vertex> planar_round(const EmbeddedGraph& comp, const std::vector<Weight>& w) {
  if (comp.num_vertices() <= 3) return {heaviest(w)};
  const EmbeddedGraph tri = triangulate(simplify(comp).graph);
  const Weight total = std::accumulate(w.begin(), w.end(), Weight{0});
  const BfsTree t = bfs_tree(tri, heaviest(w));
  const int m = median_level(t, w, total);
  const auto [l1, l2] = pick_levels(t, m, std::vector<Weight>(t.at.size() + 1, 2));
  std::vector<Vertex> cut = level_cut(t, l1, l2);
  auto in_band = [&, l1 = l1, l2 = l2](Vertex v) { return t.level[v] > l1 && t.level[v] < l2; };
  std::vector<Weight> wb(tri.num_vertices(), 0);
  Weight band = 0;
  for (Vertex v = 0; v < tri.num_vertices(); ++v) {
    if (in_band(v)) band += wb[v] = w[v];
  }
  if (3 * band <= 2 * total) return cut;

  // Dual spanning tree on the non-tree edges, with Euler-tour intervals.
  const int nf = tri.num_faces();
  std::vector<EdgeId> up_edge(nf, kNone);
  std::vector<std::vector<FaceId>> kids(nf);
  std::vector<char> seen(nf, 0);
  std::vector<FaceId> order{0};
  seen[0] = 1;
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    for (Dart d : tri.face(order[qi]).darts) {
      if (is_tree_edge(tri, t, d.edge())) continue;
      const FaceId x = tri.face_of(d.rev());
      if (seen[x]) continue;
      seen[x] = 1;
      up_edge[x] = d.edge();
      kids[order[qi]].push_back(x);
      order.push_back(x);
    }
  }
  std::vector<int> tin(nf), tout(nf);
  int clock = 0;
  std::vector<std::pair<FaceId, std::size_t>> stack{{0, 0}};
  tin[0] = clock++;
  while (!stack.empty()) {
    auto& [f, i] = stack.back();
    if (i < kids[f].size()) {
      const FaceId c = kids[f][i++];
      tin[c] = clock++;
      stack.emplace_back(c, 0);
    } else {
      tout[f] = clock;
      stack.pop_back();
    }
  }
  std::vector<FaceId> home(tri.num_vertices());
  std::vector<Weight> sub(nf, 0);
  for (Vertex v = 0; v < tri.num_vertices(); ++v) {
    home[v] = tri.face_of(tri.rotation(v).front());
    sub[home[v]] += wb[v];
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (up_edge[*it] != kNone) {
      const Dart d(up_edge[*it], true);
      const FaceId a = tri.face_of(d), b = tri.face_of(d.rev());
      sub[a == *it ? b : a] += sub[*it];
    }
  }

  std::vector<Vertex> best_cycle;
  std::tuple<int, Weight, int> best_key{2, 0, 0};
  for (FaceId c = 0; c < nf; ++c) {
    if (up_edge[c] == kNone) continue;
    const std::vector<Vertex> cyc = fundamental_cycle(tri, t, up_edge[c]);
    Weight inside = sub[c], on = 0;
    int band_size = 0;
    for (Vertex v : cyc) {
      on += wb[v];
      band_size += in_band(v);
      if (tin[home[v]] >= tin[c] && tin[home[v]] < tout[c]) inside -= wb[v];
    }
    const Weight outside = band - inside - on;
    const Weight worst = std::max(inside, outside);
    const bool balanced = 3 * worst <= 2 * total;
    std::tuple<int, Weight, int> key{balanced ? 0 : 1, balanced ? band_size : worst, band_size};
    if (best_cycle.empty() || key < best_key) {
      best_key = key;
      best_cycle = cyc;
    }
  }
  for (Vertex v : best_cycle) {
    if (in_band(v)) cut.push_back(v);
  }
  return cut;
}

// Cut of a connected component of positive genus: two levels around the
// weighted median plus the band part of every fundamental cycle of an edge
// outside both the BFS tree and a dual spanning tree.
std::vector<Vertex> surface_round(const EmbeddedGraph& comp, const std::vector<Weight>& w) {
  if (comp.num_vertices() <= 3) return {heaviest(w)};
  const EmbeddedGraph tri = triangulate(simplify(comp).graph);
  const Weight total = std::accumulate(w.begin(), w.end(), Weight{0});
  const BfsTree t = bfs_tree(tri, heaviest(w));

  std::vector<char> face_seen(tri.num_faces(), 0);
  std::vector<char> cotree(tri.num_edges(), 0);
  std::vector<FaceId> order{0};
  face_seen[0] = 1;
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    for (Dart d : tri.face(order[qi]).darts) {
      if (is_tree_edge(tri, t, d.edge())) continue;
      const FaceId x = tri.face_of(d.rev());
      if (face_seen[x]) continue;
      face_seen[x] = 1;
      cotree[d.edge()] = 1;
      order.push_back(x);
    }
  }
  std::vector<char> in_k(tri.num_vertices(), 0);
  for (EdgeId e = 0; e < tri.num_edges(); ++e) {
    if (cotree[e] || is_tree_edge(tri, t, e)) continue;
    for (Vertex v : fundamental_cycle(tri, t, e)) in_k[v] = 1;
  }
  std::vector<Weight> per_level(t.at.size() + 1, 2);
  for (std::size_t l = 0; l < t.at.size(); ++l) {
    for (Vertex v : t.at[l]) per_level[l] += in_k[v];
  }
  const int m = median_level(t, w, total);
  const auto [l1, l2] = pick_levels(t, m, per_level);
  std::vector<Vertex> cut = level_cut(t, l1, l2);
  for (Vertex v = 0; v < tri.num_vertices(); ++v) {
    if (in_k[v] && t.level[v] > l1 && t.level[v] < l2) cut.push_back(v);
  }
  return cut;
}

}  // namespace

SeparatorReport verify_separator(const EmbeddedGraph& g, const std::vector<Vertex>& separator,
                                 double alpha, const std::vector<Weight>& weights) {
  const int n = g.num_vertices();
  auto wt = [&](Vertex v) -> Weight { return weights.empty() ? 1 : weights[v]; };
  std::vector<char> removed(n, 0);
  for (Vertex v : separator) removed[v] = 1;
  SeparatorReport r;
  for (Vertex v = 0; v < n; ++v) r.total_weight += wt(v);
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (removed[s] || seen[s]) continue;
    Weight acc = 0;
    seen[s] = 1;
    stack.assign(1, s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      acc += wt(u);
      for (Dart d : g.rotation(u)) {
        const Vertex x = g.head(d);
        if (removed[x] || seen[x]) continue;
        seen[x] = 1;
        stack.push_back(x);
      }
    }
    r.component_weights.push_back(acc);
  }
  std::sort(r.component_weights.rbegin(), r.component_weights.rend());
  r.max_component = r.component_weights.empty() ? 0 : r.component_weights.front();
  r.balance = r.total_weight > 0 ? static_cast<double>(r.max_component) / r.total_weight : 0.0;
  r.ok = static_cast<double>(r.max_component) <= alpha * static_cast<double>(r.total_weight);
  return r;
}

void finalize_result(const EmbeddedGraph& g, SeparatorResult& result,
                     const std::vector<Weight>& weights) {
  std::sort(result.vertices.begin(), result.vertices.end());
  result.vertices.erase(std::unique(result.vertices.begin(), result.vertices.end()),
                        result.vertices.end());
  SeparatorReport r = verify_separator(g, result.vertices, result.alpha, weights);
  result.total_weight = r.total_weight;
  result.component_weights = std::move(r.component_weights);
}

std::vector<Vertex> grow_separator(const EmbeddedGraph& g, const std::vector<Weight>& weights,
                                   double alpha, std::vector<Vertex> initial) {
  const int n = g.num_vertices();
  std::vector<Weight> w = weights.empty() ? std::vector<Weight>(n, 1) : weights;
  const Weight total = std::accumulate(w.begin(), w.end(), Weight{0});
  std::vector<char> removed(n, 0);
  for (Vertex v : initial) removed[v] = 1;
  for (int guard = 0; guard <= n; ++guard) {
    // Heaviest component of G - S.
    Components comps;
    {
      std::vector<char> keep(n);
      for (Vertex v = 0; v < n; ++v) keep[v] = !removed[v];
      SubEmbedding rest = induced_embedding(g, keep);
      Components c = connected_components(rest.graph);
      comps.count = c.count;
      comps.of.assign(n, kNone);
      for (Vertex i = 0; i < rest.graph.num_vertices(); ++i) {
        comps.of[rest.to_parent_vertex[i]] = c.of[i];
      }
    }
    std::vector<Weight> cw(comps.count, 0);
    for (Vertex v = 0; v < n; ++v) {
      if (comps.of[v] != kNone) cw[comps.of[v]] += w[v];
    }
    if (cw.empty()) break;
    const int heavy = static_cast<int>(std::max_element(cw.begin(), cw.end()) - cw.begin());
    if (static_cast<double>(cw[heavy]) <= alpha * static_cast<double>(total)) break;

    std::vector<char> keep(n, 0);
    for (Vertex v = 0; v < n; ++v) keep[v] = comps.of[v] == heavy;
    SubEmbedding part = induced_embedding(g, keep);
    std::vector<Weight> pw(part.graph.num_vertices());
    for (Vertex i = 0; i < part.graph.num_vertices(); ++i) pw[i] = w[part.to_parent_vertex[i]];
    const bool planar = euler_genus(part.graph).total == 0;
    std::vector<Vertex> cut = planar ? planar_round(part.graph, pw) : surface_round(part.graph, pw);
    if (cut.empty()) cut.push_back(heaviest(pw));
    for (Vertex v : cut) {
      removed[part.to_parent_vertex[v]] = 1;
      initial.push_back(part.to_parent_vertex[v]);
    }
  }
  std::sort(initial.begin(), initial.end());
  initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
  return initial;
}

namespace {

class Dsu {
 public:
  explicit Dsu(const std::vector<Weight>& w) : parent_(w.size()), size_(w) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  Vertex find(Vertex v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  Weight size(Vertex v) { return size_[find(v)]; }

 private:
  std::vector<Vertex> parent_;
  std::vector<Weight> size_;
};

// Components of G - S merged in a union-find.
Dsu components_of(const EmbeddedGraph& g, const std::vector<char>& in_s,
                  const std::vector<Weight>& w) {
  Dsu dsu(w);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edge_ends(e);
    if (!in_s[u] && !in_s[v]) dsu.unite(u, v);
  }
  return dsu;
}

// Returns vertices of S to the graph in the given order whenever the
// component they would join stays within the limit.
std::vector<Vertex> peel(const EmbeddedGraph& g, const std::vector<Vertex>& order,
                         const std::vector<Weight>& w, double limit) {
  std::vector<char> in_s(g.num_vertices(), 0);
  for (Vertex v : order) in_s[v] = 1;
  Dsu dsu = components_of(g, in_s, w);
  std::vector<Vertex> kept;
  std::vector<Vertex> roots;
  for (Vertex v : order) {
    roots.clear();
    for (Dart d : g.rotation(v)) {
      const Vertex x = g.head(d);
      if (!in_s[x]) roots.push_back(dsu.find(x));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    Weight joined = w[v];
    for (Vertex r : roots) joined += dsu.size(r);
    if (static_cast<double>(joined) <= limit) {
      in_s[v] = 0;
      for (Dart d : g.rotation(v)) {
        if (!in_s[g.head(d)]) dsu.unite(v, g.head(d));
      }
    } else {
      kept.push_back(v);
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

// Both peel orders: increasing index, and deepest first by distance from
// G - S.
std::vector<Vertex> best_peel(const EmbeddedGraph& g, const std::vector<Vertex>& separator,
                              const std::vector<Weight>& w, double limit) {
  const int n = g.num_vertices();
  std::vector<int> dist(n, -1);
  std::vector<Vertex> queue;
  std::vector<char> in_s(n, 0);
  for (Vertex v : separator) in_s[v] = 1;
  for (Vertex v = 0; v < n; ++v) {
    if (!in_s[v]) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (Dart d : g.rotation(queue[qi])) {
      const Vertex x = g.head(d);
      if (dist[x] < 0) {
        dist[x] = dist[queue[qi]] + 1;
        queue.push_back(x);
      }
    }
  }
  std::vector<Vertex> deep = separator;
  std::stable_sort(deep.begin(), deep.end(), [&](Vertex a, Vertex b) { return dist[a] > dist[b]; });
  std::vector<Vertex> a = peel(g, separator, w, limit);
  std::vector<Vertex> b = peel(g, deep, w, limit);
  return b.size() < a.size() ? b : a;
}

}  // namespace

std::vector<Vertex> trim_separator(const EmbeddedGraph& g, std::vector<Vertex> separator,
                                   double alpha, const std::vector<Weight>& weights) {
  const int n = g.num_vertices();
  std::vector<Weight> w = weights.empty() ? std::vector<Weight>(n, 1) : weights;
  const Weight total = std::accumulate(w.begin(), w.end(), Weight{0});
  const double limit = alpha * static_cast<double>(total);
  std::sort(separator.begin(), separator.end());
  separator.erase(std::unique(separator.begin(), separator.end()), separator.end());

  // Candidate sides X: single components and prefixes by decreasing
  // weight. The vertices of S next to X separate X from the rest.
  std::vector<char> in_s(n, 0);
  for (Vertex v : separator) in_s[v] = 1;
  Dsu dsu = components_of(g, in_s, w);
  std::vector<Vertex> roots;
  for (Vertex v = 0; v < n; ++v) {
    if (!in_s[v] && dsu.find(v) == v) roots.push_back(v);
  }
  std::stable_sort(roots.begin(), roots.end(),
                   [&](Vertex a, Vertex b) { return dsu.size(a) > dsu.size(b); });
  if (roots.size() > 32) roots.resize(32);

  std::vector<Vertex> best = best_peel(g, separator, w, limit);
  std::vector<char> in_x(n, 0);
  auto evaluate = [&]() {
    std::vector<Vertex> side;
    for (Vertex v : separator) {
      bool next_to_x = false;
      for (Dart d : g.rotation(v)) {
        const Vertex x = g.head(d);
        next_to_x = next_to_x || (!in_s[x] && in_x[dsu.find(x)]);
      }
      if (next_to_x) side.push_back(v);
    }
    if (!verify_separator(g, side, alpha, w).ok) return;
    std::vector<Vertex> trimmed = best_peel(g, side, w, limit);
    if (trimmed.size() < best.size()) best = std::move(trimmed);
  };
  for (Vertex r : roots) {
    in_x[r] = 1;
    evaluate();
    in_x[r] = 0;
  }
  for (Vertex r : roots) {
    in_x[r] = 1;
    evaluate();
  }
  return best;
}

SeparatorResult weighted_planar_separator(const EmbeddedGraph& g,
                                          const std::vector<Weight>& weights) {
  for (int x : euler_genus(g).per_component) {
    if (x != 0) throw Error(ErrorCode::NotPlanar, "component of genus " + std::to_string(x));
  }
  SeparatorResult r;
  r.vertices = grow_separator(g, weights, r.alpha, {});
  finalize_result(g, r, weights);
  return r;
}

SeparatorResult weighted_surface_separator(const EmbeddedGraph& g,
                                           const std::vector<Weight>& weights) {
  SeparatorResult r;
  r.vertices = grow_separator(g, weights, r.alpha, {});
  finalize_result(g, r, weights);
  return r;
}

}  // namespace gsep
