#include "gsep/planarity.hpp"

#include <algorithm>
#include <map>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "gsep/errors.hpp"

namespace gsep {
namespace {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                          boost::property<boost::vertex_index_t, int>,
                          boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

// Euler characteristic of the closure of a face set.
int closure_euler_characteristic(const EmbeddedGraph& g,
                                 const std::vector<FaceId>& faces) {
  std::vector<EdgeId> edges;
  std::vector<Vertex> verts;
  for (FaceId f : faces) {
    for (Dart d : g.face(f).darts) {
      edges.push_back(d.edge());
      verts.push_back(g.tail(d));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return static_cast<int>(verts.size()) - static_cast<int>(edges.size()) +
         static_cast<int>(faces.size());
}

}  // namespace

PlanarityResult is_planar(const AbstractGraph& graph) {
  const int n = graph.n;
  for (auto [u, v] : graph.edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorCode::IndexOutOfRange, "edge endpoint out of range");
    }
  }
  // Simple core: first edge of every parallel class, no loops.
  const int m = static_cast<int>(graph.edges.size());
  std::map<std::pair<Vertex, Vertex>, EdgeId> first;
  std::vector<EdgeId> parent(m, kNone);
  BoostGraph bg(n);
  for (EdgeId e = 0; e < m; ++e) {
    auto [u, v] = graph.edges[e];
    if (u == v) continue;
    auto key = std::minmax(u, v);
    auto [it, fresh] = first.emplace(key, e);
    if (!fresh) {
      parent[e] = it->second;
      continue;
    }
    boost::add_edge(u, v, e, bg);
  }

  std::vector<std::vector<BoostEdge>> emb(n);
  PlanarityResult result;
  result.planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding = &emb[0]);
  if (!result.planar) return result;

  auto edge_index = boost::get(boost::edge_index, bg);
  std::vector<std::vector<Dart>> rot(n);
  for (Vertex v = 0; v < n; ++v) {
    for (const BoostEdge& be : emb[v]) {
      const EdgeId e = edge_index[be];
      rot[v].push_back(Dart(e, graph.edges[e].first == v));
    }
  }
  for (EdgeId e = 0; e < m; ++e) {
    auto [u, v] = graph.edges[e];
    if (u == v) {
      rot[u].push_back(Dart(e, true));
      rot[u].push_back(Dart(e, false));
      continue;
    }
    if (parent[e] == kNone) continue;
    // A parallel copy goes right after its original at one end and right
    // before it at the other, which closes a two-sided face.
    const EdgeId p = parent[e];
    const Dart pu(p, graph.edges[p].first == u);
    auto& ru = rot[u];
    ru.insert(std::find(ru.begin(), ru.end(), pu) + 1, Dart(e, true));
    auto& rv = rot[v];
    rv.insert(std::find(rv.begin(), rv.end(), pu.rev()), Dart(e, false));
  }
  result.embedding = EmbeddedGraph::build(n, graph.edges, std::move(rot));
  return result;
}

bool is_contractible(const EmbeddedGraph& g, std::span<const Dart> cycle) {
  CycleSides sides = cycle_sides(g, cycle);
  if (!sides.separating) return false;
  return closure_euler_characteristic(g, sides.left) == 1 ||
         closure_euler_characteristic(g, sides.right) == 1;
}

ContractibilityOracle::ContractibilityOracle(const EmbeddedGraph& g)
    : g_(&g), comps_(connected_components(g)) {
  GenusReport genus = euler_genus(g);
  comp_genus_ = genus.per_component;
  total_genus_ = genus.total;

  // Primal BFS forest.
  std::vector<char> tree(g.num_edges(), 0);
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    queue.assign(1, s);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (Dart d : g.rotation(queue[qi])) {
        Vertex w = g.head(d);
        if (seen[w]) continue;
        seen[w] = 1;
        tree[d.edge()] = 1;
        queue.push_back(w);
      }
    }
  }

  // Dual BFS forest over the remaining edges.
  std::vector<EdgeId> up_edge(g.num_faces(), kNone);
  std::vector<FaceId> up_face(g.num_faces(), kNone);
  std::vector<int> depth(g.num_faces(), -1);
  std::vector<char> cotree(g.num_edges(), 0);
  std::vector<FaceId> fq;
  for (FaceId s = 0; s < g.num_faces(); ++s) {
    if (depth[s] >= 0) continue;
    depth[s] = 0;
    fq.assign(1, s);
    for (std::size_t qi = 0; qi < fq.size(); ++qi) {
      FaceId f = fq[qi];
      for (Dart d : g.face(f).darts) {
        if (tree[d.edge()]) continue;
        FaceId t = g.face_of(d.rev());
        if (depth[t] >= 0) continue;
        depth[t] = depth[f] + 1;
        up_edge[t] = d.edge();
        up_face[t] = f;
        cotree[d.edge()] = 1;
        fq.push_back(t);
      }
    }
  }

  std::vector<EdgeId> leftover;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!tree[e] && !cotree[e]) leftover.push_back(e);
  }
  words_ = static_cast<int>((leftover.size() + 63) / 64);
  labels_.assign(static_cast<std::size_t>(words_) * g.num_edges(), 0);
  for (std::size_t i = 0; i < leftover.size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    const std::size_t word = i / 64;
    auto flip = [&](EdgeId e) { labels_[e * words_ + word] ^= bit; };
    const EdgeId x = leftover[i];
    flip(x);
    FaceId a = g.face_of(Dart(x, true));
    FaceId b = g.face_of(Dart(x, false));
    while (a != b) {
      if (depth[a] < depth[b]) std::swap(a, b);
      flip(up_edge[a]);
      a = up_face[a];
    }
  }
}

bool ContractibilityOracle::is_separating(std::span<const Dart> cycle) const {
  for (int w = 0; w < words_; ++w) {
    std::uint64_t acc = 0;
    for (Dart d : cycle) acc ^= labels_[d.edge() * words_ + w];
    if (acc != 0) return false;
  }
  return true;
}

bool ContractibilityOracle::is_contractible(std::span<const Dart> cycle) const {
  const EmbeddedGraph& g = *g_;
  validate_cycle(g, cycle);
  if (!is_separating(cycle)) return false;
  const int comp = comps_.of[g.tail(cycle.front())];
  const int genus = comp_genus_[comp];
  if (genus <= 1) return true;

  // Flood both sides in lockstep and measure whichever finishes first.
  std::vector<EdgeId> blocked;
  for (Dart d : cycle) blocked.push_back(d.edge());
  std::sort(blocked.begin(), blocked.end());
  auto is_blocked = [&](EdgeId e) {
    return std::binary_search(blocked.begin(), blocked.end(), e);
  };
  struct Side {
    std::vector<FaceId> faces;
    std::size_t head = 0;
  };
  Side side[2];
  std::map<FaceId, int> owner;
  for (int s = 0; s < 2; ++s) {
    for (Dart d : cycle) {
      FaceId f = g.face_of(s == 0 ? d : d.rev());
      if (owner.emplace(f, s).second) side[s].faces.push_back(f);
    }
  }
  int done = -1;
  while (done < 0) {
    for (int s = 0; s < 2 && done < 0; ++s) {
      Side& sd = side[s];
      if (sd.head == sd.faces.size()) {
        done = s;
        break;
      }
      FaceId f = sd.faces[sd.head++];
      for (Dart d : g.face(f).darts) {
        if (is_blocked(d.edge())) continue;
        FaceId t = g.face_of(d.rev());
        if (owner.emplace(t, s).second) sd.faces.push_back(t);
      }
    }
  }
  const int chi_small = closure_euler_characteristic(g, side[done].faces);
  if (chi_small == 1) return true;
  const int chi_surface = 2 - 2 * genus;
  return chi_surface - chi_small == 1;
}

}  // namespace gsep
