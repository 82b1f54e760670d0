#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "gsep/embedded_graph.hpp"
#include "gsep/errors.hpp"
#include "gsep/frame.hpp"
#include "gsep/generators.hpp"
#include "gsep/voronoi.hpp"
#include "oracles.hpp"

using namespace gsep;

namespace {

struct Instance {
  EmbeddedGraph g;
  VoronoiDecomposition vd;
};

Instance prepared(const EmbeddedGraph& raw, int k) {
  Instance in;
  in.g = triangulate(simplify(raw).graph);
  in.vd = voronoi_regions(in.g, k_max_independent_set(in.g, k), k);
  return in;
}

Dart find_dart(const EmbeddedGraph& g, Vertex u, Vertex v) {
  for (Dart d : g.rotation(u)) {
    if (g.head(d) == v) return d;
  }
  FAIL("no edge " << u << "-" << v);
  return Dart();
}

std::vector<Dart> walk_through(const EmbeddedGraph& g, const std::vector<Vertex>& vs) {
  std::vector<Dart> out;
  for (std::size_t i = 0; i < vs.size(); ++i) out.push_back(find_dart(g, vs[i], vs[(i + 1) % vs.size()]));
  return out;
}

// The link of v in a triangulation as a closed walk.
std::vector<Dart> link_cycle(const EmbeddedGraph& g, Vertex v) {
  std::map<Vertex, Dart> by_tail;
  for (Dart d : g.rotation(v)) {
    const Dart x = g.face_next(d);
    by_tail[g.tail(x)] = x;
  }
  std::vector<Dart> out{by_tail.begin()->second};
  while (out.size() < by_tail.size()) out.push_back(by_tail.at(g.head(out.back())));
  return out;
}

// Dart multiset after cancelling reverse pairs, counted directly.
std::map<std::int32_t, int> cancelled_counts(const std::vector<Dart>& walk) {
  std::map<std::int32_t, int> c;
  for (Dart d : walk) ++c[d.id()];
  std::map<std::int32_t, int> out;
  for (auto [id, k] : c) {
    const int r = c.count(id ^ 1) ? c.at(id ^ 1) : 0;
    if (k > r) out[id] = k - std::min(k, r);
  }
  return out;
}

std::vector<Dart> bfs_path(const EmbeddedGraph& g, Vertex s, Vertex t) {
  std::vector<Dart> via(g.num_vertices());
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<Vertex> q{s};
  seen[s] = 1;
  for (std::size_t qi = 0; qi < q.size(); ++qi) {
    for (Dart d : g.rotation(q[qi])) {
      if (!seen[g.head(d)]) {
        seen[g.head(d)] = 1;
        via[g.head(d)] = d;
        q.push_back(g.head(d));
      }
    }
  }
  std::vector<Dart> path;
  for (Vertex v = t; v != s; v = g.tail(via[v])) path.push_back(via[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Boundary cycles of a region as components of the dual edges leaving it.
std::vector<std::vector<FaceId>> dual_boundary_components(const EmbeddedGraph& g,
                                                          const std::vector<char>& in_region) {
  std::vector<int> parent(g.num_faces());
  for (int i = 0; i < g.num_faces(); ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::set<FaceId> touched;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edge_ends(e);
    if (in_region[u] == in_region[v]) continue;
    const FaceId a = g.face_of(Dart(e, true)), b = g.face_of(Dart(e, false));
    touched.insert(a);
    touched.insert(b);
    parent[find(a)] = find(b);
  }
  std::map<int, std::vector<FaceId>> comps;
  for (FaceId f : touched) comps[find(f)].push_back(f);
  std::vector<std::vector<FaceId>> out;
  for (auto& [r, fs] : comps) out.push_back(fs);
  return out;
}

std::vector<Dart> tree_cycle(const EmbeddedGraph& g, const VoronoiDecomposition& vd, Dart d) {
  std::vector<Dart> up_a, up_b;
  Vertex a = g.tail(d), b = g.head(d);
  auto root_path = [&](Vertex v) {
    std::vector<Vertex> p{v};
    while (vd.parent[p.back()].valid()) p.push_back(g.head(vd.parent[p.back()]));
    return p;
  };
  auto pa = root_path(a), pb = root_path(b);
  std::set<Vertex> on_a(pa.begin(), pa.end());
  Vertex lca = kNone;
  for (Vertex v : pb) {
    if (on_a.count(v)) {
      lca = v;
      break;
    }
  }
  std::vector<Dart> cyc{d};
  for (Vertex v = b; v != lca; v = g.head(vd.parent[v])) cyc.push_back(vd.parent[v]);
  std::vector<Dart> down;
  for (Vertex v = a; v != lca; v = g.head(vd.parent[v])) down.push_back(vd.parent[v].rev());
  cyc.insert(cyc.end(), down.rbegin(), down.rend());
  return cyc;
}

std::vector<Instance> corpus() {
  std::vector<Instance> out;
  out.push_back(prepared(gen_torus_grid(12, 12), 9));
  out.push_back(prepared(gen_torus_grid(16, 16), 16));
  out.push_back(prepared(gen_torus_grid(10, 30), 12));
  out.push_back(prepared(gen_genus_sum(2, 8), 8));
  for (std::uint64_t s = 1; s <= 4; ++s) {
    out.push_back(prepared(gen_random_triangulation(1 + s % 3, 300, s), 6));
  }
  return out;
}

}  // namespace

TEST_CASE("boundary walks follow the dual boundary of a vertex set") {
  std::mt19937_64 rng(7);
  for (const Instance& in : corpus()) {
    const EmbeddedGraph& g = in.g;
    for (int r = 0; r < in.vd.num_regions(); ++r) {
      std::vector<char> in_set(g.num_vertices(), 0);
      for (Vertex v : in.vd.members[r]) in_set[v] = 1;
      auto walks = boundary_walks(g, in_set, in.vd.members[r]);
      std::set<std::int32_t> crossing;
      for (const auto& w : walks) {
        for (std::size_t i = 0; i < w.crossing.size(); ++i) {
          const Dart d = w.crossing[i], next = w.crossing[(i + 1) % w.crossing.size()];
          CHECK(in_set[g.tail(d)]);
          CHECK_FALSE(in_set[g.head(d)]);
          CHECK(g.face_of(d.rev()) == g.face_of(next));
          CHECK(crossing.insert(d.id()).second);
        }
        for (std::size_t i = 0; i < w.inner.size(); ++i) {
          const Dart d = w.inner[i];
          CHECK(in_set[g.tail(d)]);
          CHECK(in_set[g.head(d)]);
          CHECK(g.head(d) == g.tail(w.inner[(i + 1) % w.inner.size()]));
        }
      }
      int expected = 0;
      for (Vertex v : in.vd.members[r]) {
        for (Dart d : g.rotation(v)) expected += !in_set[g.head(d)];
      }
      CHECK(static_cast<int>(crossing.size()) == expected);
      CHECK(walks.size() == dual_boundary_components(g, in_set).size());
    }
  }
}

TEST_CASE("cancelling reverse pairs") {
  SUBCASE("a simple cycle is kept") {
    auto g = triangulate(gen_planar_grid(4, 4));
    auto c = walk_through(g, {0, 1, 5, 4});
    auto out = cancel_reverse_pairs(g, c);
    REQUIRE(out.size() == 1);
    CHECK(std::multiset<Dart>(out[0].begin(), out[0].end()) == std::multiset<Dart>(c.begin(), c.end()));
  }
  SUBCASE("an edge walked both ways splits the walk") {
    auto g = triangulate(gen_planar_grid(3, 6));
    // Square 0-1-7-6, bridge 1-2, square 2-3-9-8, back over the bridge.
    auto w = walk_through(g, {0, 1, 2, 3, 9, 8, 2, 1, 7, 6});
    auto out = cancel_reverse_pairs(g, w);
    CHECK(out.size() == 2);
    for (const auto& c : out) {
      CHECK(c.size() == 4);
      CHECK_NOTHROW(validate_cycle(g, c));
      for (Dart d : c) CHECK(g.edge_ends(d.edge()) != g.edge_ends(find_dart(g, 1, 2).edge()));
    }
  }
  SUBCASE("random lollipop walks match the multiset oracle") {
    std::mt19937_64 rng(11);
    auto g = triangulate(gen_torus_grid(7, 9));
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Dart> walk;
      const Vertex base = static_cast<Vertex>(rng() % g.num_vertices());
      for (int part = 0; part < 3; ++part) {
        auto c = oracle::random_cycle(g, rng);
        if (!c) continue;
        auto p = bfs_path(g, base, g.tail(c->front()));
        walk.insert(walk.end(), p.begin(), p.end());
        walk.insert(walk.end(), c->begin(), c->end());
        for (auto it = p.rbegin(); it != p.rend(); ++it) walk.push_back(it->rev());
      }
      auto out = cancel_reverse_pairs(g, walk);
      std::map<std::int32_t, int> got;
      for (const auto& c : out) {
        CHECK_NOTHROW(validate_cycle(g, c));
        for (Dart d : c) ++got[d.id()];
      }
      CHECK(got == cancelled_counts(walk));
    }
  }
}

TEST_CASE("ridge edges") {
  SUBCASE("a region with one boundary cycle has none") {
    auto g = triangulate(gen_planar_grid(6, 6));
    auto vd = voronoi_regions(g, {0, 35}, 4);
    for (int r = 0; r < vd.num_regions(); ++r) CHECK(ridge_edges(g, vd, r).empty());
  }
  SUBCASE("a tree-shaped region has none") {
    auto g = gen_planar_grid(1, 12);
    auto vd = voronoi_regions(g, {0, 11}, 3);
    for (int r = 0; r < vd.num_regions(); ++r) CHECK(ridge_edges(g, vd, r).empty());
  }
  SUBCASE("generated instances match a full-surface side test") {
    for (const Instance& in : corpus()) {
      const EmbeddedGraph& g = in.g;
      for (int r = 0; r < in.vd.num_regions(); ++r) {
        std::vector<char> in_set(g.num_vertices(), 0);
        for (Vertex v : in.vd.members[r]) in_set[v] = 1;
        auto comps = dual_boundary_components(g, in_set);
        std::set<EdgeId> expected;
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
          auto [u, v] = g.edge_ends(e);
          if (!in_set[u] || !in_set[v] || in.vd.is_tree_edge(g, e)) continue;
          auto cyc = tree_cycle(g, in.vd, Dart(e, true));
          auto sides = cycle_sides(g, cyc);
          if (!sides.separating) continue;
          std::set<FaceId> left(sides.left.begin(), sides.left.end());
          bool l = false, rr = false;
          for (const auto& comp : comps) (left.count(comp.front()) ? l : rr) = true;
          if (l && rr) expected.insert(e);
        }
        auto got = ridge_edges(g, in.vd, r);
        INFO("region " << r << " of " << in.vd.num_regions() << " n=" << g.num_vertices()
                       << " boundaries=" << comps.size() << " got=" << got.size()
                       << " expected=" << expected.size());
        CHECK(std::set<EdgeId>(got.begin(), got.end()) == expected);
      }
    }
  }
}

TEST_CASE("branch structure") {
  SUBCASE("two regions meeting along one closed curve") {
    auto g = triangulate(gen_planar_grid(6, 6));
    auto vd = voronoi_regions(g, {0, 35}, 4);
    auto bs = branch_structure(g, vd);
    CHECK(bs.branch_vertices.empty());
    REQUIRE(bs.connectors.size() == 1);
    CHECK(bs.connectors[0].closed);
  }
  SUBCASE("three mutually adjacent regions") {
    auto g = triangulate(gen_planar_grid(9, 9));
    auto vd = voronoi_regions(g, {0, 8, 76}, 4);
    auto bs = branch_structure(g, vd);
    CHECK(bs.branch_vertices.size() >= 2);
  }
  SUBCASE("connectors on generated instances") {
    for (const Instance& in : corpus()) {
      const EmbeddedGraph& g = in.g;
      auto bs = branch_structure(g, in.vd);
      std::vector<int> degree(g.num_faces(), 0);
      for (FaceId f = 0; f < g.num_faces(); ++f) {
        for (Dart d : g.face(f).darts) degree[f] += bs.in_b_or_r(d.edge());
      }
      CHECK(degree == bs.degree);
      std::map<EdgeId, int> covered;
      for (const Connector& c : bs.connectors) {
        for (std::size_t i = 0; i < c.darts.size(); ++i) {
          ++covered[c.darts[i].edge()];
          if (i + 1 < c.darts.size() || c.closed) {
            const FaceId mid = g.face_of(c.darts[i].rev());
            CHECK(degree[mid] == 2);
            CHECK(mid == g.face_of(c.darts[(i + 1) % c.darts.size()]));
          }
        }
        if (!c.closed) {
          CHECK(degree[c.start] != 2);
          CHECK(degree[c.end] != 2);
          if (bs.dangling_ends == 0) {
            CHECK(degree[c.start] == 3);
            CHECK(degree[c.end] == 3);
          }
        }
      }
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        CHECK(covered[e] == (bs.in_b_or_r(e) ? 1 : 0));
      }
    }
  }
}

TEST_CASE("pre-frame loops and their census") {
  for (const Instance& in : corpus()) {
    const EmbeddedGraph& g = in.g;
    const int n = g.num_vertices();
    auto bs = branch_structure(g, in.vd);
    auto loops = pre_frame_loops(g, in.vd, bs);
    for (const PreFrameLoop& l : loops) {
      REQUIRE_FALSE(l.darts.empty());
      for (std::size_t i = 0; i < l.darts.size(); ++i) {
        CHECK(g.head(l.darts[i]) == g.tail(l.darts[(i + 1) % l.darts.size()]));
      }
      CHECK((l.type == LoopType::A) == (l.left_boss != l.right_boss));
      const Connector& c = bs.connectors[l.connector];
      if (!c.closed) {
        std::set<EdgeId> tri{c.darts.front().edge(), c.darts.back().edge()};
        for (Dart d : l.darts) {
          if (!tri.count(d.edge())) CHECK(in.vd.is_tree_edge(g, d.edge()));
        }
        if (c.darts.size() == 1) {
          CHECK(loop_inside_census(g, l).n0 == 0);
        }
      }

      auto census = loop_inside_census(g, l);
      CHECK(census.n0 + census.on_loop + census.outside == n);
      CHECK(census.n11 + census.n12 == census.outside);
      // Vertices joined in G minus the loop share a census region.
      std::vector<char> removed(n, 0);
      for (Dart d : l.darts) removed[g.tail(d)] = 1;
      std::vector<char> keep(n);
      for (Vertex v = 0; v < n; ++v) keep[v] = !removed[v];
      auto sub = induced_embedding(g, keep);
      auto comps = connected_components(sub.graph);
      std::map<int, int> region_of_comp;
      for (Vertex s = 0; s < sub.graph.num_vertices(); ++s) {
        const Vertex v = sub.to_parent_vertex[s];
        const int r = census.face_region[g.face_of(g.rotation(v).front())];
        auto [it, fresh] = region_of_comp.emplace(comps.of[s], r);
        CHECK(it->second == r);
      }
    }
  }
}

TEST_CASE("loops as separators") {
  auto g = triangulate(gen_planar_grid(12, 12));
  PreFrameLoop around;
  around.darts = link_cycle(g, 5 * 12 + 5);
  around.body = {g.face_of(g.rotation(5 * 12 + 5).front())};
  CHECK_FALSE(loop_is_separator(g, around, 2.0 / 3.0).has_value());
  auto all = loop_is_separator(g, around, 1.0);
  REQUIRE(all.has_value());
  CHECK(all->vertices.size() == around.darts.size());
  auto census = loop_inside_census(g, around);
  CHECK(census.n0 == 1);
  CHECK(census.on_loop == 6);
}

TEST_CASE("separator from a loop with a large inside") {
  auto g = triangulate(gen_planar_grid(20, 20));
  std::vector<Vertex> ring;
  for (int c = 0; c < 18; ++c) ring.push_back(c);
  for (int r = 0; r < 18; ++r) ring.push_back(r * 20 + 18);
  for (int c = 18; c > 0; --c) ring.push_back(18 * 20 + c);
  for (int r = 18; r > 0; --r) ring.push_back(r * 20);
  PreFrameLoop loop;
  loop.darts = walk_through(g, ring);
  loop.body = {g.face_of(g.rotation(21).front())};
  auto census = loop_inside_census(g, loop);
  CHECK(census.n0 == 17 * 17);
  CHECK(census.on_loop == 72);
  REQUIRE(3 * census.n0 > 2 * g.num_vertices());
  auto r = separator_from_large_inside(g, loop, census);
  CHECK(verify_separator(g, r.vertices, 2.0 / 3.0).ok);
  CHECK(r.vertices.size() <= 72 + 4 * 17);

  PreFrameLoop empty = loop;
  empty.body.clear();
  CHECK_THROWS_AS(separator_from_large_inside(g, empty, loop_inside_census(g, empty)), Error);
}

TEST_CASE("frame cycles") {
  SUBCASE("a loop that is a simple cycle gives itself") {
    auto g = triangulate(gen_planar_grid(8, 8));
    PreFrameLoop l;
    l.darts = link_cycle(g, 27);
    l.body = {g.face_of(g.rotation(27).front())};
    l.type = LoopType::A;
    auto fc = frame_cycles(g, {l}, {loop_inside_census(g, l)});
    REQUIRE(fc.cycles.size() == 1);
    CHECK(std::multiset<Dart>(fc.cycles[0].begin(), fc.cycles[0].end()) ==
          std::multiset<Dart>(l.darts.begin(), l.darts.end()));
  }
  SUBCASE("nested loops keep the outer one") {
    auto g = triangulate(gen_planar_grid(8, 8));
    PreFrameLoop inner, outer;
    inner.darts = link_cycle(g, 27);
    inner.body = {g.face_of(g.rotation(27).front())};
    outer.darts = walk_through(g, {18, 19, 20, 28, 36, 35, 34, 26});
    outer.body = inner.body;
    auto fc = frame_cycles(g, {inner, outer}, {loop_inside_census(g, inner), loop_inside_census(g, outer)});
    CHECK(fc.maximal == std::vector<int>{1});
  }
  SUBCASE("generated instances give simple cycles") {
    for (const Instance& in : corpus()) {
      auto bs = branch_structure(in.g, in.vd);
      auto loops = pre_frame_loops(in.g, in.vd, bs);
      std::vector<LoopCensus> census;
      for (const auto& l : loops) census.push_back(loop_inside_census(in.g, l));
      auto fc = frame_cycles(in.g, loops, census);
      for (const auto& c : fc.cycles) CHECK_NOTHROW(validate_cycle(in.g, c));
    }
  }
}

TEST_CASE("cores") {
  SUBCASE("a wide first level leaves the boss alone") {
    auto g = triangulate(gen_torus_grid(10, 10));
    auto vd = voronoi_regions(g, k_max_independent_set(g, 4), 4);
    for (int r = 0; r < vd.num_regions(); ++r) {
      auto core = core_of(g, vd, r);
      if (g.degree(vd.bosses[r]) > 2) {
        CHECK(core.radius == 0);
        CHECK(core.vertices == std::vector<Vertex>{vd.bosses[r]});
        CHECK_FALSE(core.cycle.has_value());
      }
    }
  }
  SUBCASE("radius matches the level-size definition") {
    for (const Instance& in : corpus()) {
      const int k = in.vd.k;
      const int root = static_cast<int>(std::floor(std::sqrt(k)));
      for (int r = 0; r < in.vd.num_regions(); ++r) {
        auto core = core_of(in.g, in.vd, r);
        auto dist = oracle::matrix_power_distances(in.g, in.vd.bosses[r]);
        std::map<int, int> width;
        for (int d : dist) ++width[d];
        int d_nb = 0, acc = 0;
        for (auto [d, w] : width) {
          acc += w;
          if (acc < k) d_nb = d;
        }
        int d_core = 0;
        for (int d = 0; d <= d_nb; ++d) {
          if (width[d] <= root) d_core = d;
        }
        CHECK(core.nb_radius == d_nb);
        CHECK(core.radius == d_core);
        CHECK(core.radius <= core.nb_radius);
        std::vector<Vertex> expect;
        for (Vertex v = 0; v < in.g.num_vertices(); ++v) {
          if (dist[v] <= d_core) expect.push_back(v);
        }
        CHECK(core.vertices == expect);
        if (core.cycle) {
          CHECK_NOTHROW(validate_cycle(in.g, core.cycle->darts));
          CHECK(core.cycle->darts.size() <= 8 * std::sqrt(k) + 8);
        }
      }
    }
  }
  SUBCASE("a path-like region keeps growing its core") {
    auto g = triangulate(gen_torus_grid(3, 60));
    auto vd = voronoi_regions(g, {0}, 49);
    auto core = core_of(g, vd, 0);
    CHECK(core.radius == core.nb_radius);
    CHECK(core.radius >= 4);
  }
}

TEST_CASE("level structures") {
  for (const Instance& in : corpus()) {
    const EmbeddedGraph& g = in.g;
    const ContractibilityOracle oracle(g);
    auto ls = level_structures(g, in.vd, oracle);
    const int root = static_cast<int>(std::floor(std::sqrt(in.vd.k)));
    // Distances to the union of neighborhoods from a plain BFS.
    std::vector<int> expect(g.num_vertices(), -1);
    std::vector<Vertex> q;
    for (const auto& nb : in.vd.neighborhoods) {
      for (Vertex v : nb.vertices) {
        if (expect[v] < 0) {
          expect[v] = 0;
          q.push_back(v);
        }
      }
    }
    for (std::size_t qi = 0; qi < q.size(); ++qi) {
      for (Dart d : g.rotation(q[qi])) {
        if (expect[g.head(d)] < 0) {
          expect[g.head(d)] = expect[q[qi]] + 1;
          q.push_back(g.head(d));
        }
      }
    }
    CHECK(ls.level == expect);
    for (const LevelCycle& c : ls.cycles) {
      CHECK_NOTHROW(validate_cycle(g, c.darts));
      CHECK(c.small == (static_cast<int>(c.darts.size()) <= root));
      for (Dart d : c.darts) CHECK(ls.level[g.tail(d)] == c.level);
      if (c.small) CHECK(c.contractible == oracle::cut_surface_contractible(g, c.darts));
      if (c.light) {
        auto sides = cycle_sides(g, c.darts);
        std::vector<FaceId> l = sides.left, r = sides.right;
        std::sort(l.begin(), l.end());
        std::sort(r.begin(), r.end());
        CHECK((c.inside == l || c.inside == r));
        std::vector<char> mask(g.num_faces(), 0);
        for (FaceId f : c.inside) mask[f] = 1;
        int interior = 0;
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
          bool all = true;
          for (Dart d : g.rotation(v)) all = all && mask[g.face_of(d)];
          interior += all;
        }
        CHECK(interior == c.inside_vertices);
        CHECK(3 * interior < g.num_vertices());
      }
    }
  }
}

TEST_CASE("floor and ceiling selection") {
  auto g = triangulate(gen_planar_grid(10, 10));
  auto vd = voronoi_regions(g, {44}, 4);
  auto disk = [&](std::vector<Dart> darts, CycleSide side) {
    LevelCycle c;
    c.side = side;
    c.small = c.contractible = c.light = true;
    auto sides = cycle_sides(g, darts);
    c.inside = sides.left.size() < sides.right.size() ? sides.left : sides.right;
    std::sort(c.inside.begin(), c.inside.end());
    c.darts = std::move(darts);
    return c;
  };
  LevelStructures ls;
  ls.cycles.push_back(disk(link_cycle(g, 44), CycleSide::Interior));
  ls.cycles.push_back(disk(walk_through(g, {33, 34, 35, 36, 46, 56, 55, 54, 53, 43}), CycleSide::Interior));
  ls.cycles.push_back(disk(link_cycle(g, 77), CycleSide::Exterior));
  BranchStructure bs;

  SUBCASE("nested interior cycles give one floor") {
    auto fc = floor_and_ceiling_cycles(g, vd, ls, {}, bs);
    REQUIRE(fc.floors.size() == 1);
    CHECK(fc.floors[0].darts == ls.cycles[1].darts);
  }
  SUBCASE("a ceiling needs a branch triangle inside") {
    CHECK(floor_and_ceiling_cycles(g, vd, ls, {}, bs).ceilings.empty());
    bs.branch_vertices = {g.face_of(g.rotation(77).front())};
    CHECK(floor_and_ceiling_cycles(g, vd, ls, {}, bs).ceilings.size() == 1);
  }
  SUBCASE("core-cycles of bosses inside a floor are skipped") {
    Core inside;
    inside.boss = 44;
    inside.cycle = InsideCycle{link_cycle(g, 44), ls.cycles[0].inside, 1};
    Core outside;
    outside.boss = 88;
    outside.cycle = InsideCycle{link_cycle(g, 88), {}, 1};
    auto fc = floor_and_ceiling_cycles(g, vd, ls, {inside, outside}, bs);
    CHECK(fc.core_floors == 1);
    CHECK(fc.floors.size() == 2);
    CHECK(fc.floors.back().darts == outside.cycle->darts);
  }
}

TEST_CASE("subgraph face weights conserve vertices") {
  std::mt19937_64 rng(5);
  for (const Instance& in : corpus()) {
    const EmbeddedGraph& g = in.g;
    std::vector<char> keep(g.num_edges(), 0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) keep[e] = rng() % 4 == 0;
    std::vector<char> kv(g.num_vertices(), 0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (keep[e]) kv[g.edge_ends(e).first] = kv[g.edge_ends(e).second] = 1;
    }
    auto sub = sub_embedding(g, kv, keep);
    auto w = subgraph_face_weights(g, sub);
    Weight total = 0;
    for (Weight x : w) {
      CHECK(x >= 0);
      total += x;
    }
    CHECK(total + sub.graph.num_vertices() == g.num_vertices());
  }
}

TEST_CASE("modified frame graph") {
  SUBCASE("without floors and ceilings it is the frame graph") {
    auto in = prepared(gen_torus_grid(16, 16), 16);
    auto bs = branch_structure(in.g, in.vd);
    auto loops = pre_frame_loops(in.g, in.vd, bs);
    std::vector<LoopCensus> census;
    for (const auto& l : loops) census.push_back(loop_inside_census(in.g, l));
    auto edges = frame_graph_edges(in.g, frame_cycles(in.g, loops, census), bs);
    auto fg = modified_frame_graph(in.g, edges, {}, 16);
    std::vector<char> got(in.g.num_edges(), 0);
    for (EdgeId e : fg.graph.to_parent_edge) got[e] = 1;
    CHECK(got == edges);
    CHECK(fg.report.conserved);
  }
  SUBCASE("torus grids satisfy the four frame properties") {
    for (int side : {16, 24, 32}) {
      const int k = side;
      auto in = prepared(gen_torus_grid(side, side), k);
      const ContractibilityOracle oracle(in.g);
      REQUIRE_FALSE(scan_region_pairs(in.g, in.vd, oracle).has_value());
      auto bs = branch_structure(in.g, in.vd);
      auto loops = pre_frame_loops(in.g, in.vd, bs);
      std::vector<LoopCensus> census;
      std::vector<Core> cores;
      for (const auto& l : loops) census.push_back(loop_inside_census(in.g, l));
      for (int r = 0; r < in.vd.num_regions(); ++r) cores.push_back(core_of(in.g, in.vd, r));
      auto ls = level_structures(in.g, in.vd, oracle);
      auto fl = floor_and_ceiling_cycles(in.g, in.vd, ls, cores, bs);
      auto fg = modified_frame_graph(in.g, frame_graph_edges(in.g, frame_cycles(in.g, loops, census), bs),
                                     fl, k, {}, true);
      CHECK(fg.report.all_ok());
      CHECK(fg.report.conserved);
      Weight total = 0;
      for (Weight w : fg.face_weight) total += w;
      CHECK(total + fg.graph.graph.num_vertices() == in.g.num_vertices());
    }
  }
}
