#include "gsep/generators.hpp"

#include <random>
#include <sstream>
#include <vector>

#include "gsep/errors.hpp"

namespace gsep {
namespace {

// Mutable rotation system kept as per-dart successor pointers, used by the
// generators that splice edges into existing corners.
class RotationBuilder {
 public:
  explicit RotationBuilder(const EmbeddedGraph& g)
      : ends_(g.all_edge_ends()), first_(g.num_vertices(), kNone) {
    next_.resize(g.num_darts());
    for (int id = 0; id < g.num_darts(); ++id) {
      next_[id] = g.rot_next(Dart::from_id(id)).id();
    }
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (g.degree(v) > 0) first_[v] = g.rotation(v).front().id();
    }
  }

  Vertex add_vertex() {
    first_.push_back(kNone);
    return static_cast<Vertex>(first_.size() - 1);
  }

  EdgeId add_edge(Vertex u, Vertex v) {
    ends_.emplace_back(u, v);
    next_.resize(2 * ends_.size(), kNone);
    return static_cast<EdgeId>(ends_.size() - 1);
  }

  Vertex tail(Dart d) const {
    return d.forward() ? ends_[d.edge()].first : ends_[d.edge()].second;
  }
  Dart rot_next(Dart d) const { return Dart::from_id(next_[d.id()]); }
  Dart face_next(Dart d) const { return rot_next(d.rev()); }

  void insert_after(Dart at, Dart d) {
    next_[d.id()] = next_[at.id()];
    next_[at.id()] = d.id();
  }

  // Sets the full cyclic rotation of a vertex that has no darts yet.
  void set_rotation(Vertex v, const std::vector<Dart>& darts) {
    for (std::size_t i = 0; i < darts.size(); ++i) {
      next_[darts[i].id()] = darts[(i + 1) % darts.size()].id();
    }
    first_[v] = darts.front().id();
  }

  EmbeddedGraph build() const {
    const int n = static_cast<int>(first_.size());
    std::vector<std::vector<Dart>> rot(n);
    for (Vertex v = 0; v < n; ++v) {
      if (first_[v] == kNone) continue;
      Dart start = Dart::from_id(first_[v]);
      Dart d = start;
      do {
        rot[v].push_back(d);
        d = rot_next(d);
      } while (d != start);
    }
    return EmbeddedGraph::build(n, ends_, std::move(rot));
  }

 private:
  std::vector<std::pair<Vertex, Vertex>> ends_;
  std::vector<std::int32_t> next_;
  std::vector<std::int32_t> first_;
};

EmbeddedGraph grid(int rows, int cols, bool wrap) {
  auto id = [cols](int r, int c) { return static_cast<Vertex>(r * cols + c); };
  std::vector<std::pair<Vertex, Vertex>> ends;
  std::vector<EdgeId> h(rows * cols, kNone), v(rows * cols, kNone);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols || wrap) {
        h[id(r, c)] = static_cast<EdgeId>(ends.size());
        ends.emplace_back(id(r, c), id(r, (c + 1) % cols));
      }
    }
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (r + 1 < rows || wrap) {
        v[id(r, c)] = static_cast<EdgeId>(ends.size());
        ends.emplace_back(id(r, c), id((r + 1) % rows, c));
      }
    }
  }
  std::vector<std::vector<Dart>> rot(rows * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      auto& out = rot[id(r, c)];
      const int up = (r + rows - 1) % rows;
      const int left = (c + cols - 1) % cols;
      if (h[id(r, c)] != kNone) out.push_back(Dart(h[id(r, c)], true));
      if (r > 0 || wrap) out.push_back(Dart(v[id(up, c)], false));
      if (c > 0 || wrap) out.push_back(Dart(h[id(r, left)], false));
      if (v[id(r, c)] != kNone) out.push_back(Dart(v[id(r, c)], true));
    }
  }
  return EmbeddedGraph::build(rows * cols, std::move(ends), std::move(rot));
}

// Darts of the face left of `d`, in orbit order.
std::vector<Dart> face_darts(const RotationBuilder& b, Dart d) {
  std::vector<Dart> out;
  Dart x = d;
  do {
    out.push_back(x);
    x = b.face_next(x);
  } while (x != d);
  return out;
}

// Joins two quadrilateral faces by a tube of four edges, pairing the
// corners in opposite cyclic order so orientations agree.
void add_tube(RotationBuilder& b, Dart face_a, Dart face_b) {
  auto fa = face_darts(b, face_a);
  auto fb = face_darts(b, face_b);
  for (int i = 0; i < 4; ++i) {
    const int j = (4 - i) % 4;
    Vertex a = b.tail(fa[i]);
    Vertex c = b.tail(fb[j]);
    EdgeId e = b.add_edge(a, c);
    b.insert_after(fa[(i + 3) % 4].rev(), Dart(e, true));
    b.insert_after(fb[(j + 3) % 4].rev(), Dart(e, false));
  }
}

}  // namespace

EmbeddedGraph gen_planar_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::TooSmall, "grid needs rows, cols >= 1");
  return grid(rows, cols, false);
}

EmbeddedGraph gen_torus_grid(int rows, int cols) {
  if (rows < 3 || cols < 3) throw Error(ErrorCode::TooSmall, "torus grid needs rows, cols >= 3");
  return grid(rows, cols, true);
}

EmbeddedGraph gen_genus_sum(int genus, int patch) {
  if (genus < 1) throw Error(ErrorCode::TooSmall, "genus-sum needs genus >= 1");
  if (patch < 3) throw Error(ErrorCode::TooSmall, "genus-sum needs patch >= 3");
  EmbeddedGraph one = gen_torus_grid(patch, patch);
  if (genus == 1) return one;

  // Disjoint union of the tori.
  const int pn = one.num_vertices();
  const int pm = one.num_edges();
  std::vector<std::pair<Vertex, Vertex>> ends;
  std::vector<std::vector<Dart>> rot;
  for (int t = 0; t < genus; ++t) {
    for (auto [u, v] : one.all_edge_ends()) ends.emplace_back(u + t * pn, v + t * pn);
    for (Vertex v = 0; v < pn; ++v) {
      std::vector<Dart> r;
      for (Dart d : one.rotation(v)) r.push_back(Dart(d.edge() + t * pm, d.forward()));
      rot.push_back(std::move(r));
    }
  }
  RotationBuilder b(EmbeddedGraph::build(genus * pn, std::move(ends), std::move(rot)));
  // The right-pointing dart of cell (r, c) is horizontal edge r*patch + c.
  const int mid = patch / 2;
  for (int t = 0; t + 1 < genus; ++t) {
    Dart a(static_cast<EdgeId>(t * pm + mid * patch + mid), true);
    Dart c(static_cast<EdgeId>((t + 1) * pm), true);
    add_tube(b, a, c);
  }
  return b.build();
}

EmbeddedGraph gen_random_triangulation(int genus, int n, std::uint64_t seed) {
  EmbeddedGraph base;
  if (genus == 0) {
    base = EmbeddedGraph::build(
        3, {{0, 1}, {1, 2}, {2, 0}},
        {{Dart(0, true), Dart(2, false)},
         {Dart(1, true), Dart(0, false)},
         {Dart(2, true), Dart(1, false)}});
  } else {
    base = triangulate(gen_genus_sum(genus, 3));
  }
  if (n < base.num_vertices()) {
    throw Error(ErrorCode::TooSmall, "random triangulation of genus " +
                                         std::to_string(genus) + " needs n >= " +
                                         std::to_string(base.num_vertices()));
  }
  RotationBuilder b(base);
  std::vector<Dart> faces;  // one dart per triangular face
  for (const Face& f : base.faces()) faces.push_back(f.darts.front());

  std::mt19937_64 rng(seed);
  for (int i = base.num_vertices(); i < n; ++i) {
    const std::size_t pick = static_cast<std::size_t>(rng() % faces.size());
    const Dart d0 = faces[pick];
    const Dart d1 = b.face_next(d0);
    const Dart d2 = b.face_next(d1);
    const Vertex va = b.tail(d0), vb = b.tail(d1), vc = b.tail(d2);
    const Vertex x = b.add_vertex();
    const Dart xa(b.add_edge(x, va), true);
    const Dart xb(b.add_edge(x, vb), true);
    const Dart xc(b.add_edge(x, vc), true);
    b.insert_after(d2.rev(), xa.rev());
    b.insert_after(d0.rev(), xb.rev());
    b.insert_after(d1.rev(), xc.rev());
    b.set_rotation(x, {xa, xc, xb});
    faces[pick] = d0;
    faces.push_back(d1);
    faces.push_back(d2);
  }
  return b.build();
}

const char* family_name(Family f) {
  switch (f) {
    case Family::PlanarGrid: return "planar-grid";
    case Family::TorusGrid: return "torus-grid";
    case Family::GenusSum: return "genus-sum";
    case Family::RandomTriangulation: return "random-triangulation";
  }
  return "unknown";
}

std::string InstanceSpec::to_string() const {
  std::ostringstream out;
  out << family_name(family) << ':';
  switch (family) {
    case Family::PlanarGrid:
    case Family::TorusGrid: out << a << 'x' << b; break;
    case Family::GenusSum: out << a << ':' << b; break;
    case Family::RandomTriangulation: out << a << ':' << b << ':' << seed; break;
  }
  return out.str();
}

InstanceSpec InstanceSpec::parse(const std::string& text) {
  auto fail = [&]() -> InstanceSpec {
    throw Error(ErrorCode::ParseError, "bad instance spec '" + text + "'");
  };
  const auto colon = text.find(':');
  if (colon == std::string::npos) return fail();
  const std::string fam = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  for (char& ch : rest) {
    if (ch == ':' || ch == 'x') ch = ' ';
  }
  std::istringstream in(rest);
  InstanceSpec s;
  if (fam == "planar-grid" || fam == "torus-grid") {
    s.family = fam == "planar-grid" ? Family::PlanarGrid : Family::TorusGrid;
    if (!(in >> s.a >> s.b)) return fail();
  } else if (fam == "genus-sum") {
    s.family = Family::GenusSum;
    if (!(in >> s.a >> s.b)) return fail();
  } else if (fam == "random-triangulation") {
    s.family = Family::RandomTriangulation;
    if (!(in >> s.a >> s.b >> s.seed)) return fail();
  } else {
    return fail();
  }
  std::string extra;
  if (in >> extra) return fail();
  return s;
}

EmbeddedGraph make_instance(const InstanceSpec& spec) {
  switch (spec.family) {
    case Family::PlanarGrid: return gen_planar_grid(spec.a, spec.b);
    case Family::TorusGrid: return gen_torus_grid(spec.a, spec.b);
    case Family::GenusSum: return gen_genus_sum(spec.a, spec.b);
    case Family::RandomTriangulation:
      return gen_random_triangulation(spec.a, spec.b, spec.seed);
  }
  throw Error(ErrorCode::ParseError, "unknown family");
}

}  // namespace gsep
