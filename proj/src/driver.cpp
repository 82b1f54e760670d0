#include "gsep/driver.hpp"

#include <algorithm>
#include <cmath>

#include "gsep/errors.hpp"

namespace gsep {
namespace {

template <class F>
auto staged(const std::string& stage, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.code(), stage + ": " + e.what());
  }
}

std::vector<Vertex> mask_to_list(const std::vector<char>& mask) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(mask.size()); ++v) {
    if (mask[v]) out.push_back(v);
  }
  return out;
}

// Components of G - S as vertex lists, largest first.
std::vector<std::vector<Vertex>> components_without(const EmbeddedGraph& g,
                                                    const std::vector<char>& removed) {
  std::vector<char> seen(removed);
  std::vector<std::vector<Vertex>> comps;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t qi = 0; qi < comp.size(); ++qi) {
      for (Dart d : g.rotation(comp[qi])) {
        const Vertex w = g.head(d);
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    comps.push_back(std::move(comp));
  }
  std::stable_sort(comps.begin(), comps.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return comps;
}

int remaining_genus(const EmbeddedGraph& g, const std::vector<char>& removed) {
  std::vector<char> keep(removed.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = !removed[i];
  return euler_genus(induced_embedding(g, keep).graph).total;
}

}  // namespace

const char* outcome_name(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::NonContractibleCycle: return "cycle";
    case OutcomeKind::Separator: return "separator";
    case OutcomeKind::Frame: return "frame";
  }
  return "unknown";
}

DriverOutcome three_way_driver(const EmbeddedGraph& g, int k, const DriverOptions& options) {
  if (k < 1) throw Error(ErrorCode::TooSmall, "driver needs k >= 1");
  DriverOutcome out;
  out.k = k;
  const int n = g.num_vertices();
  const double alpha = 2.0 / 3.0;

  const VoronoiDecomposition vd = staged("voronoi", [&] {
    return voronoi_regions(g, k_max_independent_set(g, k), k);
  });
  out.regions = vd.num_regions();
  const ContractibilityOracle oracle(g);

  if (auto c = staged("two-region scan", [&] { return scan_region_pairs(g, vd, oracle); })) {
    out.stage = "two-region scan";
    if (oracle.is_separating(*c)) {
      std::vector<Vertex> cut = loop_vertices(g, *c);
      if (verify_separator(g, cut, alpha).ok) {
        out.kind = OutcomeKind::Separator;
        out.separator.vertices = std::move(cut);
        out.separator.alpha = alpha;
        finalize_result(g, out.separator);
        return out;
      }
    }
    out.kind = OutcomeKind::NonContractibleCycle;
    out.cycle = std::move(*c);
    return out;
  }

  const BranchStructure bs = staged("branch structure", [&] { return branch_structure(g, vd); });
  for (const auto& c : bs.connectors) out.closed_connectors += c.closed;
  std::vector<PreFrameLoop> loops =
      staged("pre-frame loops", [&] { return pre_frame_loops(g, vd, bs, options.overlap); });
  out.loops = static_cast<int>(loops.size());
  for (const auto& l : loops) out.overlapping_loops += l.overlapping;

  std::vector<LoopCensus> census;
  for (const auto& l : loops) census.push_back(loop_inside_census(g, l));
  for (const auto& l : loops) {
    if (auto s = loop_is_separator(g, l, alpha)) {
      out.kind = OutcomeKind::Separator;
      out.stage = "loop separator";
      out.separator = std::move(*s);
      return out;
    }
  }
  for (std::size_t i = 0; i < loops.size(); ++i) {
    if (3L * census[i].n0 > 2L * n) {
      out.kind = OutcomeKind::Separator;
      out.stage = "large inside";
      out.separator = staged("large inside", [&] {
        return separator_from_large_inside(g, loops[i], census[i]);
      });
      return out;
    }
  }

  std::vector<Core> cores;
  for (int r = 0; r < vd.num_regions(); ++r) {
    cores.push_back(staged("core", [&] { return core_of(g, vd, r); }));
    if (verify_separator(g, cores.back().vertices, alpha).ok) {
      out.kind = OutcomeKind::Separator;
      out.stage = "core separator";
      out.separator.vertices = cores.back().vertices;
      finalize_result(g, out.separator);
      return out;
    }
  }

  const LevelStructures levels =
      staged("level cycles", [&] { return level_structures(g, vd, oracle); });
  if (!levels.noncontractible_small.empty()) {
    out.kind = OutcomeKind::NonContractibleCycle;
    out.stage = "level cycles";
    out.cycle = levels.cycles[levels.noncontractible_small.front()].darts;
    return out;
  }

  FrameArtifacts art;
  art.cycles = staged("frame cycles", [&] { return frame_cycles(g, loops, census); });
  art.floors_and_ceilings = staged("floors and ceilings", [&] {
    return floor_and_ceiling_cycles(g, vd, levels, cores, bs);
  });
  art.frame = staged("modified frame graph", [&] {
    FrameGraph fg = modified_frame_graph(g, frame_graph_edges(g, art.cycles, bs), art.floors_and_ceilings,
                                         k, options.constants, options.strict_frame);
    if (fg.graph.graph.num_vertices() == 0) {
      throw Error(ErrorCode::InvariantViolation, "frame graph is empty");
    }
    return fg;
  });
  for (int c : frame_cycle_overlaps(g, art.cycles, art.floors_and_ceilings)) {
    art.frame.report.max_cycle_overlaps = std::max(art.frame.report.max_cycle_overlaps, c);
  }
  art.loops = std::move(loops);
  art.census = std::move(census);
  out.kind = OutcomeKind::Frame;
  out.stage = "frame";
  out.frame = std::move(art);
  return out;
}

std::vector<Vertex> separator_from_frame(const FrameGraph& frame) {
  const EmbeddedGraph& h = frame.graph.graph;
  if (h.num_faces() == 0) return {};
  const EmbeddedGraph d = dual_embedding(h);
  std::vector<Weight> w(frame.face_weight.begin(), frame.face_weight.end());
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    if (h.degree(v) > 0) ++w[h.face_of(h.rotation(v).front())];
  }
  const SeparatorResult chosen = weighted_surface_separator(d, w);
  std::vector<Vertex> out;
  for (Vertex f : chosen.vertices) {
    for (Dart x : h.face(f).darts) out.push_back(frame.graph.to_parent_vertex[h.tail(x)]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SeparatorResult find_separator(const EmbeddedGraph& g, const FindOptions& options,
                               PipelineLog* log) {
  PipelineLog local;
  PipelineLog& lg = log ? *log : local;
  const int n = g.num_vertices();
  SeparatorResult result;
  result.alpha = options.alpha;
  lg.initial_genus = euler_genus(g).total;
  std::vector<char> in_s(n, 0);
  const int limit = options.iteration_limit > 0 ? options.iteration_limit : 4 * n + 16;

  auto add = [&](const SubEmbedding& sub, const std::vector<Vertex>& local_vertices) {
    int added = 0;
    for (Vertex v : local_vertices) {
      const Vertex p = sub.to_parent_vertex[v];
      if (!in_s[p]) {
        in_s[p] = 1;
        ++added;
      }
    }
    return added;
  };

  for (int iter = 0;; ++iter) {
    if (iter >= limit) {
      throw Error(ErrorCode::IterationLimitExceeded,
                  "no balanced separator after " + std::to_string(limit) + " iterations");
    }
    const auto comps = components_without(g, in_s);
    if (comps.empty() || static_cast<double>(comps.front().size()) <= options.alpha * n) break;

    std::vector<char> keep(n, 0);
    for (Vertex v : comps.front()) keep[v] = 1;
    const SubEmbedding sub = induced_embedding(g, keep);
    const int nj = sub.graph.num_vertices();
    const double local_alpha = options.alpha * n / nj;
    auto fallback = [&](const std::string& why) {
      ++lg.fallbacks;
      lg.stages.push_back("fallback (" + why + ")");
      result.trace.push_back("fallback on " + std::to_string(nj) + " vertices: " + why);
      const EmbeddedGraph& h = sub.graph;
      add(sub, grow_separator(h, std::vector<Weight>(nj, 1), local_alpha, {}));
    };
    if (nj <= 3) {
      fallback("tiny component");
      continue;
    }
    const EmbeddedGraph t = triangulate(simplify(sub.graph).graph);
    const int gj = euler_genus(t).total;
    if (gj == 0) {
      lg.stages.push_back("planar");
      result.trace.push_back("planar separator on " + std::to_string(nj) + " vertices");
      if (add(sub, grow_separator(t, std::vector<Weight>(nj, 1), local_alpha, {})) == 0) {
        fallback("planar step added nothing");
      }
      continue;
    }
    const int k = options.k ? *options.k
                            : std::max(4, static_cast<int>(std::ceil(std::sqrt(
                                              static_cast<double>(nj) / gj))));
    lg.ks.push_back(k);
    DriverOutcome out;
    try {
      out = three_way_driver(t, k, options.driver);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvariantViolation && options.driver.strict_frame) throw;
      fallback(e.what());
      continue;
    }
    lg.stages.push_back(std::string(outcome_name(out.kind)) + " (" + out.stage + ")");
    result.trace.push_back(std::string(outcome_name(out.kind)) + " from " + out.stage + " on " +
                           std::to_string(nj) + " vertices, genus " + std::to_string(gj) +
                           ", k " + std::to_string(k));
    switch (out.kind) {
      case OutcomeKind::NonContractibleCycle: {
        GenusStep step;
        step.before = remaining_genus(g, in_s);
        step.separator_before = mask_to_list(in_s);
        const ContractibilityOracle oracle(t);
        step.separating = oracle.is_separating(out.cycle);
        std::vector<Vertex> cyc = loop_vertices(t, out.cycle);
        add(sub, cyc);
        step.after = remaining_genus(g, in_s);
        lg.genus_steps.push_back(step);
        std::vector<Vertex> mapped;
        for (Dart d : out.cycle) mapped.push_back(sub.to_parent_vertex[t.tail(d)]);
        result.removed_cycles.push_back(std::move(mapped));
        break;
      }
      case OutcomeKind::Separator:
        if (add(sub, out.separator.vertices) == 0) fallback("driver separator added nothing");
        break;
      case OutcomeKind::Frame: {
        lg.frames.push_back(out.frame->frame.report);
        if (add(sub, separator_from_frame(out.frame->frame)) == 0) {
          fallback("frame separator added nothing");
        }
        break;
      }
    }
  }
  result.vertices = mask_to_list(in_s);
  lg.untrimmed_size = static_cast<int>(result.vertices.size());
  if (options.trim) {
    result.vertices = trim_separator(g, std::move(result.vertices), options.alpha);
    result.trace.push_back("trimmed " + std::to_string(lg.untrimmed_size) + " to " +
                           std::to_string(result.vertices.size()) + " vertices");
  }
  finalize_result(g, result);
  const double scale = std::sqrt(static_cast<double>(std::max(1, lg.initial_genus)) * n);
  lg.size_ratio = n > 0 ? result.vertices.size() / scale : 0;
  result.size_bound_checked = result.vertices.size() <= options.size_constant * scale;
  return result;
}

}  // namespace gsep
