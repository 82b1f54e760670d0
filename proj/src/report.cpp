#include "gsep/report.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <thread>

#include "gsep/errors.hpp"

namespace gsep {
namespace {

using nlohmann::json;

json darts_to_json(const EmbeddedGraph& g, const std::vector<Dart>& darts) {
  json out = json::array();
  for (Dart d : darts) out.push_back({g.tail(d), g.head(d)});
  return out;
}

json cycle_list(const EmbeddedGraph& g, const std::vector<std::vector<Dart>>& cycles) {
  json out = json::array();
  for (const auto& c : cycles) out.push_back(darts_to_json(g, c));
  return out;
}

std::string last_kind(const PipelineLog& log) {
  if (log.stages.empty()) return "none";
  const std::string& s = log.stages.back();
  return s.substr(0, s.find(' '));
}

}  // namespace

json frame_report_to_json(const FrameReport& r) {
  return {{"n", r.n},
          {"k", r.k},
          {"genus", r.genus},
          {"faces", r.faces},
          {"max_face_weight", r.max_face_weight},
          {"max_face_size", r.max_face_size},
          {"two_connected", r.two_connected},
          {"articulation_points", r.articulation_points},
          {"conserved", r.conserved},
          {"weights_ok", r.weights_ok},
          {"face_size_ok", r.face_size_ok},
          {"face_count_ok", r.face_count_ok},
          {"face_size_ratio", r.face_size_ratio},
          {"face_count_ratio", r.face_count_ratio},
          {"max_cycle_overlaps", r.max_cycle_overlaps}};
}

json result_to_json(const SeparatorResult& result, const PipelineLog& log) {
  json removed = json::array();
  for (const auto& c : result.removed_cycles) removed.push_back(c);
  json steps = json::array();
  for (const GenusStep& s : log.genus_steps) {
    steps.push_back({{"before", s.before}, {"after", s.after}, {"separating", s.separating}});
  }
  json frames = json::array();
  for (const FrameReport& r : log.frames) frames.push_back(frame_report_to_json(r));
  return {{"separator", result.vertices},
          {"size", result.vertices.size()},
          {"alpha", result.alpha},
          {"total_weight", result.total_weight},
          {"component_weights", result.component_weights},
          {"removed_cycles", removed},
          {"size_bound_checked", result.size_bound_checked},
          {"trace", result.trace},
          {"log",
           {{"initial_genus", log.initial_genus},
            {"stages", log.stages},
            {"genus_steps", steps},
            {"ks", log.ks},
            {"fallbacks", log.fallbacks},
            {"untrimmed_size", log.untrimmed_size},
            {"size_ratio", log.size_ratio},
            {"frames", frames}}}};
}

std::vector<Vertex> separator_from_json(const json& doc) {
  try {
    return doc.at("separator").get<std::vector<Vertex>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad result document: ") + e.what());
  }
}

json frame_to_json(const EmbeddedGraph& g, const DriverOutcome& outcome) {
  json out = {{"outcome", outcome_name(outcome.kind)},
              {"stage", outcome.stage},
              {"k", outcome.k},
              {"regions", outcome.regions},
              {"loops", outcome.loops},
              {"overlapping_loops", outcome.overlapping_loops},
              {"closed_connectors", outcome.closed_connectors}};
  if (outcome.kind == OutcomeKind::NonContractibleCycle) out["cycle"] = darts_to_json(g, outcome.cycle);
  if (outcome.kind == OutcomeKind::Separator) out["separator"] = outcome.separator.vertices;
  if (!outcome.frame) return out;
  const FrameArtifacts& a = *outcome.frame;
  json loops = json::array();
  for (std::size_t i = 0; i < a.loops.size(); ++i) {
    const PreFrameLoop& l = a.loops[i];
    const LoopCensus& c = a.census[i];
    loops.push_back({{"type", l.type == LoopType::A ? "A" : "B"},
                     {"bosses", {l.left_boss, l.right_boss}},
                     {"darts", darts_to_json(g, l.darts)},
                     {"inside", c.n0},
                     {"on_loop", c.on_loop},
                     {"outside", c.outside}});
  }
  out["loops"] = loops;
  out["frame_cycles"] = cycle_list(g, a.cycles.cycles);
  json floors = json::array(), ceilings = json::array();
  for (const auto& f : a.floors_and_ceilings.floors) floors.push_back(darts_to_json(g, f.darts));
  for (const auto& c : a.floors_and_ceilings.ceilings) ceilings.push_back(darts_to_json(g, c.darts));
  out["floors"] = floors;
  out["ceilings"] = ceilings;
  const SubEmbedding& h = a.frame.graph;
  json edges = json::array();
  for (EdgeId e : h.to_parent_edge) edges.push_back({g.edge_ends(e).first, g.edge_ends(e).second});
  out["frame_graph"] = {{"vertices", h.to_parent_vertex},
                        {"edges", edges},
                        {"face_weights", a.frame.face_weight},
                        {"report", frame_report_to_json(a.frame.report)}};
  return out;
}

std::string format_float(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

ExperimentRow run_instance(const InstanceSpec& spec, const ExperimentOptions& options) {
  ExperimentRow row;
  row.instance = spec.to_string();
  row.family = family_name(spec.family);
  const auto start = std::chrono::steady_clock::now();
  const EmbeddedGraph g = make_instance(spec);
  PipelineLog log;
  const SeparatorResult r = find_separator(g, {}, &log);
  const auto stop = std::chrono::steady_clock::now();
  row.n = g.num_vertices();
  row.genus = log.initial_genus;
  row.k = log.ks.empty() ? 0 : log.ks.front();
  row.separator_size = static_cast<int>(r.vertices.size());
  row.balance = r.total_weight > 0 && !r.component_weights.empty()
                    ? static_cast<double>(r.component_weights.front()) / r.total_weight
                    : 0.0;
  row.removed_cycles = static_cast<int>(r.removed_cycles.size());
  row.outcome = last_kind(log);
  if (options.timing) row.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  if (options.verify) row.verified = verify_separator(g, r.vertices, 2.0 / 3.0).ok;
  return row;
}

std::vector<ExperimentRow> run_experiment(const std::vector<InstanceSpec>& specs,
                                          const ExperimentOptions& options) {
  std::vector<ExperimentRow> rows(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < specs.size();) {
      try {
        rows[i] = run_instance(specs[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(specs.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "family,n,g,k,separator_size,balance,removed_cycles,outcome,wall_time_ms\n";
  for (const ExperimentRow& r : rows) {
    out << r.family << ',' << r.n << ',' << r.genus << ',' << r.k << ',' << r.separator_size << ','
        << format_float(r.balance) << ',' << r.removed_cycles << ',' << r.outcome << ','
        << format_float(r.wall_time_ms) << '\n';
  }
}

}  // namespace gsep
