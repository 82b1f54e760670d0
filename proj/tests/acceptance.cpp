// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "gsep/driver.hpp"
#include "gsep/errors.hpp"
#include "gsep/generators.hpp"
#include "gsep/planarity.hpp"
#include "gsep/report.hpp"
#include "gsep/rot_io.hpp"
#include "gsep/voronoi.hpp"
#include "oracles.hpp"

using namespace gsep;

namespace {

constexpr double kAlpha = 2.0 / 3.0;

struct Run {
  InstanceSpec spec;
  EmbeddedGraph g;
  SeparatorResult result;
  PipelineLog log;
  bool ok = false;
  std::string error;
};

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void fail(const std::string& what) {
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

bool report(int id, const char* name, Verdict& v) {
  std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "): " << v.detail.str()
            << "\n";
  for (const auto& f : v.failures) std::cout << "    " << f << "\n";
  return v.pass;
}

template <class F>
void parallel_for(std::size_t count, F&& body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) body(i);
  };
  const unsigned jobs = std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

std::vector<InstanceSpec> validity_corpus() {
  std::vector<std::string> names;
  for (int s = 5; s <= 64; ++s) names.push_back("planar-grid:" + std::to_string(s) + "x" + std::to_string(s));
  for (int s = 3; s <= 64; ++s) names.push_back("torus-grid:" + std::to_string(s) + "x" + std::to_string(s));
  for (const char* r : {"planar-grid:5x64", "planar-grid:16x48", "torus-grid:3x64", "torus-grid:8x32",
                        "torus-grid:20x50"}) {
    names.push_back(r);
  }
  for (int g = 1; g <= 3; ++g) {
    for (int p : {3, 4, 6, 8, 12, 16, 24}) names.push_back("genus-sum:" + std::to_string(g) + ":" + std::to_string(p));
  }
  for (int g = 0; g <= 3; ++g) {
    for (int s = 1; s <= 25; ++s) {
      const int n = 100 + 80 * s;
      names.push_back("random-triangulation:" + std::to_string(g) + ":" + std::to_string(n) + ":" +
                      std::to_string(s));
    }
  }
  std::vector<InstanceSpec> out;
  for (const auto& n : names) out.push_back(InstanceSpec::parse(n));
  return out;
}

std::vector<Run> run_all(const std::vector<InstanceSpec>& specs) {
  std::vector<Run> runs(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) {
    Run& r = runs[i];
    r.spec = specs[i];
    try {
      r.g = make_instance(r.spec);
      r.result = find_separator(r.g, {}, &r.log);
      r.ok = verify_separator(r.g, r.result.vertices, kAlpha).ok;
      if (!r.ok) r.error = "verify_separator rejected the output";
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  });
  return runs;
}

// 1: every output balances.
bool criterion_validity(const std::vector<Run>& runs, double seconds) {
  Verdict v;
  std::map<std::string, int> per_family;
  double worst = 0, worst_ratio = 0;
  int fallbacks = 0;
  for (const Run& r : runs) {
    ++per_family[family_name(r.spec.family)];
    fallbacks += r.log.fallbacks;
    if (!r.ok) {
      v.fail(r.spec.to_string() + ": " + r.error);
      continue;
    }
    if (r.result.total_weight > 0 && !r.result.component_weights.empty()) {
      worst = std::max(worst, static_cast<double>(r.result.component_weights.front()) / r.result.total_weight);
    }
    worst_ratio = std::max(worst_ratio, r.log.size_ratio);
  }
  if (seconds >= 300) v.fail("runtime " + format_float(seconds) + " s exceeds 300 s");
  v.detail << runs.size() << " instances (";
  const char* sep = "";
  for (auto [f, c] : per_family) {
    v.detail << sep << f << " " << c;
    sep = ", ";
  }
  v.detail << "), " << fallbacks << " fallbacks, worst balance " << format_float(worst) << ", max |S|/sqrt(gn) " << format_float(worst_ratio)
           << ", " << format_float(seconds) << " s";
  return report(1, "separator validity", v);
}

// 2: log-log slope of |S| against n on square torus grids.
bool criterion_scaling(const std::vector<Run>& runs) {
  Verdict v;
  std::vector<std::pair<double, double>> pts;
  for (int side : {8, 16, 32, 64}) {
    const std::string name = "torus-grid:" + std::to_string(side) + "x" + std::to_string(side);
    for (const Run& r : runs) {
      if (r.spec.to_string() == name && r.ok) {
        pts.emplace_back(std::log(r.g.num_vertices()), std::log(r.result.vertices.size()));
        v.detail << "n=" << r.g.num_vertices() << " |S|=" << r.result.vertices.size() << "; ";
      }
    }
  }
  if (pts.size() != 4) {
    v.fail("missing torus runs");
    return report(2, "scaling", v);
  }
  double mx = 0, my = 0;
  for (auto [x, y] : pts) mx += x / 4, my += y / 4;
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) sxy += (x - mx) * (y - my), sxx += (x - mx) * (x - mx);
  const double slope = sxy / sxx;
  v.detail << "slope " << format_float(slope) << " (allowed 0.35..0.65)";
  if (slope < 0.35 || slope > 0.65) v.fail("slope out of range");
  return report(2, "scaling", v);
}

// 3: every cycle removal lowers the genus of G - S, at most g removals.
bool criterion_genus(const std::vector<Run>& runs) {
  Verdict v;
  int steps = 0, runs_with_steps = 0, separating = 0;
  for (const Run& r : runs) {
    if (!r.ok) continue;
    const int g0 = oracle::induced_genus(r.g, {});
    if (g0 != r.log.initial_genus) v.fail(r.spec.to_string() + ": initial genus mismatch");
    if (static_cast<int>(r.log.genus_steps.size()) > g0) {
      v.fail(r.spec.to_string() + ": " + std::to_string(r.log.genus_steps.size()) + " removals for genus " +
             std::to_string(g0));
    }
    if (r.log.genus_steps.size() != r.result.removed_cycles.size()) {
      v.fail(r.spec.to_string() + ": step and cycle counts differ");
      continue;
    }
    runs_with_steps += !r.log.genus_steps.empty();
    for (std::size_t i = 0; i < r.log.genus_steps.size(); ++i) {
      const GenusStep& s = r.log.genus_steps[i];
      std::vector<Vertex> after = s.separator_before;
      after.insert(after.end(), r.result.removed_cycles[i].begin(), r.result.removed_cycles[i].end());
      const int before_genus = oracle::induced_genus(r.g, s.separator_before);
      const int after_genus = oracle::induced_genus(r.g, after);
      ++steps;
      separating += s.separating;
      if (after_genus >= before_genus || before_genus != s.before || after_genus != s.after) {
        v.fail(r.spec.to_string() + ": step " + std::to_string(i) + " genus " + std::to_string(before_genus) +
               " -> " + std::to_string(after_genus));
      }
    }
  }
  v.detail << steps << " cycle removals over " << runs_with_steps << " runs, " << separating
           << " of them separating, each strictly lowering the genus";
  if (steps == 0) v.fail("no cycle removal was exercised");
  return report(3, "genus reduction", v);
}

// 4: modified frame graph properties.
bool criterion_frame(const std::vector<Run>& runs) {
  Verdict v;
  int frames = 0;
  double max_size_ratio = 0, max_count_ratio = 0, max_weight_fraction = 0;
  int max_overlaps = 0;
  for (const Run& r : runs) {
    for (const FrameReport& f : r.log.frames) {
      ++frames;
      max_size_ratio = std::max(max_size_ratio, f.face_size_ratio);
      max_overlaps = std::max(max_overlaps, f.max_cycle_overlaps);
      max_count_ratio = std::max(max_count_ratio, f.face_count_ratio);
      max_weight_fraction = std::max(max_weight_fraction, static_cast<double>(f.max_face_weight) / f.n);
      std::string bad;
      if (!f.weights_ok) bad += " face weight";
      if (!f.two_connected) bad += " 2-connectivity (" + std::to_string(f.articulation_points) + " cut vertices)";
      if (!f.face_size_ok) bad += " face size";
      if (!f.face_count_ok) bad += " face count";
      if (!f.conserved) bad += " conservation";
      if (!bad.empty()) v.fail(r.spec.to_string() + " (n=" + std::to_string(f.n) + ", k=" + std::to_string(f.k) + "):" + bad);
    }
  }
  v.detail << frames << " frame graphs; max face weight " << format_float(max_weight_fraction)
           << " n (< 1/3); max face size " << format_float(max_size_ratio) << " sqrt(k) (<= 23); face count "
           << format_float(max_count_ratio) << " (n/k+g) (<= 50); at most " << max_overlaps
           << " floors/ceilings on one frame cycle";
  if (frames == 0) v.fail("no run reached the frame branch");
  return report(4, "frame graph properties", v);
}

// 5: fast predicates against brute force on small embeddings.
bool criterion_oracles() {
  Verdict v;
  std::mt19937_64 rng(5150);
  int graphs = 0, cycles = 0, noncontractible = 0, unions = 0, found = 0, skipped = 0;
  while (graphs < 600) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const int m = n - 1 + static_cast<int>(rng() % 7);
    const EmbeddedGraph g = oracle::random_rotation_system(rng, n, m);
    if (g.num_faces() > 12) continue;
    ++graphs;
    const ContractibilityOracle fast(g);
    for (const auto& c : oracle::all_simple_cycles(g)) {
      ++cycles;
      const bool want = oracle::cut_surface_contractible(g, c);
      noncontractible += !want;
      if (is_contractible(g, c) != want || fast.is_contractible(c) != want) {
        v.fail("contractibility mismatch on graph " + std::to_string(graphs));
      }
    }
    for (int k : {1, 2, 3}) {
      if (k >= n) continue;
      const auto vd = voronoi_regions(g, k_max_independent_set(g, k), k);
      std::vector<std::pair<int, int>> pairs;
      for (const auto& pr : adjacent_regions(g, vd)) pairs.emplace_back(pr.first, pr.second);
      for (int i = 0; i < vd.num_regions(); ++i) pairs.emplace_back(i, i);
      for (auto [a, b] : pairs) {
        std::vector<char> mask(n);
        for (Vertex x = 0; x < n; ++x) mask[x] = vd.region_of[x] == a || vd.region_of[x] == b;
        bool complete = true;
        const bool exists = oracle::exists_noncontractible_cycle(g, mask, complete);
        const auto c = noncontractible_in_two_regions(g, vd, a, b, fast);
        if (!complete) {
          ++skipped;
          continue;
        }
        ++unions;
        if (c.has_value() != exists) v.fail("two-region search disagrees on graph " + std::to_string(graphs));
        if (c) {
          ++found;
          if (oracle::cut_surface_contractible(g, *c)) v.fail("two-region search returned a contractible cycle");
        }
      }
    }
  }
  v.detail << graphs << " embeddings with <= 12 faces, " << cycles << " cycles (" << noncontractible
           << " non-contractible); " << unions << " region unions (" << found << " with a cycle, " << skipped
           << " beyond enumeration)";
  if (skipped > 0) v.fail("enumeration incomplete on some unions");
  return report(5, "oracle equivalence", v);
}

void check_mis(const EmbeddedGraph& g, const VoronoiDecomposition& vd, Verdict& v, const std::string& tag) {
  const int n = g.num_vertices();
  std::vector<int> owner(n, -1);
  for (int i = 0; i < vd.num_regions(); ++i) {
    for (Vertex x : vd.neighborhoods[i].vertices) {
      if (owner[x] >= 0) v.fail(tag + ": k-neighborhoods of two bosses intersect");
      owner[x] = i;
    }
  }
  for (Vertex x = 0; x < n; ++x) {
    if (std::binary_search(vd.bosses.begin(), vd.bosses.end(), x)) continue;
    bool hit = false;
    for (Vertex y : k_neighborhood(g, x, vd.k).vertices) hit = hit || owner[y] >= 0;
    if (!hit) v.fail(tag + ": independent set is not maximal at " + std::to_string(x));
  }
}

void check_regions(const EmbeddedGraph& g, const VoronoiDecomposition& vd, Verdict& v, const std::string& tag) {
  const int n = g.num_vertices();
  std::vector<int> seen_in(n, 0);
  for (int i = 0; i < vd.num_regions(); ++i) {
    for (Vertex x : vd.members[i]) ++seen_in[x];
    std::vector<char> reached(n, 0);
    std::vector<Vertex> stack{vd.bosses[i]};
    reached[vd.bosses[i]] = 1;
    std::size_t count = 0;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      ++count;
      for (Dart d : g.rotation(u)) {
        const Vertex w = g.head(d);
        if (!reached[w] && vd.region_of[w] == i) {
          reached[w] = 1;
          stack.push_back(w);
        }
      }
    }
    if (count != vd.members[i].size()) v.fail(tag + ": region " + std::to_string(i) + " is disconnected");
  }
  for (Vertex x = 0; x < n; ++x) {
    if (seen_in[x] != 1) v.fail(tag + ": vertex " + std::to_string(x) + " not in exactly one region");
    if (!std::binary_search(vd.bosses.begin(), vd.bosses.end(), x) &&
        vd.boss_of(x) != boss_by_definition(g, vd.bosses, vd.neighborhoods, x)) {
      v.fail(tag + ": boss of " + std::to_string(x) + " differs from the definition");
    }
  }
}

// 6: structural validators.
bool criterion_structure() {
  std::vector<std::string> names = {"planar-grid:12x12", "planar-grid:20x20", "torus-grid:8x8", "torus-grid:16x16",
                                    "torus-grid:24x24", "torus-grid:6x30"};
  for (int g = 1; g <= 3; ++g) {
    for (int p : {6, 8}) names.push_back("genus-sum:" + std::to_string(g) + ":" + std::to_string(p));
  }
  for (int g = 0; g <= 3; ++g) {
    for (int s = 1; s <= 3; ++s) {
      names.push_back("random-triangulation:" + std::to_string(g) + ":300:" + std::to_string(s));
    }
  }
  struct Job {
    std::string name;
    int k;
  };
  std::vector<Job> jobs;
  for (const auto& nm : names) {
    for (int k : {4, 9, 16}) jobs.push_back({nm, k});
  }
  std::vector<Verdict> verdicts(jobs.size());
  std::vector<std::array<long, 5>> counts(jobs.size(), {0, 0, 0, 0, 0});
  parallel_for(jobs.size(), [&](std::size_t j) {
    Verdict& v = verdicts[j];
    const std::string tag = jobs[j].name + " k=" + std::to_string(jobs[j].k);
    try {
      const EmbeddedGraph g = triangulate(simplify(make_instance(InstanceSpec::parse(jobs[j].name))).graph);
      const int n = g.num_vertices();
      const int k = jobs[j].k;
      const auto vd = voronoi_regions(g, k_max_independent_set(g, k), k);
      check_mis(g, vd, v, tag);
      check_regions(g, vd, v, tag);
      counts[j][0] = vd.num_regions();
      const ContractibilityOracle oracle(g);
      if (scan_region_pairs(g, vd, oracle)) return;
      const auto bs = branch_structure(g, vd);
      const auto loops = pre_frame_loops(g, vd, bs);
      std::vector<LoopCensus> census;
      for (const PreFrameLoop& l : loops) {
        std::set<std::int32_t> ids;
        for (std::size_t i = 0; i < l.darts.size(); ++i) {
          if (g.head(l.darts[i]) != g.tail(l.darts[(i + 1) % l.darts.size()])) v.fail(tag + ": loop not closed");
          if (!ids.insert(l.darts[i].id()).second) v.fail(tag + ": loop repeats a dart");
        }
        census.push_back(loop_inside_census(g, l));
        const LoopCensus& c = census.back();
        if (c.n0 + c.on_loop + c.outside != n || c.n11 + c.n12 != c.outside) {
          v.fail(tag + ": loop census does not add up to n");
        }
      }
      counts[j][1] = static_cast<long>(loops.size());
      const auto fc = frame_cycles(g, loops, census);
      for (const auto& c : fc.cycles) {
        try {
          validate_cycle(g, c);
        } catch (const Error&) {
          v.fail(tag + ": frame cycle is not simple");
        }
      }
      counts[j][2] = static_cast<long>(fc.cycles.size());
      if (oracle.genus() == 0) return;
      const DriverOutcome out = three_way_driver(g, k);
      if (out.frame) {
        Weight total = 0;
        for (Weight w : out.frame->frame.face_weight) total += w;
        if (total + out.frame->frame.graph.graph.num_vertices() != n) {
          v.fail(tag + ": frame face weights do not conserve vertices");
        }
        ++counts[j][3];
      }
      ++counts[j][4];
    } catch (const std::exception& e) {
      v.fail(tag + ": " + e.what());
    }
  });
  Verdict all;
  std::array<long, 5> sum{0, 0, 0, 0, 0};
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    for (int i = 0; i < 5; ++i) sum[i] += counts[j][i];
    for (const auto& f : verdicts[j].failures) all.fail(f);
    if (!verdicts[j].pass && verdicts[j].failures.empty()) all.fail(jobs[j].name);
  }
  all.detail << jobs.size() << " instance/k pairs, " << sum[0] << " regions, " << sum[1] << " loops, " << sum[2]
             << " frame cycles, " << sum[4] << " positive-genus pairs reaching the driver, " << sum[3] << " frame graphs";
  return report(6, "structural validators", all);
}

// 7: byte-identical reruns.
bool criterion_determinism(const std::vector<Run>& runs) {
  Verdict v;
  std::vector<InstanceSpec> specs;
  for (const char* s : {"torus-grid:16x16", "torus-grid:32x32", "planar-grid:20x20", "genus-sum:3:8",
                        "random-triangulation:2:900:7", "random-triangulation:0:500:3"}) {
    specs.push_back(InstanceSpec::parse(s));
  }
  int compared = 0;
  for (const InstanceSpec& s : specs) {
    if (to_rot_string(make_instance(s)) != to_rot_string(make_instance(s))) v.fail(s.to_string() + ": instance differs");
    const EmbeddedGraph g = make_instance(s);
    PipelineLog la, lb;
    const auto a = find_separator(g, {}, &la);
    const auto b = find_separator(g, {}, &lb);
    if (result_to_json(a, la).dump() != result_to_json(b, lb).dump()) v.fail(s.to_string() + ": result differs");
    for (const Run& r : runs) {
      if (r.spec.to_string() == s.to_string() && r.result.vertices != a.vertices) {
        v.fail(s.to_string() + ": threaded run differs");
      }
    }
    ++compared;
  }
  ExperimentOptions serial;
  serial.timing = false;
  ExperimentOptions threaded = serial;
  threaded.jobs = 4;
  std::ostringstream csv_a, csv_b;
  write_csv(csv_a, run_experiment(specs, serial));
  write_csv(csv_b, run_experiment(specs, threaded));
  if (csv_a.str() != csv_b.str()) v.fail("CSV differs between serial and threaded runs");
  v.detail << compared << " instances: generator bytes, result JSON and separators identical; CSV of "
           << specs.size() << " rows identical across 1 and 4 workers";
  return report(7, "determinism", v);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const auto runs = run_all(validity_corpus());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = true;
  ok &= criterion_validity(runs, seconds);
  ok &= criterion_scaling(runs);
  ok &= criterion_genus(runs);
  ok &= criterion_frame(runs);
  ok &= criterion_oracles();
  ok &= criterion_structure();
  ok &= criterion_determinism(runs);
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "acceptance total " << format_float(total) << " s\n";
  return ok ? 0 : 1;
}
