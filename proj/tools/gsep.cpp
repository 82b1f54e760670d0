#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsep/driver.hpp"
#include "gsep/errors.hpp"
#include "gsep/generators.hpp"
#include "gsep/report.hpp"
#include "gsep/rot_io.hpp"

using namespace gsep;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

std::optional<int> parse_k(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const int k = std::stoi(text, &used);
    if (used == text.size() && k >= 1) return k;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::ParseError, "--k expects 'auto' or a positive integer, got '" + text + "'");
}

// The component the pipeline would cut first, triangulated.
EmbeddedGraph largest_component(const EmbeddedGraph& g) {
  const auto comps = connected_components(g);
  std::vector<int> size(comps.count, 0);
  for (int c : comps.of) ++size[c];
  const int big = static_cast<int>(std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<char> keep(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) keep[v] = comps.of[v] == big;
  return triangulate(simplify(induced_embedding(g, keep).graph).graph);
}

int cmd_gen(const std::string& instance, const std::string& output) {
  const EmbeddedGraph g = make_instance(InstanceSpec::parse(instance));
  emit(output, to_rot_string(g));
  return kOk;
}

int cmd_separate(const std::string& input, double alpha, const std::string& k_text,
                 const std::string& dump_frame, const std::string& output) {
  const EmbeddedGraph g = read_rot_file(input);
  FindOptions options;
  options.alpha = alpha;
  options.k = parse_k(k_text);
  PipelineLog log;
  const SeparatorResult result = find_separator(g, options, &log);
  emit(output, result_to_json(result, log).dump(2) + "\n");
  if (!dump_frame.empty() && g.num_vertices() > 0) {
    const EmbeddedGraph h = largest_component(g);
    const int genus = std::max(1, euler_genus(h).total);
    const int k = options.k.value_or(
        std::max(4, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(h.num_vertices()) / genus)))));
    emit(dump_frame, frame_to_json(h, three_way_driver(h, k, options.driver)).dump(2) + "\n");
  }
  return verify_separator(g, result.vertices, alpha).ok ? kOk : kVerifyFailed;
}

int cmd_verify(const std::string& input, const std::string& separator_path, double alpha) {
  const EmbeddedGraph g = read_rot_file(input);
  std::ifstream in(separator_path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + separator_path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, separator_path + ": " + e.what());
  }
  const std::vector<Vertex> s = separator_from_json(doc);
  for (Vertex v : s) {
    if (v < 0 || v >= g.num_vertices()) {
      throw Error(ErrorCode::IndexOutOfRange, "separator vertex " + std::to_string(v) + " out of range");
    }
  }
  const SeparatorReport r = verify_separator(g, s, alpha);
  const nlohmann::json report = {{"ok", r.ok},
                                 {"alpha", alpha},
                                 {"separator_size", s.size()},
                                 {"total_weight", r.total_weight},
                                 {"max_component", r.max_component},
                                 {"balance", r.balance},
                                 {"component_weights", r.component_weights}};
  std::cout << report.dump(2) << "\n";
  return r.ok ? kOk : kVerifyFailed;
}

int cmd_experiment(const std::vector<std::string>& instances, const std::string& output, bool verify,
                   int jobs, bool no_timing) {
  std::vector<InstanceSpec> specs;
  for (const auto& s : instances) specs.push_back(InstanceSpec::parse(s));
  ExperimentOptions options;
  options.verify = verify;
  options.timing = !no_timing;
  options.jobs = jobs;
  const auto rows = run_experiment(specs, options);
  std::ostringstream csv;
  write_csv(csv, rows);
  emit(output, csv.str());
  for (const auto& r : rows) {
    if (!r.verified) return kVerifyFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced separators of graphs embedded on orientable surfaces"};
  app.require_subcommand(1);

  std::string instance, input, output, dump_frame, separator_path, k_text = "auto";
  std::vector<std::string> instances;
  double alpha = 2.0 / 3.0;
  bool verify = false, no_timing = false;
  int jobs = 1;

  auto* gen = app.add_subcommand("gen", "Write a generated instance in .rot format");
  gen->add_option("--instance", instance,
                  "planar-grid:RxC | torus-grid:RxC | genus-sum:G:P | random-triangulation:G:N:SEED")
      ->required();
  gen->add_option("--output", output, "Output path, stdout when omitted");

  auto* sep = app.add_subcommand("separate", "Compute a balanced separator of a .rot graph");
  sep->add_option("--input", input, "Input .rot file")->required();
  sep->add_option("--alpha", alpha, "Balance target")->check(CLI::Range(0.5, 1.0));
  sep->add_option("--k", k_text, "Region size: auto or a positive integer");
  sep->add_option("--dump-frame", dump_frame, "Write the driver structures of the largest component as JSON");
  sep->add_option("--output", output, "Result JSON path, stdout when omitted");

  auto* ver = app.add_subcommand("verify", "Check a separator against a graph");
  ver->add_option("--input", input, "Input .rot file")->required();
  ver->add_option("--separator", separator_path, "Result JSON with a \"separator\" list")->required();
  ver->add_option("--alpha", alpha, "Balance target")->check(CLI::Range(0.0, 1.0));

  auto* exp = app.add_subcommand("experiment", "Run generated instances and write CSV");
  exp->add_option("--instance", instances, "Instance spec, repeatable");
  exp->add_option("--output", output, "CSV path, stdout when omitted");
  exp->add_flag("--verify", verify, "Recheck every separator; exit 1 on failure");
  exp->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  exp->add_flag("--no-timing", no_timing, "Write 0 for wall time so runs compare byte for byte");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*gen) return cmd_gen(instance, output);
    if (*sep) return cmd_separate(input, alpha, k_text, dump_frame, output);
    if (*ver) return cmd_verify(input, separator_path, alpha);
    if (*exp) return cmd_experiment(instances, output, verify, jobs, no_timing);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
