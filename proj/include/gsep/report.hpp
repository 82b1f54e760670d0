#pragma once

// JSON output of separator results and frame dumps, and the rows and CSV
// of scaling experiments.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsep/driver.hpp"
#include "gsep/generators.hpp"

namespace gsep {

/// Result document: separator, components, removed cycles, pipeline log.
nlohmann::json result_to_json(const SeparatorResult& result, const PipelineLog& log);

/// Reads the separator vertex list of a result document.
/// Throws Error{ParseError} when the document has no usable "separator".
std::vector<Vertex> separator_from_json(const nlohmann::json& doc);

/// Frame-branch structures of one driver run: loops, frame cycles, floors,
/// ceilings, the modified frame graph and its report.
nlohmann::json frame_to_json(const EmbeddedGraph& g, const DriverOutcome& outcome);

nlohmann::json frame_report_to_json(const FrameReport& report);

struct ExperimentRow {
  std::string instance;
  std::string family;
  int n = 0;
  int genus = 0;
  int k = 0;  // first driver k, 0 when no driver ran
  int separator_size = 0;
  double balance = 0;
  int removed_cycles = 0;
  std::string outcome;  // kind of the last pipeline step
  double wall_time_ms = 0;
  bool verified = true;
};

struct ExperimentOptions {
  bool verify = false;  // recheck every separator with alpha = 2/3
  bool timing = true;   // fill wall_time_ms; false writes 0 for comparisons
  int jobs = 1;
};

ExperimentRow run_instance(const InstanceSpec& spec, const ExperimentOptions& options);

/// Runs the specs on `jobs` worker threads; rows come back in spec order.
std::vector<ExperimentRow> run_experiment(const std::vector<InstanceSpec>& specs,
                                          const ExperimentOptions& options);

/// Header: family,n,g,k,separator_size,balance,removed_cycles,outcome,wall_time_ms
void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

/// Six significant digits, as used in every CSV float column.
std::string format_float(double x);

}  // namespace gsep
