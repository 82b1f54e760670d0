#pragma once

// The three-way driver on one triangulated component and the outer loop
// that accumulates a balanced separator of the whole graph.

#include <optional>
#include <string>
#include <vector>

#include "gsep/frame.hpp"
#include "gsep/separator.hpp"

namespace gsep {

enum class OutcomeKind { NonContractibleCycle, Separator, Frame };

const char* outcome_name(OutcomeKind kind);

struct DriverOptions {
  OverlapPolicy overlap = OverlapPolicy::Allow;
  FrameConstants constants;
  bool strict_frame = false;
};

/// Intermediate structures of the frame branch, kept for dumps.
struct FrameArtifacts {
  std::vector<PreFrameLoop> loops;
  std::vector<LoopCensus> census;
  FrameCycles cycles;
  FloorsAndCeilings floors_and_ceilings;
  FrameGraph frame;
};

struct DriverOutcome {
  OutcomeKind kind = OutcomeKind::Frame;
  std::string stage;
  int k = 0;
  std::vector<Dart> cycle;
  SeparatorResult separator;
  std::optional<FrameArtifacts> frame;
  int regions = 0;
  int loops = 0;
  int overlapping_loops = 0;
  int closed_connectors = 0;
};

/// Runs, in order: k-maximal independent set and Voronoi regions; the
/// two-region cycle scan, where a separating cycle that already balances is
/// returned as a separator; every pre-frame loop as a separator; loops with a
/// large inside; every core as a separator; small level cycles that are not
/// contractible; and finally the modified frame graph. Errors from a stage
/// are rethrown with the stage name prefixed.
DriverOutcome three_way_driver(const EmbeddedGraph& g, int k, const DriverOptions& options = {});

/// Separator of a graph from its modified frame graph: a weighted separator
/// of the frame's dual, lifted to all boundary vertices of the chosen faces.
std::vector<Vertex> separator_from_frame(const FrameGraph& frame);

struct FindOptions {
  double alpha = 2.0 / 3.0;
  std::optional<int> k;   // overrides the per-component schedule
  DriverOptions driver;
  double size_constant = 8.0;  // reported size is compared with this times sqrt(g n)
  int iteration_limit = 0;     // 0 picks a limit from n
  bool trim = true;            // drop separator vertices not needed for balance
};

struct GenusStep {
  int before = 0;
  int after = 0;
  bool separating = false;
  std::vector<Vertex> separator_before;  // S just before the cycle was added, sorted
};

struct PipelineLog {
  int initial_genus = 0;
  std::vector<std::string> stages;  // outcome of every iteration
  std::vector<GenusStep> genus_steps;
  std::vector<FrameReport> frames;
  std::vector<int> ks;
  int fallbacks = 0;
  int untrimmed_size = 0;
  double size_ratio = 0;  // |S| / sqrt(max(g,1) n)
};

/// Outer loop: while some component of G - S has more than alpha n
/// vertices, triangulate it and cut it with the planar separator (genus 0)
/// or the driver, falling back to the surface separator when a branch makes
/// no progress. The collected set is finally trimmed to an inclusion-minimal
/// separator unless disabled. Throws Error{IterationLimitExceeded} as a safety valve.
SeparatorResult find_separator(const EmbeddedGraph& g, const FindOptions& options = {},
                               PipelineLog* log = nullptr);

}  // namespace gsep
