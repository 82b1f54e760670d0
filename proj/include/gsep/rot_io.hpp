#pragma once

// ".rot" embedding text format:
//
//   n m
//   edge <id> <u> <v>          (m lines)
//   rot <v> <dart> <dart> ...  (one line per vertex)
//
// A dart token is "<edge-id>+" (from u to v) or "<edge-id>-". Tokens are
// whitespace separated and '#' starts a comment that runs to end of line.

#include <iosfwd>
#include <string>
#include <string_view>

#include "gsep/embedded_graph.hpp"

namespace gsep {

std::string to_rot_string(const EmbeddedGraph& g);
void write_rot(std::ostream& out, const EmbeddedGraph& g);

/// Throws Error{ParseError} on syntax problems and the build errors of
/// EmbeddedGraph::build on invalid rotations.
EmbeddedGraph parse_rot(std::string_view text);
EmbeddedGraph read_rot_file(const std::string& path);
void write_rot_file(const std::string& path, const EmbeddedGraph& g);

}  // namespace gsep
