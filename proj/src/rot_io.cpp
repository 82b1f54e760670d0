#include "gsep/rot_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "gsep/errors.hpp"

namespace gsep {
namespace {

std::string dart_token(Dart d) {
  return std::to_string(d.edge()) + (d.forward() ? "+" : "-");
}

long parse_int(std::string_view tok, int line) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) +
                                           ": expected integer, got '" +
                                           std::string(tok) + "'");
  }
  return value;
}

struct Line {
  int number = 0;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

}  // namespace

void write_rot(std::ostream& out, const EmbeddedGraph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edge_ends(e);
    out << "edge " << e << ' ' << u << ' ' << v << '\n';
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    out << "rot " << v;
    for (Dart d : g.rotation(v)) out << ' ' << dart_token(d);
    out << '\n';
  }
}

std::string to_rot_string(const EmbeddedGraph& g) {
  std::ostringstream out;
  write_rot(out, g);
  return out.str();
}

EmbeddedGraph parse_rot(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw Error(ErrorCode::ParseError, "empty input");
  const Line& header = lines.front();
  if (header.tokens.size() != 2) {
    throw Error(ErrorCode::ParseError, "header must be 'n m'");
  }
  const long n = parse_int(header.tokens[0], header.number);
  const long m = parse_int(header.tokens[1], header.number);
  if (n < 0 || m < 0) throw Error(ErrorCode::ParseError, "negative sizes in header");

  std::vector<std::pair<Vertex, Vertex>> ends(m, {kNone, kNone});
  std::vector<char> edge_seen(m, 0);
  std::vector<std::vector<Dart>> rot(n);
  std::vector<char> rot_seen(n, 0);

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const auto& t = line.tokens;
    const std::string where = "line " + std::to_string(line.number);
    if (t[0] == "edge") {
      if (t.size() != 4) throw Error(ErrorCode::ParseError, where + ": edge needs 3 fields");
      long id = parse_int(t[1], line.number);
      if (id < 0 || id >= m) throw Error(ErrorCode::IndexOutOfRange, where + ": edge id");
      if (edge_seen[id]) throw Error(ErrorCode::ParseError, where + ": duplicate edge id");
      edge_seen[id] = 1;
      ends[id] = {static_cast<Vertex>(parse_int(t[2], line.number)),
                  static_cast<Vertex>(parse_int(t[3], line.number))};
    } else if (t[0] == "rot") {
      if (t.size() < 2) throw Error(ErrorCode::ParseError, where + ": rot needs a vertex");
      long v = parse_int(t[1], line.number);
      if (v < 0 || v >= n) throw Error(ErrorCode::IndexOutOfRange, where + ": vertex id");
      if (rot_seen[v]) throw Error(ErrorCode::ParseError, where + ": duplicate rot line");
      rot_seen[v] = 1;
      for (std::size_t i = 2; i < t.size(); ++i) {
        std::string_view tok = t[i];
        if (tok.size() < 2 || (tok.back() != '+' && tok.back() != '-')) {
          throw Error(ErrorCode::ParseError, where + ": bad dart token '" + std::string(tok) + "'");
        }
        long e = parse_int(tok.substr(0, tok.size() - 1), line.number);
        if (e < 0 || e >= m) throw Error(ErrorCode::IndexOutOfRange, where + ": dart edge id");
        rot[v].push_back(Dart(static_cast<EdgeId>(e), tok.back() == '+'));
      }
    } else {
      throw Error(ErrorCode::ParseError, where + ": unknown record '" + std::string(t[0]) + "'");
    }
  }
  for (long e = 0; e < m; ++e) {
    if (!edge_seen[e]) throw Error(ErrorCode::ParseError, "edge " + std::to_string(e) + " missing");
  }
  return EmbeddedGraph::build(static_cast<int>(n), std::move(ends), std::move(rot));
}

EmbeddedGraph read_rot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_rot(buf.str());
}

void write_rot_file(const std::string& path, const EmbeddedGraph& g) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  write_rot(out, g);
}

}  // namespace gsep
