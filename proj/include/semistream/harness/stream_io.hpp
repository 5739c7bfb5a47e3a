#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "semistream/harness/stream.hpp"

namespace semistream {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <class T>
T parse_uint(std::string_view tok, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw MalformedStream("line " + std::to_string(line_no) + ": expected a non-negative integer, got '" +
                          std::string(tok) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses the text stream format:
///
///     # comment
///     n 5 model turn
///     + 0 1
///     - 0 1
///
/// Everything after '#' on a line is ignored. Throws MalformedStream with
/// the offending line number.
inline GraphStream read_stream(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0;
  StreamModel model = StreamModel::InsertionOnly;
  std::vector<EdgeUpdate> updates;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const auto tok = detail::split_ws(view);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 4 || tok[0] != "n" || tok[2] != "model") {
        throw MalformedStream("line " + std::to_string(line_no) + ": expected header 'n <N> model <ins|turn>'");
      }
      n = detail::parse_uint<std::size_t>(tok[1], line_no);
      if (tok[3] == "ins") {
        model = StreamModel::InsertionOnly;
      } else if (tok[3] == "turn") {
        model = StreamModel::Turnstile;
      } else {
        throw MalformedStream("line " + std::to_string(line_no) + ": unknown model '" + std::string(tok[3]) + "'");
      }
      have_header = true;
      continue;
    }
    if (tok.size() != 3 || (tok[0] != "+" && tok[0] != "-")) {
      throw MalformedStream("line " + std::to_string(line_no) + ": expected '+ u v' or '- u v'");
    }
    const auto u = detail::parse_uint<NodeId>(tok[1], line_no);
    const auto v = detail::parse_uint<NodeId>(tok[2], line_no);
    updates.push_back({u, v, tok[0] == "+" ? 1 : -1});
  }
  if (!have_header) throw MalformedStream("missing stream header");
  try {
    return GraphStream(n, std::move(updates), model);
  } catch (const MalformedStream& e) {
    throw MalformedStream(std::string("invalid stream: ") + e.what());
  }
}

inline GraphStream read_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stream file '" + path + "'");
  return read_stream(in);
}

inline GraphStream parse_stream(const std::string& text) {
  std::istringstream in(text);
  return read_stream(in);
}

inline void write_stream(std::ostream& out, const GraphStream& s) {
  out << "n " << s.num_nodes() << " model " << to_string(s.model()) << '\n';
  for (const auto& up : s.updates_unmetered()) {
    out << (up.sign > 0 ? '+' : '-') << ' ' << up.u << ' ' << up.v << '\n';
  }
}

/// Insertion-only edge list in the stream format (used for certificates).
inline void write_edge_list(std::ostream& out, std::size_t n, const std::vector<Edge>& edges) {
  out << "n " << n << " model ins\n";
  for (const Edge& e : edges) out << "+ " << e.u << ' ' << e.v << '\n';
}

}  // namespace semistream
