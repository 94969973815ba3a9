#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pebbling/domination.hpp"
#include "pebbling/graph.hpp"

namespace pebbling {

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline Graph load_edge_list(const std::string& path);

namespace detail {

// Grammar:
//   expr := family '(' int ')' | 'middle' '(' expr ')'
//         | 'gadget' '(' expr ')' | 'file' '(' path ')'
class GraphExprParser {
 public:
  explicit GraphExprParser(const std::string& s) : s_(s) {}

  Graph parse() {
    Graph g = parse_expr();
    skip_ws();
    if (pos_ != s_.size())
      throw ParseError("unexpected trailing input at '" + rest() + "'");
    return g;
  }

 private:
  Graph parse_expr() {
    std::string name = parse_ident();
    expect('(');
    Graph result = [&]() -> Graph {
      if (name == "path")
        return build_generator({GeneratorSpec::Family::Path, parse_int()});
      if (name == "cycle")
        return build_generator({GeneratorSpec::Family::Cycle, parse_int()});
      if (name == "complete")
        return build_generator({GeneratorSpec::Family::Complete, parse_int()});
      if (name == "wheel")
        return build_generator({GeneratorSpec::Family::Wheel, parse_int()});
      if (name == "fan")
        return build_generator({GeneratorSpec::Family::Fan, parse_int()});
      if (name == "middle") return middle_graph(parse_expr());
      if (name == "gadget") return build_np_gadget(parse_expr());
      if (name == "file") return load_edge_list(parse_path());
      throw ParseError("unknown graph constructor '" + name + "'");
    }();
    expect(')');
    return result;
  }

  std::string parse_ident() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) throw ParseError("expected a name at '" + rest() + "'");
    return s_.substr(start, pos_ - start);
  }

  int parse_int() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_)
      throw ParseError("expected an integer at '" + rest() + "'");
    return std::stoi(s_.substr(start, pos_ - start));
  }

  std::string parse_path() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ')') ++pos_;
    std::string p = s_.substr(start, pos_ - start);
    while (!p.empty() && std::isspace(static_cast<unsigned char>(p.back())))
      p.pop_back();
    if (p.empty()) throw ParseError("expected a file path");
    return p;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "' at '" + rest() + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  std::string rest() const {
    return pos_ >= s_.size() ? std::string("<end>") : s_.substr(pos_);
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace detail

/// Plain-text edge list: one "u v" pair of 0-based indices per line; the
/// vertex count is the maximum index plus one. Blank lines and lines
/// starting with '#' are skipped.
inline Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list file '" + path + "'");
  std::vector<std::pair<int, int>> edges;
  int max_index = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::istringstream ls(trimmed);
    int u, v;
    if (!(ls >> u >> v) || u < 0 || v < 0)
      throw ParseError("bad edge at " + path + ":" + std::to_string(lineno) +
                       ": '" + line + "'");
    edges.emplace_back(u, v);
    max_index = std::max({max_index, u, v});
  }
  Graph g(max_index + 1);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Graph parse_graph_expr(const std::string& expr) {
  return detail::GraphExprParser(expr).parse();
}

}  // namespace pebbling
