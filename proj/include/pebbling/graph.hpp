#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pebbling/version.hpp"

namespace pebbling {

/// Role of a vertex. Graphs produced by middle_graph() tag the inserted
/// edge-vertices so later passes can tell them apart from the carrier
/// vertices of the underlying graph.
struct VertexLabel {
  enum class Kind { Original, EdgeVertex, Hub, Plain };
  Kind kind = Kind::Plain;
  int i = -1;  // Original: carrier index. EdgeVertex: endpoint indices (i<j).
  int j = -1;
  std::string name;
};

/// Undirected simple graph on vertices 0..n-1, immutable after construction.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : adj_(n), labels_(n) {
    for (int v = 0; v < n; ++v) {
      labels_[v].kind = VertexLabel::Kind::Plain;
      labels_[v].name = "v" + std::to_string(v);
    }
  }

  int vertex_count() const { return static_cast<int>(adj_.size()); }

  int edge_count() const {
    int deg_sum = 0;
    for (const auto& nb : adj_) deg_sum += static_cast<int>(nb.size());
    return deg_sum / 2;
  }

  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop rejected");
    if (has_edge(u, v)) return;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    std::sort(adj_[u].begin(), adj_[u].end());
    std::sort(adj_[v].begin(), adj_[v].end());
  }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  const std::vector<int>& neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
  }

  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  const VertexLabel& label(int v) const {
    check_vertex(v);
    return labels_[v];
  }

  void set_label(int v, VertexLabel l) {
    check_vertex(v);
    labels_[v] = std::move(l);
  }

  /// Edges as (u,v) pairs with u < v, sorted.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < vertex_count(); ++u)
      for (int v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= vertex_count())
      throw std::out_of_range("vertex index " + std::to_string(v) +
                              " out of range");
  }

  std::vector<std::vector<int>> adj_;
  std::vector<VertexLabel> labels_;
};

struct GeneratorSpec {
  enum class Family { Path, Cycle, Complete, Wheel, Fan };
  Family family;
  int n = 0;
};

inline Graph build_generator(const GeneratorSpec& spec) {
  using F = GeneratorSpec::Family;
  const int n = spec.n;
  auto reject = [&](int min, const char* fam) {
    if (n < min)
      throw std::invalid_argument(std::string(fam) + "(n) requires n >= " +
                                  std::to_string(min));
  };
  auto orig = [](int idx) {
    VertexLabel l;
    l.kind = VertexLabel::Kind::Original;
    l.i = idx;
    l.name = "x" + std::to_string(idx + 1);
    return l;
  };
  switch (spec.family) {
    case F::Path: {
      reject(1, "path");
      Graph g(n);
      for (int v = 0; v < n; ++v) g.set_label(v, orig(v));
      for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
      return g;
    }
    case F::Cycle: {
      reject(3, "cycle");
      Graph g(n);
      for (int v = 0; v < n; ++v) g.set_label(v, orig(v));
      for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
      return g;
    }
    case F::Complete: {
      reject(1, "complete");
      Graph g(n);
      for (int v = 0; v < n; ++v) g.set_label(v, orig(v));
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
      return g;
    }
    case F::Wheel: {
      // Hub x0 plus rim cycle x1..x_{n-1}: n vertices total.
      reject(4, "wheel");
      Graph g(n);
      VertexLabel hub;
      hub.kind = VertexLabel::Kind::Hub;
      hub.name = "x0";
      g.set_label(0, hub);
      for (int v = 1; v < n; ++v) {
        VertexLabel l;
        l.kind = VertexLabel::Kind::Original;
        l.i = v;
        l.name = "x" + std::to_string(v);
        g.set_label(v, l);
        g.add_edge(0, v);
      }
      for (int v = 1; v < n; ++v) g.add_edge(v, v == n - 1 ? 1 : v + 1);
      return g;
    }
    case F::Fan: {
      // Hub x0 joined to every vertex of a path x1..x_{n-1}.
      reject(3, "fan");
      Graph g(n);
      VertexLabel hub;
      hub.kind = VertexLabel::Kind::Hub;
      hub.name = "x0";
      g.set_label(0, hub);
      for (int v = 1; v < n; ++v) {
        VertexLabel l;
        l.kind = VertexLabel::Kind::Original;
        l.i = v;
        l.name = "x" + std::to_string(v);
        g.set_label(v, l);
        g.add_edge(0, v);
      }
      for (int v = 1; v + 1 < n; ++v) g.add_edge(v, v + 1);
      return g;
    }
  }
  throw std::logic_error("unknown family");
}

/// Middle graph M(g): vertex set V(g) plus one vertex per edge. Each
/// edge-vertex is adjacent to its two endpoints; two edge-vertices are
/// adjacent iff the underlying edges share an endpoint. Carrier vertices
/// are never adjacent to each other in M(g).
inline Graph middle_graph(const Graph& g) {
  if (g.vertex_count() == 0)
    throw std::invalid_argument("middle graph of empty graph");
  const int n = g.vertex_count();
  const auto es = g.edges();
  const int m = static_cast<int>(es.size());
  Graph out(n + m);
  for (int v = 0; v < n; ++v) {
    VertexLabel l = g.label(v);
    if (l.kind == VertexLabel::Kind::Plain || l.kind == VertexLabel::Kind::Hub) {
      l.kind = l.kind == VertexLabel::Kind::Hub ? VertexLabel::Kind::Hub
                                                : VertexLabel::Kind::Original;
      if (l.i < 0) l.i = v;
    }
    out.set_label(v, l);
  }
  for (int k = 0; k < m; ++k) {
    auto [a, b] = es[k];
    VertexLabel l;
    l.kind = VertexLabel::Kind::EdgeVertex;
    l.i = a;
    l.j = b;
    l.name = "e(" + g.label(a).name + "," + g.label(b).name + ")";
    out.set_label(n + k, l);
    out.add_edge(n + k, a);
    out.add_edge(n + k, b);
    for (int k2 = 0; k2 < k; ++k2) {
      auto [c, d] = es[k2];
      if (a == c || a == d || b == c || b == d) out.add_edge(n + k, n + k2);
    }
  }
  return out;
}

/// Join: disjoint union of g and h plus every cross edge.
inline Graph join_all(const Graph& g, const Graph& h) {
  if (g.vertex_count() == 0 || h.vertex_count() == 0)
    throw std::invalid_argument("join of empty graph");
  const int n = g.vertex_count();
  Graph out(n + h.vertex_count());
  for (int v = 0; v < n; ++v) out.set_label(v, g.label(v));
  for (int v = 0; v < h.vertex_count(); ++v) {
    VertexLabel l = h.label(v);
    l.name += "'";
    out.set_label(n + v, l);
  }
  for (auto [u, v] : g.edges()) out.add_edge(u, v);
  for (auto [u, v] : h.edges()) out.add_edge(n + u, n + v);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < h.vertex_count(); ++v) out.add_edge(u, n + v);
  return out;
}

/// The empty graph counts as connected.
inline bool is_connected(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : g.neighbors(u))
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
  }
  return reached == n;
}

/// Subgraph induced by the vertex set `keep` (indices into g). Labels are
/// preserved; vertices are renumbered in ascending order of old index.
inline Graph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> remap(g.vertex_count(), -1);
  Graph out(static_cast<int>(sorted.size()));
  for (int idx = 0; idx < static_cast<int>(sorted.size()); ++idx) {
    int v = sorted[idx];
    if (v < 0 || v >= g.vertex_count())
      throw std::out_of_range("induced_subgraph: vertex out of range");
    remap[v] = idx;
    out.set_label(idx, g.label(v));
  }
  for (auto [u, v] : g.edges())
    if (remap[u] >= 0 && remap[v] >= 0) out.add_edge(remap[u], remap[v]);
  return out;
}

inline constexpr int kInfiniteDistance = std::numeric_limits<int>::max();

/// All-pairs shortest-path hop counts; kInfiniteDistance for disconnected pairs.
class DistanceTable {
 public:
  explicit DistanceTable(const Graph& g) : n_(g.vertex_count()), d_(n_ * n_) {
    for (int s = 0; s < n_; ++s) {
      for (int v = 0; v < n_; ++v) d_[s * n_ + v] = kInfiniteDistance;
      std::queue<int> q;
      d_[s * n_ + s] = 0;
      q.push(s);
      while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.neighbors(u))
          if (d_[s * n_ + v] == kInfiniteDistance) {
            d_[s * n_ + v] = d_[s * n_ + u] + 1;
            q.push(v);
          }
      }
    }
  }

  int at(int u, int v) const { return d_[u * n_ + v]; }

  int eccentricity(int v) const {
    int e = 0;
    for (int u = 0; u < n_; ++u) e = std::max(e, at(v, u));
    return e;
  }

  int size() const { return n_; }

 private:
  int n_;
  std::vector<int> d_;
};

namespace detail {
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}
}  // namespace detail

/// Stable digest of a labeled graph: vertex count, sorted edge list, labels
/// and engine version. Label-sensitive, not isomorphism-invariant.
inline std::string canonical_key(const Graph& g) {
  std::ostringstream os;
  os << "v=" << g.vertex_count() << ";e=";
  for (auto [u, v] : g.edges()) os << u << "-" << v << ",";
  os << ";l=";
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& l = g.label(v);
    os << static_cast<int>(l.kind) << ":" << l.i << ":" << l.j << ":" << l.name
       << ",";
  }
  os << ";engine=" << kEngineVersion;
  std::ostringstream hex;
  hex << std::hex << detail::fnv1a(os.str());
  return hex.str();
}

}  // namespace pebbling
