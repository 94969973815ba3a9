#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pebbling/graph.hpp"

namespace pebbling {

enum class SetKind { Dominating, NonsplitDominating };

inline const char* to_string(SetKind k) {
  return k == SetKind::Dominating ? "dominating" : "nonsplit_dominating";
}

// Vertex sets on graphs with <= 32 vertices are handled as bitmasks.
using VertexMask = std::uint32_t;

inline constexpr int kDefaultEnumerationCap = 16;

namespace detail {

inline void require_mask_capable(const Graph& g, int cap) {
  if (g.vertex_count() > cap)
    throw std::invalid_argument(
        "instance too large for exact enumeration: " +
        std::to_string(g.vertex_count()) + " vertices, cap " +
        std::to_string(cap));
}

inline std::vector<VertexMask> open_neighborhood_masks(const Graph& g) {
  std::vector<VertexMask> nb(g.vertex_count(), 0);
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int u : g.neighbors(v)) nb[v] |= VertexMask{1} << u;
  return nb;
}

// Connectivity of the subgraph induced by `mask`, with the empty set
// counting as connected.
inline bool mask_connected(const std::vector<VertexMask>& nb, VertexMask mask) {
  if (mask == 0) return true;
  VertexMask seen = mask & (~mask + 1);  // lowest set bit
  for (;;) {
    VertexMask frontier = 0;
    VertexMask cur = seen;
    while (cur) {
      int v = std::countr_zero(cur);
      cur &= cur - 1;
      frontier |= nb[v] & mask;
    }
    VertexMask next = seen | frontier;
    if (next == seen) break;
    seen = next;
  }
  return seen == mask;
}

}  // namespace detail

inline VertexMask to_mask(const std::vector<int>& vs) {
  VertexMask m = 0;
  for (int v : vs) {
    if (v < 0 || v >= 32) throw std::out_of_range("vertex index out of range");
    m |= VertexMask{1} << v;
  }
  return m;
}

inline std::vector<int> from_mask(VertexMask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

inline bool is_dominating(const Graph& g, VertexMask s) {
  detail::require_mask_capable(g, 32);
  const auto nb = detail::open_neighborhood_masks(g);
  VertexMask covered = s;
  VertexMask cur = s;
  while (cur) {
    int v = std::countr_zero(cur);
    cur &= cur - 1;
    covered |= nb[v];
  }
  const VertexMask all =
      g.vertex_count() == 32 ? ~VertexMask{0}
                             : (VertexMask{1} << g.vertex_count()) - 1;
  return covered == all;
}

inline bool is_dominating(const Graph& g, const std::vector<int>& s) {
  return is_dominating(g, to_mask(s));
}

inline bool is_nonsplit_dominating(const Graph& g, VertexMask s) {
  if (!is_dominating(g, s)) return false;
  const auto nb = detail::open_neighborhood_masks(g);
  const VertexMask all =
      g.vertex_count() == 32 ? ~VertexMask{0}
                             : (VertexMask{1} << g.vertex_count()) - 1;
  return detail::mask_connected(nb, all & ~s);
}

inline bool is_nonsplit_dominating(const Graph& g, const std::vector<int>& s) {
  return is_nonsplit_dominating(g, to_mask(s));
}

inline bool satisfies(const Graph& g, SetKind kind, VertexMask s) {
  return kind == SetKind::Dominating ? is_dominating(g, s)
                                     : is_nonsplit_dominating(g, s);
}

/// The inclusion-minimal sets of a kind on one graph. A member is minimal
/// when no proper subset of it satisfies the predicate (for the non-split
/// kind the predicate is not superset-closed, so minimality is checked
/// against the whole family, not just single-vertex removals).
struct TargetFamily {
  std::string graph_digest;
  SetKind kind;
  std::vector<VertexMask> sets;
};

inline TargetFamily minimal_sets(const Graph& g, SetKind kind,
                                 int cap = kDefaultEnumerationCap) {
  detail::require_mask_capable(g, cap);
  const int n = g.vertex_count();
  TargetFamily fam{canonical_key(g), kind, {}};
  if (n == 0) return fam;

  // Ascending popcount order: anything containing an already-found minimal
  // member is not minimal itself.
  std::vector<VertexMask> by_card;
  by_card.reserve(VertexMask{1} << n);
  for (VertexMask m = 0; m < (VertexMask{1} << n); ++m) by_card.push_back(m);
  std::sort(by_card.begin(), by_card.end(), [](VertexMask a, VertexMask b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  for (VertexMask m : by_card) {
    bool dominated = false;
    for (VertexMask mem : fam.sets)
      if ((mem & ~m) == 0 && mem != m) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    if (satisfies(g, kind, m)) fam.sets.push_back(m);
  }
  return fam;
}

inline int domination_number(const Graph& g,
                             int cap = kDefaultEnumerationCap) {
  detail::require_mask_capable(g, cap);
  const int n = g.vertex_count();
  if (n == 0) return 0;
  for (int k = 1; k <= n; ++k)
    for (VertexMask m = 0; m < (VertexMask{1} << n); ++m)
      if (std::popcount(m) == k && is_dominating(g, m)) return k;
  throw std::logic_error("no dominating set found");  // unreachable: V dominates
}

inline int nonsplit_domination_number(const Graph& g,
                                      int cap = kDefaultEnumerationCap) {
  detail::require_mask_capable(g, cap);
  if (!is_connected(g))
    throw std::invalid_argument(
        "nonsplit_domination_number expects a connected graph");
  const int n = g.vertex_count();
  if (n == 0) return 0;
  for (int k = 1; k <= n; ++k)
    for (VertexMask m = 0; m < (VertexMask{1} << n); ++m)
      if (std::popcount(m) == k && is_nonsplit_dominating(g, m)) return k;
  throw std::logic_error("no non-split dominating set found");  // V qualifies
}

/// Decision-problem gadget G*: a disjoint copy of g plus an adjacent pair
/// {p,q}, with every vertex of g joined to both p and q.
inline Graph build_np_gadget(const Graph& g) {
  if (g.vertex_count() == 0)
    throw std::invalid_argument("gadget of empty graph");
  Graph pq(2);
  VertexLabel lp, lq;
  lp.name = "p";
  lq.name = "q";
  pq.set_label(0, lp);
  pq.set_label(1, lq);
  pq.add_edge(0, 1);
  Graph out = join_all(g, pq);
  // join_all primes the copied labels; restore the plain p/q names.
  VertexLabel p = out.label(g.vertex_count());
  VertexLabel q = out.label(g.vertex_count() + 1);
  p.name = "p";
  q.name = "q";
  out.set_label(g.vertex_count(), p);
  out.set_label(g.vertex_count() + 1, q);
  return out;
}

}  // namespace pebbling
