#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pebbling/domination.hpp"
#include "pebbling/graph.hpp"

namespace pebbling {

/// Pebble counts per vertex. Total size is cached.
class Configuration {
 public:
  Configuration() = default;

  explicit Configuration(std::vector<int> counts) {
    counts_.reserve(counts.size());
    for (int c : counts) {
      if (c < 0 || c > 255)
        throw std::invalid_argument("pebble count out of range [0,255]");
      counts_.push_back(static_cast<std::uint8_t>(c));
      size_ += c;
    }
  }

  static Configuration zeros(int n) {
    return Configuration(std::vector<int>(n, 0));
  }

  static Configuration stack(int n, int vertex, int pebbles) {
    std::vector<int> c(n, 0);
    c.at(vertex) = pebbles;
    return Configuration(c);
  }

  int vertex_count() const { return static_cast<int>(counts_.size()); }
  int size() const { return size_; }
  int at(int v) const { return counts_.at(v); }

  void set(int v, int c) {
    if (c < 0 || c > 255) throw std::invalid_argument("pebble count out of range");
    size_ += c - counts_.at(v);
    counts_[v] = static_cast<std::uint8_t>(c);
  }

  VertexMask support() const {
    VertexMask m = 0;
    for (int v = 0; v < vertex_count(); ++v)
      if (counts_[v] > 0) m |= VertexMask{1} << v;
    return m;
  }

  /// Serializes as comma-separated counts in vertex-index order, e.g. "4,0,0".
  std::string to_string() const {
    std::ostringstream os;
    for (int v = 0; v < vertex_count(); ++v) {
      if (v) os << ",";
      os << static_cast<int>(counts_[v]);
    }
    return os.str();
  }

  static Configuration parse(const std::string& s) {
    std::vector<int> counts;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) counts.push_back(std::stoi(tok));
    return Configuration(counts);
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;
  auto operator<=>(const Configuration& o) const {
    return counts_ <=> o.counts_;
  }

  // Packed key for memo tables; requires <= 16 vertices.
  std::array<std::uint64_t, 2> packed_key() const {
    std::array<std::uint64_t, 2> k{0, 0};
    for (int v = 0; v < vertex_count(); ++v)
      k[v / 8] |= std::uint64_t(counts_[v]) << (8 * (v % 8));
    return k;
  }

 private:
  std::vector<std::uint8_t> counts_;
  int size_ = 0;
};

struct Move {
  int from = -1;
  int to = -1;
  friend bool operator==(const Move&, const Move&) = default;
};

using MoveSequence = std::vector<Move>;

inline std::string to_string(const MoveSequence& ms) {
  std::ostringstream os;
  for (size_t i = 0; i < ms.size(); ++i) {
    if (i) os << " ";
    os << ms[i].from << "->" << ms[i].to;
  }
  return os.str();
}

/// One pebbling move: remove two pebbles from `u`, place one on adjacent `v`.
inline Configuration apply_move(const Graph& g, const Configuration& c, int u,
                                int v) {
  if (!g.has_edge(u, v)) throw std::invalid_argument("move along a non-edge");
  if (c.at(u) < 2)
    throw std::invalid_argument("fewer than 2 pebbles at source vertex");
  Configuration out = c;
  out.set(u, c.at(u) - 2);
  out.set(v, c.at(v) + 1);
  return out;
}

/// Exact dyadic rational num / 2^shift.
struct DyadicWeight {
  long long num = 0;
  int shift = 0;

  // compares against an integer
  bool operator>=(long long x) const { return num >= (x << shift); }
  bool operator<(long long x) const { return num < (x << shift); }
  bool operator==(const DyadicWeight& o) const {
    return num << o.shift == o.num << shift;
  }
};

/// Weight of a configuration at v: sum over u of C(u) * 2^(-d(u,v)).
/// Never increases under pebbling moves; weight < 1 certifies that v can
/// never be pebbled from this configuration.
inline DyadicWeight weight(const Configuration& c, int v,
                           const DistanceTable& dt) {
  int maxd = 0;
  for (int u = 0; u < dt.size(); ++u) {
    int d = dt.at(u, v);
    if (d != kInfiniteDistance) maxd = std::max(maxd, d);
  }
  DyadicWeight w{0, maxd};
  for (int u = 0; u < dt.size(); ++u) {
    int d = dt.at(u, v);
    if (d == kInfiniteDistance) continue;  // unreachable mass contributes 0
    w.num += static_cast<long long>(c.at(u)) << (maxd - d);
  }
  return w;
}

struct GoalMode {
  enum class Tag { ContainsNSDS, ExactSupportNSDS, CoverSet, ContainsDominating };
  Tag tag = Tag::ContainsNSDS;
  VertexMask cover_target = 0;  // CoverSet only

  static GoalMode contains_nsds() { return {Tag::ContainsNSDS, 0}; }
  static GoalMode exact_support_nsds() { return {Tag::ExactSupportNSDS, 0}; }
  static GoalMode contains_dominating() { return {Tag::ContainsDominating, 0}; }
  static GoalMode cover_set(VertexMask target) {
    return {Tag::CoverSet, target};
  }
};

inline const char* to_string(GoalMode::Tag t) {
  switch (t) {
    case GoalMode::Tag::ContainsNSDS: return "contains";
    case GoalMode::Tag::ExactSupportNSDS: return "exact-support";
    case GoalMode::Tag::CoverSet: return "cover-set";
    case GoalMode::Tag::ContainsDominating: return "contains-dominating";
  }
  return "?";
}

struct SolveVerdict {
  enum class Outcome { Solvable, Unsolvable, Unknown };
  Outcome outcome = Outcome::Unknown;
  MoveSequence witness;   // Solvable only (and only when requested)
  long long nodes_explored = 0;
  bool budget_hit = false;
};

struct SolveBudget {
  // Node cap for the search; no cap when absent. Instances above the
  // free-exactness limits require an explicit budget.
  std::optional<long long> node_cap;
};

inline constexpr int kFreeExactnessVertexLimit = 10;
inline constexpr int kFreeExactnessPebbleLimit = 64;
inline constexpr int kSolverVertexLimit = 16;

/// Exact decision procedure for pebbling reachability goals on one graph.
/// Verdicts are memoized across calls: whether a configuration can reach
/// the goal does not depend on how the configuration was produced.
class PebblingSolver {
 public:
  PebblingSolver(const Graph& g, GoalMode mode,
                 std::vector<VertexMask> family = {})
      : g_(g),
        mode_(mode),
        family_(std::move(family)),
        dt_(g),
        n_(g.vertex_count()),
        nb_(detail::open_neighborhood_masks(g)) {
    if (n_ > kSolverVertexLimit)
      throw std::invalid_argument("solver supports at most 16 vertices");
    all_mask_ = n_ == 0 ? 0 : (VertexMask{1} << n_) - 1;
    if (mode_.tag == GoalMode::Tag::CoverSet)
      family_ = {mode_.cover_target};
    goal_by_support_.assign(std::size_t{1} << n_, -1);
    // Per-target scaled weight rows: scaled_w_[t][u] = 2^(maxd - d(u, v_t)).
    max_shift_ = 0;
    for (int u = 0; u < n_; ++u)
      for (int v = 0; v < n_; ++v)
        if (dt_.at(u, v) != kInfiniteDistance)
          max_shift_ = std::max(max_shift_, dt_.at(u, v));
    scaled_w_.assign(n_, std::vector<long long>(n_, 0));
    for (int v = 0; v < n_; ++v)
      for (int u = 0; u < n_; ++u)
        if (dt_.at(u, v) != kInfiniteDistance)
          scaled_w_[v][u] = 1LL << (max_shift_ - dt_.at(u, v));
    for (int u = 0; u < n_; ++u) {
      std::vector<std::pair<int, int>> mv;
      for (int v : g.neighbors(u)) mv.push_back({u, v});
      std::sort(mv.begin(), mv.end());
      moves_from_.push_back(std::move(mv));
    }
  }

  const Graph& graph() const { return g_; }
  const DistanceTable& distances() const { return dt_; }
  GoalMode mode() const { return mode_; }
  long long nodes_explored() const { return nodes_; }
  std::size_t memo_size() const { return memo_.size(); }

  /// Decides whether `c` can reach the goal. Exact unless the budget runs
  /// out, in which case the verdict is Unknown with budget_hit set.
  SolveVerdict solve(const Configuration& c, const SolveBudget& budget = {},
                     bool want_witness = false) {
    if (c.vertex_count() != n_)
      throw std::invalid_argument("configuration size mismatch");
    if (!budget.node_cap &&
        (n_ > kFreeExactnessVertexLimit || c.size() > kFreeExactnessPebbleLimit))
      throw std::invalid_argument(
          "instance above free-exactness limits; pass an explicit budget");
    nodes_ = 0;
    cap_ = budget.node_cap;
    SolveVerdict verdict;
    Tri r = decide(c);
    verdict.nodes_explored = nodes_;
    switch (r) {
      case Tri::Yes:
        verdict.outcome = SolveVerdict::Outcome::Solvable;
        if (want_witness) verdict.witness = reconstruct_witness(c);
        break;
      case Tri::No:
        verdict.outcome = SolveVerdict::Outcome::Unsolvable;
        break;
      case Tri::Unknown:
        verdict.outcome = SolveVerdict::Outcome::Unknown;
        verdict.budget_hit = true;
        break;
    }
    return verdict;
  }

  bool goal_met(const Configuration& c) { return support_goal(c.support()); }

  void clear_memo() {
    memo_.clear();
  }

 private:
  enum class Tri : std::int8_t { No = 0, Yes = 1, Unknown = 2 };

  struct Key {
    std::array<std::uint64_t, 2> k;
    bool operator==(const Key& o) const { return k == o.k; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const {
      std::uint64_t h = key.k[0] * 0x9e3779b97f4a7c15ull;
      h ^= key.k[1] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };

  bool support_goal(VertexMask support) {
    std::int8_t& slot = goal_by_support_[support];
    if (slot < 0) slot = compute_support_goal(support) ? 1 : 0;
    return slot == 1;
  }

  bool compute_support_goal(VertexMask support) {
    switch (mode_.tag) {
      case GoalMode::Tag::CoverSet:
        return (mode_.cover_target & ~support) == 0;
      case GoalMode::Tag::ContainsNSDS:
      case GoalMode::Tag::ContainsDominating:
        for (VertexMask mem : family_)
          if ((mem & ~support) == 0) return true;
        return false;
      case GoalMode::Tag::ExactSupportNSDS:
        return is_nonsplit_dominating(g_, support);
    }
    return false;
  }

  // Sound pruning: a target set D can only ever be covered if every vertex
  // of D has weight >= 1, and weights never increase under moves. Also
  // applies to the exact-support goal when a minimal-set family is supplied:
  // a support that *is* an NSDS in particular contains a minimal one.
  bool any_target_weight_feasible(const Configuration& c) {
    if (mode_.tag == GoalMode::Tag::ExactSupportNSDS && family_.empty())
      return true;
    const long long one = 1LL << max_shift_;
    for (VertexMask mem : family_) {
      bool feasible = true;
      VertexMask cur = mem;
      while (cur) {
        int v = std::countr_zero(cur);
        cur &= cur - 1;
        if (c.at(v) > 0) continue;
        long long w = 0;
        const auto& row = scaled_w_[v];
        for (int u = 0; u < n_; ++u) w += row[u] * c.at(u);
        if (w < one) {
          feasible = false;
          break;
        }
      }
      if (feasible) return true;
    }
    return false;
  }

  Tri decide(const Configuration& c) {
    if (support_goal(c.support())) return Tri::Yes;
    if (!any_target_weight_feasible(c)) return Tri::No;
    Key key{c.packed_key()};
    if (auto it = memo_.find(key); it != memo_.end())
      return static_cast<Tri>(it->second);
    if (cap_ && nodes_ >= *cap_) return Tri::Unknown;
    ++nodes_;
    // Greedy successes are cheap to recompute; memoizing them would swell
    // the table with millions of easy sweep entries.
    if (greedy_solvable(c)) return Tri::Yes;
    bool saw_unknown = false;
    for (int u = 0; u < n_; ++u) {
      if (c.at(u) < 2) continue;
      for (auto [from, to] : moves_from_[u]) {
        Tri r = decide(apply_move(g_, c, from, to));
        if (r == Tri::Yes) {
          memo_.emplace(key, static_cast<std::int8_t>(Tri::Yes));
          return Tri::Yes;
        }
        if (r == Tri::Unknown) saw_unknown = true;
      }
    }
    if (saw_unknown) return Tri::Unknown;  // not memoized
    memo_.emplace(key, static_cast<std::int8_t>(Tri::No));
    return Tri::No;
  }

  // Constructive sufficient check for the monotone goals: route 2^d pebbles
  // along a shortest path for each uncovered target vertex, cheapest source
  // first. Failure proves nothing; success is definitive.
  bool greedy_solvable(const Configuration& c,
                       MoveSequence* moves_out = nullptr) {
    if (mode_.tag == GoalMode::Tag::ExactSupportNSDS) return false;
    for (VertexMask mem : family_)
      if (greedy_cover(c, mem, moves_out)) return true;
    return false;
  }

  bool greedy_cover(const Configuration& c, VertexMask target,
                    MoveSequence* moves_out) {
    std::vector<int> work(n_);
    for (int v = 0; v < n_; ++v) work[v] = c.at(v);
    MoveSequence moves;
    VertexMask cur = target;
    while (cur) {
      int v = std::countr_zero(cur);
      cur &= cur - 1;
      if (work[v] > 0) continue;
      int best_u = -1;
      long long best_cost = 0;
      for (int u = 0; u < n_; ++u) {
        int d = dt_.at(u, v);
        if (d == kInfiniteDistance || d == 0) continue;
        long long cost = 1LL << d;
        int reserve = ((target >> u) & 1) ? 1 : 0;
        if (work[u] - reserve >= cost && (best_u < 0 || cost < best_cost)) {
          best_u = u;
          best_cost = cost;
        }
      }
      if (best_u < 0) return false;
      route(best_u, v, work, moves);
    }
    if (moves_out) *moves_out = std::move(moves);
    return true;
  }

  // Moves 2^d pebbles from u along a shortest path, landing one on v.
  void route(int u, int v, std::vector<int>& work, MoveSequence& moves) {
    std::vector<int> path{u};
    int cur = u;
    while (cur != v) {
      int next = -1;
      for (int w : g_.neighbors(cur))
        if (dt_.at(w, v) == dt_.at(cur, v) - 1 && (next < 0 || w < next))
          next = w;
      path.push_back(next);
      cur = next;
    }
    int d = static_cast<int>(path.size()) - 1;
    work[u] -= 1 << d;
    work[v] += 1;
    for (int step = 0; step < d; ++step) {
      int reps = 1 << (d - 1 - step);
      for (int r = 0; r < reps; ++r)
        moves.push_back({path[step], path[step + 1]});
    }
  }

  // Deterministic witness: from each solvable non-goal configuration, take
  // the lexicographically first (from, to) move whose successor is solvable.
  MoveSequence reconstruct_witness(Configuration c) {
    MoveSequence ms;
    while (!support_goal(c.support())) {
      bool advanced = false;
      for (int u = 0; u < n_ && !advanced; ++u) {
        if (c.at(u) < 2) continue;
        for (auto [from, to] : moves_from_[u]) {
          Configuration next = apply_move(g_, c, from, to);
          if (decide(next) == Tri::Yes || support_goal(next.support())) {
            ms.push_back({from, to});
            c = next;
            advanced = true;
            break;
          }
        }
      }
      if (!advanced)
        throw std::logic_error("witness reconstruction stalled");
    }
    return ms;
  }

  const Graph g_;
  GoalMode mode_;
  std::vector<VertexMask> family_;
  DistanceTable dt_;
  int n_;
  std::vector<VertexMask> nb_;
  VertexMask all_mask_ = 0;
  int max_shift_ = 0;
  std::vector<std::vector<long long>> scaled_w_;
  std::vector<std::vector<std::pair<int, int>>> moves_from_;
  std::vector<std::int8_t> goal_by_support_;
  std::unordered_map<Key, std::int8_t, KeyHash> memo_;
  long long nodes_ = 0;
  std::optional<long long> cap_;
};

/// Decision: can `c` be transformed so every vertex of `target` holds a
/// pebble simultaneously.
inline SolveVerdict can_cover_target(const Graph& g, const Configuration& c,
                                     const std::vector<int>& target,
                                     const SolveBudget& budget = {},
                                     bool want_witness = true) {
  PebblingSolver solver(g, GoalMode::cover_set(to_mask(target)));
  return solver.solve(c, budget, want_witness);
}

/// Decision against a goal mode backed by a target family.
inline SolveVerdict reach_goal(const Graph& g, const Configuration& c,
                               const TargetFamily& family, GoalMode mode,
                               const SolveBudget& budget = {},
                               bool want_witness = true) {
  if (family.graph_digest != canonical_key(g))
    throw std::invalid_argument("family does not match graph");
  if ((mode.tag == GoalMode::Tag::ContainsNSDS ||
       mode.tag == GoalMode::Tag::ExactSupportNSDS) &&
      family.kind != SetKind::NonsplitDominating)
    throw std::invalid_argument("family kind does not match goal mode");
  if (mode.tag == GoalMode::Tag::ContainsDominating &&
      family.kind != SetKind::Dominating)
    throw std::invalid_argument("family kind does not match goal mode");
  if (family.sets.empty() && mode.tag != GoalMode::Tag::ExactSupportNSDS) {
    SolveVerdict v;
    v.outcome = SolveVerdict::Outcome::Unsolvable;
    return v;
  }
  PebblingSolver solver(g, mode, family.sets);
  return solver.solve(c, budget, want_witness);
}

/// Replays a move sequence from an initial configuration, validating every
/// move; throws on an illegal move.
inline Configuration replay(const Graph& g, Configuration c,
                            const MoveSequence& ms) {
  for (const Move& m : ms) c = apply_move(g, c, m.from, m.to);
  return c;
}

/// Visits every composition of `total` pebbles over `n` vertices in
/// ascending lexicographic order, optionally restricted to first-coordinate
/// range [first_lo, first_hi]. The visitor returns false to stop early;
/// the function returns false if stopped.
inline bool enumerate_configurations(
    int n, int total, const std::function<bool(const Configuration&)>& visit,
    int first_lo = 0, int first_hi = -1) {
  if (n <= 0) {
    if (total == 0) return visit(Configuration(std::vector<int>{}));
    return true;
  }
  if (first_hi < 0) first_hi = total;
  std::vector<int> counts(n, 0);
  std::function<bool(int, int)> rec = [&](int pos, int remaining) -> bool {
    if (pos == n - 1) {
      counts[pos] = remaining;
      bool keep = visit(Configuration(counts));
      counts[pos] = 0;
      return keep;
    }
    int lo = pos == 0 ? first_lo : 0;
    int hi = pos == 0 ? std::min(first_hi, remaining) : remaining;
    for (int c = lo; c <= hi; ++c) {
      counts[pos] = c;
      if (!rec(pos + 1, remaining - c)) {
        counts[pos] = 0;
        return false;
      }
    }
    counts[pos] = 0;
    return true;
  };
  return rec(0, total);
}

inline long long configuration_count(int n, int total) {
  // binomial(total + n - 1, n - 1)
  if (n <= 0) return total == 0 ? 1 : 0;
  long long r = 1;
  for (int i = 1; i <= n - 1; ++i) {
    r = r * (total + i) / i;
  }
  return r;
}

}  // namespace pebbling
