#pragma once

#include <atomic>
#include <chrono>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pebbling/domination.hpp"
#include "pebbling/engine.hpp"
#include "pebbling/graph.hpp"

namespace pebbling {

enum class NumberKind { Cover, Dcp, Nsdcp };

inline const char* to_string(NumberKind k) {
  switch (k) {
    case NumberKind::Cover: return "cover";
    case NumberKind::Dcp: return "dcp";
    case NumberKind::Nsdcp: return "nsdcp";
  }
  return "?";
}

inline std::optional<NumberKind> parse_number_kind(const std::string& s) {
  if (s == "cover") return NumberKind::Cover;
  if (s == "dcp") return NumberKind::Dcp;
  if (s == "nsdcp") return NumberKind::Nsdcp;
  return std::nullopt;
}

/// Which goal the threshold search certifies. `exact_support` switches the
/// non-split goal from "support contains an NSDS" to "support is an NSDS";
/// it is only meaningful for Nsdcp.
struct GoalSpec {
  NumberKind kind = NumberKind::Nsdcp;
  bool exact_support = false;

  std::string mode_name() const {
    if (kind == NumberKind::Cover) return "contains";
    return exact_support ? "exact-support" : "contains";
  }
};

/// Raised when a sweep cannot certify a verdict (budget exhaustion inside
/// the search). Never coerced to a boolean answer.
struct ExactnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepStats {
  long long configurations_checked = 0;
  long long nodes_explored = 0;
  long long wall_ms = 0;
};

struct ThresholdReport {
  std::string graph_digest;
  int n_tested = 0;
  bool all_solvable = false;
  std::optional<Configuration> counterexample;  // lexicographically first
  SweepStats stats;
};

struct NumberResult {
  std::string graph_digest;
  GoalSpec goal;
  int value = 0;
  Configuration worst_witness;  // size value-1, verifies Unsolvable
  int lower_bound = 0;          // from single-vertex stacks
  int lower_bound_vertex = -1;
  SweepStats stats;
};

namespace detail {

inline GoalMode goal_mode_for(const Graph& g, const GoalSpec& spec) {
  switch (spec.kind) {
    case NumberKind::Cover: {
      VertexMask all = g.vertex_count() == 0
                           ? 0
                           : (VertexMask{1} << g.vertex_count()) - 1;
      return GoalMode::cover_set(all);
    }
    case NumberKind::Dcp:
      if (spec.exact_support)
        throw std::invalid_argument("exact-support mode applies to nsdcp only");
      return GoalMode::contains_dominating();
    case NumberKind::Nsdcp:
      return spec.exact_support ? GoalMode::exact_support_nsds()
                                : GoalMode::contains_nsds();
  }
  throw std::logic_error("unknown kind");
}

inline std::vector<VertexMask> family_for(const Graph& g,
                                          const GoalSpec& spec) {
  switch (spec.kind) {
    case NumberKind::Cover:
      return {};
    case NumberKind::Dcp:
      return minimal_sets(g, SetKind::Dominating).sets;
    case NumberKind::Nsdcp:
      return minimal_sets(g, SetKind::NonsplitDominating).sets;
  }
  throw std::logic_error("unknown kind");
}

// Stack-anchor upper bound: a stack of size sum_v 2^(d(u,v)) at u covers
// all of V greedily, so every goal here is reached by then.
inline long long weight_anchor(const Graph& g, const DistanceTable& dt) {
  long long best = 0;
  for (int u = 0; u < g.vertex_count(); ++u) {
    long long s = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (dt.at(u, v) == kInfiniteDistance)
        throw std::invalid_argument("pebbling numbers require a connected graph");
      s += 1LL << dt.at(u, v);
    }
    best = std::max(best, s);
  }
  return best;
}

}  // namespace detail

/// Verifies one threshold N with per-worker private solvers. Reused across
/// the sweeps of a number search so memo tables amortize.
class ThresholdVerifier {
 public:
  ThresholdVerifier(const Graph& g, const GoalSpec& spec, int workers = 1,
                    SolveBudget budget = {})
      : g_(g),
        spec_(spec),
        budget_(budget),
        digest_(canonical_key(g)),
        family_(detail::family_for(g, spec)),
        mode_(detail::goal_mode_for(g, spec)),
        workers_(std::max(1, workers)) {
    if (g.vertex_count() == 0)
      throw std::invalid_argument("threshold search on empty graph");
    if (family_.empty() && spec.kind != NumberKind::Cover &&
        !spec.exact_support)
      throw std::logic_error("empty target family");
    for (int i = 0; i < workers_; ++i)
      solvers_.push_back(std::make_unique<PebblingSolver>(g_, mode_, family_));
  }

  const Graph& graph() const { return g_; }
  const GoalSpec& goal() const { return spec_; }
  const std::string& digest() const { return digest_; }

  ThresholdReport verify(int n_pebbles) {
    const auto t0 = std::chrono::steady_clock::now();
    ThresholdReport report;
    report.graph_digest = digest_;
    report.n_tested = n_pebbles;

    const int nv = g_.vertex_count();
    // Contiguous first-coordinate ranges, one per worker, balanced by the
    // number of compositions in each range.
    std::vector<std::pair<int, int>> ranges;
    {
      std::vector<long long> per_value(n_pebbles + 1);
      long long total = 0;
      for (int c0 = 0; c0 <= n_pebbles; ++c0) {
        per_value[c0] = configuration_count(nv - 1, n_pebbles - c0);
        total += per_value[c0];
      }
      long long target = (total + workers_ - 1) / workers_;
      int lo = 0;
      long long acc = 0;
      for (int c0 = 0; c0 <= n_pebbles; ++c0) {
        acc += per_value[c0];
        if (acc >= target || c0 == n_pebbles) {
          ranges.emplace_back(lo, c0);
          lo = c0 + 1;
          acc = 0;
          if (static_cast<int>(ranges.size()) == workers_ - 1 &&
              lo <= n_pebbles) {
            ranges.emplace_back(lo, n_pebbles);
            break;
          }
        }
      }
      if (ranges.empty()) ranges.emplace_back(0, n_pebbles);
    }

    const int shard_count = static_cast<int>(ranges.size());
    std::atomic<int> lowest_failed{shard_count};
    std::vector<std::optional<Configuration>> shard_counterexample(shard_count);
    std::vector<long long> shard_checked(shard_count, 0);
    std::vector<std::string> shard_error(shard_count);

    auto run_shard = [&](int shard) {
      PebblingSolver& solver = *solvers_[shard % solvers_.size()];
      try {
        enumerate_configurations(
            nv, n_pebbles,
            [&](const Configuration& c) {
              if (lowest_failed.load(std::memory_order_relaxed) < shard)
                return false;  // an earlier shard already holds the lex-min
              ++shard_checked[shard];
              SolveVerdict v = solver.solve(c, budget_, false);
              if (v.outcome == SolveVerdict::Outcome::Unknown)
                throw ExactnessError(
                    "budget exhausted while certifying configuration " +
                    c.to_string());
              if (v.outcome == SolveVerdict::Outcome::Unsolvable) {
                shard_counterexample[shard] = c;
                int expected = lowest_failed.load();
                while (shard < expected &&
                       !lowest_failed.compare_exchange_weak(expected, shard)) {
                }
                return false;
              }
              return true;
            },
            ranges[shard].first, ranges[shard].second);
      } catch (const std::exception& e) {
        shard_error[shard] = e.what();
        lowest_failed.store(-1);  // poison: abort everything
      }
    };

    if (shard_count == 1) {
      run_shard(0);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(shard_count);
      for (int s = 0; s < shard_count; ++s) threads.emplace_back(run_shard, s);
      for (auto& t : threads) t.join();
    }

    for (int s = 0; s < shard_count; ++s)
      if (!shard_error[s].empty()) throw ExactnessError(shard_error[s]);

    for (int s = 0; s < shard_count; ++s) {
      report.stats.configurations_checked += shard_checked[s];
      if (!report.counterexample && shard_counterexample[s])
        report.counterexample = shard_counterexample[s];
    }
    report.all_solvable = !report.counterexample.has_value();
    for (auto& s : solvers_) report.stats.nodes_explored += s->nodes_explored();
    report.stats.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
    return report;
  }

  /// 1 + the largest stack size that is unsolvable, maximized over stack
  /// vertices. Valid lower bound for the goal's number: every threshold
  /// below it has an unsolvable single-vertex stack.
  std::pair<int, int> stacked_lower_bound() {
    const long long anchor = detail::weight_anchor(g_, DistanceTable(g_));
    int best = 0, best_vertex = 0;
    for (int u = 0; u < g_.vertex_count(); ++u) {
      int first_solvable = -1;
      for (int n = 0; n <= anchor; ++n) {
        Configuration c = Configuration::stack(g_.vertex_count(), u, n);
        SolveVerdict v = solvers_[0]->solve(c, budget_, false);
        if (v.outcome == SolveVerdict::Outcome::Unknown)
          throw ExactnessError("budget exhausted in stacked lower bound");
        if (v.outcome == SolveVerdict::Outcome::Solvable) {
          first_solvable = n;
          break;
        }
      }
      if (first_solvable < 0)
        throw std::logic_error("stack never became solvable below anchor");
      if (first_solvable > best) {
        best = first_solvable;
        best_vertex = u;
      }
    }
    return {best, best_vertex};
  }

 private:
  const Graph g_;
  GoalSpec spec_;
  SolveBudget budget_;
  std::string digest_;
  std::vector<VertexMask> family_;
  GoalMode mode_;
  int workers_;
  std::vector<std::unique_ptr<PebblingSolver>> solvers_;
};

inline ThresholdReport verify_threshold(const Graph& g, int n_pebbles,
                                        const GoalSpec& spec, int workers = 1,
                                        SolveBudget budget = {}) {
  ThresholdVerifier verifier(g, spec, workers, budget);
  return verifier.verify(n_pebbles);
}

/// Exact invariant value: the least N such that every configuration of size
/// N reaches the goal. Upward scan from the stacked lower bound; every
/// threshold below the result is certified failing (by an unsolvable stack
/// below the bound, by an explicit counterexample above it).
inline NumberResult compute_number(const Graph& g, const GoalSpec& spec,
                                   int workers = 1, SolveBudget budget = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  ThresholdVerifier verifier(g, spec, workers, budget);
  NumberResult result;
  result.graph_digest = verifier.digest();
  result.goal = spec;

  auto [lo, lo_vertex] = verifier.stacked_lower_bound();
  result.lower_bound = lo;
  result.lower_bound_vertex = lo_vertex;

  const long long anchor = detail::weight_anchor(g, DistanceTable(g));
  int n = std::max(lo, 1);
  std::optional<Configuration> last_counterexample;
  for (;; ++n) {
    if (n > anchor + 1)
      throw std::logic_error("threshold scan exceeded weight anchor");
    ThresholdReport report = verifier.verify(n);
    result.stats.configurations_checked += report.stats.configurations_checked;
    if (report.all_solvable) {
      result.value = n;
      break;
    }
    last_counterexample = report.counterexample;
  }

  if (last_counterexample) {
    result.worst_witness = *last_counterexample;
  } else {
    // Sweep at value-1 never ran; fetch its lexicographically first
    // counterexample (cheap: the sweep stops at the first failure).
    ThresholdReport below = verifier.verify(result.value - 1);
    if (below.all_solvable)
      throw std::logic_error("threshold below computed value is all-solvable");
    result.worst_witness = *below.counterexample;
    result.stats.configurations_checked += below.stats.configurations_checked;
  }

  result.stats.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
  return result;
}

}  // namespace pebbling
