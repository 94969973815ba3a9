#pragma once

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pebbling/cache.hpp"
#include "pebbling/domination.hpp"
#include "pebbling/formulas.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/numbers.hpp"
#include "pebbling/version.hpp"

namespace pebbling {

struct CampaignPlan {
  std::vector<std::string> families;  // path, cycle, ..., middle_path, ...
  int n_lo = 2;
  int n_hi = 4;
  std::vector<std::string> kinds{"nsdcp"};  // cover | dcp | nsdcp | gamma-ns
  bool both_modes = true;                   // nsdcp: contains and exact-support
  int max_oracle_vertices = 10;
  long long max_oracle_anchor = 64;
  int workers = 1;
};

struct CampaignRow {
  std::string family;
  int n = 0;
  std::string kind;
  std::string mode;
  std::optional<long long> formula_value;
  std::optional<long long> oracle_value;
  std::string match;  // yes | no | oracle-skipped
  long long runtime_ms = 0;
  std::string witness_summary;
  std::string worst_witness;  // serialized configuration, when computed
  std::string skip_reason;
};

struct CampaignResult {
  std::vector<CampaignRow> rows;
  int matches = 0;
  int mismatches = 0;
  int skipped = 0;
};

namespace detail {

inline int family_minimum(const std::string& family) {
  if (family == "path" || family == "middle_path") return family == "path" ? 1 : 2;
  if (family == "cycle" || family == "middle_cycle") return 3;
  if (family == "complete") return 1;
  if (family == "wheel" || family == "middle_wheel") return 4;
  if (family == "fan" || family == "middle_fan") return 3;
  throw std::invalid_argument("unknown family '" + family + "'");
}

inline Graph family_graph(const std::string& family, int n) {
  auto base = [&](GeneratorSpec::Family f) {
    return build_generator({f, n});
  };
  if (family == "path") return base(GeneratorSpec::Family::Path);
  if (family == "cycle") return base(GeneratorSpec::Family::Cycle);
  if (family == "complete") return base(GeneratorSpec::Family::Complete);
  if (family == "wheel") return base(GeneratorSpec::Family::Wheel);
  if (family == "fan") return base(GeneratorSpec::Family::Fan);
  if (family == "middle_path")
    return middle_graph(base(GeneratorSpec::Family::Path));
  if (family == "middle_cycle")
    return middle_graph(base(GeneratorSpec::Family::Cycle));
  if (family == "middle_wheel")
    return middle_graph(base(GeneratorSpec::Family::Wheel));
  if (family == "middle_fan")
    return middle_graph(base(GeneratorSpec::Family::Fan));
  throw std::invalid_argument("unknown family '" + family + "'");
}

inline formulas::ValueKind value_kind(const std::string& kind) {
  if (kind == "cover") return formulas::ValueKind::Cover;
  if (kind == "dcp") return formulas::ValueKind::Dcp;
  if (kind == "nsdcp") return formulas::ValueKind::Nsdcp;
  if (kind == "gamma-ns") return formulas::ValueKind::GammaNs;
  throw std::invalid_argument("unknown kind '" + kind + "'");
}

inline std::string witness_summary(const Graph& g, const Configuration& c) {
  int stacked_vertex = -1;
  int nonzero = 0;
  for (int v = 0; v < c.vertex_count(); ++v)
    if (c.at(v) > 0) {
      ++nonzero;
      stacked_vertex = v;
    }
  if (nonzero == 0) return "empty configuration";
  if (nonzero == 1)
    return "stack of " + std::to_string(c.at(stacked_vertex)) + " on " +
           g.label(stacked_vertex).name;
  return c.to_string();
}

}  // namespace detail

/// One campaign row: formula value (when a closed form is recorded) against
/// the exact oracle (when the instance fits the caps). Mismatches are
/// recorded, never fatal.
inline CampaignRow run_campaign_row(const std::string& family, int n,
                                    const std::string& kind,
                                    const std::string& mode,
                                    const CampaignPlan& plan,
                                    const ResultCache* cache) {
  const auto t0 = std::chrono::steady_clock::now();
  CampaignRow row;
  row.family = family;
  row.n = n;
  row.kind = kind;
  row.mode = mode;

  if (auto kv = formulas::known_value(family, detail::value_kind(kind), n))
    row.formula_value = kv->value;

  Graph g = detail::family_graph(family, n);
  const std::string digest = canonical_key(g);

  if (kind == "gamma-ns") {
    if (g.vertex_count() <= kDefaultEnumerationCap) {
      row.oracle_value = nonsplit_domination_number(g);
    } else {
      row.skip_reason = "vertex count " + std::to_string(g.vertex_count()) +
                        " above enumeration cap " +
                        std::to_string(kDefaultEnumerationCap);
    }
  } else {
    GoalSpec spec;
    spec.kind = *parse_number_kind(kind);
    spec.exact_support = mode == "exact-support";
    long long anchor = 0;
    if (g.vertex_count() <= kSolverVertexLimit)
      anchor = detail::weight_anchor(g, DistanceTable(g));
    if (g.vertex_count() > plan.max_oracle_vertices) {
      row.skip_reason = "vertex count " + std::to_string(g.vertex_count()) +
                        " above oracle cap " +
                        std::to_string(plan.max_oracle_vertices);
    } else if (anchor > plan.max_oracle_anchor) {
      row.skip_reason = "search anchor " + std::to_string(anchor) +
                        " above oracle cap " +
                        std::to_string(plan.max_oracle_anchor);
    } else if (cache) {
      if (auto hit = cache->get(digest, kind, mode)) {
        row.oracle_value = hit->value;
        row.worst_witness = hit->worst_witness;
        row.witness_summary = detail::witness_summary(
            g, Configuration::parse(hit->worst_witness));
      }
    }
    if (!row.oracle_value && row.skip_reason.empty()) {
      NumberResult r = compute_number(g, spec, plan.workers);
      row.oracle_value = r.value;
      row.worst_witness = r.worst_witness.to_string();
      row.witness_summary = detail::witness_summary(g, r.worst_witness);
      if (cache) {
        CacheRecord rec;
        rec.graph_digest = digest;
        rec.kind = kind;
        rec.mode = mode;
        rec.value = r.value;
        rec.worst_witness = row.worst_witness;
        cache->put(rec);
      }
    }
  }

  if (row.formula_value && row.oracle_value)
    row.match = *row.formula_value == *row.oracle_value ? "yes" : "no";
  else if (!row.oracle_value && !row.skip_reason.empty())
    row.match = "oracle-skipped";
  else
    row.match = "no";
  row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return row;
}

inline CampaignResult run_campaign(const CampaignPlan& plan,
                                   const ResultCache* cache = nullptr) {
  CampaignResult result;
  for (const auto& family : plan.families) {
    int lo = std::max(plan.n_lo, detail::family_minimum(family));
    for (int n = lo; n <= plan.n_hi; ++n) {
      for (const auto& kind : plan.kinds) {
        std::vector<std::string> modes;
        if (kind == "gamma-ns")
          modes = {"-"};
        else if (kind == "nsdcp" && plan.both_modes)
          modes = {"contains", "exact-support"};
        else
          modes = {"contains"};
        for (const auto& mode : modes) {
          CampaignRow row = run_campaign_row(family, n, kind, mode, plan, cache);
          if (row.match == "yes") ++result.matches;
          else if (row.match == "oracle-skipped") ++result.skipped;
          else ++result.mismatches;
          result.rows.push_back(std::move(row));
        }
      }
    }
  }
  return result;
}

/// Human/table side: fixed column CSV, includes per-row runtime.
inline std::string campaign_csv(const CampaignResult& result) {
  std::ostringstream os;
  os << "family,n,kind,mode,formula_value,oracle_value,match,runtime_ms\n";
  for (const auto& r : result.rows) {
    os << r.family << "," << r.n << "," << r.kind << "," << r.mode << ",";
    if (r.formula_value) os << *r.formula_value;
    os << ",";
    if (r.oracle_value) os << *r.oracle_value;
    os << "," << r.match << "," << r.runtime_ms << "\n";
  }
  return os.str();
}

/// Machine-readable sidecar: deterministic for a fixed plan (no timings),
/// carries full witnesses and skip reasons.
inline nlohmann::json campaign_json(const CampaignPlan& plan,
                                    const CampaignResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : result.rows) {
    nlohmann::json jr = {
        {"family", r.family}, {"n", r.n},        {"kind", r.kind},
        {"mode", r.mode},     {"match", r.match},
    };
    jr["formula_value"] =
        r.formula_value ? nlohmann::json(*r.formula_value) : nlohmann::json();
    jr["oracle_value"] =
        r.oracle_value ? nlohmann::json(*r.oracle_value) : nlohmann::json();
    jr["worst_witness"] = r.worst_witness;
    jr["witness_summary"] = r.witness_summary;
    jr["skip_reason"] = r.skip_reason;
    rows.push_back(jr);
  }
  return nlohmann::json{
      {"engine_version", kEngineVersion},
      {"plan",
       {{"families", plan.families},
        {"n_lo", plan.n_lo},
        {"n_hi", plan.n_hi},
        {"kinds", plan.kinds},
        {"both_modes", plan.both_modes},
        {"max_oracle_vertices", plan.max_oracle_vertices},
        {"max_oracle_anchor", plan.max_oracle_anchor}}},
      {"rows", rows},
      {"summary",
       {{"matches", result.matches},
        {"mismatches", result.mismatches},
        {"oracle_skipped", result.skipped}}}};
}

inline std::string campaign_table(const CampaignResult& result) {
  std::ostringstream os;
  auto cell = [](const std::optional<long long>& v) {
    return v ? std::to_string(*v) : std::string("-");
  };
  os << "family        n   kind     mode           formula  oracle  match\n";
  for (const auto& r : result.rows) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-13s %-3d %-8s %-14s %-8s %-7s %s\n",
                  r.family.c_str(), r.n, r.kind.c_str(), r.mode.c_str(),
                  cell(r.formula_value).c_str(), cell(r.oracle_value).c_str(),
                  r.match.c_str());
    os << buf;
    if (r.match == "no" && !r.witness_summary.empty())
      os << "    mismatch witness: " << r.witness_summary << "\n";
    if (r.match == "oracle-skipped")
      os << "    skipped: " << r.skip_reason << "\n";
  }
  os << "matches=" << result.matches << " mismatches=" << result.mismatches
     << " oracle-skipped=" << result.skipped << "\n";
  return os.str();
}

}  // namespace pebbling
