#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pebbling/campaign.hpp"
#include "pebbling/domination.hpp"
#include "pebbling/engine.hpp"
#include "pebbling/numbers.hpp"
#include "pebbling/parse.hpp"
#include "pebbling/version.hpp"

namespace pebbling::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitExactnessFailure = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline std::optional<std::string> cache_path(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("PEBBLING_CACHE")) return std::string(env);
  return std::nullopt;
}

inline GoalSpec goal_spec(const std::string& kind, const std::string& mode) {
  auto k = parse_number_kind(kind);
  if (!k) throw ParseError("unknown kind '" + kind + "'");
  if (mode != "contains" && mode != "exact-support")
    throw ParseError("unknown mode '" + mode + "'");
  GoalSpec spec;
  spec.kind = *k;
  spec.exact_support = mode == "exact-support";
  return spec;
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"exact graph pebbling and non-split domination toolkit"};
  app.require_subcommand(1);

  std::string expr, kind = "nsdcp", mode = "contains", cache_flag, out_path;
  std::string families_csv, n_range = "2..4", kinds_csv = "nsdcp";
  int n_pebbles = 0, workers = 1;
  bool single_mode = false;

  auto* info = app.add_subcommand("info", "vertex/edge counts and labels");
  info->add_option("expr", expr)->required();

  auto* gns = app.add_subcommand("gamma-ns", "non-split domination number");
  gns->add_option("expr", expr)->required();

  auto* number = app.add_subcommand("number", "exact pebbling number");
  number->add_option("expr", expr)->required();
  number->add_option("--kind", kind)->check(CLI::IsMember({"cover", "dcp", "nsdcp"}));
  number->add_option("--mode", mode)->check(CLI::IsMember({"contains", "exact-support"}));
  number->add_option("--workers", workers);
  number->add_option("--cache", cache_flag);

  auto* verify = app.add_subcommand("verify", "sweep one pebble threshold");
  verify->add_option("expr", expr)->required();
  verify->add_option("--kind", kind)->check(CLI::IsMember({"cover", "dcp", "nsdcp"}));
  verify->add_option("--mode", mode)->check(CLI::IsMember({"contains", "exact-support"}));
  verify->add_option("-N,--pebbles", n_pebbles)->required();
  verify->add_option("--workers", workers);

  auto* gadget = app.add_subcommand("gadget", "decision-problem gadget G*");
  gadget->add_option("expr", expr)->required();

  auto* campaign = app.add_subcommand("campaign", "formula-vs-oracle report");
  campaign->add_option("--families", families_csv)->required();
  campaign->add_option("--n-range", n_range);
  campaign->add_option("--kinds", kinds_csv);
  campaign->add_flag("--single-mode", single_mode,
                     "nsdcp rows in contains mode only");
  campaign->add_option("--out", out_path)->required();
  campaign->add_option("--workers", workers);
  campaign->add_option("--cache", cache_flag);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (info->parsed()) {
      Graph g = parse_graph_expr(expr);
      out << "vertices: " << g.vertex_count() << "\n"
          << "edges: " << g.edge_count() << "\n"
          << "digest: " << canonical_key(g) << "\n";
      for (int v = 0; v < g.vertex_count(); ++v)
        out << "  " << v << ": " << g.label(v).name << "\n";
      return kExitOk;
    }
    if (gns->parsed()) {
      Graph g = parse_graph_expr(expr);
      out << nonsplit_domination_number(g) << "\n";
      return kExitOk;
    }
    if (number->parsed()) {
      Graph g = parse_graph_expr(expr);
      GoalSpec spec = detail::goal_spec(kind, mode);
      const std::string digest = canonical_key(g);
      std::unique_ptr<ResultCache> cache;
      if (auto p = detail::cache_path(cache_flag))
        cache = std::make_unique<ResultCache>(*p);
      if (cache) {
        if (auto hit = cache->get(digest, kind, mode)) {
          out << "value: " << hit->value << " (cached)\n"
              << "worst witness: " << hit->worst_witness << "\n";
          return kExitOk;
        }
      }
      NumberResult r = compute_number(g, spec, workers);
      out << "value: " << r.value << "\n"
          << "worst witness: " << r.worst_witness.to_string() << "\n"
          << "stacked lower bound: " << r.lower_bound << " (vertex "
          << g.label(r.lower_bound_vertex).name << ")\n"
          << "configurations checked: " << r.stats.configurations_checked
          << "\n";
      if (cache) {
        CacheRecord rec;
        rec.graph_digest = digest;
        rec.kind = kind;
        rec.mode = mode;
        rec.value = r.value;
        rec.worst_witness = r.worst_witness.to_string();
        cache->put(rec);
      }
      return kExitOk;
    }
    if (verify->parsed()) {
      Graph g = parse_graph_expr(expr);
      GoalSpec spec = detail::goal_spec(kind, mode);
      ThresholdReport report = verify_threshold(g, n_pebbles, spec, workers);
      if (report.all_solvable)
        out << "AllSolvable at N=" << n_pebbles << " ("
            << report.stats.configurations_checked << " configurations)\n";
      else
        out << "Counterexample: " << report.counterexample->to_string() << "\n";
      return kExitOk;
    }
    if (gadget->parsed()) {
      Graph g = parse_graph_expr(expr);
      Graph star = build_np_gadget(g);
      out << "vertices: " << star.vertex_count() << "\n"
          << "edges: " << star.edge_count() << "\n";
      for (auto [u, v] : star.edges())
        out << "  " << star.label(u).name << " -- " << star.label(v).name
            << "\n";
      return kExitOk;
    }
    if (campaign->parsed()) {
      CampaignPlan plan;
      plan.workers = workers;
      plan.both_modes = !single_mode;
      std::istringstream fs(families_csv);
      std::string tok;
      while (std::getline(fs, tok, ',')) plan.families.push_back(tok);
      plan.kinds.clear();
      std::istringstream ks(kinds_csv);
      while (std::getline(ks, tok, ',')) plan.kinds.push_back(tok);
      auto dots = n_range.find("..");
      if (dots == std::string::npos)
        throw ParseError("bad --n-range '" + n_range + "', expected a..b");
      plan.n_lo = std::stoi(n_range.substr(0, dots));
      plan.n_hi = std::stoi(n_range.substr(dots + 2));

      // Fail before any computation if the report cannot be written.
      {
        std::ofstream probe(out_path, std::ios::app);
        if (!probe)
          throw std::runtime_error("output path '" + out_path +
                                   "' is not writable");
      }
      std::unique_ptr<ResultCache> cache;
      if (auto p = detail::cache_path(cache_flag))
        cache = std::make_unique<ResultCache>(*p);
      CampaignResult result = run_campaign(plan, cache.get());
      {
        std::ofstream csv(out_path, std::ios::trunc);
        csv << campaign_csv(result);
        std::ofstream sidecar(out_path + ".json", std::ios::trunc);
        sidecar << campaign_json(plan, result).dump(2) << "\n";
      }
      out << campaign_table(result);
      return kExitOk;
    }
  } catch (const ExactnessError& e) {
    err << "exactness failure: " << e.what() << "\n";
    return kExitExactnessFailure;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitExactnessFailure;
  }
  return kExitUsage;
}

}  // namespace pebbling::cli
