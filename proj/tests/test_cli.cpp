#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pebbling/cache.hpp"
#include "pebbling/cli.hpp"

using namespace pebbling;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(std::string name) : path(std::move(name)) {
    std::remove(path.c_str());
  }
  ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::ostringstream out, err;
  int code = cli::run_command(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("cache round trip") {
  TempFile f("test_cache_roundtrip.jsonl");
  ResultCache cache(f.path);
  CHECK_FALSE(cache.get("abc", "nsdcp", "contains").has_value());

  CacheRecord rec;
  rec.graph_digest = "abc";
  rec.kind = "nsdcp";
  rec.mode = "contains";
  rec.value = 13;
  rec.worst_witness = "0,0,12";
  CHECK(cache.put(rec));

  auto hit = cache.get("abc", "nsdcp", "contains");
  REQUIRE(hit.has_value());
  CHECK(hit->value == 13);
  CHECK(hit->worst_witness == "0,0,12");
  CHECK(hit->engine_version == kEngineVersion);

  // same digest, different mode: distinct entry
  CHECK_FALSE(cache.get("abc", "nsdcp", "exact-support").has_value());

  // newer record for the same key wins
  rec.value = 14;
  cache.put(rec);
  CHECK(cache.get("abc", "nsdcp", "contains")->value == 14);
}

TEST_CASE("cache ignores records from other engine versions") {
  TempFile f("test_cache_versions.jsonl");
  {
    std::ofstream out(f.path);
    out << R"({"digest":"d1","kind":"nsdcp","mode":"contains","value":99,)"
        << R"("worst_witness":"1","engine_version":"0.0.0","timestamp":1})"
        << "\n";
  }
  ResultCache cache(f.path);
  CHECK_FALSE(cache.get("d1", "nsdcp", "contains").has_value());
}

TEST_CASE("cache skips corrupted lines") {
  TempFile f("test_cache_corrupt.jsonl");
  ResultCache cache(f.path);
  CacheRecord rec;
  rec.graph_digest = "d2";
  rec.kind = "cover";
  rec.mode = "contains";
  rec.value = 7;
  rec.worst_witness = "6";
  cache.put(rec);
  {
    std::ofstream out(f.path, std::ios::app);
    out << "{not json\n";
  }
  auto hit = cache.get("d2", "cover", "contains");
  REQUIRE(hit.has_value());
  CHECK(hit->value == 7);
}

TEST_CASE("cli info") {
  std::string out;
  CHECK(run({"info", "middle(path(4))"}, &out) == cli::kExitOk);
  CHECK(out.find("vertices: 7") != std::string::npos);
  CHECK(out.find("edges: 8") != std::string::npos);
  CHECK(out.find("digest: ") != std::string::npos);
}

TEST_CASE("cli gamma-ns") {
  std::string out;
  CHECK(run({"gamma-ns", "path(6)"}, &out) == cli::kExitOk);
  CHECK(out == "4\n");
}

TEST_CASE("cli number") {
  std::string out;
  CHECK(run({"number", "complete(5)", "--kind", "nsdcp"}, &out) == cli::kExitOk);
  CHECK(out.find("value: 1") != std::string::npos);

  CHECK(run({"number", "path(4)", "--kind", "cover"}, &out) == cli::kExitOk);
  CHECK(out.find("value: 15") != std::string::npos);
  CHECK(out.find("worst witness: ") != std::string::npos);
}

TEST_CASE("cli number uses the cache on the second run") {
  TempFile f("test_cli_cache.jsonl");
  std::string first, second;
  CHECK(run({"number", "cycle(5)", "--cache", f.path}, &first) == cli::kExitOk);
  CHECK(run({"number", "cycle(5)", "--cache", f.path}, &second) == cli::kExitOk);
  CHECK(second.find("(cached)") != std::string::npos);
  // both report the same value
  auto value_of = [](const std::string& s) {
    return std::stoi(s.substr(std::string("value: ").size()));
  };
  CHECK(value_of(first) == value_of(second));
}

TEST_CASE("cli verify") {
  std::string out;
  CHECK(run({"verify", "middle(path(2))", "-N", "3"}, &out) == cli::kExitOk);
  CHECK(out.find("AllSolvable at N=3") != std::string::npos);

  CHECK(run({"verify", "middle(path(2))", "-N", "2"}, &out) == cli::kExitOk);
  CHECK(out.find("Counterexample: 0,0,2") != std::string::npos);
}

TEST_CASE("cli gadget") {
  std::string out;
  CHECK(run({"gadget", "path(3)"}, &out) == cli::kExitOk);
  CHECK(out.find("vertices: 5") != std::string::npos);
  CHECK(out.find("p -- q") != std::string::npos);
}

TEST_CASE("cli usage errors exit with code 2") {
  std::string err;
  CHECK(run({"bogus-subcommand"}, nullptr, &err) == cli::kExitUsage);
  CHECK(run({"number"}, nullptr, &err) == cli::kExitUsage);  // missing expr
  CHECK(run({"number", "blob(3)"}, nullptr, &err) == cli::kExitUsage);
  CHECK(run({"number", "path(4)", "--kind", "sideways"}, nullptr, &err) ==
        cli::kExitUsage);
  CHECK(run({"gamma-ns", "file(/no/such/file)"}, nullptr, &err) ==
        cli::kExitUsage);
}

TEST_CASE("cli campaign writes deterministic reports") {
  TempFile csv("test_campaign.csv");
  TempFile sidecar("test_campaign.csv.json");
  std::vector<std::string> args{"campaign", "--families", "complete",
                                "--n-range", "3..5", "--kinds", "nsdcp",
                                "--single-mode", "--out", csv.path};
  std::string out;
  CHECK(run(args, &out) == cli::kExitOk);
  std::string csv1 = slurp(csv.path);
  std::string side1 = slurp(sidecar.path);
  CHECK(csv1.rfind("family,n,kind,mode,formula_value,oracle_value,match,"
                   "runtime_ms\n", 0) == 0);
  CHECK(out.find("matches=3") != std::string::npos);

  CHECK(run(args, &out) == cli::kExitOk);
  // machine-readable sidecar is byte-identical across runs
  CHECK(slurp(sidecar.path) == side1);

  CHECK(run({"campaign", "--families", "complete", "--out",
             "/no/such/dir/report.csv"}, nullptr, nullptr) ==
        cli::kExitExactnessFailure);
}

TEST_CASE("cli campaign with a cache reproduces the same rows") {
  TempFile csv("test_campaign_cached.csv");
  TempFile sidecar("test_campaign_cached.csv.json");
  TempFile cache("test_campaign_cached.jsonl");
  std::vector<std::string> args{"campaign",      "--families",
                                "middle_path",   "--n-range",
                                "2..3",          "--kinds",
                                "nsdcp",         "--single-mode",
                                "--out",         csv.path,
                                "--cache",       cache.path};
  REQUIRE(run(args) == cli::kExitOk);
  std::string side1 = slurp(sidecar.path);
  CHECK_FALSE(slurp(cache.path).empty());
  REQUIRE(run(args) == cli::kExitOk);  // now served from the cache
  CHECK(slurp(sidecar.path) == side1);
}
