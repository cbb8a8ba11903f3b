#include "test_support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <map>

using namespace famedkit;
using namespace famedkit::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("famedkit-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::vector<nlohmann::json> read_lines(const fs::path& file) {
  std::vector<nlohmann::json> out;
  std::ifstream in(file);
  std::string line;
  while (std::getline(in, line)) out.push_back(nlohmann::json::parse(line));
  return out;
}

// Record content without timing fields.
nlohmann::json stable(nlohmann::json j) {
  for (const char* key : {"started_at", "finished_at", "seconds"}) j.erase(key);
  if (j.contains("search")) j["search"]["stats"].erase("seconds");
  return j;
}

std::vector<CensusJob> sample_jobs() { return read_manifest(data_path("census/sample_manifest.jsonl")); }

} // namespace

TEST_SUITE("pipeline-cli") {

TEST_CASE("manifest parsing resolves relative paths") {
  const auto jobs = sample_jobs();
  REQUIRE(jobs.size() == 14);
  CHECK(jobs.front().name == "K3a1");
  CHECK(fs::exists(jobs.front().source));

  TempDir dir;
  const auto manifest = dir.path / "m.jsonl";
  std::ofstream(manifest) << R"({"name":"a","path":"x.json","options":{"search_extra_tets":2,"max_nodes":50}})" << "\n\n"
                          << R"({"name":"b","path":"/abs/y.json","options":{"numeric_only":true}})" << "\n";
  const auto parsed = read_manifest(manifest);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].source == dir.path / "x.json");
  REQUIRE(parsed[0].options.search.has_value());
  CHECK(parsed[0].options.search->max_extra_tets == 2);
  CHECK(parsed[0].options.search->max_nodes == 50);
  CHECK(parsed[1].source == fs::path("/abs/y.json"));
  CHECK(parsed[1].options.allow_uncertified);

  std::ofstream(manifest) << "{\"name\": \"a\"}\n";
  CHECK_THROWS_AS(read_manifest(manifest), MalformedDocument);
  std::ofstream(manifest) << "not json\n";
  CHECK_THROWS_AS(read_manifest(manifest), MalformedDocument);
}

TEST_CASE("sample batch reproduces the table and resumes idempotently") {
  TempDir dir;
  const auto results = dir.path / "results.jsonl";
  const auto jobs = sample_jobs();
  const auto first = run_census(jobs, results, 4);
  CHECK(first.executed == 14);
  CHECK(first.errors == 0);

  std::map<std::string, nlohmann::json> by_name;
  for (const auto& j : read_lines(results)) by_name[j["name"]] = j;
  REQUIRE(by_name.size() == 14);
  for (const auto& row : census_rows()) {
    CAPTURE(row.name);
    const auto& j = by_name.at(row.name);
    CHECK(j["n_tetrahedra"] == row.tetrahedra);
    CHECK(j["n_orders"] == row.orders);
    CHECK(j["n_famed_orders"] == row.famed);
    CHECK(j["geometric"] == (row.hyperbolic ? "certified" : "none"));
    CHECK(j["conjecture_flags"]["determinant_violations"] == 0);
    CHECK(j["conjecture_flags"]["nullity_violations"] == 0);
    for (const char* key : {"schema", "started_at", "finished_at", "famed_found", "angle_structure"})
      CHECK(j.contains(key));
  }

  const auto again = run_census(jobs, results, 4);
  CHECK(again.executed == 0);
  CHECK(again.skipped == 14);
  CHECK(read_lines(results).size() == 14);

  // Keep the first five records only; a truncated sixth line must not break the file.
  std::vector<std::string> lines;
  {
    std::ifstream in(results);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
  }
  {
    std::ofstream out(results, std::ios::trunc);
    for (int i = 0; i < 5; ++i) out << lines[static_cast<std::size_t>(i)] << '\n';
    out << lines[5].substr(0, 20);
  }
  const auto resumed = run_census(jobs, results, 2);
  CHECK(resumed.skipped == 5);
  CHECK(resumed.executed == 9);
  std::size_t parseable = 0;
  std::ifstream in(results);
  for (std::string line; std::getline(in, line);)
    if (!nlohmann::json::parse(line, nullptr, false).is_discarded()) ++parseable;
  CHECK(parseable == 14);
}

TEST_CASE("an unreadable job becomes an error record") {
  TempDir dir;
  auto jobs = sample_jobs();
  jobs.push_back({"missing", dir.path / "missing.json", {}});
  jobs.push_back({"malformed", data_path("malformed_unpaired.json"), {}});
  const auto results = dir.path / "results.jsonl";
  const auto summary = run_census(jobs, results, 3);
  CHECK(summary.executed == 16);
  CHECK(summary.errors == 2);
  std::map<std::string, nlohmann::json> by_name;
  for (const auto& j : read_lines(results)) by_name[j["name"]] = j;
  CHECK(by_name.at("missing")["error"]["type"] == "MalformedDocument");
  CHECK(by_name.at("malformed")["error"]["type"] == "UnpairedFace");
  CHECK(by_name.at("K4a1")["n_famed_orders"] == 4);
}

TEST_CASE("records do not depend on the worker count") {
  TempDir dir;
  auto jobs = sample_jobs();
  jobs.resize(8);
  run_census(jobs, dir.path / "one.jsonl", 1);
  run_census(jobs, dir.path / "many.jsonl", 4);
  std::map<std::string, nlohmann::json> one, many;
  for (const auto& j : read_lines(dir.path / "one.jsonl")) one[j["name"]] = stable(j);
  for (const auto& j : read_lines(dir.path / "many.jsonl")) many[j["name"]] = stable(j);
  CHECK(one == many);
}

TEST_CASE("worker count resolution") {
  CHECK(worker_count(2) == 2);
  ::setenv("FAMEDKIT_JOBS", "3", 1);
  CHECK(worker_count(std::nullopt) == 3);
  CHECK(worker_count(5) == 5);
  ::setenv("FAMEDKIT_JOBS", "zero", 1);
  CHECK(worker_count(std::nullopt) >= 1);
  ::unsetenv("FAMEDKIT_JOBS");
}

TEST_CASE("analysis with search records the move path") {
  AnalysisOptions options;
  options.search = SearchBudget{};
  options.search->max_extra_tets = 1;
  const auto rec = analyze(load_census("K3a1"), options);
  REQUIRE(rec.search.has_value());
  CHECK_FALSE(rec.search->result.has_value());
  CHECK(rec.famed_found == "none");
  const auto j = to_json(rec);
  CHECK(j["search"]["found"] == false);
  CHECK(j["search"]["stats"].contains("nodes_visited"));
  CHECK(j["search"]["stats"].contains("frontier_size"));
}

TEST_CASE("dropped-edge scan on the figure-eight") {
  AnalysisOptions options;
  options.scan_dropped_edges = true;
  const auto rec = analyze(load_fixture("fig8.json"), options);
  REQUIRE(rec.orders.size() == 4);
  for (const auto& o : rec.orders) CHECK(o.famed_by_dropped_edge == std::vector<bool>{true, true});
  CHECK_FALSE(rec.dropped_edge_dependent);
}

} // TEST_SUITE
