#pragma once

// Per-manifold analysis, census manifests and the JSONL batch runner.

#include "famedkit/pachner.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace famedkit {

struct AnalysisOptions {
  bool keep_order_reports = false;     // per-order FAMED reports in the record
  bool scan_dropped_edges = false;
  bool allow_uncertified = false;
  std::optional<SearchBudget> search;  // retriangulate when the root has no FAMED geometric order
};

struct CensusJob {
  std::string name;
  std::filesystem::path source;
  AnalysisOptions options;
};

struct OrderRecord {
  std::size_t index = 0;
  Order order;
  FamedReport report;
  std::vector<bool> famed_by_dropped_edge; // filled by the dropped-edge scan
};

struct ConjectureFlags {
  std::size_t orders_checked = 0;
  std::size_t determinant_violations = 0;
  std::size_t nullity_violations = 0;
  std::vector<nlohmann::json> violations;
  bool ok() const { return determinant_violations == 0 && nullity_violations == 0; }
};

struct ResultRecord {
  std::string name;
  std::string source;
  std::size_t n_tetrahedra = 0;
  std::size_t n_orders = 0;
  std::size_t n_famed_orders = 0;
  std::vector<std::size_t> famed_order_indices;
  bool angle_structure = false;
  bool input_ordered = false;
  std::optional<FamedReport> input_order_report; // when the input is already ordered
  std::optional<GeometryReport> geometry;
  std::string famed_found = "none";              // root | search | none
  std::optional<SearchOutcome> search;
  ConjectureFlags conjecture;
  std::vector<OrderRecord> orders;               // kept with keep_order_reports or the scan
  bool dropped_edge_dependent = false;
  std::string started_at, finished_at;
  double seconds = 0;
  std::optional<std::string> error_type, error_message;

  bool ok() const { return !error_type.has_value(); }
  // "certified", "numeric" or "none".
  std::string geometric_label() const;
};

ResultRecord analyze(const IdealTriangulation& tri, const AnalysisOptions& options = {});

// Loads and analyzes; failures become an error record, never an exception.
ResultRecord run_job(const CensusJob& job);

// One JSON object per line with "name" and "path" (relative to the manifest's
// directory) and optional "options": {scan_dropped_edges, numeric_only,
// search_extra_tets, max_nodes}. Throws MalformedDocument.
std::vector<CensusJob> read_manifest(const std::filesystem::path& manifest, const AnalysisOptions& defaults = {});

// Names already present in a results file; unparseable lines are ignored.
std::vector<std::string> completed_jobs(const std::filesystem::path& results);

// Explicit request, else FAMEDKIT_JOBS, else hardware concurrency.
std::size_t worker_count(std::optional<std::size_t> requested);

struct BatchSummary {
  std::size_t executed = 0;
  std::size_t skipped = 0;
  std::size_t errors = 0;
};

// Runs the jobs without a record in `results`, appending one line per job.
BatchSummary run_census(const std::vector<CensusJob>& jobs, const std::filesystem::path& results,
                        std::size_t workers);

nlohmann::json to_json(const ResultRecord& record);

} // namespace famedkit
