#include "famedkit/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

namespace famedkit {

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void record_conjecture(ConjectureFlags& flags, std::size_t order_index, const ConjectureDiagnostics& d) {
  ++flags.orders_checked;
  const bool det_ok = d.determinant_pattern();
  const bool null_ok = d.nullity_pattern();
  if (!det_ok) ++flags.determinant_violations;
  if (!null_ok) ++flags.nullity_violations;
  if (!det_ok || !null_ok)
    flags.violations.push_back({{"order", order_index},
                                {"det_A_cal", d.det_A_cal.str()},
                                {"det_B", d.det_B_bold.str()},
                                {"nullity_A_cal", d.nullity_A_cal},
                                {"nullity_B", d.nullity_B_bold}});
}

} // namespace

std::string ResultRecord::geometric_label() const {
  if (!geometry) return "none";
  switch (geometry->status) {
  case GeometryStatus::certified_geometric: return "certified";
  case GeometryStatus::numerically_geometric: return "numeric";
  default: return "none";
  }
}

ResultRecord analyze(const IdealTriangulation& tri, const AnalysisOptions& options) {
  ResultRecord rec;
  rec.n_tetrahedra = tri.size();
  const auto cells = quotient_cells(tri);
  const auto orders = enumerate_orders(tri, cells);
  rec.n_orders = orders.size();
  rec.input_ordered = is_ordered(tri);
  rec.angle_structure = angle_structure_feasible(tri).has_value();

  if (rec.input_ordered) rec.input_order_report = evaluate_ordered(tri).report;

  for (std::size_t k = 0; k < orders.size(); ++k) {
    const IdealTriangulation ordered = apply_order(tri, orders[k]);
    const FaceMatrices face = face_adjacency_matrices(ordered);
    const CuspTriangulation cusp = cusp_triangulation(ordered);
    const PeripheralCurve longitude = preferred_longitude(ordered, cusp);
    const NZMatrices nz = neumann_zagier(cusp, longitude, cells.edges.size() - 1);
    OrderRecord entry{k, orders[k], famed_check(face, nz, rec.angle_structure), {}};
    record_conjecture(rec.conjecture, k, entry.report.diagnostics);
    if (entry.report.famed) {
      ++rec.n_famed_orders;
      rec.famed_order_indices.push_back(k);
    }
    if (options.scan_dropped_edges) {
      for (std::size_t j = 0; j < cells.edges.size(); ++j)
        entry.famed_by_dropped_edge.push_back(
            famed_check(face, neumann_zagier(cusp, longitude, j), rec.angle_structure).famed);
      const auto& f = entry.famed_by_dropped_edge;
      if (std::adjacent_find(f.begin(), f.end(), std::not_equal_to<>()) != f.end()) rec.dropped_edge_dependent = true;
    }
    if (options.keep_order_reports || options.scan_dropped_edges) rec.orders.push_back(std::move(entry));
  }

  rec.geometry = check_geometry(tri, options.allow_uncertified);
  if (rec.n_famed_orders > 0) rec.famed_found = "root";

  if (options.search && !(rec.n_famed_orders > 0 && rec.geometry->geometric())) {
    SearchBudget budget = *options.search;
    budget.allow_uncertified = options.allow_uncertified;
    rec.search = search_famed_geometric(tri, budget);
    if (rec.search->result && rec.famed_found == "none")
      rec.famed_found = rec.search->result->path.empty() ? "root" : "search";
  }
  return rec;
}

ResultRecord run_job(const CensusJob& job) {
  ResultRecord rec;
  const auto start = std::chrono::steady_clock::now();
  const std::string started = utc_now();
  try {
    rec = analyze(load_triangulation(job.source.string()), job.options);
  } catch (const Error& e) {
    const std::string what = e.what();
    rec.error_type = what.substr(0, what.find(':'));
    rec.error_message = what;
  } catch (const std::exception& e) {
    rec.error_type = "InternalError";
    rec.error_message = e.what();
  }
  rec.name = job.name;
  rec.source = job.source.string();
  rec.started_at = started;
  rec.finished_at = utc_now();
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

// ======================================================
//                 Manifest and results files
// ======================================================

std::vector<CensusJob> read_manifest(const std::filesystem::path& manifest, const AnalysisOptions& defaults) {
  std::ifstream in(manifest);
  if (!in) throw MalformedDocument("cannot open manifest " + manifest.string());
  const auto base = manifest.parent_path();
  std::vector<CensusJob> jobs;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = manifest.string() + ":" + std::to_string(number);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw MalformedDocument(where + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("name") || !j.contains("path") || !j["name"].is_string() ||
        !j["path"].is_string())
      throw MalformedDocument(where + ": expected {\"name\": ..., \"path\": ...}");
    CensusJob job{j["name"].get<std::string>(), std::filesystem::path(j["path"].get<std::string>()), defaults};
    if (job.source.is_relative()) job.source = base / job.source;
    if (j.contains("options")) {
      const auto& o = j["options"];
      job.options.scan_dropped_edges = o.value("scan_dropped_edges", job.options.scan_dropped_edges);
      job.options.allow_uncertified = o.value("numeric_only", job.options.allow_uncertified);
      if (o.contains("search_extra_tets")) {
        SearchBudget b = job.options.search.value_or(SearchBudget{});
        b.max_extra_tets = o["search_extra_tets"].get<std::size_t>();
        b.max_nodes = o.value("max_nodes", b.max_nodes);
        job.options.search = b;
      }
    }
    jobs.push_back(std::move(job));
  }
  return jobs;
}

std::vector<std::string> completed_jobs(const std::filesystem::path& results) {
  std::vector<std::string> names;
  std::ifstream in(results);
  std::string line;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_object() && j.contains("name") && j["name"].is_string()) names.push_back(j["name"].get<std::string>());
  }
  return names;
}

std::size_t worker_count(std::optional<std::size_t> requested) {
  if (requested && *requested > 0) return *requested;
  if (const char* env = std::getenv("FAMEDKIT_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

BatchSummary run_census(const std::vector<CensusJob>& jobs, const std::filesystem::path& results,
                        std::size_t workers) {
  BatchSummary summary;
  const auto done_list = completed_jobs(results);
  const std::set<std::string> done(done_list.begin(), done_list.end());
  std::vector<const CensusJob*> pending;
  for (const auto& job : jobs) {
    if (done.count(job.name))
      ++summary.skipped;
    else
      pending.push_back(&job);
  }

  // A truncated last line must not swallow the next record.
  bool needs_newline = false;
  if (std::ifstream probe(results, std::ios::binary | std::ios::ate); probe && probe.tellg() > 0) {
    probe.seekg(-1, std::ios::end);
    needs_newline = probe.get() != '\n';
  }
  std::ofstream out(results, std::ios::app);
  if (!out) throw MalformedDocument("cannot open " + results.string() + " for appending");
  if (needs_newline) out << '\n';

  std::mutex writer;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < pending.size(); i = next++) {
      const ResultRecord rec = run_job(*pending[i]);
      const std::string line = to_json(rec).dump();
      std::lock_guard lock(writer);
      out << line << '\n';
      out.flush();
      ++summary.executed;
      if (!rec.ok()) ++summary.errors;
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n = std::min(std::max<std::size_t>(workers, 1), std::max<std::size_t>(pending.size(), 1));
  for (std::size_t w = 0; w < n; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return summary;
}

// ======================================================
//                 JSON
// ======================================================

nlohmann::json to_json(const ResultRecord& rec) {
  nlohmann::json j = {{"schema", "famedkit-result-v1"},
                      {"name", rec.name},
                      {"source", rec.source},
                      {"started_at", rec.started_at},
                      {"finished_at", rec.finished_at},
                      {"seconds", rec.seconds}};
  if (!rec.ok()) {
    j["error"] = {{"type", *rec.error_type}, {"message", rec.error_message.value_or("")}};
    return j;
  }
  j["n_tetrahedra"] = rec.n_tetrahedra;
  j["n_orders"] = rec.n_orders;
  j["n_famed_orders"] = rec.n_famed_orders;
  j["famed_order_indices"] = rec.famed_order_indices;
  j["angle_structure"] = rec.angle_structure;
  j["geometric"] = rec.geometric_label();
  if (rec.geometry) j["geometry"] = to_json(*rec.geometry);
  j["famed_found"] = rec.famed_found;
  if (rec.input_order_report) j["input_order"] = to_json(*rec.input_order_report);

  const auto& c = rec.conjecture;
  j["conjecture_flags"] = {{"orders_checked", c.orders_checked},
                           {"determinant_violations", c.determinant_violations},
                           {"nullity_violations", c.nullity_violations},
                           {"violations", c.violations}};
  if (!rec.orders.empty()) {
    nlohmann::json orders = nlohmann::json::array();
    for (const auto& o : rec.orders) {
      nlohmann::json e = {{"index", o.index}, {"order", to_json(o.order)}, {"report", to_json(o.report)}};
      if (!o.famed_by_dropped_edge.empty()) e["famed_by_dropped_edge"] = o.famed_by_dropped_edge;
      orders.push_back(std::move(e));
    }
    j["orders"] = std::move(orders);
    j["dropped_edge_dependent"] = rec.dropped_edge_dependent;
  }
  if (rec.search) {
    nlohmann::json s = {{"found", rec.search->result.has_value()}, {"stats", to_json(rec.search->stats)}};
    if (const auto& r = rec.search->result) {
      nlohmann::json path = nlohmann::json::array();
      for (const auto& m : r->path) path.push_back(to_json(m));
      s["path"] = std::move(path);
      s["n_tetrahedra"] = r->triangulation.size();
      s["n_orders"] = r->n_orders;
      s["order"] = to_json(r->order);
      s["famed_report"] = to_json(r->report);
      s["geometry"] = to_json(r->geometry);
      s["triangulation"] = to_json(r->triangulation);
    }
    j["search"] = std::move(s);
  }
  return j;
}

} // namespace famedkit
