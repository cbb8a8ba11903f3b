// famedkit {orders|check|search|census}
// Exit codes: 0 ok, 1 not FAMED / not found, 2 input error, 3 internal error.

#include "famedkit/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace famedkit;

namespace {

constexpr int kOk = 0, kNegative = 1, kInputError = 2, kInternalError = 3;

bool is_input_error(const Error& e) {
  return dynamic_cast<const MalformedDocument*>(&e) || dynamic_cast<const NotInvolution*>(&e) ||
         dynamic_cast<const UnpairedFace*>(&e) || dynamic_cast<const SelfGluedFace*>(&e) ||
         dynamic_cast<const NonOrientable*>(&e) || dynamic_cast<const NotOneCusp*>(&e) ||
         dynamic_cast<const NoNullHomologousCurve*>(&e);
}

std::string matrix_text(const std::optional<RationalMatrix>& m) { return m ? to_json(*m).dump() : "undefined"; }

std::string not_famed_reason(const FamedReport& r) {
  if (!r.angle_nonempty) return "angle polytope empty";
  if (r.det_A_cal == 0) return "A_cal singular";
  if (r.det_B_bold == 0) return "B singular";
  return "identity fails";
}

// ======================================================
//                 Commands
// ======================================================

int cmd_orders(const std::string& file, bool json) {
  const IdealTriangulation tri = load_triangulation(file);
  const auto orders = enumerate_orders(tri);
  if (json) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& o : orders) list.push_back(to_json(o));
    std::cout << nlohmann::json{{"n_tetrahedra", tri.size()}, {"n_orders", orders.size()}, {"orders", list}}.dump(2)
              << '\n';
    return kOk;
  }
  std::cout << orders.size() << " orders\n";
  for (std::size_t k = 0; k < orders.size(); ++k) {
    std::cout << "  " << k << ":";
    for (int s : orders[k].edge_orientation) std::cout << (s > 0 ? " +" : " -");
    std::cout << '\n';
  }
  return kOk;
}

struct CheckFlags {
  bool all_orders = false, scan = false, numeric_only = false, json = false;
};

int cmd_check(const std::string& file, const CheckFlags& flags) {
  const IdealTriangulation tri = load_triangulation(file);
  AnalysisOptions options;
  options.keep_order_reports = flags.all_orders;
  options.scan_dropped_edges = flags.scan;
  options.allow_uncertified = flags.numeric_only;
  ResultRecord rec = analyze(tri, options);
  rec.name = file;
  rec.source = file;
  const bool famed = rec.input_order_report ? rec.input_order_report->famed : rec.n_famed_orders > 0;

  if (flags.json) {
    std::cout << to_json(rec).dump(2) << '\n';
    return famed ? kOk : kNegative;
  }
  std::cout << "tetrahedra: " << rec.n_tetrahedra << '\n'
            << "orders: " << rec.n_famed_orders << "/" << rec.n_orders << " FAMED\n"
            << "angle structure: " << (rec.angle_structure ? "yes" : "no") << '\n'
            << "geometry: " << to_string(rec.geometry->status);
  if (rec.geometry->volume) std::cout << " (volume " << std::setprecision(12) << *rec.geometry->volume << ")";
  if (rec.geometry->status == GeometryStatus::numerically_geometric) std::cout << " [numeric-only]";
  std::cout << '\n';
  if (const auto& r = rec.input_order_report) {
    std::cout << "input order: " << (r->famed ? "FAMED" : "not FAMED (" + not_famed_reason(*r) + ")") << '\n'
              << "  B^-1 A = " << matrix_text(r->lhs) << '\n';
  } else if (rec.n_orders > 0 && rec.n_famed_orders == 0 && !rec.angle_structure) {
    std::cout << "not FAMED: angle polytope empty\n";
  } else if (rec.n_orders == 0) {
    std::cout << "not FAMED: no orders\n";
  }
  for (const auto& o : rec.orders) {
    std::cout << "order " << o.index << ": "
              << (o.report.famed ? "FAMED" : "not FAMED (" + not_famed_reason(o.report) + ")")
              << ", B^-1 A = " << matrix_text(o.report.lhs);
    if (!o.famed_by_dropped_edge.empty()) {
      std::cout << ", by dropped edge:";
      for (bool b : o.famed_by_dropped_edge) std::cout << ' ' << (b ? 'Y' : 'n');
    }
    std::cout << '\n';
  }
  if (flags.scan) std::cout << "dropped-edge dependent: " << (rec.dropped_edge_dependent ? "yes" : "no") << '\n';
  const auto& c = rec.conjecture;
  std::cout << "conjecture checks: " << c.orders_checked << " orders, " << c.violations.size() << " violations\n";
  return famed ? kOk : kNegative;
}

int cmd_search(const std::string& file, const SearchBudget& budget, const std::string& out_file, bool json) {
  const IdealTriangulation tri = load_triangulation(file);
  const SearchOutcome outcome = search_famed_geometric(tri, budget);
  nlohmann::json j = {{"found", outcome.result.has_value()}, {"stats", to_json(outcome.stats)}};
  if (const auto& r = outcome.result) {
    nlohmann::json path = nlohmann::json::array();
    for (const auto& m : r->path) path.push_back(to_json(m));
    j["path"] = path;
    j["n_tetrahedra"] = r->triangulation.size();
    j["geometry"] = to_json(r->geometry);
    j["famed_report"] = to_json(r->report);
    j["triangulation"] = to_json(r->triangulation);
    if (!out_file.empty()) std::ofstream(out_file) << to_json(r->triangulation).dump(1) << '\n';
  }
  if (json) {
    std::cout << j.dump(2) << '\n';
  } else if (const auto& r = outcome.result) {
    std::cout << "found: " << r->triangulation.size() << " tetrahedra after " << r->path.size() << " moves, "
              << to_string(r->geometry.status) << '\n'
              << "path: " << j["path"].dump() << '\n'
              << "B^-1 A = " << matrix_text(r->report.lhs) << '\n'
              << "stats: " << j["stats"].dump() << '\n';
  } else {
    std::cout << "not found\nstats: " << j["stats"].dump() << '\n';
  }
  return outcome.result ? kOk : kNegative;
}

int cmd_census(const std::string& manifest, const std::string& out, std::optional<std::size_t> jobs,
               const AnalysisOptions& defaults) {
  const auto list = read_manifest(manifest, defaults);
  const std::size_t workers = worker_count(jobs);
  const BatchSummary s = run_census(list, out, workers);
  std::cout << "jobs: " << list.size() << ", executed: " << s.executed << ", skipped: " << s.skipped
            << ", errors: " << s.errors << ", workers: " << workers << '\n';
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"FAMED orders, Neumann-Zagier matrices and certified geometry for ideal triangulations"};
  app.require_subcommand(1);

  std::string file;
  bool json = false;

  auto* orders = app.add_subcommand("orders", "Enumerate the orders of a triangulation");
  orders->add_option("file", file, "Triangulation document")->required();
  orders->add_flag("--json", json, "JSON output");

  CheckFlags check_flags;
  auto* check = app.add_subcommand("check", "FAMED check and geometricity");
  check->add_option("file", file, "Triangulation document")->required();
  check->add_flag("--all-orders", check_flags.all_orders, "Report every order");
  check->add_flag("--scan-dropped-edges", check_flags.scan, "Repeat the check for every dropped edge");
  check->add_flag("--numeric-only", check_flags.numeric_only, "Accept uncertified numeric solutions");
  check->add_flag("--json", check_flags.json, "JSON output");

  SearchBudget budget;
  double time_limit = 0;
  std::string found_out;
  auto* search = app.add_subcommand("search", "Retriangulate until a FAMED geometric triangulation appears");
  search->add_option("file", file, "Triangulation document")->required();
  search->add_option("--max-extra-tets", budget.max_extra_tets, "Tetrahedra allowed above the start")
      ->capture_default_str();
  search->add_option("--max-nodes", budget.max_nodes, "Cap on distinct triangulations visited")
      ->capture_default_str();
  search->add_option("--time-limit", time_limit, "Wall-clock limit in seconds (0: none)");
  search->add_option("--write", found_out, "Write the found triangulation here");
  search->add_flag("--numeric-only", budget.allow_uncertified, "Accept uncertified numeric solutions");
  search->add_flag("--json", json, "JSON output");

  std::string manifest, out = "results.jsonl";
  std::size_t census_jobs = 0;
  std::size_t census_extra = 0;
  std::size_t census_nodes = SearchBudget{}.max_nodes;
  AnalysisOptions census_defaults;
  auto* census = app.add_subcommand("census", "Batch run over a JSONL manifest");
  census->add_option("manifest", manifest, "JSONL manifest of {name, path}")->required();
  census->add_option("--out", out, "Results file (appended, resumable)")->capture_default_str();
  census->add_option("--jobs", census_jobs, "Worker threads (default: FAMEDKIT_JOBS or all cores)");
  auto* extra_opt = census->add_option("--search-extra-tets", census_extra,
                                       "Retriangulate jobs without a FAMED geometric order");
  census->add_option("--max-nodes", census_nodes, "Search node cap")->capture_default_str();
  census->add_flag("--scan-dropped-edges", census_defaults.scan_dropped_edges, "Dropped-edge scan per order");
  census->add_flag("--numeric-only", census_defaults.allow_uncertified, "Accept uncertified numeric solutions");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*orders) return cmd_orders(file, json);
    if (*check) return cmd_check(file, check_flags);
    if (*search) {
      if (time_limit > 0) budget.time_limit_seconds = time_limit;
      return cmd_search(file, budget, found_out, json);
    }
    if (*census) {
      if (extra_opt->count() > 0) census_defaults.search = SearchBudget{census_extra, census_nodes, {}, false};
      return cmd_census(manifest, out, census_jobs ? std::optional<std::size_t>(census_jobs) : std::nullopt,
                        census_defaults);
    }
  } catch (const Error& e) {
    std::cerr << "famedkit: " << e.what() << '\n';
    return is_input_error(e) ? kInputError : kInternalError;
  } catch (const std::exception& e) {
    std::cerr << "famedkit: internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}
