// airan: command-line front end of the dual-use RAN/LLM scenario engine.
//
//   airan run    [--config FILE] [--preset NAME] --out DIR
//   airan sweep  --config FILE [--preset NAME] --out DIR
//   airan catalog list [--json]
//   airan ingest-trace --in TRACE.csv --out PROFILE.csv
//   airan serve  [--port N] [--host H] [--static DIR]
//
// Exit status is 0 only when the whole command succeeded.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "airan/demand_profiles.hpp"
#include "airan/errors.hpp"
#include "airan/export.hpp"
#include "airan/runner.hpp"
#include "airan/scenario.hpp"
#include "airan/service.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json read_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw airan::LoadError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw airan::LoadError(fmt::format("{}: {}", path, e.what()));
  }
}

airan::ValidateOptions validate_options(const std::string& config,
                                        const std::string& preset) {
  airan::ValidateOptions opts;
  if (!preset.empty()) opts.preset = preset;
  if (!config.empty()) opts.base_dir = fs::path(config).parent_path();
  return opts;
}

void print_summary(const airan::ResultBundle& b) {
  const auto& r = b.roi;
  fmt::print("{}: fleet {} x {} vs {} x {}, I = ${}, return ${}, R/I = {}, "
             "break-even {}\n",
             b.label(), b.fleet_primary.g_total, b.fleet_primary.server.name,
             b.fleet_baseline.g_total, b.fleet_baseline.server.name,
             airan::format_usd(r.investment),
             airan::format_usd(r.cumulative_return.back()),
             std::isinf(r.return_multiple) ? std::string("inf")
                                           : fmt::format("{:.2f}", r.return_multiple),
             r.break_even_week ? fmt::format("week {}", *r.break_even_week)
                               : std::string("not reached"));
  for (const auto& w : b.warnings) fmt::print(stderr, "warning: {}: {}\n", b.label(), w);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-use RAN + LLM inference techno-economic scenario engine"};
  app.require_subcommand(1);
  std::string catalog_path;
  app.add_option("--catalog", catalog_path, "Platform catalog JSON (default: bundled)")
      ->check(CLI::ExistingFile);

  std::string config_path, preset, out_dir;
  bool full_grid = false;
  bool no_grid = false;
  unsigned threads = 0;

  auto* run = app.add_subcommand("run", "Evaluate one scenario and export its tables");
  run->add_option("--config", config_path, "Scenario JSON document")->check(CLI::ExistingFile);
  run->add_option("--preset", preset, "Base preset (milan_s1, milan_s2)");
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_flag("--no-grid", no_grid, "Skip the per-(week, hour) allocation table");

  auto* sweep = app.add_subcommand("sweep", "Evaluate every point of a sweep");
  sweep->add_option("--config", config_path, "Scenario JSON with a sweep section")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--preset", preset, "Base preset (milan_s1, milan_s2)");
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_flag("--full-grid", full_grid, "Also export per-(week, hour) allocations");
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* catalog_cmd = app.add_subcommand("catalog", "Inspect the platform catalog");
  catalog_cmd->require_subcommand(1);
  bool catalog_json = false;
  auto* list = catalog_cmd->add_subcommand("list", "List platforms and their metrics");
  list->add_flag("--json", catalog_json, "Print the catalog document");

  std::string trace_in, profile_out;
  airan::TraceColumns columns;
  bool input_only = false;
  auto* ingest = app.add_subcommand("ingest-trace", "Derive an LLM weekly profile from a trace");
  ingest->add_option("--in", trace_in, "Trace CSV")->required()->check(CLI::ExistingFile);
  ingest->add_option("--out", profile_out, "Profile CSV to write")->required();
  ingest->add_option("--timestamp-col", columns.timestamp, "Timestamp column name")
      ->capture_default_str();
  ingest->add_option("--request-col", columns.request_tokens, "Request token column name")
      ->capture_default_str();
  ingest->add_option("--response-col", columns.response_tokens, "Response token column name")
      ->capture_default_str();
  ingest->add_flag("--input-tokens-only", input_only,
                   "Average request tokens only, ignoring response tokens");

  int port = 8080;
  std::string host = "127.0.0.1";
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "Serve the HTTP/JSON API");
  serve->add_option("--port", port, "Port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--static", static_dir, "Directory of static assets to serve at /")
      ->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    const airan::PlatformCatalog catalog = catalog_path.empty()
                                               ? airan::PlatformCatalog::builtin()
                                               : airan::PlatformCatalog::load(catalog_path);

    if (*run) {
      const json raw = read_config(config_path);
      airan::ScenarioSpec spec =
          airan::validate_spec(raw, catalog, validate_options(config_path, preset));
      if (!spec.sweep.empty())
        fmt::print(stderr, "note: ignoring the sweep section; use `airan sweep`\n");
      spec.sweep = {};
      const auto bundle = airan::run_scenario(spec, catalog);
      print_summary(bundle);
      airan::export_tables(std::span(&bundle, 1), out_dir, catalog,
                           {.full_grid = !no_grid, .generated_at = utc_now()});
      return 0;
    }

    if (*sweep) {
      const json raw = read_config(config_path);
      const auto points =
          airan::expand_sweep(raw, catalog, validate_options(config_path, preset));
      const auto bundles = airan::run_sweep(points, catalog, threads);
      for (const auto& b : bundles) print_summary(b);
      airan::export_tables(bundles, out_dir, catalog,
                           {.full_grid = full_grid, .generated_at = utc_now()});
      return 0;
    }

    if (*list) {
      if (catalog_json) {
        fmt::print("{}\n", catalog.to_json().dump(2));
        return 0;
      }
      const airan::DeploymentMix mix;
      fmt::print("{:<12} {:<8} {:<8} {:>9} {:>7} {:>9} {:>9} {:>9}\n", "name",
                 "accel", "stack", "cost_usd", "power_w", "macro", "micro", "mixed");
      for (const auto& p : catalog.platforms()) {
        fmt::print("{:<12} {:<8} {:<8} {:>9.0f} {:>7.0f} {:>9.0f} {:>9.0f} {:>9.0f}\n",
                   p.name, p.accelerator, p.l1_stack, p.cost_usd, p.power_w,
                   airan::baseband_capacity(p.macro_config),
                   airan::baseband_capacity(p.micro_config),
                   airan::mixed_capacity(p, mix));
      }
      for (const auto& s : catalog.stacks()) {
        const auto m = catalog.resolve(s);
        const auto eff =
            airan::efficiency_metrics(airan::mixed_capacity(m, mix), m.cost_usd, m.power_w);
        fmt::print("{:<12} {:<8} {:<8} {:>9.0f} {:>7.0f} {:>9.0f} {:>9.0f} {:>9.0f}"
                   "  eta_C {:.3f} MHz/$  eta_O {:.2f} MHz/W\n",
                   "(mixed)", "", s, m.cost_usd, m.power_w, m.macro_mhz, m.micro_mhz,
                   airan::mixed_capacity(m, mix), eff.capital_mhz_per_usd,
                   eff.power_mhz_per_w);
      }
      return 0;
    }

    if (*ingest) {
      const auto trace = airan::read_trace_csv(trace_in, columns);
      for (const auto& w : trace.warnings) fmt::print(stderr, "warning: {}\n", w);
      const auto summary = airan::ingest_trace(
          trace.records, {.count_response_tokens = !input_only});
      std::ofstream out(profile_out, std::ios::binary | std::ios::trunc);
      if (!out) throw airan::LoadError("cannot write " + profile_out);
      out << airan::to_profile_csv(summary.profile);
      if (!out.flush()) throw airan::LoadError("write failed: " + profile_out);
      fmt::print("records: {}\nmean_tokens_per_request: {:.4f}\nprofile: {}\n",
                 summary.record_count, summary.mean_tokens_per_request, profile_out);
      return 0;
    }

    if (*serve) {
      const airan::ApiService api(catalog);
      airan::HttpServer server(api, static_dir);
      const int bound = server.bind(host, port);
      if (bound < 0) {
        fmt::print(stderr, "error: cannot bind {}:{}\n", host, port);
        return 1;
      }
      fmt::print("serving on http://{}:{}/api\n", host, bound);
      std::fflush(stdout);
      return server.listen() ? 0 : 1;
    }
  } catch (const airan::ConfigError& e) {
    for (const auto& i : e.issues())
      fmt::print(stderr, "config error: {}{}{}\n", i.path, i.path.empty() ? "" : " ",
                 i.message);
    return 1;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 1;
}
