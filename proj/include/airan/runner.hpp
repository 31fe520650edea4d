#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "airan/economics.hpp"
#include "airan/scenario.hpp"

namespace airan {

/// Everything one scenario evaluation produces. Weekly money series are in
/// micro-USD.
struct ResultBundle {
  ScenarioSpec spec;
  AllocationSeries allocation;
  std::vector<MicroUsd> weekly_revenue;
  std::vector<MicroUsd> llm_energy;
  std::vector<MicroUsd> ran_opex;
  std::vector<MicroUsd> opex_attributed;
  FleetPlan fleet_primary;
  FleetPlan fleet_baseline;
  RoiReport roi;
  double rho_tok = 1.0;
  std::int64_t llm_users = 0;
  std::string config_digest;
  /// Non-fatal conditions, e.g. weeks where RAN demand exceeds the fleet.
  std::vector<std::string> warnings;

  const std::string& label() const { return spec.name; }
};

/// Evaluates every (week, hour) of the horizon. Deterministic: the same spec
/// and catalog always give the same bundle. Throws DomainError or
/// ConfigError; never returns a partial result.
ResultBundle run_scenario(const ScenarioSpec& spec, const PlatformCatalog& catalog);

/// Runs each point independently; results keep the order of `points`.
/// `threads` = 0 picks the hardware concurrency.
std::vector<ResultBundle> run_sweep(std::span<const SweepPoint> points,
                                    const PlatformCatalog& catalog,
                                    unsigned threads = 0);

/// Weekly means over the 168 hours of RAN, LLM and idle GPUs.
struct WeeklyAverages {
  std::vector<double> ran;
  std::vector<double> llm;
  std::vector<double> idle;
};
WeeklyAverages weekly_averages(const AllocationSeries& allocation);

struct BundleJsonOptions {
  bool include_grid = false;  // full per-(week, hour) allocation
};

nlohmann::json fleet_to_json(const FleetPlan& fleet);
nlohmann::json roi_to_json(const RoiReport& roi);
nlohmann::json bundle_to_json(const ResultBundle& bundle,
                              const PlatformCatalog& catalog,
                              const BundleJsonOptions& options = {});

}  // namespace airan
