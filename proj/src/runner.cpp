#include "airan/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "airan/errors.hpp"

namespace airan {

ResultBundle run_scenario(const ScenarioSpec& spec, const PlatformCatalog& catalog) {
  spec.ran.validate();
  spec.llm.validate();
  if (spec.horizon_weeks < 1) throw DomainError("horizon_weeks must be >= 1");
  if (spec.w_dim < 0 || spec.w_dim > spec.horizon_weeks)
    throw DomainError("w_dim must be in [0, horizon_weeks]");

  ResultBundle b;
  b.spec = spec;
  b.config_digest = config_digest(spec, catalog);
  b.rho_tok = resolve_depreciation(spec.pricing, spec.llm.dens_annual);
  b.llm_users = llm_users(spec.llm, spec.ran);

  const ServerModel primary = catalog.resolve(spec.platform_primary);
  const ServerModel baseline = catalog.resolve(spec.platform_baseline);
  b.fleet_primary = dimension_cluster(spec.ran, primary, spec.mix, spec.w_dim);
  b.fleet_baseline = dimension_cluster(spec.ran, baseline, spec.mix, spec.w_dim);

  const int weeks = spec.horizon_weeks;
  const std::int64_t g_total = b.fleet_primary.g_total;
  b.allocation = AllocationSeries(weeks, g_total);
  b.weekly_revenue.resize(static_cast<std::size_t>(weeks));
  b.llm_energy.resize(static_cast<std::size_t>(weeks));
  b.ran_opex.resize(static_cast<std::size_t>(weeks));
  b.opex_attributed.resize(static_cast<std::size_t>(weeks));
  std::vector<MicroUsd> net(static_cast<std::size_t>(weeks));

  int first_unmet_week = -1;
  std::int64_t unmet_hours = 0;
  for (int w = 0; w < weeks; ++w) {
    for (int h = 0; h < kHoursPerWeek; ++h) {
      const auto ran = gpus_ran(spec.ran, b.fleet_primary.net_mbps_per_server, w, h);
      const auto req =
          required_gpus(spec.llm, arrival_rate(spec.llm, b.llm_users, w, h), w);
      const AllocationCell cell = allocate_cell(g_total, ran, req);
      if (cell.unmet_ran > 0) {
        if (first_unmet_week < 0) first_unmet_week = w;
        ++unmet_hours;
      }
      b.allocation.at(w, h) = cell;
    }
    const auto cells = b.allocation.week(w);
    const auto i = static_cast<std::size_t>(w);
    const double revenue =
        weekly_revenue(cells, spec.llm, b.llm_users, spec.pricing, b.rho_tok, w);
    const double energy = llm_energy_cost(cells, primary, spec.ran);
    const double ran_cost = weekly_opex(spec.ran, b.fleet_primary, w);
    b.weekly_revenue[i] = to_micro_usd(revenue);
    b.llm_energy[i] = to_micro_usd(energy);
    b.ran_opex[i] = to_micro_usd(ran_cost);
    switch (spec.opex_attribution) {
      case OpexAttribution::llm_energy:
        b.opex_attributed[i] = b.llm_energy[i];
        break;
      case OpexAttribution::ran_opex:
        b.opex_attributed[i] = b.ran_opex[i];
        break;
      case OpexAttribution::both:
        b.opex_attributed[i] = checked_add(b.llm_energy[i], b.ran_opex[i]);
        break;
    }
    net[i] = checked_add(b.weekly_revenue[i], -b.opex_attributed[i]);
  }
  if (first_unmet_week >= 0)
    b.warnings.push_back(fmt::format(
        "RAN demand exceeds the {}-server fleet in {} hours starting at week {}",
        g_total, unmet_hours, first_unmet_week));

  const MicroUsd investment = to_micro_usd(
      marginal_investment(b.fleet_primary, b.fleet_baseline));
  b.roi = break_even_and_roi(net, investment);
  return b;
}

std::vector<ResultBundle> run_sweep(std::span<const SweepPoint> points,
                                    const PlatformCatalog& catalog,
                                    unsigned threads) {
  if (points.empty()) throw DomainError("sweep has no points");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));

  std::vector<ResultBundle> out(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::size_t error_index = std::numeric_limits<std::size_t>::max();
  std::mutex error_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        out[i] = run_scenario(points[i].spec, catalog);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        // Report the earliest failing point regardless of scheduling.
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (error) std::rethrow_exception(error);
  return out;
}

WeeklyAverages weekly_averages(const AllocationSeries& allocation) {
  WeeklyAverages a;
  for (int w = 0; w < allocation.weeks(); ++w) {
    std::array<std::int64_t, kHoursPerWeek> ran{}, llm{}, idle{};
    const auto cells = allocation.week(w);
    for (std::size_t h = 0; h < cells.size(); ++h) {
      ran[h] = cells[h].ran;
      llm[h] = cells[h].llm;
      idle[h] = cells[h].idle;
    }
    a.ran.push_back(weekly_average(ran));
    a.llm.push_back(weekly_average(llm));
    a.idle.push_back(weekly_average(idle));
  }
  return a;
}

namespace {

using json = nlohmann::json;

json money_series(const std::vector<MicroUsd>& v) {
  json arr = json::array();
  for (auto m : v) arr.push_back(to_usd(m));
  return arr;
}

json multiple_json(double m) {
  if (std::isinf(m)) return m > 0 ? "inf" : "-inf";
  return m;
}

}  // namespace

json fleet_to_json(const FleetPlan& fleet) {
  return {{"platform", fleet.server.name},
          {"g_total", fleet.g_total},
          {"w_dim", fleet.w_dim},
          {"h_peak", fleet.h_peak},
          {"capex_usd", fleet.capex_usd},
          {"cost_usd", fleet.server.cost_usd},
          {"power_w", fleet.server.power_w},
          {"mixed_capacity_mhz", mixed_capacity(fleet.server, fleet.mix)},
          {"net_mbps_per_server", fleet.net_mbps_per_server}};
}

json roi_to_json(const RoiReport& roi) {
  return {{"investment_usd", to_usd(roi.investment)},
          {"weekly_net_return", money_series(roi.weekly_net_return)},
          {"cumulative_return", money_series(roi.cumulative_return)},
          {"break_even_week",
           roi.break_even_week ? json(*roi.break_even_week) : json()},
          {"total_return_usd",
           roi.cumulative_return.empty() ? 0.0 : to_usd(roi.cumulative_return.back())},
          {"return_multiple", multiple_json(roi.return_multiple)}};
}

json bundle_to_json(const ResultBundle& b, const PlatformCatalog& catalog,
                    const BundleJsonOptions& options) {
  const auto avg = weekly_averages(b.allocation);
  json hourly = {{"ran", json::array()}, {"llm", json::array()}, {"idle", json::array()}};
  for (const auto& c : b.allocation.week(0)) {
    hourly["ran"].push_back(c.ran);
    hourly["llm"].push_back(c.llm);
    hourly["idle"].push_back(c.idle);
  }
  json allocation = {{"g_total", b.allocation.g_total()},
                     {"weeks", b.allocation.weeks()},
                     {"hourly_week0", hourly},
                     {"weekly_avg", {{"ran", avg.ran}, {"llm", avg.llm}, {"idle", avg.idle}}}};
  if (options.include_grid) {
    json grid = {{"ran", json::array()}, {"llm", json::array()},
                 {"idle", json::array()}, {"required", json::array()},
                 {"free", json::array()}};
    for (int w = 0; w < b.allocation.weeks(); ++w) {
      for (const auto& c : b.allocation.week(w)) {
        grid["ran"].push_back(c.ran);
        grid["llm"].push_back(c.llm);
        grid["idle"].push_back(c.idle);
        grid["required"].push_back(c.required);
        grid["free"].push_back(c.free);
      }
    }
    allocation["grid"] = std::move(grid);
  }
  return {
      {"label", b.label()},
      {"config_digest", b.config_digest},
      {"allocation", std::move(allocation)},
      {"weekly_revenue", money_series(b.weekly_revenue)},
      {"llm_energy", money_series(b.llm_energy)},
      {"ran_opex", money_series(b.ran_opex)},
      {"opex_series", money_series(b.opex_attributed)},
      {"cumulative_return", money_series(b.roi.cumulative_return)},
      {"fleet_primary", fleet_to_json(b.fleet_primary)},
      {"fleet_baseline", fleet_to_json(b.fleet_baseline)},
      {"roi", roi_to_json(b.roi)},
      {"warnings", b.warnings},
      {"metadata",
       {{"engine_version", engine_version()},
        {"config_digest", b.config_digest},
        {"rho_tok", b.rho_tok},
        {"llm_users", b.llm_users},
        {"platform_primary", catalog.resolve(b.spec.platform_primary).name},
        {"platform_baseline", catalog.resolve(b.spec.platform_baseline).name},
        {"spec", to_json(b.spec)}}},
  };
}

}  // namespace airan
