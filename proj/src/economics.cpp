#include "airan/economics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "airan/errors.hpp"

namespace airan {

MicroUsd to_micro_usd(double usd) {
  if (!std::isfinite(usd) || std::abs(usd) > 1.0e30)
    throw DomainError(fmt::format("monetary value {} out of range", usd));
  return static_cast<MicroUsd>(std::round(usd * 1e6));
}

MicroUsd checked_add(MicroUsd a, MicroUsd b) {
  MicroUsd r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("monetary sum overflow");
  return r;
}

double to_usd(MicroUsd micros) { return static_cast<double>(micros) / 1e6; }

std::string_view to_string(BillingMode m) {
  return m == BillingMode::capacity ? "capacity" : "demand";
}

std::string_view to_string(DepreciationMode m) {
  return m == DepreciationMode::exponent ? "exponent" : "ratio";
}

std::string_view to_string(OpexAttribution m) {
  switch (m) {
    case OpexAttribution::llm_energy:
      return "llm_energy";
    case OpexAttribution::ran_opex:
      return "ran_opex";
    case OpexAttribution::both:
      return "both";
  }
  return "?";
}

void PricingParams::validate() const {
  if (!(price0_usd_per_tok > 0.0) || !std::isfinite(price0_usd_per_tok))
    throw ConfigError("pricing.price0_usd_per_tok", "must be > 0");
  if (tok_depreciation_annual.has_value() == k_ratio.has_value())
    throw ConfigError("pricing",
                      "exactly one of tok_depreciation_annual and k_ratio must be set");
  if (tok_depreciation_annual &&
      !(*tok_depreciation_annual > 0.0 && *tok_depreciation_annual <= 1.0))
    throw ConfigError("pricing.tok_depreciation_annual", "must be in (0,1]");
  if (k_ratio && !(*k_ratio >= 0.0 && std::isfinite(*k_ratio)))
    throw ConfigError("pricing.k_ratio", "must be >= 0");
}

double resolve_depreciation(const PricingParams& pricing, double dens_annual) {
  pricing.validate();
  if (pricing.tok_depreciation_annual) return *pricing.tok_depreciation_annual;
  const double k = *pricing.k_ratio;
  if (pricing.k_mode == DepreciationMode::ratio) return k * dens_annual;
  return std::pow(dens_annual, -k);
}

double token_price(const PricingParams& pricing, double rho_tok, int week) {
  return pricing.price0_usd_per_tok * std::pow(rho_tok, week / kWeeksPerYear);
}

std::int64_t allocate(std::int64_t required, std::int64_t free) {
  return std::min(required, free);
}

double token_throughput(BillingMode mode, std::int64_t g_alloc,
                        const LlmParams& llm, int week, double demand_tok_per_s) {
  const double capacity = static_cast<double>(g_alloc) * llm.max_concurrency *
                          gpu_throughput(llm, week);
  if (mode == BillingMode::capacity) return capacity;
  return std::min(capacity, demand_tok_per_s);
}

AllocationCell allocate_cell(std::int64_t g_total, std::int64_t ran_demand,
                             std::int64_t llm_required) {
  AllocationCell c;
  c.ran = std::min(ran_demand, g_total);
  c.unmet_ran = ran_demand - c.ran;
  c.free = g_total - c.ran;
  c.required = llm_required;
  c.llm = allocate(llm_required, c.free);
  c.idle = g_total - c.ran - c.llm;
  return c;
}

AllocationSeries::AllocationSeries(int weeks, std::int64_t g_total)
    : weeks_(weeks),
      g_total_(g_total),
      cells_(static_cast<std::size_t>(weeks) * kHoursPerWeek) {
  if (weeks < 0) throw DomainError("weeks must be >= 0");
}

AllocationCell& AllocationSeries::at(int week, int hour) {
  return cells_.at(static_cast<std::size_t>(week) * kHoursPerWeek +
                   static_cast<std::size_t>(hour));
}

const AllocationCell& AllocationSeries::at(int week, int hour) const {
  return cells_.at(static_cast<std::size_t>(week) * kHoursPerWeek +
                   static_cast<std::size_t>(hour));
}

std::span<const AllocationCell> AllocationSeries::week(int week) const {
  if (week < 0 || week >= weeks_)
    throw std::out_of_range(fmt::format("week {} outside horizon", week));
  return std::span<const AllocationCell>(cells_).subspan(
      static_cast<std::size_t>(week) * kHoursPerWeek, kHoursPerWeek);
}

void AllocationSeries::check_invariants() const {
  for (int w = 0; w < weeks_; ++w) {
    for (int h = 0; h < kHoursPerWeek; ++h) {
      const auto& c = at(w, h);
      if (c.ran < 0 || c.llm < 0 || c.idle < 0)
        throw std::logic_error(fmt::format("negative count at ({},{})", w, h));
      if (c.ran + c.llm + c.idle != g_total_)
        throw std::logic_error(fmt::format(
            "conservation broken at ({},{}): {}+{}+{} != {}", w, h, c.ran,
            c.llm, c.idle, g_total_));
      if (c.llm > c.required || c.llm > c.free)
        throw std::logic_error(fmt::format(
            "allocation cap broken at ({},{}): llm {} required {} free {}", w,
            h, c.llm, c.required, c.free));
    }
  }
}

double weekly_revenue(std::span<const AllocationCell> week_cells,
                      const LlmParams& llm, std::int64_t users,
                      const PricingParams& pricing, double rho_tok, int week) {
  if (week_cells.size() != kHoursPerWeek)
    throw DomainError("weekly_revenue expects 168 cells");
  double tokens_per_s_hours = 0.0;
  for (int h = 0; h < kHoursPerWeek; ++h) {
    const auto g = week_cells[static_cast<std::size_t>(h)].llm;
    const double demand = pricing.billing_mode == BillingMode::demand
                              ? arrival_rate(llm, users, week, h) * llm.tokens_per_request
                              : 0.0;
    tokens_per_s_hours += token_throughput(pricing.billing_mode, g, llm, week, demand);
  }
  return token_price(pricing, rho_tok, week) * tokens_per_s_hours * 3600.0;
}

double llm_energy_cost(std::span<const AllocationCell> week_cells,
                       const ServerModel& server, const RanParams& ran) {
  std::int64_t gpu_hours = 0;
  for (const auto& c : week_cells) gpu_hours += c.llm;
  return static_cast<double>(gpu_hours) * server_hour_energy_usd(server, ran);
}

double marginal_investment(const FleetPlan& primary, const FleetPlan& baseline) {
  return primary.capex_usd - baseline.capex_usd;
}

double attributed_opex(OpexAttribution mode, double llm_energy, double ran_opex) {
  switch (mode) {
    case OpexAttribution::llm_energy:
      return llm_energy;
    case OpexAttribution::ran_opex:
      return ran_opex;
    case OpexAttribution::both:
      return llm_energy + ran_opex;
  }
  throw std::logic_error("unreachable");
}

double net_return(double revenue, double opex_attr) { return revenue - opex_attr; }

RoiReport break_even_and_roi(std::span<const MicroUsd> weekly_returns,
                             MicroUsd investment) {
  if (weekly_returns.empty()) throw DomainError("horizon must be at least one week");
  if (investment < 0)
    throw DomainError(
        "negative marginal investment: the baseline platform costs more than the primary");
  RoiReport r;
  r.investment = investment;
  r.weekly_net_return.assign(weekly_returns.begin(), weekly_returns.end());
  r.cumulative_return.resize(weekly_returns.size());
  MicroUsd running = 0;
  for (std::size_t i = 0; i < weekly_returns.size(); ++i)
    r.cumulative_return[i] = running = checked_add(running, weekly_returns[i]);
  for (std::size_t i = 0; i < r.cumulative_return.size(); ++i) {
    if (r.cumulative_return[i] >= investment) {
      r.break_even_week = static_cast<int>(i) + 1;
      break;
    }
  }
  const MicroUsd total = r.cumulative_return.back();
  if (investment > 0) {
    r.return_multiple = static_cast<double>(total) / static_cast<double>(investment);
  } else if (total > 0) {
    r.return_multiple = std::numeric_limits<double>::infinity();
  } else if (total < 0) {
    r.return_multiple = -std::numeric_limits<double>::infinity();
  } else {
    r.return_multiple = 0.0;
  }
  return r;
}

double weekly_average(std::span<const double> hourly) {
  if (hourly.size() != kHoursPerWeek)
    throw DomainError(fmt::format("weekly_average expects 168 values, got {}",
                                  hourly.size()));
  return std::accumulate(hourly.begin(), hourly.end(), 0.0) / kHoursPerWeek;
}

double weekly_average(std::span<const std::int64_t> hourly) {
  if (hourly.size() != kHoursPerWeek)
    throw DomainError(fmt::format("weekly_average expects 168 values, got {}",
                                  hourly.size()));
  const auto sum = std::accumulate(hourly.begin(), hourly.end(), std::int64_t{0});
  return static_cast<double>(sum) / kHoursPerWeek;
}

}  // namespace airan
