#include "airan/ran_dimensioning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "airan/errors.hpp"

namespace airan {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(fmt::format("{} must be > 0", name));
}

void require_unit(double v, const char* name) {
  if (!(v > 0.0 && v <= 1.0))
    throw DomainError(fmt::format("{} must be in (0,1]", name));
}

std::int64_t ceil_count(double x) {
  if (!(x > 0.0)) return 0;
  const double c = std::ceil(x);
  if (c >= static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2))
    throw DomainError("GPU count overflow; demand parameters out of range");
  return static_cast<std::int64_t>(c);
}

void require_hour(int hour) {
  if (hour < 0 || hour >= kHoursPerWeek)
    throw DomainError(fmt::format("hour {} outside 0..167", hour));
}

}  // namespace

void RanParams::validate() const {
  require_positive(pop_density, "pop_density");
  require_positive(area_km2, "area_km2");
  require_unit(penetration, "penetration");
  require_unit(busy_hour_factor, "busy_hour_factor");
  require_positive(r_user0_mbps, "r_user0_mbps");
  require_positive(growth_annual, "growth_annual");
  require_positive(se, "se");
  if (!(overhead >= 0.0 && overhead < 1.0))
    throw DomainError("overhead must be in [0,1)");
  require_positive(pue, "pue");
  require_positive(elec_usd_per_kwh, "elec_usd_per_kwh");
  if (profile.kind() != ProfileKind::peak_normalized)
    throw DomainError("profile must be peak_normalized");
}

double user_rate(const RanParams& p, int week, int hour) {
  require_hour(hour);
  return p.r_user0_mbps * std::pow(p.growth_annual, week / kWeeksPerYear) *
         p.profile[hour];
}

double area_demand(const RanParams& p, int week, int hour) {
  return p.pop_density * p.penetration * p.busy_hour_factor *
         user_rate(p, week, hour);
}

std::int64_t gpus_ran(const RanParams& p, double net_mbps_per_server, int week,
                      int hour) {
  if (!(net_mbps_per_server > 0.0))
    throw DomainError("per-server throughput must be > 0");
  return ceil_count(p.area_km2 * area_demand(p, week, hour) / net_mbps_per_server);
}

std::int64_t gpus_ran(const RanParams& p, const ServerModel& server,
                      const DeploymentMix& mix, int week, int hour) {
  return gpus_ran(p, net_throughput(mixed_capacity(server, mix), p.se, p.overhead),
                  week, hour);
}

FleetPlan dimension_cluster(const RanParams& p, const ServerModel& server,
                            const DeploymentMix& mix, int w_dim) {
  if (w_dim < 0) throw DomainError("w_dim must be >= 0");
  FleetPlan plan;
  plan.server = server;
  plan.mix = mix;
  plan.w_dim = w_dim;
  plan.net_mbps_per_server =
      net_throughput(mixed_capacity(server, mix), p.se, p.overhead);
  plan.g_total = -1;
  for (int h = 0; h < kHoursPerWeek; ++h) {
    const auto g = gpus_ran(p, plan.net_mbps_per_server, w_dim, h);
    if (g > plan.g_total) {
      plan.g_total = g;
      plan.h_peak = h;
    }
  }
  plan.capex_usd = static_cast<double>(plan.g_total) * server.cost_usd;
  return plan;
}

double server_hour_energy_usd(const ServerModel& server, const RanParams& p) {
  return server.power_w * p.pue / 1000.0 * p.elec_usd_per_kwh;
}

double weekly_opex(const RanParams& p, const FleetPlan& fleet, int week) {
  // Servers beyond the fleet do not exist, so unmet demand draws no power.
  std::int64_t server_hours = 0;
  for (int h = 0; h < kHoursPerWeek; ++h)
    server_hours += std::min(
        fleet.g_total, gpus_ran(p, fleet.net_mbps_per_server, week, h));
  return static_cast<double>(server_hours) *
         server_hour_energy_usd(fleet.server, p);
}

std::int64_t free_gpus(const FleetPlan& fleet, const RanParams& p, int week,
                       int hour) {
  return std::max<std::int64_t>(
      0, fleet.g_total - gpus_ran(p, fleet.net_mbps_per_server, week, hour));
}

std::int64_t unmet_ran(const FleetPlan& fleet, const RanParams& p, int week,
                       int hour) {
  return std::max<std::int64_t>(
      0, gpus_ran(p, fleet.net_mbps_per_server, week, hour) - fleet.g_total);
}

}  // namespace airan
