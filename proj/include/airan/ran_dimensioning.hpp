#pragma once

#include <cstdint>

#include "airan/demand_profiles.hpp"
#include "airan/platform_catalog.hpp"

namespace airan {

/// Area traffic and site-energy parameters of a RAN deployment.
struct RanParams {
  double pop_density = 7500.0;       // persons / km^2
  double area_km2 = 20.0;
  double penetration = 0.8;          // smartphone penetration
  double busy_hour_factor = 0.1;     // share of users active at the busy hour
  double r_user0_mbps = 300.0;       // busy-hour per-user rate at week 0
  double growth_annual = 1.0;        // yearly growth of the per-user rate
  double se = 9.0;                   // bit/s/Hz
  double overhead = 0.2;             // L1/L2 overhead share
  WeeklyProfile profile = WeeklyProfile::flat(ProfileKind::peak_normalized);
  double pue = 1.5;
  double elec_usd_per_kwh = 0.2;

  /// Throws DomainError describing the first violated invariant.
  void validate() const;
};

/// The physical deployment: sized once, at the busy hour of the
/// dimensioning week.
struct FleetPlan {
  std::int64_t g_total = 0;
  int w_dim = 0;
  int h_peak = 0;
  double capex_usd = 0.0;
  ServerModel server;
  DeploymentMix mix;
  double net_mbps_per_server = 0.0;
};

double user_rate(const RanParams& p, int week, int hour);
double area_demand(const RanParams& p, int week, int hour);

/// Servers needed to carry the RAN load of one hour, given the per-server
/// net throughput.
std::int64_t gpus_ran(const RanParams& p, double net_mbps_per_server, int week,
                      int hour);
std::int64_t gpus_ran(const RanParams& p, const ServerModel& server,
                      const DeploymentMix& mix, int week, int hour);

/// Sizes the fleet to the busiest hour of `w_dim` (ties go to the earliest
/// hour).
FleetPlan dimension_cluster(const RanParams& p, const ServerModel& server,
                            const DeploymentMix& mix, int w_dim);

/// Energy cost of one week of RAN operation, summed over all 168 hours.
double weekly_opex(const RanParams& p, const FleetPlan& fleet, int week);

/// Cost of running one server for one hour.
double server_hour_energy_usd(const ServerModel& server, const RanParams& p);

/// Servers left over for other tenants; never negative.
std::int64_t free_gpus(const FleetPlan& fleet, const RanParams& p, int week,
                       int hour);

/// RAN servers demanded beyond the fleet (nonzero only when a fleet sized at
/// w_dim is run past w_dim under growth).
std::int64_t unmet_ran(const FleetPlan& fleet, const RanParams& p, int week,
                       int hour);

}  // namespace airan
