#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "airan/llm_demand.hpp"
#include "airan/ran_dimensioning.hpp"

namespace airan {

/// Whole micro-dollars; every sum over weeks is taken in this unit so a
/// scenario total is reproducible bit for bit. 128 bits because compounding
/// throughput over a ten-year horizon can exceed 2^63 micro-dollars.
__extension__ typedef __int128 MicroUsd;

MicroUsd to_micro_usd(double usd);
double to_usd(MicroUsd micros);
/// Throw DomainError instead of wrapping.
MicroUsd checked_add(MicroUsd a, MicroUsd b);

enum class BillingMode {
  capacity,  // full token capacity of every allocated GPU is billed
  demand,    // billed tokens capped at the tokens actually demanded
};

/// How a k value maps to a yearly token-price factor.
enum class DepreciationMode {
  exponent,  // rho_tok = dens^-k, so k = 1 keeps price * throughput constant
  ratio,     // rho_tok = k * dens, the literal ratio reading
};

/// Which operating cost is charged against LLM revenue.
enum class OpexAttribution {
  llm_energy,  // energy of the LLM-allocated GPU hours
  ran_opex,    // the weekly RAN energy bill of the primary fleet
  both,
};

std::string_view to_string(BillingMode m);
std::string_view to_string(DepreciationMode m);
std::string_view to_string(OpexAttribution m);

struct PricingParams {
  double price0_usd_per_tok = 0.88e-6;
  std::optional<double> tok_depreciation_annual;  // exactly one of these two
  std::optional<double> k_ratio;
  DepreciationMode k_mode = DepreciationMode::exponent;
  BillingMode billing_mode = BillingMode::capacity;

  void validate() const;
};

/// Yearly token-price factor; throws ConfigError unless exactly one of
/// tok_depreciation_annual and k_ratio is set.
double resolve_depreciation(const PricingParams& pricing, double dens_annual);

double token_price(const PricingParams& pricing, double rho_tok, int week);

std::int64_t allocate(std::int64_t required, std::int64_t free);

/// Tokens per second billed for `g_alloc` GPUs. Demand billing caps the
/// result at `demand_tok_per_s`.
double token_throughput(BillingMode mode, std::int64_t g_alloc,
                        const LlmParams& llm, int week, double demand_tok_per_s);

/// One (week, hour) cell of the GPU split.
struct AllocationCell {
  std::int64_t ran = 0;        // RAN servers in service (at most g_total)
  std::int64_t llm = 0;        // GPUs leased to the LLM tenant
  std::int64_t idle = 0;
  std::int64_t required = 0;   // LLM GPUs demanded
  std::int64_t free = 0;       // GPUs not needed by the RAN
  std::int64_t unmet_ran = 0;  // RAN servers demanded beyond the fleet
};

/// Splits a fleet of `g_total` between RAN demand and LLM demand.
AllocationCell allocate_cell(std::int64_t g_total, std::int64_t ran_demand,
                             std::int64_t llm_required);

/// Per-(week, hour) GPU split over a horizon, weeks-major.
class AllocationSeries {
 public:
  AllocationSeries() = default;
  AllocationSeries(int weeks, std::int64_t g_total);

  int weeks() const { return weeks_; }
  std::int64_t g_total() const { return g_total_; }

  AllocationCell& at(int week, int hour);
  const AllocationCell& at(int week, int hour) const;
  std::span<const AllocationCell> week(int week) const;

  /// Throws std::logic_error naming the first cell that breaks
  /// ran + llm + idle = g_total or llm <= min(required, free).
  void check_invariants() const;

 private:
  int weeks_ = 0;
  std::int64_t g_total_ = 0;
  std::vector<AllocationCell> cells_;
};

/// Gross LLM revenue of one week, in USD, summed over its 168 hours.
double weekly_revenue(std::span<const AllocationCell> week_cells,
                      const LlmParams& llm, std::int64_t users,
                      const PricingParams& pricing, double rho_tok, int week);

/// Energy cost of the LLM-allocated GPU hours of one week.
double llm_energy_cost(std::span<const AllocationCell> week_cells,
                       const ServerModel& server, const RanParams& ran);

double marginal_investment(const FleetPlan& primary, const FleetPlan& baseline);

double attributed_opex(OpexAttribution mode, double llm_energy, double ran_opex);

double net_return(double revenue, double opex_attr);

struct RoiReport {
  MicroUsd investment = 0;
  std::vector<MicroUsd> weekly_net_return;
  /// cumulative_return[i] is the total after i + 1 weeks.
  std::vector<MicroUsd> cumulative_return;
  /// Weeks elapsed when the cumulative return first reaches the investment.
  std::optional<int> break_even_week;
  /// Horizon return over investment; +/-infinity when the investment is zero
  /// and the return is not.
  double return_multiple = 0.0;
};

/// Throws DomainError for a negative investment (baseline costlier than the
/// primary platform) or an empty horizon.
RoiReport break_even_and_roi(std::span<const MicroUsd> weekly_returns,
                             MicroUsd investment);

/// Mean over the 168 hours of one week. Throws DomainError on other lengths.
double weekly_average(std::span<const double> hourly);
double weekly_average(std::span<const std::int64_t> hourly);

}  // namespace airan
