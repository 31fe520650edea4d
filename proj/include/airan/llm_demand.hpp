#pragma once

#include <cstdint>

#include "airan/demand_profiles.hpp"
#include "airan/ran_dimensioning.hpp"

namespace airan {

enum class UserBaseMode { area_product, explicit_count };

/// Where the LLM-active user count comes from: the RAN area population, or a
/// fixed number (for calibrating against observed revenue).
struct UserBase {
  UserBaseMode mode = UserBaseMode::area_product;
  std::int64_t explicit_users = 0;
};

struct LlmParams {
  double t_gpu0 = 37.0;                // output tok/s per GPU at week 0
  double dens_annual = 12.87;          // yearly capability-density factor
  double max_concurrency = 23.5;       // concurrent requests per GPU
  double tokens_per_request = 969.17;
  double q0 = 14.4;                    // requests / user / day at week 0
  double demand_growth_annual = 16.0;  // yearly growth of q
  double ai_adoption = 0.5;            // share of subscribers using LLMs
  WeeklyProfile profile = WeeklyProfile::flat(ProfileKind::daily_fraction);
  UserBase user_base;

  void validate() const;
};

/// Effective per-GPU token throughput after densification.
double gpu_throughput(const LlmParams& p, int week);

/// Requests per user per day.
double requests_per_user(const LlmParams& p, int week);

/// LLM-active users. Area mode rounds A * pop * penetration * adoption to the
/// nearest integer.
std::int64_t llm_users(const LlmParams& llm, const RanParams& ran);

/// Arrivals per second in one hour of the week.
double arrival_rate(const LlmParams& p, std::int64_t users, int week, int hour);
double arrival_rate(const LlmParams& llm, const RanParams& ran, int week,
                    int hour);

/// GPUs needed to hold the Little's-law concurrency Lambda * T_req / T_GPU at
/// max_concurrency requests per GPU.
std::int64_t required_gpus(const LlmParams& p, double arrivals_per_s, int week);
std::int64_t required_gpus(const LlmParams& llm, const RanParams& ran, int week,
                           int hour);

}  // namespace airan
