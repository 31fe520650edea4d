#include "airan/llm_demand.hpp"

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

}  // namespace

void LlmParams::validate() const {
  require_positive(t_gpu0, "t_gpu0");
  require_positive(dens_annual, "dens_annual");
  require_positive(max_concurrency, "max_concurrency");
  require_positive(tokens_per_request, "tokens_per_request");
  require_positive(q0, "q0");
  require_positive(demand_growth_annual, "demand_growth_annual");
  if (!(ai_adoption > 0.0 && ai_adoption <= 1.0))
    throw DomainError("ai_adoption must be in (0,1]");
  if (profile.kind() != ProfileKind::daily_fraction)
    throw DomainError("profile must be daily_fraction");
  if (user_base.mode == UserBaseMode::explicit_count && user_base.explicit_users <= 0)
    throw DomainError("user_base.explicit_users must be > 0 in explicit mode");
}

double gpu_throughput(const LlmParams& p, int week) {
  return p.t_gpu0 * std::pow(p.dens_annual, week / kWeeksPerYear);
}

double requests_per_user(const LlmParams& p, int week) {
  return p.q0 * std::pow(p.demand_growth_annual, week / kWeeksPerYear);
}

std::int64_t llm_users(const LlmParams& llm, const RanParams& ran) {
  if (llm.user_base.mode == UserBaseMode::explicit_count) {
    if (llm.user_base.explicit_users <= 0)
      throw DomainError("explicit user base must be > 0");
    return llm.user_base.explicit_users;
  }
  return std::llround(ran.area_km2 * ran.pop_density * ran.penetration *
                      llm.ai_adoption);
}

double arrival_rate(const LlmParams& p, std::int64_t users, int week, int hour) {
  if (hour < 0 || hour >= kHoursPerWeek)
    throw DomainError(fmt::format("hour {} outside 0..167", hour));
  return p.profile[hour] / 3600.0 * requests_per_user(p, week) *
         static_cast<double>(users);
}

double arrival_rate(const LlmParams& llm, const RanParams& ran, int week,
                    int hour) {
  return arrival_rate(llm, llm_users(llm, ran), week, hour);
}

std::int64_t required_gpus(const LlmParams& p, double arrivals_per_s, int week) {
  if (!(arrivals_per_s > 0.0)) return 0;
  const double concurrency =
      arrivals_per_s * p.tokens_per_request / gpu_throughput(p, week);
  const double gpus = std::ceil(concurrency / p.max_concurrency);
  if (gpus >= static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2))
    throw DomainError("LLM GPU requirement overflow; demand parameters out of range");
  return static_cast<std::int64_t>(gpus);
}

std::int64_t required_gpus(const LlmParams& llm, const RanParams& ran, int week,
                           int hour) {
  return required_gpus(llm, arrival_rate(llm, ran, week, hour), week);
}

}  // namespace airan
