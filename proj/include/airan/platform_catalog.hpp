#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace airan {

/// One benchmarked cell configuration of a baseband server.
struct CellConfig {
  int dl_layers = 1;
  int ul_layers = 1;  // informational
  int num_cells = 1;
  double bandwidth_mhz = 1.0;

  void validate() const;
};

/// A server platform as listed in the catalog: cost, power and the two
/// benchmark configurations.
struct PlatformSpec {
  std::string name;
  std::string accelerator;
  std::string l1_stack;
  double cost_usd = 0.0;
  double power_w = 0.0;
  CellConfig macro_config;
  CellConfig micro_config;

  void validate() const;
};

/// Relative weights of macro and micro cells in a deployment.
struct DeploymentMix {
  double macro_weight = 1.0;
  double micro_weight = 3.0;

  void validate() const;
};

enum class CellKind { macro, micro, mixed };

/// What the dimensioning code needs from a platform: cost, power and the two
/// capacities. Built either from a single catalog record or as the average
/// of every record sharing an L1 stack.
struct ServerModel {
  std::string name;
  double cost_usd = 0.0;
  double power_w = 0.0;
  double macro_mhz = 0.0;
  double micro_mhz = 0.0;
};

struct Efficiency {
  double capital_mhz_per_usd = 0.0;
  double power_mhz_per_w = 0.0;
};

struct TcoInputs {
  double target_mbps = 10000.0;
  double se = 9.0;
  double overhead = 0.2;
  int years = 10;
  double elec_usd_per_kwh = 0.2;
  double pue = 1.5;
};

struct TcoBreakdown {
  std::int64_t server_count = 0;
  double capex_usd = 0.0;
  double opex_usd = 0.0;  // over the whole horizon
  double tco_usd = 0.0;
  double per_gbps_usd = 0.0;
};

/// Downlink layers x cells x bandwidth, in MHz.
double baseband_capacity(const CellConfig& cfg);

/// Deployment-weighted average of macro and micro capacity.
double mixed_capacity(double macro_mhz, double micro_mhz,
                      const DeploymentMix& mix);
double mixed_capacity(const ServerModel& server, const DeploymentMix& mix);
double mixed_capacity(const PlatformSpec& platform, const DeploymentMix& mix);

/// Capacity for one cell kind; `mix` only matters for CellKind::mixed.
double capacity_for(const ServerModel& server, CellKind kind,
                    const DeploymentMix& mix);

/// Throws DomainError when cost or power is not positive.
Efficiency efficiency_metrics(double capacity_mhz, double cost_usd,
                              double power_w);

/// Net deliverable downlink throughput per server, in Mbps.
/// Throws DomainError unless 0 <= overhead < 1 and se > 0.
double net_throughput(double capacity_mhz, double se, double overhead);

/// Servers, CapEx and horizon energy cost to carry `target_mbps` of peak
/// downlink traffic with one platform.
TcoBreakdown dimension_for_throughput(const ServerModel& server, CellKind kind,
                                      const DeploymentMix& mix,
                                      const TcoInputs& in);

ServerModel server_model(const PlatformSpec& platform);

std::string_view to_string(CellKind kind);

/// The set of known server platforms. Immutable once built.
class PlatformCatalog {
 public:
  PlatformCatalog() = default;
  explicit PlatformCatalog(std::vector<PlatformSpec> platforms);

  static PlatformCatalog from_json(const nlohmann::json& doc);
  static PlatformCatalog load(const std::filesystem::path& path);
  /// The catalog shipped in data/platforms.json.
  static const PlatformCatalog& builtin();

  nlohmann::json to_json() const;

  std::span<const PlatformSpec> platforms() const { return platforms_; }
  const PlatformSpec* find(std::string_view name) const;
  std::vector<std::string> stacks() const;
  bool contains(std::string_view name) const;

  /// Resolves a platform record name, or an L1 stack name whose members are
  /// averaged (unweighted mean of cost, power and each capacity).
  /// Throws std::out_of_range for unknown names.
  ServerModel resolve(std::string_view name) const;

 private:
  std::vector<PlatformSpec> platforms_;
};

}  // namespace airan
