#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "airan/economics.hpp"
#include "airan/llm_demand.hpp"
#include "airan/platform_catalog.hpp"
#include "airan/ran_dimensioning.hpp"

namespace airan {

/// Sweep axes. Points are the cartesian product presets x dens x k, in that
/// nesting order and in the order given.
struct SweepSpec {
  std::vector<std::string> presets;
  std::vector<double> dens_values;
  std::vector<double> k_values;

  bool empty() const {
    return presets.empty() && dens_values.empty() && k_values.empty();
  }
};

struct TcoTarget {
  double target_mbps = 10000.0;
  int years = 10;
};

/// Every input of one evaluation, fully resolved (profiles loaded, w_dim a
/// week number).
struct ScenarioSpec {
  std::string name = "scenario";
  int horizon_weeks = 520;
  int w_dim = 0;
  RanParams ran;
  LlmParams llm;
  PricingParams pricing;
  OpexAttribution opex_attribution = OpexAttribution::llm_energy;
  std::string platform_primary = "Aerial";
  std::string platform_baseline = "FlexRAN";
  DeploymentMix mix;
  TcoTarget tco;
  SweepSpec sweep;
};

inline constexpr std::string_view kDefaultPreset = "milan_s1";

std::vector<std::string> preset_names();
/// Raw preset document; throws ConfigError for unknown names.
nlohmann::json preset_document(std::string_view name);

struct ValidateOptions {
  /// Overrides any "preset" key in the document.
  std::optional<std::string> preset;
  /// Directory that relative profile paths are resolved against.
  std::filesystem::path base_dir;
  /// Off for untrusted input (the HTTP API) so documents cannot name files.
  bool allow_profile_files = true;
};

/// Overlays `raw` on its preset (the document's "preset" key, else
/// milan_s1) as a JSON merge patch and checks every field. Unknown keys are
/// rejected. Throws ConfigError listing every problem with its field path.
ScenarioSpec validate_spec(const nlohmann::json& raw,
                           const PlatformCatalog& catalog,
                           const ValidateOptions& options = {});

/// Canonical document: feeding it back to validate_spec reproduces `spec`.
nlohmann::json to_json(const ScenarioSpec& spec);

/// SHA-256 over the engine version, the canonical spec and the two resolved
/// platforms.
std::string config_digest(const ScenarioSpec& spec, const PlatformCatalog& catalog);

struct SweepPoint {
  std::string label;
  ScenarioSpec spec;
};

/// Expands the sweep section of `raw` into independent scenarios. With no
/// sweep section the result is the single validated scenario.
std::vector<SweepPoint> expand_sweep(const nlohmann::json& raw,
                                     const PlatformCatalog& catalog,
                                     const ValidateOptions& options = {});

std::string engine_version();

/// SHA-256 (hex) of the compact serialization of `doc`.
std::string json_digest(const nlohmann::json& doc);

}  // namespace airan
