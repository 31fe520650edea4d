#include "airan/platform_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "airan/embedded_data.hpp"
#include "airan/errors.hpp"

namespace airan {

void CellConfig::validate() const {
  if (dl_layers < 1) throw DomainError("dl_layers must be >= 1");
  if (num_cells < 1) throw DomainError("num_cells must be >= 1");
  if (!(bandwidth_mhz > 0.0)) throw DomainError("bandwidth_mhz must be > 0");
}

void PlatformSpec::validate() const {
  if (!(cost_usd > 0.0))
    throw DomainError(fmt::format("platform {}: cost_usd must be > 0", name));
  if (!(power_w > 0.0))
    throw DomainError(fmt::format("platform {}: power_w must be > 0", name));
  macro_config.validate();
  micro_config.validate();
}

void DeploymentMix::validate() const {
  if (macro_weight < 0.0 || micro_weight < 0.0)
    throw DomainError("mix weights must be nonnegative");
  if (!(macro_weight + micro_weight >= 1.0))
    throw DomainError("mix weights must sum to at least 1");
}

double baseband_capacity(const CellConfig& cfg) {
  return static_cast<double>(cfg.dl_layers) * cfg.num_cells * cfg.bandwidth_mhz;
}

double mixed_capacity(double macro_mhz, double micro_mhz,
                      const DeploymentMix& mix) {
  mix.validate();
  return (mix.macro_weight * macro_mhz + mix.micro_weight * micro_mhz) /
         (mix.macro_weight + mix.micro_weight);
}

double mixed_capacity(const ServerModel& server, const DeploymentMix& mix) {
  return mixed_capacity(server.macro_mhz, server.micro_mhz, mix);
}

double mixed_capacity(const PlatformSpec& platform, const DeploymentMix& mix) {
  return mixed_capacity(baseband_capacity(platform.macro_config),
                        baseband_capacity(platform.micro_config), mix);
}

double capacity_for(const ServerModel& server, CellKind kind,
                    const DeploymentMix& mix) {
  switch (kind) {
    case CellKind::macro:
      return server.macro_mhz;
    case CellKind::micro:
      return server.micro_mhz;
    case CellKind::mixed:
      return mixed_capacity(server, mix);
  }
  throw std::logic_error("unreachable");
}

Efficiency efficiency_metrics(double capacity_mhz, double cost_usd,
                              double power_w) {
  if (!(cost_usd > 0.0)) throw DomainError("cost must be > 0");
  if (!(power_w > 0.0)) throw DomainError("power must be > 0");
  return {capacity_mhz / cost_usd, capacity_mhz / power_w};
}

double net_throughput(double capacity_mhz, double se, double overhead) {
  if (!(overhead >= 0.0 && overhead < 1.0))
    throw DomainError("overhead must be in [0,1)");
  if (!(se > 0.0)) throw DomainError("spectral efficiency must be > 0");
  return capacity_mhz * se * (1.0 - overhead);
}

TcoBreakdown dimension_for_throughput(const ServerModel& server, CellKind kind,
                                      const DeploymentMix& mix,
                                      const TcoInputs& in) {
  if (!(in.target_mbps > 0.0)) throw DomainError("target_mbps must be > 0");
  if (in.years < 1) throw DomainError("years must be >= 1");
  const double per_server =
      net_throughput(capacity_for(server, kind, mix), in.se, in.overhead);
  if (!(per_server > 0.0)) throw DomainError("platform has zero capacity");

  TcoBreakdown out;
  out.server_count =
      static_cast<std::int64_t>(std::ceil(in.target_mbps / per_server));
  const double n = static_cast<double>(out.server_count);
  const double hours = 8760.0 * in.years;
  out.capex_usd = n * server.cost_usd;
  out.opex_usd =
      n * (server.power_w / 1000.0) * in.pue * in.elec_usd_per_kwh * hours;
  out.tco_usd = out.capex_usd + out.opex_usd;
  out.per_gbps_usd = out.tco_usd / (in.target_mbps / 1000.0);
  return out;
}

ServerModel server_model(const PlatformSpec& platform) {
  return {platform.name, platform.cost_usd, platform.power_w,
          baseband_capacity(platform.macro_config),
          baseband_capacity(platform.micro_config)};
}

std::string_view to_string(CellKind kind) {
  switch (kind) {
    case CellKind::macro:
      return "macro";
    case CellKind::micro:
      return "micro";
    case CellKind::mixed:
      return "mixed";
  }
  return "?";
}

namespace {

CellConfig cell_from_json(const nlohmann::json& j, const std::string& where) {
  CellConfig c;
  try {
    c.dl_layers = j.at("dl_layers").get<int>();
    c.ul_layers = j.value("ul_layers", c.dl_layers);
    c.num_cells = j.at("num_cells").get<int>();
    c.bandwidth_mhz = j.at("bandwidth_mhz").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(fmt::format("{}: {}", where, e.what()));
  }
  return c;
}

nlohmann::json cell_to_json(const CellConfig& c) {
  return {{"dl_layers", c.dl_layers},
          {"ul_layers", c.ul_layers},
          {"num_cells", c.num_cells},
          {"bandwidth_mhz", c.bandwidth_mhz}};
}

}  // namespace

PlatformCatalog::PlatformCatalog(std::vector<PlatformSpec> platforms)
    : platforms_(std::move(platforms)) {
  std::set<std::string> seen;
  for (const auto& p : platforms_) {
    p.validate();
    if (!seen.insert(p.name).second)
      throw LoadError("duplicate platform name: " + p.name);
  }
}

PlatformCatalog PlatformCatalog::from_json(const nlohmann::json& doc) {
  if (!doc.contains("platforms") || !doc["platforms"].is_array())
    throw LoadError("catalog: expected a \"platforms\" array");
  std::vector<PlatformSpec> out;
  std::size_t i = 0;
  for (const auto& j : doc["platforms"]) {
    const std::string where = fmt::format("catalog platforms[{}]", i++);
    PlatformSpec p;
    try {
      p.name = j.at("name").get<std::string>();
      p.accelerator = j.value("accelerator", "");
      p.l1_stack = j.value("l1_stack", p.name);
      p.cost_usd = j.at("cost_usd").get<double>();
      p.power_w = j.at("power_w").get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw LoadError(fmt::format("{}: {}", where, e.what()));
    }
    if (!j.contains("macro_config") || !j.contains("micro_config"))
      throw LoadError(where + ": macro_config and micro_config are required");
    p.macro_config = cell_from_json(j["macro_config"], where + ".macro_config");
    p.micro_config = cell_from_json(j["micro_config"], where + ".micro_config");
    try {
      p.validate();
    } catch (const DomainError& e) {
      throw LoadError(fmt::format("{}: {}", where, e.what()));
    }
    out.push_back(std::move(p));
  }
  return PlatformCatalog(std::move(out));
}

PlatformCatalog PlatformCatalog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open catalog file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw LoadError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return from_json(doc);
}

const PlatformCatalog& PlatformCatalog::builtin() {
  static const PlatformCatalog catalog =
      from_json(nlohmann::json::parse(embedded::platforms_json()));
  return catalog;
}

nlohmann::json PlatformCatalog::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : platforms_) {
    arr.push_back({{"name", p.name},
                   {"accelerator", p.accelerator},
                   {"l1_stack", p.l1_stack},
                   {"cost_usd", p.cost_usd},
                   {"power_w", p.power_w},
                   {"macro_config", cell_to_json(p.macro_config)},
                   {"micro_config", cell_to_json(p.micro_config)}});
  }
  return {{"platforms", arr}};
}

const PlatformSpec* PlatformCatalog::find(std::string_view name) const {
  auto it = std::find_if(platforms_.begin(), platforms_.end(),
                         [&](const PlatformSpec& p) { return p.name == name; });
  return it == platforms_.end() ? nullptr : &*it;
}

std::vector<std::string> PlatformCatalog::stacks() const {
  std::vector<std::string> out;
  for (const auto& p : platforms_)
    if (std::find(out.begin(), out.end(), p.l1_stack) == out.end())
      out.push_back(p.l1_stack);
  return out;
}

bool PlatformCatalog::contains(std::string_view name) const {
  if (find(name) != nullptr) return true;
  return std::any_of(platforms_.begin(), platforms_.end(),
                     [&](const PlatformSpec& p) { return p.l1_stack == name; });
}

ServerModel PlatformCatalog::resolve(std::string_view name) const {
  if (const PlatformSpec* p = find(name)) return server_model(*p);

  ServerModel family{std::string(name), 0.0, 0.0, 0.0, 0.0};
  int members = 0;
  for (const auto& p : platforms_) {
    if (p.l1_stack != name) continue;
    const ServerModel m = server_model(p);
    family.cost_usd += m.cost_usd;
    family.power_w += m.power_w;
    family.macro_mhz += m.macro_mhz;
    family.micro_mhz += m.micro_mhz;
    ++members;
  }
  if (members == 0)
    throw std::out_of_range(fmt::format("unknown platform '{}'", name));
  family.cost_usd /= members;
  family.power_w /= members;
  family.macro_mhz /= members;
  family.micro_mhz /= members;
  return family;
}

}  // namespace airan
