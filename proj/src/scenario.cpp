#include "airan/scenario.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "airan/embedded_data.hpp"
#include "airan/errors.hpp"

namespace airan {

namespace {

using json = nlohmann::json;

enum class Check { any, positive, non_negative, unit, unit_closed_open };

std::string_view check_message(Check c) {
  switch (c) {
    case Check::positive:
      return "must be > 0";
    case Check::non_negative:
      return "must be >= 0";
    case Check::unit:
      return "must be in (0,1]";
    case Check::unit_closed_open:
      return "must be in [0,1)";
    case Check::any:
      break;
  }
  return "";
}

bool passes(Check c, double v) {
  if (!std::isfinite(v)) return false;
  switch (c) {
    case Check::positive:
      return v > 0.0;
    case Check::non_negative:
      return v >= 0.0;
    case Check::unit:
      return v > 0.0 && v <= 1.0;
    case Check::unit_closed_open:
      return v >= 0.0 && v < 1.0;
    case Check::any:
      return true;
  }
  return true;
}

/// Reads one JSON object, collecting issues instead of throwing, and
/// remembers which keys were consumed so leftovers can be rejected.
class Section {
 public:
  Section(const json& doc, std::string path, std::vector<ConfigIssue>& issues)
      : path_(std::move(path)), issues_(issues) {
    if (doc.is_object()) {
      obj_ = &doc;
    } else if (!doc.is_null()) {
      issue("", "must be an object");
    }
  }

  Section(const Section&) = delete;
  Section& operator=(const Section&) = delete;

  ~Section() {
    if (obj_ == nullptr) return;
    for (const auto& [key, value] : obj_->items())
      if (!used_.contains(key)) issue(key, "is not a recognized field");
  }

  std::string path(std::string_view key) const {
    if (path_.empty()) return std::string(key);
    if (key.empty()) return path_;
    return path_ + "." + std::string(key);
  }

  void issue(std::string_view key, std::string message) {
    issues_.push_back({path(key), std::move(message)});
  }

  /// Returns the value for `key` or nullptr (null values count as absent).
  const json* get(const std::string& key) {
    used_.insert(key);
    if (obj_ == nullptr) return nullptr;
    auto it = obj_->find(key);
    if (it == obj_->end() || it->is_null()) return nullptr;
    return &*it;
  }

  const json& child(const std::string& key) {
    static const json kNull;
    const json* v = get(key);
    return v ? *v : kNull;
  }

  double number(const std::string& key, Check check, double fallback) {
    const json* v = get(key);
    if (v == nullptr) {
      issue(key, "is required");
      return fallback;
    }
    if (!v->is_number()) {
      issue(key, "must be a number");
      return fallback;
    }
    const double x = v->get<double>();
    if (!passes(check, x)) {
      issue(key, std::string(check_message(check)));
      return fallback;
    }
    return x;
  }

  std::optional<double> optional_number(const std::string& key, Check check) {
    const json* v = get(key);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number()) {
      issue(key, "must be a number");
      return std::nullopt;
    }
    const double x = v->get<double>();
    if (!passes(check, x)) {
      issue(key, std::string(check_message(check)));
      return std::nullopt;
    }
    return x;
  }

  std::int64_t integer(const std::string& key, std::int64_t min, std::int64_t fallback,
                       bool required = true) {
    const json* v = get(key);
    if (v == nullptr) {
      if (required) issue(key, "is required");
      return fallback;
    }
    if (!v->is_number() || v->get<double>() != std::floor(v->get<double>())) {
      issue(key, "must be an integer");
      return fallback;
    }
    const auto x = v->get<std::int64_t>();
    if (x < min) {
      issue(key, fmt::format("must be >= {}", min));
      return fallback;
    }
    return x;
  }

  std::string string(const std::string& key, std::string fallback) {
    const json* v = get(key);
    if (v == nullptr) {
      issue(key, "is required");
      return fallback;
    }
    if (!v->is_string()) {
      issue(key, "must be a string");
      return fallback;
    }
    return v->get<std::string>();
  }

  template <typename Enum>
  Enum choice(const std::string& key,
              std::initializer_list<std::pair<std::string_view, Enum>> options,
              Enum fallback) {
    const std::string s = string(key, "");
    if (s.empty()) return fallback;
    std::string allowed;
    for (const auto& [name, value] : options) {
      if (name == s) return value;
      allowed += allowed.empty() ? std::string(name) : "|" + std::string(name);
    }
    issue(key, fmt::format("must be one of {} (got '{}')", allowed, s));
    return fallback;
  }

 private:
  const json* obj_ = nullptr;
  std::string path_;
  std::vector<ConfigIssue>& issues_;
  std::set<std::string> used_;
};

WeeklyProfile parse_profile(Section& s, const std::string& key, ProfileKind kind,
                            const ValidateOptions& options) {
  const WeeklyProfile fallback = WeeklyProfile::flat(kind);
  const json* v = s.get(key);
  if (v == nullptr) {
    s.issue(key, "is required");
    return fallback;
  }
  try {
    if (v->is_array()) {
      std::vector<double> values;
      for (const auto& x : *v) {
        if (!x.is_number()) {
          s.issue(key, "must contain only numbers");
          return fallback;
        }
        values.push_back(x.get<double>());
      }
      return profile_from_values(values, kind);
    }
    if (!v->is_string()) {
      s.issue(key, "must be an array of 24/168 numbers or a string reference");
      return fallback;
    }
    const auto ref = v->get<std::string>();
    if (ref == "builtin:ran_weekly") {
      const auto& p = builtin_ran_profile();
      return p.kind() == kind ? p : normalize(p.values(), kind);
    }
    if (ref == "builtin:llm_weekly") {
      const auto& p = builtin_llm_profile();
      return p.kind() == kind ? p : normalize(p.values(), kind);
    }
    if (ref == "builtin:flat") return WeeklyProfile::flat(kind);
    if (ref.starts_with("builtin:")) {
      s.issue(key, fmt::format("unknown builtin profile '{}'", ref));
      return fallback;
    }
    if (!options.allow_profile_files) {
      s.issue(key, "file profiles are not accepted here; use an inline array or a builtin");
      return fallback;
    }
    std::filesystem::path path = ref.starts_with("file:") ? ref.substr(5) : ref;
    if (path.is_relative() && !options.base_dir.empty()) path = options.base_dir / path;
    return load_profile(path, kind);
  } catch (const std::exception& e) {
    s.issue(key, e.what());
    return fallback;
  }
}

RanParams parse_ran(const json& doc, std::vector<ConfigIssue>& issues,
                    const ValidateOptions& options) {
  Section s(doc, "ran", issues);
  RanParams p;
  p.pop_density = s.number("pop_density", Check::positive, p.pop_density);
  p.area_km2 = s.number("area_km2", Check::positive, p.area_km2);
  p.penetration = s.number("penetration", Check::unit, p.penetration);
  p.busy_hour_factor = s.number("busy_hour_factor", Check::unit, p.busy_hour_factor);
  p.r_user0_mbps = s.number("r_user0_mbps", Check::positive, p.r_user0_mbps);
  p.growth_annual = s.number("growth_annual", Check::positive, p.growth_annual);
  p.se = s.number("se", Check::positive, p.se);
  p.overhead = s.number("overhead", Check::unit_closed_open, p.overhead);
  p.pue = s.number("pue", Check::positive, p.pue);
  p.elec_usd_per_kwh = s.number("elec_usd_per_kwh", Check::positive, p.elec_usd_per_kwh);
  p.profile = parse_profile(s, "profile", ProfileKind::peak_normalized, options);
  return p;
}

LlmParams parse_llm(const json& doc, std::vector<ConfigIssue>& issues,
                    const ValidateOptions& options) {
  Section s(doc, "llm", issues);
  LlmParams p;
  p.t_gpu0 = s.number("t_gpu0", Check::positive, p.t_gpu0);
  p.dens_annual = s.number("dens_annual", Check::positive, p.dens_annual);
  p.max_concurrency = s.number("max_concurrency", Check::positive, p.max_concurrency);
  p.tokens_per_request =
      s.number("tokens_per_request", Check::positive, p.tokens_per_request);
  p.q0 = s.number("q0", Check::positive, p.q0);
  p.demand_growth_annual =
      s.number("demand_growth_annual", Check::positive, p.demand_growth_annual);
  p.ai_adoption = s.number("ai_adoption", Check::unit, p.ai_adoption);
  p.profile = parse_profile(s, "profile", ProfileKind::daily_fraction, options);
  {
    Section u(s.child("user_base"), s.path("user_base"), issues);
    p.user_base.mode = u.choice<UserBaseMode>(
        "mode",
        {{"area_product", UserBaseMode::area_product},
         {"explicit", UserBaseMode::explicit_count}},
        UserBaseMode::area_product);
    const bool is_explicit = p.user_base.mode == UserBaseMode::explicit_count;
    p.user_base.explicit_users = u.integer("explicit_users", is_explicit ? 1 : 0, 0,
                                           is_explicit);
  }
  return p;
}

PricingParams parse_pricing(const json& doc, std::vector<ConfigIssue>& issues) {
  Section s(doc, "pricing", issues);
  PricingParams p;
  p.price0_usd_per_tok = s.number("price0_usd_per_tok", Check::positive, p.price0_usd_per_tok);
  p.tok_depreciation_annual = s.optional_number("tok_depreciation_annual", Check::unit);
  p.k_ratio = s.optional_number("k_ratio", Check::non_negative);
  const bool has_rho = s.get("tok_depreciation_annual") != nullptr;
  const bool has_k = s.get("k_ratio") != nullptr;
  if (has_rho == has_k)
    s.issue("", "exactly one of tok_depreciation_annual and k_ratio must be set");
  p.k_mode = s.choice<DepreciationMode>(
      "k_mode",
      {{"exponent", DepreciationMode::exponent}, {"ratio", DepreciationMode::ratio}},
      DepreciationMode::exponent);
  p.billing_mode = s.choice<BillingMode>(
      "billing_mode",
      {{"capacity", BillingMode::capacity}, {"demand", BillingMode::demand}},
      BillingMode::capacity);
  return p;
}

std::vector<double> number_list(Section& s, const std::string& key, Check check) {
  std::vector<double> out;
  const json* v = s.get(key);
  if (v == nullptr) return out;
  if (!v->is_array()) {
    s.issue(key, "must be an array of numbers");
    return out;
  }
  for (std::size_t i = 0; i < v->size(); ++i) {
    const auto& x = (*v)[i];
    if (!x.is_number() || !passes(check, x.get<double>())) {
      s.issue(fmt::format("{}[{}]", key, i),
              x.is_number() ? std::string(check_message(check)) : "must be a number");
      continue;
    }
    out.push_back(x.get<double>());
  }
  return out;
}

SweepSpec parse_sweep(const json& doc, std::vector<ConfigIssue>& issues) {
  Section s(doc, "sweep", issues);
  SweepSpec sweep;
  sweep.dens_values = number_list(s, "dens_annual", Check::positive);
  sweep.k_values = number_list(s, "k", Check::non_negative);
  if (const json* v = s.get("presets")) {
    const auto known = preset_names();
    if (!v->is_array()) {
      s.issue("presets", "must be an array of preset names");
    } else {
      for (std::size_t i = 0; i < v->size(); ++i) {
        const auto& x = (*v)[i];
        if (!x.is_string() ||
            std::find(known.begin(), known.end(), x.get<std::string>()) == known.end()) {
          s.issue(fmt::format("presets[{}]", i), "must name a known preset");
          continue;
        }
        sweep.presets.push_back(x.get<std::string>());
      }
    }
  }
  return sweep;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

json profile_json(const WeeklyProfile& p) {
  return json(std::vector<double>(p.values().begin(), p.values().end()));
}

json server_json(const ServerModel& m) {
  return {{"name", m.name},
          {"cost_usd", m.cost_usd},
          {"power_w", m.power_w},
          {"macro_mhz", m.macro_mhz},
          {"micro_mhz", m.micro_mhz}};
}

}  // namespace

std::string engine_version() { return AIRAN_VERSION; }

std::string json_digest(const json& doc) { return sha256_hex(doc.dump()); }

std::vector<std::string> preset_names() { return {"milan_s1", "milan_s2"}; }

json preset_document(std::string_view name) {
  if (name == "milan_s1") return json::parse(embedded::milan_s1_json());
  if (name == "milan_s2") return json::parse(embedded::milan_s2_json());
  throw ConfigError("preset", fmt::format("unknown preset '{}'", name));
}

ScenarioSpec validate_spec(const json& raw, const PlatformCatalog& catalog,
                           const ValidateOptions& options) {
  if (!raw.is_object() && !raw.is_null())
    throw ConfigError("", "scenario document must be an object");

  std::string preset_name(kDefaultPreset);
  json patch = raw.is_null() ? json::object() : raw;
  if (patch.contains("preset")) {
    if (!patch["preset"].is_string())
      throw ConfigError("preset", "must be a string");
    preset_name = patch["preset"].get<std::string>();
    patch.erase("preset");
  }
  if (options.preset) preset_name = *options.preset;

  json doc = preset_document(preset_name);
  // Naming one depreciation input replaces the preset's choice; naming both
  // is still an error.
  if (const auto it = patch.find("pricing"); it != patch.end() && it->is_object()) {
    const bool k = it->contains("k_ratio") && !(*it)["k_ratio"].is_null();
    const bool rho = it->contains("tok_depreciation_annual") &&
                     !(*it)["tok_depreciation_annual"].is_null();
    if (k && !it->contains("tok_depreciation_annual"))
      doc["pricing"]["tok_depreciation_annual"] = nullptr;
    if (rho && !it->contains("k_ratio")) doc["pricing"]["k_ratio"] = nullptr;
  }
  doc.merge_patch(patch);

  std::vector<ConfigIssue> issues;
  ScenarioSpec spec;
  {
    Section top(doc, "", issues);
    spec.name = top.string("name", spec.name);
    spec.horizon_weeks =
        static_cast<int>(top.integer("horizon_weeks", 1, spec.horizon_weeks));

    if (const json* w = top.get("w_dim"); w == nullptr) {
      top.issue("w_dim", "is required");
    } else if (w->is_string()) {
      const auto s = w->get<std::string>();
      if (s == "launch") {
        spec.w_dim = 0;
      } else if (s == "horizon") {
        spec.w_dim = spec.horizon_weeks;
      } else {
        top.issue("w_dim", "must be a week number, \"launch\" or \"horizon\"");
      }
    } else {
      const auto w_dim = top.integer("w_dim", 0, 0);
      if (w_dim > spec.horizon_weeks)
        top.issue("w_dim", "must be in [0, horizon_weeks]");
      else
        spec.w_dim = static_cast<int>(w_dim);
    }

    spec.platform_primary = top.string("platform_primary", spec.platform_primary);
    spec.platform_baseline = top.string("platform_baseline", spec.platform_baseline);
    for (const auto* key : {"platform_primary", "platform_baseline"}) {
      const auto& name =
          std::string_view(key) == "platform_primary" ? spec.platform_primary
                                                      : spec.platform_baseline;
      if (!catalog.contains(name))
        top.issue(key, fmt::format("'{}' is not a catalog platform or L1 stack", name));
    }

    {
      Section m(top.child("mix"), "mix", issues);
      spec.mix.macro_weight = m.number("macro_weight", Check::non_negative, 1.0);
      spec.mix.micro_weight = m.number("micro_weight", Check::non_negative, 3.0);
      if (spec.mix.macro_weight + spec.mix.micro_weight < 1.0)
        m.issue("", "weights must sum to at least 1");
    }

    spec.ran = parse_ran(top.child("ran"), issues, options);
    spec.llm = parse_llm(top.child("llm"), issues, options);
    spec.pricing = parse_pricing(top.child("pricing"), issues);
    spec.opex_attribution = top.choice<OpexAttribution>(
        "opex_attribution",
        {{"llm_energy", OpexAttribution::llm_energy},
         {"ran_opex", OpexAttribution::ran_opex},
         {"both", OpexAttribution::both}},
        OpexAttribution::llm_energy);

    {
      Section t(top.child("tco"), "tco", issues);
      spec.tco.target_mbps = t.number("target_mbps", Check::positive, spec.tco.target_mbps);
      spec.tco.years = static_cast<int>(t.integer("years", 1, spec.tco.years));
    }
    spec.sweep = parse_sweep(top.child("sweep"), issues);
  }

  if (!issues.empty()) throw ConfigError(std::move(issues));

  // Cross-field invariants the per-field checks cannot see.
  try {
    spec.ran.validate();
    spec.llm.validate();
    spec.pricing.validate();
    (void)resolve_depreciation(spec.pricing, spec.llm.dens_annual);
  } catch (const DomainError& e) {
    throw ConfigError("", e.what());
  }
  return spec;
}

json to_json(const ScenarioSpec& spec) {
  const auto& r = spec.ran;
  const auto& l = spec.llm;
  const auto& p = spec.pricing;
  json doc = {
      {"name", spec.name},
      {"horizon_weeks", spec.horizon_weeks},
      {"w_dim", spec.w_dim},
      {"platform_primary", spec.platform_primary},
      {"platform_baseline", spec.platform_baseline},
      {"mix", {{"macro_weight", spec.mix.macro_weight},
               {"micro_weight", spec.mix.micro_weight}}},
      {"ran", {{"pop_density", r.pop_density},
               {"area_km2", r.area_km2},
               {"penetration", r.penetration},
               {"busy_hour_factor", r.busy_hour_factor},
               {"r_user0_mbps", r.r_user0_mbps},
               {"growth_annual", r.growth_annual},
               {"se", r.se},
               {"overhead", r.overhead},
               {"pue", r.pue},
               {"elec_usd_per_kwh", r.elec_usd_per_kwh},
               {"profile", profile_json(r.profile)}}},
      {"llm", {{"t_gpu0", l.t_gpu0},
               {"dens_annual", l.dens_annual},
               {"max_concurrency", l.max_concurrency},
               {"tokens_per_request", l.tokens_per_request},
               {"q0", l.q0},
               {"demand_growth_annual", l.demand_growth_annual},
               {"ai_adoption", l.ai_adoption},
               {"profile", profile_json(l.profile)},
               {"user_base",
                {{"mode", l.user_base.mode == UserBaseMode::explicit_count
                              ? "explicit"
                              : "area_product"},
                 {"explicit_users", l.user_base.explicit_users}}}}},
      {"pricing", {{"price0_usd_per_tok", p.price0_usd_per_tok},
                   {"tok_depreciation_annual",
                    p.tok_depreciation_annual ? json(*p.tok_depreciation_annual) : json()},
                   {"k_ratio", p.k_ratio ? json(*p.k_ratio) : json()},
                   {"k_mode", to_string(p.k_mode)},
                   {"billing_mode", to_string(p.billing_mode)}}},
      {"opex_attribution", to_string(spec.opex_attribution)},
      {"tco", {{"target_mbps", spec.tco.target_mbps}, {"years", spec.tco.years}}},
  };
  if (spec.sweep.empty()) {
    doc["sweep"] = nullptr;
  } else {
    doc["sweep"] = {{"presets", spec.sweep.presets},
                    {"dens_annual", spec.sweep.dens_values},
                    {"k", spec.sweep.k_values}};
  }
  return doc;
}

std::string config_digest(const ScenarioSpec& spec, const PlatformCatalog& catalog) {
  const json payload = {
      {"engine", engine_version()},
      {"spec", to_json(spec)},
      {"platform_primary", server_json(catalog.resolve(spec.platform_primary))},
      {"platform_baseline", server_json(catalog.resolve(spec.platform_baseline))},
  };
  return json_digest(payload);
}

std::vector<SweepPoint> expand_sweep(const json& raw, const PlatformCatalog& catalog,
                                     const ValidateOptions& options) {
  const ScenarioSpec base = validate_spec(raw, catalog, options);
  json doc = raw.is_null() ? json::object() : raw;
  doc.erase("sweep");
  if (base.sweep.empty()) {
    ScenarioSpec spec = base;
    spec.sweep = {};
    return {{spec.name, std::move(spec)}};
  }

  const bool named = raw.is_object() && raw.contains("name");
  std::vector<std::optional<std::string>> presets;
  for (const auto& p : base.sweep.presets) presets.emplace_back(p);
  if (presets.empty()) presets.emplace_back(std::nullopt);
  std::vector<std::optional<double>> dens(base.sweep.dens_values.begin(),
                                          base.sweep.dens_values.end());
  if (dens.empty()) dens.emplace_back(std::nullopt);
  std::vector<std::optional<double>> ks(base.sweep.k_values.begin(),
                                        base.sweep.k_values.end());
  if (ks.empty()) ks.emplace_back(std::nullopt);

  std::vector<SweepPoint> points;
  for (const auto& preset : presets) {
    ValidateOptions opts = options;
    if (preset) opts.preset = preset;
    for (const auto& d : dens) {
      for (const auto& k : ks) {
        json point = doc;
        if (d) point["llm"]["dens_annual"] = *d;
        if (k) {
          point["pricing"]["k_ratio"] = *k;
          point["pricing"]["tok_depreciation_annual"] = nullptr;
        }
        ScenarioSpec spec = validate_spec(point, catalog, opts);
        std::string label;
        if (preset)
          label = named ? fmt::format("{}_{}", spec.name, *preset) : *preset;
        else
          label = spec.name;
        if (d) label += fmt::format("_dens{:g}", *d);
        if (k) label += fmt::format("_k{:g}", *k);
        spec.name = label;
        spec.sweep = {};
        points.push_back({label, std::move(spec)});
      }
    }
  }
  return points;
}

}  // namespace airan
