#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "airan/errors.hpp"
#include "airan/scenario.hpp"

using namespace airan;
using nlohmann::json;

namespace {

const PlatformCatalog& cat() { return PlatformCatalog::builtin(); }

bool has_issue(const ConfigError& e, const std::string& path) {
  for (const auto& i : e.issues())
    if (i.path == path) return true;
  return false;
}

ConfigError config_error(const json& doc) {
  try {
    validate_spec(doc, cat());
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError");
  return ConfigError("", "");
}

}  // namespace

TEST_CASE("empty document gives the Milan launch-sized defaults") {
  const auto s = validate_spec(json::object(), cat());
  CHECK(s.name == "milan_s1");
  CHECK(s.horizon_weeks == 520);
  CHECK(s.w_dim == 0);
  CHECK(s.ran.area_km2 == 20);
  CHECK(s.ran.pop_density == 7500);
  CHECK(s.ran.penetration == 0.8);
  CHECK(s.ran.busy_hour_factor == 0.1);
  CHECK(s.ran.r_user0_mbps == 300);
  CHECK(s.ran.growth_annual == 1.0);
  CHECK(s.ran.se == 9);
  CHECK(s.ran.overhead == 0.2);
  CHECK(s.ran.pue == 1.5);
  CHECK(s.ran.elec_usd_per_kwh == 0.2);
  CHECK(s.ran.profile == builtin_ran_profile());
  CHECK(s.llm.t_gpu0 == 37);
  CHECK(s.llm.dens_annual == 12.87);
  CHECK(s.llm.max_concurrency == 23.5);
  CHECK(s.llm.tokens_per_request == 969.17);
  CHECK(s.llm.q0 == 14.4);
  CHECK(s.llm.demand_growth_annual == 16);
  CHECK(s.llm.ai_adoption == 0.5);
  CHECK(s.llm.profile == builtin_llm_profile());
  CHECK(s.pricing.price0_usd_per_tok == 0.88e-6);
  CHECK(s.pricing.tok_depreciation_annual == 0.5);
  CHECK_FALSE(s.pricing.k_ratio.has_value());
  CHECK(s.pricing.billing_mode == BillingMode::capacity);
  CHECK(s.opex_attribution == OpexAttribution::llm_energy);
  CHECK(s.platform_primary == "Aerial");
  CHECK(s.platform_baseline == "FlexRAN");
  CHECK(s.sweep.empty());
}

TEST_CASE("end-of-horizon preset") {
  const auto s = validate_spec(json{{"preset", "milan_s2"}}, cat());
  CHECK(s.w_dim == 520);
  CHECK(s.ran.growth_annual == 1.2);
  ValidateOptions o;
  o.preset = "milan_s2";
  CHECK(validate_spec(json{{"preset", "milan_s1"}}, cat(), o).w_dim == 520);
  CHECK(preset_names() == std::vector<std::string>{"milan_s1", "milan_s2"});
  CHECK_THROWS_AS(preset_document("rome"), ConfigError);
  CHECK_THROWS_AS(validate_spec(json{{"preset", "rome"}}, cat()), ConfigError);
}

TEST_CASE("overrides are merged onto the preset") {
  const auto s = validate_spec(
      json{{"horizon_weeks", 10}, {"w_dim", "horizon"}, {"ran", {{"area_km2", 2.5}}}}, cat());
  CHECK(s.horizon_weeks == 10);
  CHECK(s.w_dim == 10);
  CHECK(s.ran.area_km2 == 2.5);
  CHECK(s.ran.pop_density == 7500);
  CHECK(validate_spec(json{{"w_dim", 3}}, cat()).w_dim == 3);
}

TEST_CASE("naming one depreciation input replaces the preset's") {
  auto s = validate_spec(json{{"pricing", {{"k_ratio", 1.25}}}}, cat());
  CHECK(s.pricing.k_ratio == 1.25);
  CHECK_FALSE(s.pricing.tok_depreciation_annual.has_value());
  s = validate_spec(json{{"pricing", {{"k_ratio", 2}}}, {"preset", "milan_s2"}}, cat());
  CHECK(s.pricing.k_ratio == 2.0);
  auto e = config_error(json{{"pricing", {{"k_ratio", 1}, {"tok_depreciation_annual", 0.5}}}});
  CHECK(std::string(e.what()).find("exactly one") != std::string::npos);
  e = config_error(json{{"pricing", {{"tok_depreciation_annual", nullptr}}}});
  CHECK(std::string(e.what()).find("exactly one") != std::string::npos);
}

TEST_CASE("validation errors carry field paths") {
  auto e = config_error(json{{"ran", {{"busy_hour_factor", 1.5}}}});
  CHECK(has_issue(e, "ran.busy_hour_factor"));
  CHECK(std::string(e.what()).find("busy_hour_factor must be in (0,1]") != std::string::npos);

  e = config_error(json{{"ran", {{"overhead", 1.0}, {"se", "nine"}}},
                        {"llm", {{"q0", -1}}},
                        {"w_dim", 900},
                        {"bogus", 1}});
  CHECK(has_issue(e, "ran.overhead"));
  CHECK(has_issue(e, "ran.se"));
  CHECK(has_issue(e, "llm.q0"));
  CHECK(has_issue(e, "w_dim"));
  CHECK(has_issue(e, "bogus"));
  CHECK(e.issues().size() == 5);

  CHECK(has_issue(config_error(json{{"platform_primary", "TPU"}}), "platform_primary"));
  CHECK(has_issue(config_error(json{{"w_dim", "later"}}), "w_dim"));
  CHECK(has_issue(config_error(json{{"mix", {{"macro_weight", 0.2}, {"micro_weight", 0.3}}}}),
                  "mix"));
  CHECK(has_issue(config_error(json{{"pricing", {{"billing_mode", "flat"}}}}),
                  "pricing.billing_mode"));
  CHECK(has_issue(config_error(json{{"llm", {{"profile", "builtin:nope"}}}}), "llm.profile"));
  CHECK(has_issue(config_error(json{{"llm", {{"profile", json::array({1, 2, 3})}}}}),
                  "llm.profile"));
  CHECK(has_issue(config_error(json{{"llm", {{"user_base", {{"mode", "explicit"}}}}}}),
                  "llm.user_base.explicit_users"));
  CHECK(has_issue(config_error(json{{"sweep", {{"k", json::array({1, "x"})}}}}), "sweep.k[1]"));
  CHECK(has_issue(config_error(json{{"sweep", {{"presets", json::array({"rome"})}}}}),
                  "sweep.presets[0]"));
  CHECK_THROWS_AS(validate_spec(json::array(), cat()), ConfigError);
}

TEST_CASE("profiles may be inline arrays or files") {
  std::vector<double> day(24, 1.0);
  day[12] = 4.0;
  auto s = validate_spec(json{{"ran", {{"profile", day}}}}, cat());
  CHECK(s.ran.profile[12] == 1.0);
  CHECK(s.ran.profile[13] == 0.25);
  CHECK(s.ran.profile[36] == 1.0);

  const auto dir = std::filesystem::temp_directory_path() / "airan_profile_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "llm.csv");
    f << "hour,value\n";
    for (int h = 0; h < 24; ++h) f << h << "," << (h == 20 ? 5 : 1) << "\n";
  }
  ValidateOptions o;
  o.base_dir = dir;
  s = validate_spec(json{{"llm", {{"profile", "llm.csv"}}}}, cat(), o);
  CHECK(s.llm.profile[20] == doctest::Approx(5.0 / 28.0));
  s = validate_spec(json{{"llm", {{"profile", "file:" + (dir / "llm.csv").string()}}}}, cat());
  CHECK(s.llm.profile[20] == doctest::Approx(5.0 / 28.0));
  CHECK_THROWS_AS(validate_spec(json{{"llm", {{"profile", "missing.csv"}}}}, cat(), o),
                  ConfigError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("canonical JSON round trips") {
  for (const auto& doc : {json::object(), json{{"preset", "milan_s2"}},
                          json{{"pricing", {{"k_ratio", 1.5}, {"billing_mode", "demand"}}},
                               {"llm", {{"user_base", {{"mode", "explicit"},
                                                       {"explicit_users", 1234}}}}},
                               {"opex_attribution", "both"}}}) {
    const auto s = validate_spec(doc, cat());
    const auto canon = to_json(s);
    const auto again = validate_spec(canon, cat());
    CHECK(to_json(again) == canon);
    CHECK(config_digest(again, cat()) == config_digest(s, cat()));
  }
}

TEST_CASE("config digest") {
  const auto a = validate_spec(json::object(), cat());
  const auto d = config_digest(a, cat());
  CHECK(d.size() == 64);
  CHECK(d.find_first_not_of("0123456789abcdef") == std::string::npos);
  const auto b = validate_spec(json{{"ran", {{"area_km2", 21}}}}, cat());
  CHECK(config_digest(b, cat()) != d);
  CHECK(json_digest(json{{"a", 1}}) == json_digest(json{{"a", 1}}));
  // SHA-256 of the empty object "{}".
  CHECK(json_digest(json::object()) ==
        "44136fa355b3678a1146ad16f7e8649e94fb4fc21fe77e8310c060f61caaff8a");
}

TEST_CASE("sweep expansion") {
  const json doc{{"sweep", {{"presets", {"milan_s1", "milan_s2"}}, {"k", {1, 1.25, 1.5, 2}}}}};
  const auto pts = expand_sweep(doc, cat());
  REQUIRE(pts.size() == 8);
  CHECK(pts[0].label == "milan_s1_k1");
  CHECK(pts[7].label == "milan_s2_k2");
  CHECK(pts[5].spec.w_dim == 520);
  CHECK(pts[1].spec.pricing.k_ratio == 1.25);
  CHECK_FALSE(pts[1].spec.pricing.tok_depreciation_annual.has_value());
  for (const auto& p : pts) CHECK(p.spec.sweep.empty());

  const auto dens = expand_sweep(json{{"sweep", {{"dens_annual", {3, 12.87}}}}}, cat());
  REQUIRE(dens.size() == 2);
  CHECK(dens[0].label == "milan_s1_dens3");
  CHECK(dens[1].spec.llm.dens_annual == 12.87);

  const auto single = expand_sweep(json::object(), cat());
  REQUIRE(single.size() == 1);
  CHECK(single[0].label == "milan_s1");
}
