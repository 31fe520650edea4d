#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "airan/errors.hpp"
#include "airan/platform_catalog.hpp"

using namespace airan;

namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

}  // namespace

TEST_CASE("baseband capacity is layers x cells x bandwidth") {
  CHECK(baseband_capacity({4, 4, 40, 100}) == 16000.0);
  CHECK(baseband_capacity({16, 8, 6, 100}) == 9600.0);
  CHECK(baseband_capacity({1, 1, 1, 1}) == 1.0);
  CHECK(baseband_capacity({4, 4, 36, 10}) == 1440.0);
  CHECK(baseband_capacity({4, 4, 18, 20}) == 1440.0);
}

TEST_CASE("cell configs reject non-positive dimensions") {
  CHECK_THROWS_AS(CellConfig({0, 1, 1, 1}).validate(), DomainError);
  CHECK_THROWS_AS(CellConfig({1, 1, 0, 1}).validate(), DomainError);
  CHECK_THROWS_AS(CellConfig({1, 1, 1, 0}).validate(), DomainError);
}

TEST_CASE("mixed capacity weights macro and micro") {
  const DeploymentMix mix;
  CHECK(mixed_capacity(9600, 16000, mix) == 14400.0);
  CHECK(mixed_capacity(9600, 1440, mix) == 3480.0);
  for (double w1 : {0.0, 1.0, 7.0})
    for (double w2 : {1.0, 2.0, 11.0})
      CHECK(mixed_capacity(512.0, 512.0, {w1, w2}) == doctest::Approx(512.0).epsilon(1e-15));
  CHECK_THROWS_AS(DeploymentMix({0, 0}).validate(), DomainError);
  CHECK_THROWS_AS(DeploymentMix({-1, 3}).validate(), DomainError);
}

TEST_CASE("efficiency metrics") {
  auto e = efficiency_metrics(16000, 45000, 1200);
  CHECK(e.capital_mhz_per_usd == doctest::Approx(0.35556).epsilon(1e-4));
  CHECK(round2(e.power_mhz_per_w) == 13.33);
  e = efficiency_metrics(9600, 6000, 300);
  CHECK(e.capital_mhz_per_usd == doctest::Approx(1.6));
  CHECK(e.power_mhz_per_w == doctest::Approx(32.0));
  e = efficiency_metrics(0, 10, 10);
  CHECK(e.capital_mhz_per_usd == 0.0);
  CHECK(e.power_mhz_per_w == 0.0);
  CHECK_THROWS_AS(efficiency_metrics(1, 0, 1), DomainError);
  CHECK_THROWS_AS(efficiency_metrics(1, 1, 0), DomainError);
}

TEST_CASE("net throughput") {
  CHECK(net_throughput(14400, 9, 0.2) == doctest::Approx(103680.0));
  CHECK(net_throughput(3480, 9, 0.2) == doctest::Approx(25056.0));
  CHECK(net_throughput(1000, 7, 0.0) == 7000.0);
  CHECK_THROWS_AS(net_throughput(1000, 9, 1.0), DomainError);
  CHECK_THROWS_AS(net_throughput(1000, 9, -0.1), DomainError);
  CHECK_THROWS_AS(net_throughput(1000, 0, 0.2), DomainError);
}

TEST_CASE("10 Gbps TCO dimensioning") {
  const auto& cat = PlatformCatalog::builtin();
  const DeploymentMix mix;
  const TcoInputs in;

  auto a = dimension_for_throughput(cat.resolve("ARS-111GL"), CellKind::micro, mix, in);
  CHECK(a.server_count == 1);
  CHECK(a.capex_usd == doctest::Approx(45000));
  CHECK(a.opex_usd == doctest::Approx(31536));
  CHECK(a.tco_usd == doctest::Approx(76536));
  CHECK(a.per_gbps_usd == doctest::Approx(7653.6));

  auto f = dimension_for_throughput(cat.resolve("EGX74I"), CellKind::macro, mix, in);
  CHECK(f.server_count == 1);
  CHECK(f.capex_usd == doctest::Approx(6000));
  CHECK(f.opex_usd == doctest::Approx(7884));
  CHECK(f.tco_usd == doctest::Approx(13884));

  TcoInputs tiny = in;
  tiny.target_mbps = 0.001;
  CHECK(dimension_for_throughput(cat.resolve("DL110"), CellKind::micro, mix, tiny)
            .server_count == 1);

  // 1440 MHz * 9 * 0.8 = 10368 Mbps per server; 100 Gbps needs 10.
  TcoInputs big = in;
  big.target_mbps = 100000;
  CHECK(dimension_for_throughput(cat.resolve("EGX74I"), CellKind::micro, mix, big)
            .server_count == 10);
}

TEST_CASE("builtin catalog and family resolution") {
  const auto& cat = PlatformCatalog::builtin();
  REQUIRE(cat.platforms().size() == 3);
  CHECK(cat.contains("ARS-111GL"));
  CHECK(cat.contains("FlexRAN"));
  CHECK_FALSE(cat.contains("TPU"));
  CHECK(cat.stacks() == std::vector<std::string>{"Aerial", "FlexRAN"});

  const auto flex = cat.resolve("FlexRAN");
  CHECK(flex.cost_usd == doctest::Approx(6600));
  CHECK(flex.power_w == doctest::Approx(300));
  CHECK(flex.macro_mhz == 9600.0);
  CHECK(flex.micro_mhz == 1440.0);
  CHECK(mixed_capacity(flex, DeploymentMix{}) == 3480.0);

  const auto aerial = cat.resolve("Aerial");
  CHECK(aerial.cost_usd == 45000.0);
  CHECK(mixed_capacity(aerial, DeploymentMix{}) == 14400.0);
  CHECK_THROWS_AS(cat.resolve("nope"), std::out_of_range);
}

TEST_CASE("catalog JSON round trip and validation") {
  const auto& cat = PlatformCatalog::builtin();
  const auto again = PlatformCatalog::from_json(cat.to_json());
  CHECK(again.to_json() == cat.to_json());

  auto doc = cat.to_json();
  doc["platforms"][0]["cost_usd"] = -1;
  CHECK_THROWS(PlatformCatalog::from_json(doc));

  auto dup = cat.to_json();
  dup["platforms"].push_back(dup["platforms"][0]);
  CHECK_THROWS(PlatformCatalog::from_json(dup));

  CHECK_THROWS_AS(PlatformCatalog::load("/nonexistent/platforms.json"), LoadError);
}
