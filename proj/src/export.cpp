#include "airan/export.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

#include "airan/errors.hpp"

namespace airan {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string format_usd(MicroUsd micros) {
  __extension__ using Unsigned = unsigned __int128;
  const bool negative = micros < 0;
  // Magnitude in unsigned arithmetic so the minimum value does not overflow.
  const Unsigned mag = negative ? Unsigned{0} - static_cast<Unsigned>(micros)
                                : static_cast<Unsigned>(micros);
  Unsigned cents = (mag + 5000) / 10000;
  std::string digits;
  const auto frac = static_cast<unsigned>(cents % 100);
  cents /= 100;
  do {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(cents % 10)));
    cents /= 10;
  } while (cents != 0);
  const bool sign = negative && (digits != "0" || frac != 0);
  return fmt::format("{}{}.{:02}", sign ? "-" : "", digits, frac);
}

std::string file_label(std::string_view label) {
  std::string out;
  for (char c : label) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    out += ok ? c : '_';
  }
  return out.empty() ? "scenario" : out;
}

namespace {

class TableWriter {
 public:
  TableWriter(const fs::path& dir, std::string name,
              std::vector<fs::path>& written)
      : path_(dir / name), out_(path_, std::ios::binary | std::ios::trunc) {
    if (!out_) throw LoadError("cannot write " + path_.string());
    written.push_back(path_);
  }

  ~TableWriter() noexcept(false) {
    out_.flush();
    if (!out_ && std::uncaught_exceptions() == 0)
      throw LoadError("write failed: " + path_.string());
  }

  void line(std::string_view s) {
    out_ << s << '\n';
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

std::string avg(double v) { return fmt::format("{:.6f}", v); }

std::string multiple_csv(double m) {
  if (std::isinf(m)) return m > 0 ? "inf" : "-inf";
  return fmt::format("{:.2f}", m);
}

json multiple_json(double m) {
  if (std::isinf(m)) return m > 0 ? "inf" : "-inf";
  return m;
}

void write_tco(const ResultBundle& b, const fs::path& dir, const PlatformCatalog& catalog,
               std::vector<fs::path>& written) {
  const ServerModel primary = catalog.resolve(b.spec.platform_primary);
  const ServerModel baseline = catalog.resolve(b.spec.platform_baseline);
  TcoInputs in;
  in.target_mbps = b.spec.tco.target_mbps;
  in.years = b.spec.tco.years;
  in.se = b.spec.ran.se;
  in.overhead = b.spec.ran.overhead;
  in.pue = b.spec.ran.pue;
  in.elec_usd_per_kwh = b.spec.ran.elec_usd_per_kwh;

  auto key = [](const std::string& name) {
    std::string s = file_label(name);
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  TableWriter t(dir, "tco.csv", written);
  t.line(fmt::format(
      "cell_type,{0}_servers,{0}_capex,{0}_opex,{0}_tco,{0}_per_gbps,"
      "{1}_servers,{1}_capex,{1}_opex,{1}_tco,{1}_per_gbps",
      key(primary.name), key(baseline.name)));
  for (auto [kind, name] : {std::pair{CellKind::micro, "Micro"},
                            std::pair{CellKind::macro, "Macro"},
                            std::pair{CellKind::mixed, "Mixed"}}) {
    const auto a = dimension_for_throughput(primary, kind, b.spec.mix, in);
    const auto f = dimension_for_throughput(baseline, kind, b.spec.mix, in);
    t.line(fmt::format("{},{},{},{},{},{},{},{},{},{},{}", name, a.server_count,
                       format_usd(to_micro_usd(a.capex_usd)),
                       format_usd(to_micro_usd(a.opex_usd)),
                       format_usd(to_micro_usd(a.tco_usd)),
                       format_usd(to_micro_usd(a.per_gbps_usd)), f.server_count,
                       format_usd(to_micro_usd(f.capex_usd)),
                       format_usd(to_micro_usd(f.opex_usd)),
                       format_usd(to_micro_usd(f.tco_usd)),
                       format_usd(to_micro_usd(f.per_gbps_usd))));
  }
}

}  // namespace

std::vector<fs::path> export_tables(std::span<const ResultBundle> bundles,
                                    const fs::path& out_dir,
                                    const PlatformCatalog& catalog,
                                    const ExportOptions& options) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw LoadError(fmt::format("cannot create {}: {}", out_dir.string(), ec.message()));

  std::vector<fs::path> written;
  std::vector<WeeklyAverages> averages;
  for (const auto& b : bundles) averages.push_back(weekly_averages(b.allocation));

  for (const auto& b : bundles) {
    const auto cells = b.allocation.week(0);
    TableWriter t(out_dir, "gpu_usage_" + file_label(b.label()) + ".csv", written);
    t.line("hour,ran,llm,idle");
    for (int h = 0; h < kHoursPerWeek; ++h) {
      const auto& c = cells[static_cast<std::size_t>(h)];
      t.line(fmt::format("{},{},{},{}", h, c.ran, c.llm, c.idle));
    }
  }

  if (!bundles.empty()) {
    const int weeks = bundles.front().allocation.weeks();
    bool same_horizon = true;
    for (const auto& b : bundles) same_horizon &= b.allocation.weeks() == weeks;
    if (!same_horizon) throw DomainError("bundles in one export must share a horizon");

    {
      TableWriter t(out_dir, "gpu_allocation_trend.csv", written);
      std::string header = "week";
      for (const auto& b : bundles) {
        if (bundles.size() == 1) {
          header += ",ran_avg,llm_avg";
        } else {
          header += fmt::format(",{0}_ran_avg,{0}_llm_avg", b.label());
        }
      }
      t.line(header);
      for (int w = 0; w < weeks; ++w) {
        std::string row = std::to_string(w);
        for (const auto& a : averages)
          row += "," + avg(a.ran[static_cast<std::size_t>(w)]) + "," +
                 avg(a.llm[static_cast<std::size_t>(w)]);
        t.line(row);
      }
    }

    auto per_week_table = [&](const char* name, auto&& series) {
      TableWriter t(out_dir, name, written);
      std::string header = "week";
      for (const auto& b : bundles) header += "," + b.label();
      t.line(header);
      for (int w = 0; w < weeks; ++w) {
        std::string row = std::to_string(w);
        for (const auto& b : bundles)
          row += "," + format_usd(series(b)[static_cast<std::size_t>(w)]);
        t.line(row);
      }
    };
    per_week_table("llm_revenue.csv",
                   [](const ResultBundle& b) -> const auto& { return b.weekly_revenue; });
    per_week_table("llm_cumulative.csv", [](const ResultBundle& b) -> const auto& {
      return b.roi.cumulative_return;
    });

    {
      TableWriter t(out_dir, "investment_ref.csv", written);
      t.line("label,investment_usd");
      for (const auto& b : bundles)
        t.line(fmt::format("{},{}", b.label(), format_usd(b.roi.investment)));
    }
    {
      TableWriter t(out_dir, "roi.csv", written);
      t.line("label,k,dens_annual,rho_tok,investment_usd,total_return_usd,R_over_I,"
             "break_even_week");
      for (const auto& b : bundles) {
        const auto& p = b.spec.pricing;
        t.line(fmt::format(
            "{},{},{:g},{:.6g},{},{},{},{}", b.label(),
            p.k_ratio ? fmt::format("{:g}", *p.k_ratio) : std::string(),
            b.spec.llm.dens_annual, b.rho_tok, format_usd(b.roi.investment),
            format_usd(b.roi.cumulative_return.back()),
            multiple_csv(b.roi.return_multiple),
            b.roi.break_even_week ? std::to_string(*b.roi.break_even_week) : ""));
      }
    }

    write_tco(bundles.front(), out_dir, catalog, written);

    for (std::size_t i = 0; i < bundles.size(); ++i) {
      const auto& b = bundles[i];
      const auto& a = averages[i];
      TableWriter t(out_dir, "weekly_" + file_label(b.label()) + ".csv", written);
      t.line("week,revenue,llm_energy,ran_opex,opex_attributed,net_return,"
             "cumulative_return,ran_avg,llm_avg,idle_avg");
      for (int w = 0; w < weeks; ++w) {
        const auto k = static_cast<std::size_t>(w);
        t.line(fmt::format("{},{},{},{},{},{},{},{},{},{}", w,
                           format_usd(b.weekly_revenue[k]), format_usd(b.llm_energy[k]),
                           format_usd(b.ran_opex[k]), format_usd(b.opex_attributed[k]),
                           format_usd(b.roi.weekly_net_return[k]),
                           format_usd(b.roi.cumulative_return[k]), avg(a.ran[k]),
                           avg(a.llm[k]), avg(a.idle[k])));
      }
    }

    if (options.full_grid) {
      for (const auto& b : bundles) {
        TableWriter t(out_dir, "allocation_" + file_label(b.label()) + ".csv", written);
        t.line("week,hour,g_total,ran,llm,idle,required,free,unmet_ran");
        for (int w = 0; w < weeks; ++w) {
          const auto cells = b.allocation.week(w);
          for (int h = 0; h < kHoursPerWeek; ++h) {
            const auto& c = cells[static_cast<std::size_t>(h)];
            t.line(fmt::format("{},{},{},{},{},{},{},{},{}", w, h,
                               b.allocation.g_total(), c.ran, c.llm, c.idle,
                               c.required, c.free, c.unmet_ran));
          }
        }
      }
    }
  }

  json manifest = {{"engine_version", engine_version()}};
  if (!options.generated_at.empty()) manifest["generated_at"] = options.generated_at;
  json files = json::array();
  for (const auto& p : written) files.push_back(p.filename().string());
  manifest["files"] = files;
  json runs = json::array();
  for (const auto& b : bundles) {
    runs.push_back({
        {"label", b.label()},
        {"config_digest", b.config_digest},
        {"rho_tok", b.rho_tok},
        {"llm_users", b.llm_users},
        {"fleet_primary", fleet_to_json(b.fleet_primary)},
        {"fleet_baseline", fleet_to_json(b.fleet_baseline)},
        {"investment_usd", to_usd(b.roi.investment)},
        {"total_return_usd", to_usd(b.roi.cumulative_return.back())},
        {"return_multiple", multiple_json(b.roi.return_multiple)},
        {"break_even_week",
         b.roi.break_even_week ? json(*b.roi.break_even_week) : json()},
        {"warnings", b.warnings},
        {"spec", to_json(b.spec)},
    });
  }
  manifest["runs"] = runs;
  {
    TableWriter t(out_dir, "manifest.json", written);
    t.line(manifest.dump(2));
  }
  return written;
}

}  // namespace airan
