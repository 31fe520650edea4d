// Thin binding over the engine. Structured values cross the boundary as JSON
// text; airan_econ/__init__.py converts them to and from Python objects.

#include <optional>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <json.hpp>

#include "airan/errors.hpp"
#include "airan/export.hpp"
#include "airan/runner.hpp"
#include "airan/scenario.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

json parse(const std::string& text) {
  if (text.empty()) return json::object();
  return json::parse(text);
}

airan::ValidateOptions options(const std::optional<std::string>& preset,
                               const std::optional<std::string>& base_dir) {
  airan::ValidateOptions o;
  o.preset = preset;
  if (base_dir) o.base_dir = *base_dir;
  return o;
}

airan::PlatformCatalog catalog_for(const std::optional<std::string>& path) {
  return path ? airan::PlatformCatalog::load(*path) : airan::PlatformCatalog::builtin();
}

}  // namespace

PYBIND11_MODULE(_airan, m) {
  m.doc() = "Dual-use RAN/LLM techno-economic engine (native core)";
  m.attr("__version__") = airan::engine_version();

  // ConfigError carries its issue list as a JSON message; the Python
  // wrapper unpacks it into an `issues` attribute.
  static PyObject* config_error = py::exception<airan::ConfigError>(m, "ConfigError", PyExc_ValueError).release().ptr();
  static PyObject* domain_error = py::exception<airan::DomainError>(m, "DomainError", PyExc_ValueError).release().ptr();
  static PyObject* load_error = py::exception<airan::LoadError>(m, "LoadError", PyExc_OSError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const airan::ConfigError& e) {
      json issues = json::array();
      for (const auto& i : e.issues()) issues.push_back({{"path", i.path}, {"message", i.message}});
      PyErr_SetString(config_error, issues.dump().c_str());
    } catch (const airan::DomainError& e) {
      PyErr_SetString(domain_error, e.what());
    } catch (const airan::LoadError& e) {
      PyErr_SetString(load_error, e.what());
    } catch (const json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("baseband_capacity",
        [](int dl_layers, int num_cells, double bandwidth_mhz) {
          airan::CellConfig c;
          c.dl_layers = dl_layers;
          c.num_cells = num_cells;
          c.bandwidth_mhz = bandwidth_mhz;
          c.validate();
          return airan::baseband_capacity(c);
        },
        py::arg("dl_layers"), py::arg("num_cells"), py::arg("bandwidth_mhz"));
  m.def("mixed_capacity",
        [](double macro_mhz, double micro_mhz, double macro_weight, double micro_weight) {
          const airan::DeploymentMix mix{macro_weight, micro_weight};
          mix.validate();
          return airan::mixed_capacity(macro_mhz, micro_mhz, mix);
        },
        py::arg("macro_mhz"), py::arg("micro_mhz"), py::arg("macro_weight") = 1.0,
        py::arg("micro_weight") = 3.0);
  m.def("net_throughput", &airan::net_throughput, py::arg("capacity_mhz"), py::arg("se"),
        py::arg("overhead"));

  m.def("catalog_json",
        [](std::optional<std::string> path) { return catalog_for(path).to_json().dump(); },
        py::arg("path") = py::none());
  m.def("presets_json", [] {
    json out = json::object();
    for (const auto& n : airan::preset_names()) out[n] = airan::preset_document(n);
    return out.dump();
  });

  m.def("validate_spec_json",
        [](const std::string& doc, std::optional<std::string> preset,
           std::optional<std::string> base_dir, std::optional<std::string> catalog) {
          const auto cat = catalog_for(catalog);
          const auto spec = airan::validate_spec(parse(doc), cat, options(preset, base_dir));
          json out = airan::to_json(spec);
          out["config_digest"] = airan::config_digest(spec, cat);
          return out.dump();
        },
        py::arg("doc"), py::arg("preset") = py::none(), py::arg("base_dir") = py::none(),
        py::arg("catalog") = py::none());

  m.def("run_scenario_json",
        [](const std::string& doc, std::optional<std::string> preset,
           std::optional<std::string> base_dir, bool include_grid,
           std::optional<std::string> catalog) {
          const auto cat = catalog_for(catalog);
          auto spec = airan::validate_spec(parse(doc), cat, options(preset, base_dir));
          spec.sweep = {};
          py::gil_scoped_release release;
          const auto b = airan::run_scenario(spec, cat);
          return airan::bundle_to_json(b, cat, {include_grid}).dump();
        },
        py::arg("doc"), py::arg("preset") = py::none(), py::arg("base_dir") = py::none(),
        py::arg("include_grid") = false, py::arg("catalog") = py::none());

  m.def("run_sweep_json",
        [](const std::string& doc, std::optional<std::string> preset,
           std::optional<std::string> base_dir, unsigned threads,
           std::optional<std::string> catalog) {
          const auto cat = catalog_for(catalog);
          const auto points = airan::expand_sweep(parse(doc), cat, options(preset, base_dir));
          py::gil_scoped_release release;
          const auto bundles = airan::run_sweep(points, cat, threads);
          json out = json::array();
          for (const auto& b : bundles) out.push_back(airan::bundle_to_json(b, cat));
          return out.dump();
        },
        py::arg("doc"), py::arg("preset") = py::none(), py::arg("base_dir") = py::none(),
        py::arg("threads") = 0, py::arg("catalog") = py::none());

  m.def("export_json",
        [](const std::string& doc, const std::string& out_dir, std::optional<std::string> preset,
           std::optional<std::string> base_dir, bool full_grid, const std::string& generated_at,
           std::optional<std::string> catalog) {
          const auto cat = catalog_for(catalog);
          const auto points = airan::expand_sweep(parse(doc), cat, options(preset, base_dir));
          py::gil_scoped_release release;
          const auto bundles = airan::run_sweep(points, cat);
          const auto files =
              airan::export_tables(bundles, out_dir, cat, {full_grid, generated_at});
          std::vector<std::string> names;
          for (const auto& f : files) names.push_back(f.string());
          return names;
        },
        py::arg("doc"), py::arg("out_dir"), py::arg("preset") = py::none(),
        py::arg("base_dir") = py::none(), py::arg("full_grid") = false,
        py::arg("generated_at") = "", py::arg("catalog") = py::none());

  m.def("ingest_trace_json",
        [](const std::string& path, bool count_response_tokens, const std::string& timestamp_col,
           const std::string& request_col, const std::string& response_col) {
          const auto file =
              airan::read_trace_csv(path, {timestamp_col, request_col, response_col});
          const auto s = airan::ingest_trace(file.records, {count_response_tokens});
          return json{{"profile", s.profile.values()},
                      {"mean_tokens_per_request", s.mean_tokens_per_request},
                      {"record_count", s.record_count},
                      {"warnings", file.warnings}}
              .dump();
        },
        py::arg("path"), py::arg("count_response_tokens") = true,
        py::arg("timestamp_col") = "timestamp", py::arg("request_col") = "request_tokens",
        py::arg("response_col") = "response_tokens");
}
