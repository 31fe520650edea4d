#include "airan/service.hpp"

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "airan/errors.hpp"
#include "airan/runner.hpp"
#include "airan/scenario.hpp"

namespace airan {

namespace {

using json = nlohmann::json;

ApiResponse json_response(int status, const json& body) {
  return {status, body.dump(), "application/json"};
}

ApiResponse error_response(int status, std::string_view message,
                           const std::vector<ConfigIssue>& issues = {},
                           const std::string& digest = {}) {
  json list = json::array();
  for (const auto& i : issues) list.push_back({{"path", i.path}, {"message", i.message}});
  return json_response(status, {{"error", message},
                                {"issues", list},
                                {"config_digest", digest.empty() ? json() : json(digest)}});
}

}  // namespace

ApiService::ApiService(PlatformCatalog catalog) : catalog_(std::move(catalog)) {}

ApiResponse ApiService::handle(std::string_view method, std::string_view path,
                               std::string_view body, bool include_grid) const {
  const json catalog_json = catalog_.to_json();
  if (method == "GET") {
    if (path == "/api/health")
      return json_response(200, {{"status", "ok"},
                                 {"engine_version", engine_version()},
                                 {"config_digest", json_digest(catalog_json)}});
    if (path == "/api/platforms") {
      json out = catalog_json;
      json stacks = json::array();
      for (const auto& s : catalog_.stacks()) {
        const ServerModel m = catalog_.resolve(s);
        stacks.push_back({{"name", s},
                          {"cost_usd", m.cost_usd},
                          {"power_w", m.power_w},
                          {"macro_mhz", m.macro_mhz},
                          {"micro_mhz", m.micro_mhz}});
      }
      out["stacks"] = stacks;
      out["config_digest"] = json_digest(catalog_json);
      return json_response(200, out);
    }
    if (path == "/api/presets") {
      json presets = json::object();
      for (const auto& name : preset_names()) presets[name] = preset_document(name);
      return json_response(200, {{"presets", presets},
                                 {"config_digest", json_digest(presets)}});
    }
  }

  if (method == "POST" && (path == "/api/scenario" || path == "/api/sweep")) {
    json raw;
    try {
      raw = body.empty() ? json::object() : json::parse(body);
    } catch (const json::parse_error& e) {
      return error_response(400, fmt::format("request body is not valid JSON: {}", e.what()));
    }
    const std::string request_digest = json_digest(raw);
    ValidateOptions untrusted;
    untrusted.allow_profile_files = false;
    try {
      if (path == "/api/scenario") {
        ScenarioSpec spec = validate_spec(raw, catalog_, untrusted);
        spec.sweep = {};
        const ResultBundle b = run_scenario(spec, catalog_);
        return json_response(200, bundle_to_json(b, catalog_, {include_grid}));
      }
      const auto points = expand_sweep(raw, catalog_, untrusted);
      const auto bundles = run_sweep(points, catalog_);
      json out = json::array();
      for (const auto& b : bundles) out.push_back(bundle_to_json(b, catalog_, {include_grid}));
      return json_response(200, out);
    } catch (const ConfigError& e) {
      return error_response(400, e.what(), e.issues(), request_digest);
    } catch (const DomainError& e) {
      return error_response(400, e.what(), {}, request_digest);
    } catch (const LoadError& e) {
      return error_response(400, e.what(), {}, request_digest);
    } catch (const std::exception& e) {
      return error_response(500, e.what(), {}, request_digest);
    }
  }

  return error_response(404, fmt::format("no route for {} {}", method, path));
}

struct HttpServer::Impl {
  explicit Impl(const ApiService& a) : api(a) {}
  const ApiService& api;
  httplib::Server server;
};

HttpServer::HttpServer(const ApiService& api, std::filesystem::path static_dir)
    : impl_(std::make_unique<Impl>(api)) {
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    const bool grid = req.has_param("grid") && req.get_param_value("grid") == "1";
    const ApiResponse r = impl_->api.handle(req.method, req.path, req.body, grid);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  for (const char* p : {"/api/health", "/api/platforms", "/api/presets"})
    impl_->server.Get(p, route);
  for (const char* p : {"/api/scenario", "/api/sweep"}) impl_->server.Post(p, route);
  if (!static_dir.empty()) impl_->server.set_mount_point("/", static_dir.string());
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace airan
