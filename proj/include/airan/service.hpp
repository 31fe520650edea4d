#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "airan/platform_catalog.hpp"

namespace airan {

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Transport-independent handlers of the JSON API:
///   GET  /api/health, /api/platforms, /api/presets
///   POST /api/scenario  (ScenarioSpec document -> ResultBundle)
///   POST /api/sweep     (ScenarioSpec with sweep -> array of ResultBundle)
/// Every response body carries a "config_digest". Invalid input yields 400
/// with an "issues" list of {path, message}; 500 is reserved for engine
/// faults.
class ApiService {
 public:
  explicit ApiService(PlatformCatalog catalog);

  ApiResponse handle(std::string_view method, std::string_view path,
                     std::string_view body, bool include_grid = false) const;

  const PlatformCatalog& catalog() const { return catalog_; }

 private:
  PlatformCatalog catalog_;
};

/// HTTP front end for ApiService. Handlers only read immutable state, so
/// concurrent requests are safe.
class HttpServer {
 public:
  explicit HttpServer(const ApiService& api,
                      std::filesystem::path static_dir = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to `port` (0 picks a free port) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks serving requests until stop() is called.
  bool listen();
  void stop();
  /// Blocks until the server accepts connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace airan
