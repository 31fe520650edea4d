#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "airan/runner.hpp"

namespace airan {

struct ExportOptions {
  /// Also write allocation_<label>.csv with every (week, hour) cell.
  bool full_grid = false;
  /// Written into manifest.json as generated_at; empty omits the field.
  std::string generated_at;
};

/// Writes the figure tables for `bundles` into `out_dir` (created if
/// missing) and returns the written paths, manifest last. With no bundles
/// only the manifest is written. Throws LoadError naming the path on I/O
/// failure.
std::vector<std::filesystem::path> export_tables(std::span<const ResultBundle> bundles,
                                                 const std::filesystem::path& out_dir,
                                                 const PlatformCatalog& catalog,
                                                 const ExportOptions& options = {});

/// Fixed two-decimal rendering of a micro-USD amount, rounded half away from
/// zero without going through floating point.
std::string format_usd(MicroUsd micros);

/// Label made safe for use in a file name.
std::string file_label(std::string_view label);

}  // namespace airan
