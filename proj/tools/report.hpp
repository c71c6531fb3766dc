#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "io.hpp"

namespace gtomo::cli {

enum class Command { VolumeBound, SurfaceBound, Fisher, Verify, Report };

std::string_view to_string(Command c) noexcept;

struct RunSpec {
  Command command = Command::Report;
  std::filesystem::path geometry_path;
  std::optional<std::filesystem::path> datum_path;
  std::optional<std::filesystem::path> samples_path;
  std::string format = "json";  // json | csv
  std::optional<std::filesystem::path> out_path;
  std::uint64_t seed = 7;
  std::size_t mc_samples = 1'000'000;
  std::optional<double> epsilon;  // absolute; default is 1e-3 of the support width
  std::optional<int> grid;        // default 512 up to n = 3, 64 beyond
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInvalid = 2;

struct RunOutcome {
  int exit_code = kExitOk;
  json document;
};

/// Loads the inputs named by `spec`, evaluates the requested sections and
/// returns the report. Never throws for gtomo errors: input problems give
/// exit code 1, failed validity checks or failed computations exit code 2,
/// and every error is listed under "errors" with its code.
RunOutcome run_report(const RunSpec& spec);

/// JSON (pretty) or CSV with one row per bound, Fisher value and check.
std::string render(const json& document, const std::string& format);

}  // namespace gtomo::cli
