#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "seamcheck/geometry.hpp"
#include "seamcheck/verify.hpp"

namespace seamcheck::cli {

struct RunConfig {
  std::vector<std::filesystem::path> libs;
  std::filesystem::path rules;
  std::vector<DptOption> options = {DptOption::OptionI, DptOption::OptionII};
  std::filesystem::path out = "seamcheck_out";
  Dbu max_row_width = 200000;
  std::size_t svg_cap = 20;
  int jobs = 1;
};

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;  // verify: violations; generate: count mismatch
inline constexpr int kExitError = 2;

// Entry point: `seamcheck <profile|generate|verify|report> [flags]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_profile(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err);

// Count manifest written by `generate`.
struct Manifest {
  std::string library;
  std::size_t cells = 0;
  std::size_t single_height_cells = 0;
  std::size_t multi_height_cells = 0;
  std::size_t cases = 0;
  std::size_t placements_total = 0;
  std::size_t single_height_placements = 0;
  std::uint64_t expected_proposed = 0;
  std::uint64_t expected_conventional = 0;

  // Single-height placements must equal the proposed-count formula.
  bool consistent() const { return single_height_placements == expected_proposed; }
  std::string to_json() const;
};

// Overlays a YAML config file (keys: libs, rules, dpt_option, out,
// max_row_width, svg_cap, jobs) onto `config`. Relative paths resolve
// against the config file's directory.
void load_config_file(const std::filesystem::path& path, RunConfig& config);

}  // namespace seamcheck::cli
