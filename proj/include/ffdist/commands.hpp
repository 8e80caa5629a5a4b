#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffdist/harness.hpp"

namespace ffdist {

/// Everything a subcommand may read. Field names match the CLI flags and
/// the keys of a --config JSON document.
struct CommandOptions {
  ExperimentConfig experiment;
  /// Radius; commands that sweep radii use every admissible t when unset.
  std::optional<std::uint32_t> t;
  /// Single frequency for sphere-ft, as element indices.
  std::optional<std::vector<std::uint32_t>> m;
  /// sphere-ft mode: closed, brute or both.
  std::string mode = "both";
  /// Explicit E as element-index tuples.
  std::optional<std::vector<std::vector<std::uint32_t>>> points;
  /// Sample E of this size (with experiment.seed and trial).
  std::optional<std::uint64_t> size;
  std::uint64_t trial = 0;
};

struct CommandResult {
  std::string output;
  /// 0 all checks pass, 1 an identity or equality failed, 2 bad parameters.
  int exit_code = 0;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "verify-identities", "sphere-ft", "distance-set", "nu", "bounds", "sharpness", "threshold-sweep"};
  return names;
}

/// Runs one subcommand and renders its records as JSON or CSV. Exceptions
/// from invalid parameters become exit code 2.
CommandResult run_command(const std::string& name, const CommandOptions& options);

/// Parses "1,2;0,1" into point tuples.
std::vector<std::vector<std::uint32_t>> parse_points(const std::string& text);
std::vector<std::uint32_t> parse_tuple(const std::string& text);
/// Parses "4", "3/2".
Rational parse_rational(const std::string& text);

/// Fills unset options from a JSON config document. Keys follow the flag
/// names: p, s, q, d, k, t, m, mode, seed, format, cap, C, trials, sizes,
/// points, size, trial, sharpness, numeric, timing.
void apply_config_json(const std::string& json_text, CommandOptions& options,
                       const std::vector<std::string>& explicit_keys);

inline constexpr const char* kCsvHeader = "q,p,s,d,k,t,size,trial,metric,value";

}  // namespace ffdist
