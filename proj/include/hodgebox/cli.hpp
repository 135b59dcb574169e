#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hodgebox::cli {

enum class OutputFormat { text, json };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verification_failed = 1;
inline constexpr int usage = 2;
}  // namespace exit_code

struct RunConfig {
  std::vector<std::string> command;  // e.g. {"fedotov", "construct"}
  std::optional<std::string> input;
  std::size_t n = 4;
  std::size_t k = 2;
  std::size_t m = 3;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t max_core_size = 22;
  std::size_t threads = 1;
  OutputFormat format = OutputFormat::text;
  std::optional<std::string> output;
  // Which numeric flags were given explicitly.
  bool n_set = false;
  bool k_set = false;
};

/// Parses argv-style arguments (without the program name) and runs them.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Validates bounds, dispatches, and writes the report to `out` or to
/// config.output.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace hodgebox::cli
