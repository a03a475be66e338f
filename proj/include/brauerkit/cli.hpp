#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "brauerkit/suites.hpp"

namespace bk::cli {

struct RunConfig {
  std::string command;
  std::optional<std::string> group_path, module_path, suite;
  std::optional<std::uint32_t> prime;
  std::optional<std::string> field_poly;  // constant-first coefficients, e.g. "1,1,1"
  unsigned degree = 1;
  std::uint64_t seed = 0;
  std::size_t max_order = kDefaultOrderCap;
  std::size_t max_dim = kDefaultDimCap;
  std::optional<std::string> out_path;
  bool pretty = false;
  int verbosity = 0;
  unsigned workers = 1;
};

struct Outcome {
  nlohmann::json report;
  int exit_code = 0;
};

// Exit codes: 0 pass, 1 verification failure, 2 input error, 3 resource cap,
// 4 precondition violation. Library errors propagate as exceptions.
Outcome cmd_blocks(const RunConfig& cfg);
Outcome cmd_vertex(const RunConfig& cfg);
Outcome cmd_verify(const RunConfig& cfg);

// The field selected by --prime with --degree or --field-poly.
Field select_field(const RunConfig& cfg);
// Worker count from BRAUERKIT_THREADS, capped by the hardware.
unsigned worker_count();

std::string render_pretty(const nlohmann::json& report);
// Sorted keys, one trailing newline.
std::string render_json(const nlohmann::json& report);

// Full front end: parses argv, runs, writes the report and returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bk::cli
