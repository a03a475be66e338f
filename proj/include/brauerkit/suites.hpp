#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "brauerkit/equivalence.hpp"

namespace bk {

struct SuiteCheck {
  std::string name;
  bool pass = false;
  std::optional<std::string> witness;
};

struct SuiteInstance {
  std::vector<std::string> input_refs;
  std::vector<SuiteCheck> checks;
  // Instances rejected by a hypothesis gate are reported but do not count.
  bool skipped = false;
  std::vector<SuiteCheck> gate;
  std::vector<std::string> notes;  // e.g. a comparison that was not attempted
  bool pass() const;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<SuiteInstance> instances;
  // At least one instance ran and every instance that ran passed.
  bool pass() const;
};

// Extra instances supplied on the command line.
struct SuiteInputs {
  std::optional<Group> group;
  std::optional<ModuleRep> module;
  std::optional<Field> field;  // over which the user instances are taken
};

const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);
// Throws InputError for an unknown name. Instances run on up to `workers`
// threads; the report order does not depend on it.
SuiteReport run_suite(std::string_view name, const SuiteInputs& inputs, std::uint64_t seed = 0,
                      unsigned workers = 1);

nlohmann::json to_json(const SuiteReport& r);

// Short text forms used in input_refs.
std::string describe(const Subgroup& s);
std::string describe(const Field& f);

}  // namespace bk
