#ifndef HOLDERLAB_RUNNER_HPP
#define HOLDERLAB_RUNNER_HPP

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace holderlab {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A command plus a flat key -> value map. Unknown keys are rejected
// against the per-command registry; values are parsed lazily at run time
// with errors naming the key.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> values;
};

// Line-based `key = value` file, '#' starts a comment. Returns the pairs
// in file order; malformed lines throw ConfigError quoting the line.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

// args = argv without the program name: command, then --key value pairs.
// --config FILE merges the file's pairs underneath the flags (flags win).
// Keys are validated against the command's registry.
RunConfig parse_config(const std::vector<std::string>& args);

// Validates a single key for `command` (global keys always pass).
bool key_known(const std::string& command, const std::string& key);

// Dispatches, writes artifacts under the `output` directory, prints a
// one-line summary to `out`. Returns 0 on success, 1 when an inequality
// fails or an experiment flags itself inconclusive, 2 on configuration
// errors (including precondition violations surfaced by the modules).
int run(const RunConfig& cfg, std::ostream& out);

}  // namespace holderlab

#endif
