#pragma once
#include <map>
#include <string>
#include <vector>

#include "lambda1/oracle.hpp"
#include "lambda1/solver.hpp"

namespace lambda1 {

// Flat key = value configuration; '#' starts a comment, blank lines ignored.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config_file(const std::string& path);

// Signals a configuration or contract problem (maps to exit code 1).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;            // solve | verify | operators | compare | oracle
  ConfigMap kv;                   // merged file values and --set overrides
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  std::vector<std::string> inputs;  // csv paths for verify / compare
};

// Rejects keys outside the documented key set for the command.
void validate_keys(const ConfigMap& kv, const std::string& command);

// Builds the grid and problem description from the config (presets expanded,
// expressions parsed, positivity enforced).
ProblemSpec problem_from_config(const ConfigMap& kv);
OperatorSpec operator_from_config(const ConfigMap& kv, int n);

// solution.csv / field.csv: '#' preamble, header row, one interior node per
// row in node order, values with 17 significant digits. Atomic write.
void write_field_csv(const std::string& path, const GridFunction& u,
                     const std::vector<double>& residual, const ConfigMap& echo);
// Reads a field written by write_field_csv back onto `dom`; throws
// ConfigError naming the first mismatching row on any grid mismatch.
GridFunction read_field_csv(const std::string& path,
                            std::shared_ptr<const GridDomain> dom,
                            const BoundaryFn& boundary);

void write_text_atomic(const std::string& path, const std::string& text);

// Exit codes: 0 success, 1 config/contract error, 2 non-convergence,
// 3 flagged oracle.
int run_command(const RunConfig& cfg);

int cmd_solve(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_operators(const RunConfig& cfg);
int cmd_compare(const RunConfig& cfg);
int cmd_oracle(const RunConfig& cfg);

}  // namespace lambda1
