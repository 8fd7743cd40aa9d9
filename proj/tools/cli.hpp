#pragma once
// Command-line front end: argument parsing, input schemas and table output.

#include "floquet/hill.hpp"
#include "floquet/propagator.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace floquet::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 2, kNumericalFailure = 3 };

/// Invalid flags or input documents. The message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation that ran but found nothing (no root in the bracket).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { csv, json };

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

/// Drive profile schema:
///   {"kind": "constant"|"steps"|"sin"|"offset_sin", "beta0": x, "beta1": x,
///    "omega": x, "period": x, "steps": [[beta, tau], ...]}
hill::DriveProfile parse_profile(const nlohmann::json& doc);

/// Family obtained by replacing the amplitude beta0 of `doc`. For "steps" the
/// steps are rescaled so that max |beta_i| = beta0.
hill::DriveFamily parse_family(const nlohmann::json& doc);

/// Step pattern schema:
///   {"steps": [{"re": [[...], ...], "im": [[...], ...], "tau": x}, ...]}
/// "im" may be omitted for real symmetric matrices.
quantum::StepPattern parse_pattern(const nlohmann::json& doc);

/// Reads `source` as JSON: inline when it starts with '{', otherwise a file path.
nlohmann::json load_json(const std::string& source, const std::string& what);

/// Explicit flag, else FLOQUET_STEPS, else the module default.
int resolve_steps(std::optional<int> flag, int module_default);

/// Runs the command line; writes results to `out` (or the --out file) and
/// diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace floquet::cli
