#pragma once

// Config files, output artifacts and the three subcommands behind the `dqpt`
// executable. Each command returns a process exit code.

#include <filesystem>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dqpt/oracle.hpp"
#include "dqpt/sweep.hpp"

namespace dqpt::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kIoError = 2,
  kEmptyGrid = 3,
  kNoCriticalMomentum = 4,
  kVerifyMismatch = 5,
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

using KeyValues = std::map<std::string, std::string>;

/// `key = value` lines, `#` starts a comment. Duplicate keys, lines without
/// `=` and unknown keys are errors.
KeyValues parse_key_values(std::string_view text);

SweepConfig config_from_key_values(const KeyValues& kv);
SweepConfig parse_config(std::string_view text);
SweepConfig load_config(const std::filesystem::path& path);

/// Canonical key/value form; parse_config(serialize_config(c)) == c.
KeyValues config_to_key_values(const SweepConfig& cfg);
std::string serialize_config(const SweepConfig& cfg);

nlohmann::json config_to_json(const SweepConfig& cfg);
SweepConfig config_from_json(const nlohmann::json& j);

/// 17 significant digits, scientific notation.
std::string format_number(double v);

std::string samples_csv(const SweepResult& r, const OutputSet& outputs);
std::string rate_csv(const SweepResult& r);

std::string sha256_hex(std::string_view data);

/// Seconds resolution, UTC, e.g. 2024-01-31T12:00:00Z.
std::string iso8601_now();

nlohmann::json critical_point_to_json(const CriticalPoint& cp, double tol);

struct CommandOptions {
  std::filesystem::path config;
  std::filesystem::path out_dir;
  int threads = 1;
};

int cmd_sweep(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_critical(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const CommandOptions& opt, std::ostream& out, std::ostream& err,
               const oracle::ClosedForms& forms = oracle::ClosedForms::standard());

}  // namespace dqpt::cli
