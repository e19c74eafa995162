#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace eoe::cli {

/// Rejected configuration input; `key()` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error("invalid '" + key + "': " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Experiment settings as validated, normalized values keyed by dotted names
/// (graph, lambda, gamma, reps, seed, s_grid, schedule.lambda.exponent, ...).
///
/// Text form is one `key = value` per line, '#' starts a comment. Unknown
/// keys, duplicate keys and malformed values are errors. `echo()` writes the
/// canonical text form, which parses back to an equal config.
class ExperimentConfig {
 public:
  using Value = std::variant<std::string, double, std::uint64_t, bool, std::vector<double>, std::vector<std::uint64_t>>;

  static ExperimentConfig parse(std::string_view text);
  /// Reads the `# key = value` lines of an output header.
  static ExperimentConfig from_header(std::string_view text);
  static std::vector<std::string> known_keys();

  /// Validates and stores; replaces any earlier value for the key.
  void set(std::string_view key, std::string_view raw);
  bool has(std::string_view key) const;
  void erase(std::string_view key);

  const std::string& text(std::string_view key) const;
  double number(std::string_view key) const;
  std::uint64_t count(std::string_view key) const;
  bool flag(std::string_view key) const;
  const std::vector<double>& numbers(std::string_view key) const;
  const std::vector<std::uint64_t>& counts(std::string_view key) const;

  /// Canonical `key = value` lines in catalog order.
  std::string echo() const;
  std::vector<std::pair<std::string, std::string>> entries() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

 private:
  const Value& get(std::string_view key) const;

  std::map<std::string, Value, std::less<>> values_;
};

}  // namespace eoe::cli
