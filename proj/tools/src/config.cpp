#include "eoe/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "eoe/asymptotics.hpp"
#include "eoe/error.hpp"
#include "eoe/graph.hpp"
#include "eoe/numeric.hpp"

namespace eoe::cli {

namespace {

enum class Kind { Text, Positive, Real, Count, Unsigned, Flag, NonNegativeList, IncreasingCounts };

struct KeySpec {
  std::string_view key;
  Kind kind;
  std::vector<std::string_view> choices;
};

const std::vector<KeySpec>& catalog() {
  static const std::vector<KeySpec> specs = {
      {"graph", Kind::Text, {}},
      {"subject", Kind::Text, {"N", "M", "T"}},
      {"variant", Kind::Text, {"exact", "self-loop"}},
      {"lambda", Kind::Positive, {}},
      {"gamma", Kind::Positive, {}},
      {"reps", Kind::Count, {}},
      {"seed", Kind::Unsigned, {}},
      {"s_grid", Kind::NonNegativeList, {}},
      {"engine", Kind::Text, {"leap", "event"}},
      {"start", Kind::Unsigned, {}},
      {"schedule", Kind::Text, {}},
      {"schedule.lambda.coef", Kind::Positive, {}},
      {"schedule.lambda.exponent", Kind::Real, {}},
      {"schedule.lambda.log_exponent", Kind::Real, {}},
      {"schedule.gamma.coef", Kind::Positive, {}},
      {"schedule.gamma.exponent", Kind::Real, {}},
      {"schedule.gamma.log_exponent", Kind::Real, {}},
      {"schedule.partition.param", Kind::Positive, {}},
      {"mode", Kind::Text, {"convergence", "divergence"}},
      {"n_grid", Kind::IncreasingCounts, {}},
      {"quick", Kind::Flag, {}},
      {"format", Kind::Text, {"csv", "json"}},
  };
  return specs;
}

const KeySpec& spec_of(std::string_view key) {
  for (const auto& s : catalog())
    if (s.key == key) return s;
  throw ConfigError(std::string(key), "unknown key");
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = s.find(',', pos);
    out.push_back(trim(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double to_double(std::string_view key, std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError(std::string(key), "expected a finite number, got '" + std::string(s) + "'");
  return v;
}

std::uint64_t to_unsigned(std::string_view key, std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

ExperimentConfig::Value parse_value(const KeySpec& spec, std::string_view raw) {
  const std::string key(spec.key);
  const std::string_view s = trim(raw);
  switch (spec.kind) {
    case Kind::Text: {
      if (s.empty()) throw ConfigError(key, "empty value");
      if (!spec.choices.empty() && std::find(spec.choices.begin(), spec.choices.end(), s) == spec.choices.end()) {
        std::string allowed;
        for (auto c : spec.choices) allowed += (allowed.empty() ? "" : ", ") + std::string(c);
        throw ConfigError(key, "expected one of " + allowed + ", got '" + std::string(s) + "'");
      }
      try {
        if (spec.key == "graph") (void)parse_graph_spec(s);
        if (spec.key == "schedule") (void)find_schedule(s);
      } catch (const Error& e) {
        throw ConfigError(key, e.what());
      }
      return std::string(s);
    }
    case Kind::Positive: {
      const double v = to_double(key, s);
      if (!(v > 0.0)) throw ConfigError(key, "must be positive");
      return v;
    }
    case Kind::Real:
      return to_double(key, s);
    case Kind::Count: {
      const std::uint64_t v = to_unsigned(key, s);
      if (v == 0) throw ConfigError(key, "must be positive");
      return v;
    }
    case Kind::Unsigned:
      return to_unsigned(key, s);
    case Kind::Flag:
      if (s == "true") return true;
      if (s == "false") return false;
      throw ConfigError(key, "expected true or false, got '" + std::string(s) + "'");
    case Kind::NonNegativeList: {
      std::vector<double> out;
      for (auto item : split_commas(s)) {
        const double v = to_double(key, item);
        if (v < 0.0) throw ConfigError(key, "entries must be >= 0");
        out.push_back(v);
      }
      return out;
    }
    case Kind::IncreasingCounts: {
      std::vector<std::uint64_t> out;
      for (auto item : split_commas(s)) {
        const std::uint64_t v = to_unsigned(key, item);
        if (v == 0) throw ConfigError(key, "entries must be positive");
        if (!out.empty() && v <= out.back()) throw ConfigError(key, "entries must be strictly increasing");
        out.push_back(v);
      }
      return out;
    }
  }
  throw ConfigError(key, "unsupported key kind");
}

std::string render(const ExperimentConfig::Value& v) {
  struct Visitor {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double x) const { return format_double(x); }
    std::string operator()(std::uint64_t x) const { return std::to_string(x); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::vector<double>& xs) const {
      std::string out;
      for (double x : xs) out += (out.empty() ? "" : ",") + format_double(x);
      return out;
    }
    std::string operator()(const std::vector<std::uint64_t>& xs) const {
      std::string out;
      for (auto x : xs) out += (out.empty() ? "" : ",") + std::to_string(x);
      return out;
    }
  };
  return std::visit(Visitor{}, v);
}

template <class T>
const T& as(std::string_view key, const ExperimentConfig::Value& v) {
  if (const T* p = std::get_if<T>(&v)) return *p;
  throw ConfigError(std::string(key), "value has the wrong type");
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  ExperimentConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(std::string(line), "line " + std::to_string(line_no) + " is not 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    if (cfg.has(key)) throw ConfigError(std::string(key), "duplicate key");
    cfg.set(key, line.substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_header(std::string_view text) {
  std::string body;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (line.size() < 2 || line.substr(0, 2) != "# " || line.find(" = ") == std::string_view::npos) continue;
    body += line.substr(2);
    body += '\n';
  }
  return parse(body);
}

std::vector<std::string> ExperimentConfig::known_keys() {
  std::vector<std::string> out;
  for (const auto& s : catalog()) out.emplace_back(s.key);
  return out;
}

void ExperimentConfig::set(std::string_view key, std::string_view raw) {
  const KeySpec& spec = spec_of(key);
  values_.insert_or_assign(std::string(spec.key), parse_value(spec, raw));
}

bool ExperimentConfig::has(std::string_view key) const { return values_.find(key) != values_.end(); }

void ExperimentConfig::erase(std::string_view key) {
  if (auto it = values_.find(key); it != values_.end()) values_.erase(it);
}

const ExperimentConfig::Value& ExperimentConfig::get(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(std::string(key), "required but not set");
  return it->second;
}

const std::string& ExperimentConfig::text(std::string_view key) const { return as<std::string>(key, get(key)); }
double ExperimentConfig::number(std::string_view key) const { return as<double>(key, get(key)); }
std::uint64_t ExperimentConfig::count(std::string_view key) const { return as<std::uint64_t>(key, get(key)); }
bool ExperimentConfig::flag(std::string_view key) const { return as<bool>(key, get(key)); }
const std::vector<double>& ExperimentConfig::numbers(std::string_view key) const {
  return as<std::vector<double>>(key, get(key));
}
const std::vector<std::uint64_t>& ExperimentConfig::counts(std::string_view key) const {
  return as<std::vector<std::uint64_t>>(key, get(key));
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& spec : catalog()) {
    const auto it = values_.find(spec.key);
    if (it != values_.end()) out.emplace_back(std::string(spec.key), render(it->second));
  }
  return out;
}

std::string ExperimentConfig::echo() const {
  std::string out;
  for (const auto& [k, v] : entries()) out += k + " = " + v + "\n";
  return out;
}

}  // namespace eoe::cli
