#include "eoe/cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eoe/asymptotics.hpp"
#include "eoe/cli/config.hpp"
#include "eoe/cli/verify.hpp"
#include "eoe/error.hpp"
#include "eoe/numeric.hpp"
#include "eoe/simulator.hpp"
#include "eoe/transforms.hpp"
#include "eoe/version.hpp"

namespace eoe::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Runtime {
  unsigned threads = 1;
  std::string out_path;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<std::string> keys;
};

const std::vector<std::string> kScheduleKeys = {
    "schedule",           "schedule.lambda.coef",     "schedule.lambda.exponent", "schedule.lambda.log_exponent",
    "schedule.gamma.coef", "schedule.gamma.exponent", "schedule.gamma.log_exponent", "schedule.partition.param"};

std::vector<Command> commands() {
  std::vector<std::string> sweep = kScheduleKeys;
  sweep.insert(sweep.end(), {"n_grid", "reps", "seed", "s_grid", "engine", "mode"});
  return {
      {"transform", "Evaluate the Laplace transform of N, M or T on an s-grid",
       {"graph", "subject", "variant", "lambda", "gamma", "s_grid", "format"}},
      {"simulate", "Monte Carlo samples of the end-of-epidemic time",
       {"graph", "lambda", "gamma", "reps", "seed", "s_grid", "engine", "start", "format"}},
      {"sweep", "Scaled end-of-epidemic statistics along an n-grid for a scaling schedule", sweep},
      {"verify", "Run the oracle checks", {"quick"}},
  };
}

std::string flag_name(std::string key) {
  for (char& c : key)
    if (c == '_' || c == '.') c = '-';
  return "--" + key;
}

void default_to(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  if (!cfg.has(key)) cfg.set(key, value);
}

void require(const ExperimentConfig& cfg, std::string_view key) {
  if (!cfg.has(key)) throw ConfigError(std::string(key), "required but not set");
}

void resolve_seed(ExperimentConfig& cfg) {
  if (cfg.has("seed")) return;
  if (const char* env = std::getenv("EOE_SEED")) {
    try {
      cfg.set("seed", env);
    } catch (const ConfigError& e) {
      throw ConfigError("seed", std::string("from EOE_SEED: ") + e.what());
    }
    return;
  }
  throw ConfigError("seed", "required (flag, config file or EOE_SEED)");
}

std::string header_text(const std::string& command, const ExperimentConfig& cfg) {
  std::string out = "# eoe " + std::string(kVersion) + "\n# command: " + command + "\n";
  for (const auto& [k, v] : cfg.entries()) out += "# " + k + " = " + v + "\n";
  return out;
}

Json header_json(const std::string& command, const ExperimentConfig& cfg) {
  Json config = Json::object();
  for (const auto& [k, v] : cfg.entries()) config[k] = v;
  return Json{{"eoe_version", kVersion}, {"command", command}, {"config", config}};
}

Json numbers(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(x);
  return a;
}

// ---- transform ----------------------------------------------------------------

std::string run_transform(ExperimentConfig& cfg) {
  require(cfg, "graph");
  require(cfg, "s_grid");
  default_to(cfg, "subject", "T");
  default_to(cfg, "variant", "exact");
  default_to(cfg, "format", "csv");
  const std::string& subject = cfg.text("subject");
  if (subject != "N") require(cfg, "lambda");
  if (subject == "T") require(cfg, "gamma");
  if (subject == "N" && cfg.has("lambda")) throw ConfigError("lambda", "not used for subject N");
  if (subject != "T" && cfg.has("gamma")) throw ConfigError("gamma", "only used for subject T");

  const Graph g = parse_graph_spec(cfg.text("graph"));
  const auto variant = cfg.text("variant") == "self-loop" ? CompleteVariant::SelfLoop : CompleteVariant::Exact;
  TransformEvaluator ev = transform_N(g, variant);
  if (subject != "N") ev = laplace_M_from_N(ev, cfg.number("lambda"));
  if (subject == "T") ev = laplace_T(ev, cfg.number("lambda"), cfg.number("gamma"));

  const TransformContext& c = ev.context();
  const auto& grid = cfg.numbers("s_grid");
  if (cfg.text("format") == "json") {
    Json rows = Json::array();
    for (double s : grid)
      rows.push_back(Json{{"subject", subject},
                          {"family", to_string(c.family)},
                          {"n", c.n},
                          {"m", c.m},
                          {"lambda", c.lambda},
                          {"gamma", c.gamma},
                          {"s", s},
                          {"value", ev(s)},
                          {"provenance", to_string(ev.provenance())}});
    return Json{{"header", header_json("transform", cfg)}, {"rows", rows}}.dump(2) + "\n";
  }
  std::string out = header_text("transform", cfg) + "subject,family,n,m,lambda,gamma,s,value,provenance\n";
  for (double s : grid) {
    out += subject + "," + std::string(to_string(c.family)) + "," + std::to_string(c.n) + "," + std::to_string(c.m) +
           "," + format_double(c.lambda) + "," + format_double(c.gamma) + "," + format_double(s) + "," +
           format_double(ev(s)) + "," + std::string(to_string(ev.provenance())) + "\n";
  }
  return out;
}

// ---- simulate -----------------------------------------------------------------

std::string run_simulate(ExperimentConfig& cfg, const Runtime& rt) {
  for (auto key : {"graph", "lambda", "gamma", "reps"}) require(cfg, key);
  resolve_seed(cfg);
  default_to(cfg, "engine", "leap");
  default_to(cfg, "start", "0");
  default_to(cfg, "format", "csv");
  if (cfg.text("format") == "json") default_to(cfg, "s_grid", "0.5,1,2");
  if (cfg.text("format") == "csv" && cfg.has("s_grid")) throw ConfigError("s_grid", "only used with format = json");

  const Graph g = parse_graph_spec(cfg.text("graph"));
  const auto start = cfg.count("start");
  if (start >= g.size()) throw ConfigError("start", "vertex out of range for " + g.descriptor());
  const BatchOptions options{parse_engine(cfg.text("engine")), rt.threads, static_cast<Vertex>(start)};
  const double lambda = cfg.number("lambda");
  const double gamma = cfg.number("gamma");
  const auto samples = simulate_batch(g, lambda, gamma, cfg.count("seed"), 0, cfg.count("reps"), options);

  if (cfg.text("format") == "csv") {
    std::string out = header_text("simulate", cfg) + "rep,T,n_jumps,n_reinfections\n";
    for (std::size_t r = 0; r < samples.size(); ++r) {
      out += std::to_string(r) + "," + format_double(samples[r].T) + "," + std::to_string(samples[r].n_jumps) + "," +
             std::to_string(samples[r].n_reinfections) + "\n";
    }
    return out;
  }

  std::vector<double> ts;
  CompensatedSum jumps;
  CompensatedSum reinfections;
  for (const auto& x : samples) {
    ts.push_back(x.T);
    jumps += static_cast<double>(x.n_jumps);
    reinfections += static_cast<double>(x.n_reinfections);
  }
  const SampleSummary sum(std::move(ts), cfg.numbers("s_grid"));
  const double r = static_cast<double>(sum.count());
  Json quantiles = Json::object();
  for (int pct : {10, 25, 50, 75, 90}) quantiles["p" + std::to_string(pct)] = sum.quantile(pct / 100.0);
  Json summary{{"count", sum.count()},
               {"mean", sum.mean()},
               {"variance", sum.variance()},
               {"std_error", sum.std_error()},
               {"median", sum.median()},
               {"quantiles", quantiles},
               {"mean_jumps", jumps.value() / r},
               {"mean_reinfections", reinfections.value() / r},
               {"s_grid", numbers(sum.s_grid())},
               {"transform", numbers(sum.transform())},
               {"transform_se", numbers(sum.transform_se())}};
  return Json{{"header", header_json("simulate", cfg)}, {"summary", summary}}.dump(2) + "\n";
}

// ---- sweep --------------------------------------------------------------------

ScalingSchedule resolve_schedule(const ExperimentConfig& cfg) {
  ScalingSchedule s = find_schedule(cfg.text("schedule"));
  auto apply = [&](const std::string& prefix, RateLaw& law) {
    if (cfg.has(prefix + ".coef")) law.coef = cfg.number(prefix + ".coef");
    if (cfg.has(prefix + ".exponent")) law.power = cfg.number(prefix + ".exponent");
    if (cfg.has(prefix + ".log_exponent")) law.log_power = cfg.number(prefix + ".log_exponent");
  };
  apply("schedule.lambda", s.lambda);
  apply("schedule.gamma", s.gamma);
  if (cfg.has("schedule.partition.param")) {
    if (s.partition.kind == PartitionRule::Kind::None)
      throw ConfigError("schedule.partition.param", "schedule '" + s.name + "' has no partition rule");
    s.partition.param = cfg.number("schedule.partition.param");
  }
  return s;
}

Json schedule_json(const ScalingSchedule& s) {
  return Json{{"name", s.name},
              {"family", to_string(s.family)},
              {"partition", s.partition.describe()},
              {"lambda", s.lambda.describe()},
              {"gamma", s.gamma.describe()},
              {"rule", to_string(s.rule)},
              {"c1", s.c1},
              {"c2", s.c2},
              {"law", s.law}};
}

std::string run_sweep(ExperimentConfig& cfg, const Runtime& rt) {
  for (auto key : {"schedule", "n_grid", "reps"}) require(cfg, key);
  resolve_seed(cfg);
  default_to(cfg, "mode", "convergence");
  default_to(cfg, "engine", "leap");
  if (cfg.text("mode") == "convergence") default_to(cfg, "s_grid", "0.25,0.5,1,2,4");
  if (cfg.text("mode") == "divergence" && cfg.has("s_grid")) throw ConfigError("s_grid", "not used in divergence mode");

  const ScalingSchedule schedule = resolve_schedule(cfg);
  std::vector<std::uint32_t> grid;
  for (auto n : cfg.counts("n_grid")) {
    if (n > 0xffffffffull) throw ConfigError("n_grid", "entry too large");
    grid.push_back(static_cast<std::uint32_t>(n));
  }
  BatchOptions batch{parse_engine(cfg.text("engine")), rt.threads, 0};
  const auto reps = cfg.count("reps");
  const auto seed = cfg.count("seed");

  Json out{{"header", header_json("sweep", cfg)}, {"schedule", schedule_json(schedule)}, {"reps", reps}, {"seed", seed}};
  if (cfg.text("mode") == "convergence") {
    ConvergenceOptions options{cfg.numbers("s_grid"), batch};
    const ConvergenceReport r = convergence_check(schedule, grid, reps, seed, options);
    Json points = Json::array();
    for (const auto& p : r.points)
      points.push_back(Json{{"n", p.n},
                            {"m", p.m},
                            {"lambda", p.lambda},
                            {"gamma", p.gamma},
                            {"b_n", p.b},
                            {"metric", p.metric},
                            {"distance", p.distance},
                            {"mean", p.mean},
                            {"median", p.median},
                            {"std_error", p.std_error},
                            {"transform", numbers(p.transform)},
                            {"transform_se", numbers(p.transform_se)}});
    out["convergence"] = Json{{"law", r.law},
                              {"s_grid", numbers(r.s_grid)},
                              {"noise", r.noise},
                              {"nonincreasing", r.nonincreasing},
                              {"points", points}};
  } else {
    const DivergenceReport r = divergence_probe(schedule, grid, reps, seed, batch);
    Json rows = Json::array();
    for (const auto& row : r.rows)
      rows.push_back(Json{{"n", row.n},
                          {"lambda", row.lambda},
                          {"gamma", row.gamma},
                          {"b_n", row.b},
                          {"mean", row.mean},
                          {"median", row.median},
                          {"std_error", row.std_error}});
    out["divergence"] = Json{{"medians_increasing", r.medians_increasing},
                             {"medians_decreasing", r.medians_decreasing},
                             {"rows", rows}};
  }
  return out.dump(2) + "\n";
}

// ---- verify -------------------------------------------------------------------

std::string run_verify(ExperimentConfig& cfg, bool& passed) {
  default_to(cfg, "quick", "false");
  const auto results = run_verify_suite(cfg.flag("quick"));
  Json checks = Json::array();
  passed = true;
  for (const auto& c : results) {
    passed = passed && c.passed;
    checks.push_back(Json{{"name", c.name},
                          {"cases", c.cases},
                          {"max_error", c.max_error},
                          {"tolerance", c.tolerance},
                          {"passed", c.passed}});
  }
  return Json{{"header", header_json("verify", cfg)}, {"checks", checks}, {"passed", passed}}.dump(2) + "\n";
}

void emit(const std::string& text, const Runtime& rt, std::ostream& out) {
  if (rt.out_path.empty() || rt.out_path == "-") {
    out << text;
    return;
  }
  std::ofstream file(rt.out_path, std::ios::binary);
  if (!file) throw Error(Errc::InvalidArgument, "cannot open output file '" + rt.out_path + "'");
  file << text;
  if (!file) throw Error(Errc::InvalidArgument, "failed writing '" + rt.out_path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"End-of-epidemic times of two SIS agents walking on a graph", "eoe"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Runtime rt;
  std::string config_path;
  std::map<std::string, std::string> flags;
  std::map<const CLI::App*, const Command*> by_app;
  const std::vector<Command> cmds = commands();
  for (const Command& cmd : cmds) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    by_app[sub] = &cmd;
    sub->add_option("--config", config_path, "Config file of 'key = value' lines");
    sub->add_option("--out", rt.out_path, "Output file (default stdout)");
    if (cmd.name == "simulate" || cmd.name == "sweep")
      sub->add_option("--threads", rt.threads, "Worker threads; results do not depend on it")
          ->check(CLI::Range(1u, 1024u));
    for (const std::string& key : cmd.keys) {
      if (key == "quick") {
        sub->add_flag_callback("--quick", [&flags] { flags["quick"] = "true"; }, "Small-graph suite only");
        continue;
      }
      sub->add_option_function<std::string>(
          flag_name(key), [&flags, key](const std::string& v) { flags[key] = v; }, "Config key '" + key + "'");
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const Command* cmd = nullptr;
  for (const auto& [sub, c] : by_app)
    if (sub->parsed()) cmd = c;

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = ExperimentConfig::parse(read_file(config_path));
    for (const auto& [key, value] : flags) cfg.set(key, value);
    const std::set<std::string> allowed(cmd->keys.begin(), cmd->keys.end());
    for (const auto& [key, value] : cfg.entries())
      if (!allowed.count(key)) throw ConfigError(key, "not used by '" + cmd->name + "'");

    if (cmd->name == "transform") {
      emit(run_transform(cfg), rt, out);
    } else if (cmd->name == "simulate") {
      emit(run_simulate(cfg, rt), rt, out);
    } else if (cmd->name == "sweep") {
      emit(run_sweep(cfg, rt), rt, out);
    } else {
      bool passed = false;
      emit(run_verify(cfg, passed), rt, out);
      if (!passed) {
        err << "verify: at least one check failed\n";
        return 1;
      }
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace eoe::cli
