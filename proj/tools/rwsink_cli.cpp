// rwsink: command-line driver for the random-walk dissemination simulator.
//
//   rwsink gen      --out placement.txt [--n 100 --width_m 1000 ...]
//   rwsink run      --out dir/ [--config file] [--<key> value ...]
//   rwsink sweep    --param KEY --values v1,v2,... --out dir/ [--metric NAME]
//   rwsink figures  --seed 42 --out results/
//   rwsink report   a.csv b.csv --out summary.csv
//
// Exit status: 0 on success, 2 on a usage or configuration error, 1 when a
// valid configuration fails at run time.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rwsink/rwsink.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kConfigError = 2;

struct CommonOptions {
  std::string config_file;
  std::string out;
  std::map<std::string, std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_keys) {
  cmd->add_option("--config", opts.config_file, "Key-value config file");
  cmd->add_option("--out", opts.out, "Output path");
  if (with_keys) {
    for (const auto& key : rwsink::config_keys()) {
      cmd->add_option("--" + key, opts.overrides[key], "Override config key " + key);
    }
  } else {
    cmd->add_option("--seed", opts.overrides["seed"], "Base seed");
  }
}

rwsink::SimConfig resolve_config(const CommonOptions& opts, rwsink::SimConfig cfg = {}) {
  if (!opts.config_file.empty()) cfg = rwsink::load_config_file(opts.config_file, std::move(cfg));
  // config_keys order, so "delta" lands after t_active_s / t_sleep_s.
  for (const auto& key : rwsink::config_keys()) {
    const auto it = opts.overrides.find(key);
    if (it != opts.overrides.end() && !it->second.empty()) rwsink::apply_setting(cfg, key, it->second);
  }
  return cfg;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rwsink::ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_gen(const CommonOptions& opts) {
  const auto cfg = resolve_config(opts);
  cfg.validate();
  auto rng = rwsink::rng_stream(cfg.seed, rwsink::stream::kPlacement);
  const auto positions = rwsink::place_uniform(cfg.n, cfg.width, cfg.height, rng);
  const auto text = rwsink::save_placement(positions);
  if (opts.out.empty() || opts.out == "-") {
    std::cout << text;
  } else {
    rwsink::write_text(opts.out, text);
  }
  const auto stats = rwsink::degree_stats(rwsink::build_adjacency(positions, cfg.radio_range, cfg.width, cfg.height));
  std::cerr << "n=" << cfg.n << " degree min/mean/max=" << stats.min << "/" << stats.mean << "/"
            << stats.max << " connected=" << (stats.connected ? "yes" : "no") << "\n";
  return 0;
}

int cmd_run(const CommonOptions& opts) {
  const auto cfg = resolve_config(opts);
  cfg.validate();
  const fs::path out = opts.out.empty() ? fs::path("run") : fs::path(opts.out);
  rwsink::Simulation sim(cfg, cfg.seed);
  const auto trace = sim.run();
  rwsink::write_text(out / "trace.csv", rwsink::trace_csv(trace));
  rwsink::write_text(out / "sink.csv", rwsink::sink_csv(trace.sink));
  if (cfg.replications > 1) {
    const auto result = rwsink::replicate(cfg, cfg.replications);
    rwsink::write_text(out / "summary.json", rwsink::summary_json(cfg, result));
    std::cout << "mean_active=" << result.at("mean_active").mean
              << " coverage=" << result.at("coverage").mean << " runs=" << result.runs << "\n";
  } else {
    rwsink::write_text(out / "summary.json", rwsink::summary_json(cfg, trace));
    std::cout << "mean_active=" << trace.mean_active << " coverage=" << trace.sink.coverage() << "\n";
  }
  return 0;
}

int cmd_sweep(const CommonOptions& opts, const std::string& param, const std::string& values,
              const std::string& metric, const std::string& name) {
  rwsink::ExperimentSpec spec;
  spec.name = name.empty() ? "sweep_" + param : name;
  spec.base = resolve_config(opts);
  spec.base.validate();
  spec.param = param;
  spec.values = split_list(values);
  spec.metric = metric;
  const fs::path out = opts.out.empty() ? fs::path(".") : fs::path(opts.out);
  spec.output = (out / (spec.name + ".csv")).string();
  const auto ds = rwsink::run_sweep(spec);
  rwsink::write_text(spec.output, rwsink::to_csv(ds));
  std::cout << spec.output << "\n";
  return 0;
}

int cmd_figures(const CommonOptions& opts) {
  const auto cfg = resolve_config(opts);
  cfg.validate();
  const fs::path out = opts.out.empty() ? fs::path("results") : fs::path(opts.out);
  for (const auto& path : rwsink::write_figures(cfg, out)) std::cout << path.string() << "\n";
  return 0;
}

int cmd_report(const CommonOptions& opts, const std::vector<std::string>& inputs) {
  if (inputs.empty()) throw rwsink::ConfigError("report: no input CSV files");
  std::string text = "file,column,count,mean,stddev,min,max\n";
  for (const auto& path : inputs) {
    for (const auto& col : rwsink::summarize_csv(read_file(path))) {
      text += path + "," + col.column + "," + std::to_string(col.count) + "," + rwsink::fmt6(col.mean) +
              "," + rwsink::fmt6(col.stddev) + "," + rwsink::fmt6(col.min) + "," + rwsink::fmt6(col.max) +
              "\n";
    }
  }
  if (opts.out.empty() || opts.out == "-") {
    std::cout << text;
  } else {
    rwsink::write_text(opts.out, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-walk data dissemination simulator for mobile-sink sensor networks"};
  app.require_subcommand(1);

  CommonOptions gen_opts, run_opts, sweep_opts, fig_opts, report_opts;
  auto* gen = app.add_subcommand("gen", "Write a uniform random placement file");
  add_common(gen, gen_opts, true);
  auto* run = app.add_subcommand("run", "Run one configuration");
  add_common(run, run_opts, true);

  auto* sweep = app.add_subcommand("sweep", "Sweep one config key over a list of values");
  add_common(sweep, sweep_opts, true);
  std::string sweep_param, sweep_values, sweep_metric = "mean_active", sweep_name;
  sweep->add_option("--param", sweep_param, "Config key to sweep")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
  sweep->add_option("--metric", sweep_metric, "Metric to report (e.g. mean_active, coverage)");
  sweep->add_option("--name", sweep_name, "Experiment name (CSV file stem)");

  auto* figures = app.add_subcommand("figures", "Reproduce the full figure suite as CSV");
  add_common(figures, fig_opts, true);

  auto* report = app.add_subcommand("report", "Summarise numeric columns of CSV files");
  add_common(report, report_opts, false);
  std::vector<std::string> report_inputs;
  report->add_option("inputs", report_inputs, "CSV files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*gen) return cmd_gen(gen_opts);
    if (*run) return cmd_run(run_opts);
    if (*sweep) return cmd_sweep(sweep_opts, sweep_param, sweep_values, sweep_metric, sweep_name);
    if (*figures) return cmd_figures(fig_opts);
    if (*report) return cmd_report(report_opts, report_inputs);
  } catch (const rwsink::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const rwsink::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
