// Command-line benchmark driver: run | order-study | sweep | report.
#include "sympx/harness/reports.hpp"

#include <CLI11.hpp>

#include <future>
#include <iostream>
#include <thread>

namespace {

using namespace sympx::harness;

struct FlagOverrides {
  std::vector<std::pair<std::string, std::string>> settings;

  void attach(CLI::App* cmd) {
    static const char* keys[] = {"model", "method",  "order", "composition",
                                 "dt",    "T",       "omega", "eps",
                                 "solver", "out",    "stride", "max_iterations",
                                 "nls_n", "q0",      "p0",    "vortex_x",
                                 "vortex_y", "vortex_gamma", "fuse", "seed"};
    for (const char* key : keys) {
      cmd->add_option_function<std::string>(
          "--" + std::string(key),
          [this, key](const std::string& v) { settings.emplace_back(key, v); },
          "override config key '" + std::string(key) + "'");
    }
  }
};

RunConfig assemble(const std::string& config_path, const FlagOverrides& flags) {
  RunConfig cfg;
  if (!config_path.empty()) cfg = load_config_file(config_path);
  for (const auto& [k, v] : flags.settings) apply_setting(cfg, k, v);
  return cfg;
}

std::vector<MethodSpec> parse_method_list(const std::string& text) {
  std::vector<MethodSpec> specs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) specs.push_back(parse_method_spec(item));
  return specs;
}

int cmd_run(const std::string& config_path, const FlagOverrides& flags) {
  const RunConfig cfg = assemble(config_path, flags);
  const Trajectory tr = run_trajectory(cfg);
  if (!cfg.out.empty())
    std::cout << "wrote " << tr.records.size() << " records to " << cfg.out
              << "\n\n";
  print_summary(std::cout, tr);
  return 0;
}

int cmd_order_study(const std::string& config_path, const FlagOverrides& flags,
                    const std::string& dts_arg, const std::string& methods_arg) {
  RunConfig cfg = assemble(config_path, flags);
  const std::string dts_text =
      !dts_arg.empty() ? dts_arg : cfg.study_dts;
  const std::string methods_text =
      !methods_arg.empty() ? methods_arg : cfg.study_methods;
  if (dts_text.empty())
    throw std::invalid_argument("order-study: no time steps (--dts or dts key)");
  const std::vector<double> dts = parse_double_list(dts_text);
  const std::vector<MethodSpec> methods = methods_text.empty()
                                              ? std::vector<MethodSpec>{cfg.spec}
                                              : parse_method_list(methods_text);
  const std::string out = cfg.out;
  cfg.out.clear();
  const OrderStudyResult result = order_study(cfg, methods, dts);
  if (!out.empty()) write_order_study_csv(result, out);
  print_order_study(std::cout, result);
  return 0;
}

int cmd_sweep(const std::vector<std::string>& config_paths, unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<std::string>> pending;
  unsigned next = 0;
  int failures = 0;
  while (next < config_paths.size() || !pending.empty()) {
    while (next < config_paths.size() && pending.size() < jobs) {
      const std::string path = config_paths[next++];
      pending.push_back(std::async(std::launch::async, [path]() {
        const RunConfig cfg = load_config_file(path);
        if (cfg.out.empty())
          throw std::invalid_argument(path + ": sweep configs must set 'out'");
        const Trajectory tr = run_trajectory(cfg);
        const IterationReport rep = iteration_report(tr);
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "%s: %ld steps, mean NW_itr %.3f, max defect %.3e, "
                      "failures %ld -> %s",
                      path.c_str(), rep.steps, rep.mean_iterations,
                      rep.max_defect, rep.failure_count, cfg.out.c_str());
        return std::string(buf);
      }));
    }
    try {
      std::cout << pending.front().get() << '\n';
    } catch (const std::exception& err) {
      std::cerr << "sweep: " << err.what() << '\n';
      ++failures;
    }
    pending.erase(pending.begin());
  }
  return failures == 0 ? 0 : 1;
}

int cmd_report(const std::string& csv_path) {
  print_summary(std::cout, read_csv(csv_path));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness for semiexplicit symplectic integrators"};
  app.require_subcommand(1);

  std::string config_path, dts_arg, methods_arg, csv_in;
  std::vector<std::string> sweep_paths;
  unsigned jobs = 0;
  FlagOverrides run_flags, study_flags;

  CLI::App* run = app.add_subcommand("run", "integrate one trajectory");
  run->add_option("--config", config_path, "config file (key = value lines)");
  run_flags.attach(run);

  CLI::App* study =
      app.add_subcommand("order-study", "error-vs-dt study with slope fit");
  study->add_option("--config", config_path, "config file");
  study->add_option("--dts", dts_arg, "comma-separated time steps");
  study->add_option("--methods", methods_arg,
                    "comma-separated method specs, e.g. "
                    "semiexplicit:triple_jump:4");
  study_flags.attach(study);

  CLI::App* sweep = app.add_subcommand("sweep", "run several configs");
  sweep->add_option("configs", sweep_paths, "config files")->required();
  sweep->add_option("--jobs", jobs, "max concurrent runs (0 = hardware)");

  CLI::App* report = app.add_subcommand("report", "summarize a trajectory CSV");
  report->add_option("csv", csv_in, "CSV produced by 'run'")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, run_flags);
    if (study->parsed())
      return cmd_order_study(config_path, study_flags, dts_arg, methods_arg);
    if (sweep->parsed()) return cmd_sweep(sweep_paths, jobs);
    if (report->parsed()) return cmd_report(csv_in);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
