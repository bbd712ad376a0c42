// Command-line front end: run experiments, check schedules, solve the oracle.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rpgne/experiment.hpp"

namespace {

using rpgne::json;

// A path to a JSON config, or the name of a builtin experiment.
rpgne::ExperimentConfig load_config(const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    std::ifstream f(arg);
    if (!f) throw rpgne::InvalidArgument("cannot read " + arg);
    std::stringstream buf;
    buf << f.rdbuf();
    return rpgne::parse_config(buf.str());
  }
  try {
    return rpgne::builtin::experiment(arg);
  } catch (const rpgne::InvalidArgument&) {
    throw rpgne::InvalidArgument("'" + arg + "' is neither a config file nor a builtin experiment");
  }
}

int report_error(const char* type, const std::string& message, int code,
                 json extra = json::object()) {
  json err{{"error", {{"type", type}, {"message", message}}}};
  for (auto& [k, v] : extra.items()) err["error"][k] = v;
  std::cerr << err.dump() << std::endl;
  return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return 0;
  } catch (const rpgne::ConvergenceFailure& e) {
    return report_error("convergence_failure", e.what(), 4,
                        {{"residual", e.residual()},
                         {"iterations", e.iterations()},
                         {"best_iterate", rpgne::detail::to_std(e.best_iterate())}});
  } catch (const rpgne::IntegrationFailure& e) {
    json extra{{"samples", e.partial().samples.size()}};
    if (!e.partial().samples.empty()) extra["last_t"] = e.partial().final().t;
    return report_error("integration_failure", e.what(), 5, extra);
  } catch (const rpgne::ValidationError& e) {
    return report_error("validation_error", e.what(), 3);
  } catch (const rpgne::InvalidArgument& e) {
    return report_error("invalid_argument", e.what(), 2);
  } catch (const rpgne::UnsupportedOperation& e) {
    return report_error("unsupported_operation", e.what(), 2);
  } catch (const std::exception& e) {
    return report_error("error", e.what(), 1);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized penalty dynamics for generalized Nash equilibrium seeking"};
  app.require_subcommand(1);

  std::string config_arg;
  bool no_write = false;
  auto* run = app.add_subcommand("run", "Integrate an experiment and write CSV + summary JSON");
  run->add_option("config", config_arg, "Config file or builtin experiment name")->required();
  run->add_flag("--no-write", no_write, "Print the summary only");

  bool as_json = false;
  auto* check = app.add_subcommand("check-schedules", "Check the convergence conditions");
  check->add_option("config", config_arg, "Config file or builtin experiment name")->required();
  check->add_flag("--json", as_json, "Print JSON instead of a table");

  auto* oracle = app.add_subcommand("oracle", "Least-norm variational equilibrium");
  oracle->add_option("config", config_arg, "Config file or builtin experiment name")->required();

  std::string write_dir;
  auto* list = app.add_subcommand("list-examples", "List builtin experiments");
  list->add_option("--write", write_dir, "Also write each as <dir>/<name>.json");

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    return guarded([&] {
      auto cfg = load_config(config_arg);
      rpgne::RunOptions opts;
      opts.write_files = !no_write;
      auto result = rpgne::run_experiment(cfg, opts);
      std::cout << result.summary.dump(2) << std::endl;
    });
  }
  if (*check) {
    return guarded([&] {
      auto report = rpgne::check_schedules(load_config(config_arg));
      if (as_json)
        std::cout << rpgne::to_json_value(report).dump(2) << std::endl;
      else
        std::cout << rpgne::format_report(report);
    });
  }
  if (*oracle) {
    return guarded([&] {
      auto result = rpgne::solve_oracle(load_config(config_arg));
      std::cout << rpgne::to_json_value(result).dump(2) << std::endl;
    });
  }
  return guarded([&] {
    for (const auto& cfg : rpgne::builtin::all_experiments()) {
      std::cout << cfg.name << "\n    " << cfg.description << '\n';
      if (!write_dir.empty()) {
        std::filesystem::create_directories(write_dir);
        std::ofstream f(std::filesystem::path(write_dir) / (cfg.name + ".json"));
        f << rpgne::dump_config(cfg) << '\n';
      }
    }
  });
}
