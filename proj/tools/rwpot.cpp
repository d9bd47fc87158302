// rwpot: batch runner for random-walk-in-potential experiments.
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rwpot/runner.hpp"

namespace {

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random walks in random potentials: batch experiment runner"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  long long seed = -1;
  int threads = 0;
  for (const auto& kind : rwpot::experiment_kinds()) {
    auto* sub = app.add_subcommand(kind, "run a " + kind + " experiment");
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--seed", seed, "master seed (overrides the config)")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", out_dir, "output directory (env RWPOT_OUT)");
    sub->add_option("--threads", threads, "worker threads (env RWPOT_THREADS)")->check(CLI::NonNegativeNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rwpot::kExitConfig;
  }
  const std::string kind = app.get_subcommands().front()->get_name();

  rwpot::RunOptions opts;
  opts.out_dir = out_dir.empty() ? env_or("RWPOT_OUT", "") : out_dir;
  if (threads == 0) {
    const std::string t = env_or("RWPOT_THREADS", "");
    if (!t.empty()) {
      try {
        threads = std::stoi(t);
      } catch (const std::exception&) {
        std::cerr << "error: cli.config: RWPOT_THREADS='" << t << "' is not an integer\n";
        return rwpot::kExitConfig;
      }
    }
  }
  opts.threads = threads;
  if (seed >= 0) opts.seed = static_cast<std::uint64_t>(seed);

  const auto result = rwpot::run_config_file(kind, config_path, opts, std::cerr);
  for (const auto& f : result.files) std::cout << f << '\n';
  return result.exit_code;
}
