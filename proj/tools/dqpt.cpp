#include <iostream>

#include <CLI11.hpp>

#include "dqpt/cli.hpp"

int main(int argc, char** argv) {
  using namespace dqpt::cli;

  CLI::App app{"Mode-resolved DQPT diagnostics for TFI and SSH quenches", "dqpt"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CommandOptions opt;
  auto add_common = [&](CLI::App* sub, bool needs_out) {
    sub->add_option("--config", opt.config, "key = value config file")->required();
    auto* out = sub->add_option("--out", opt.out_dir, "output directory");
    if (needs_out) out->required();
    sub->add_option("--threads", opt.threads, "worker threads")
        ->check(CLI::Range(1, 1024))
        ->capture_default_str();
  };

  CLI::App* sweep = app.add_subcommand("sweep", "write samples.csv, rate.csv and manifest.json");
  CLI::App* critical = app.add_subcommand("critical", "locate k*, t*_n and check the triad");
  CLI::App* verify = app.add_subcommand("verify", "compare closed forms against the exact oracle");
  add_common(sweep, true);
  add_common(critical, true);
  add_common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (sweep->parsed()) return cmd_sweep(opt, std::cout, std::cerr);
  if (critical->parsed()) return cmd_critical(opt, std::cout, std::cerr);
  return cmd_verify(opt, std::cout, std::cerr);
}
