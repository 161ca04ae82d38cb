#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rarebasis/commands.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string format = "text";
  std::string alpha;
  std::string window;
  std::int64_t n = -1;
  std::int64_t k = -1;
  std::int64_t guard = -1;
  std::int64_t seed = -1;
};

void attach_common(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--config", opts.config_path, "configuration file");
  cmd->add_option("--n", opts.n, "dimension");
  cmd->add_option("--k", opts.k, "scale count");
  cmd->add_option("--alpha", opts.alpha, "threshold, dyadic literal m*2^-e");
  cmd->add_option("--window", opts.window, "per-coordinate ranges lo:hi[,lo:hi...]");
  cmd->add_option("--guard", opts.guard, "grid cell guard for the oracle");
  cmd->add_option("--format", opts.format, "json|csv|text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--seed", opts.seed, "seed for randomized property suites");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of extremal configurations for rare-basis maximal operators"};
  app.require_subcommand(1);

  const std::vector<std::string> verbs = {"spectrum", "density", "extract",      "verify",
                                          "sweep",    "complete", "oracle-check", "is-check"};
  CliOptions opts;
  for (const std::string& verb : verbs) {
    attach_common(app.add_subcommand(verb), opts);
  }

  CLI11_PARSE(app, argc, argv);
  const std::string verb = app.get_subcommands().front()->get_name();

  rarebasis::ExperimentConfig config;
  try {
    if (!opts.config_path.empty()) {
      config = rarebasis::ExperimentConfig::parse_file(opts.config_path);
    }
    if (opts.n >= 0) config.n = static_cast<std::size_t>(opts.n);
    if (opts.k >= 0) config.k = opts.k;
    if (opts.guard >= 0) config.guard = opts.guard;
    if (opts.seed >= 0) config.seed = static_cast<std::uint64_t>(opts.seed);
    if (!opts.alpha.empty()) {
      const auto alpha = rarebasis::Dyadic::parse(opts.alpha);
      if (!alpha) throw rarebasis::ConfigError("bad --alpha literal");
      config.alpha = *alpha;
    }
    if (!opts.window.empty()) {
      config.window = rarebasis::ExperimentConfig::parse_string("window " + opts.window).window;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }

  rarebasis::Format format = rarebasis::Format::Text;
  if (opts.format == "json") format = rarebasis::Format::Json;
  if (opts.format == "csv") format = rarebasis::Format::Csv;

  const rarebasis::CommandResult result = rarebasis::run_command(verb, config, format);
  (result.exit_code == 2 ? std::cerr : std::cout) << result.output;
  return result.exit_code;
}
