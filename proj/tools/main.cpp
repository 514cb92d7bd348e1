#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lambda1/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Wide-stencil solver for the least-eigenvalue complex Hessian equation"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  std::vector<std::string> overrides;
  std::uint64_t seed = 1;
  app.add_option("--config", config_path, "flat key = value config file");
  app.add_option("--set", overrides, "override: key=value (repeatable)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "rng seed");

  auto* solve = app.add_subcommand("solve", "solve the configured Dirichlet problem");
  auto* verify = app.add_subcommand("verify", "verify a field against the scheme");
  auto* operators = app.add_subcommand("operators", "operator family property table");
  auto* compare = app.add_subcommand("compare", "discrete comparison of two fields");
  auto* oracle = app.add_subcommand("oracle", "emit exact oracle fields");

  std::string verify_field;
  verify->add_option("field", verify_field, "field.csv to verify")->required();
  std::string cmp_u, cmp_v;
  compare->add_option("u", cmp_u, "subsolution candidate u.csv")->required();
  compare->add_option("v", cmp_v, "supersolution candidate v.csv")->required();

  CLI11_PARSE(app, argc, argv);

  lambda1::RunConfig cfg;
  cfg.out_dir = out_dir;
  cfg.seed = seed;
  try {
    if (!config_path.empty()) cfg.kv = lambda1::load_config_file(config_path);
    for (const std::string& ov : overrides) {
      std::size_t eq = ov.find('=');
      if (eq == std::string::npos)
        throw lambda1::ConfigError("--set expects key=value, got: " + ov);
      cfg.kv[ov.substr(0, eq)] = ov.substr(eq + 1);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  if (solve->parsed()) cfg.command = "solve";
  if (verify->parsed()) {
    cfg.command = "verify";
    cfg.inputs = {verify_field};
  }
  if (operators->parsed()) cfg.command = "operators";
  if (compare->parsed()) {
    cfg.command = "compare";
    cfg.inputs = {cmp_u, cmp_v};
  }
  if (oracle->parsed()) cfg.command = "oracle";

  return lambda1::run_command(cfg);
}
