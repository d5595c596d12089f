// ucilab: config-driven experiment runner for the decay-threshold library.
// Every verifier is exposed as a subcommand; flags override config keys
// one-for-one. Exit codes: 0 all checks pass, 2 falsification candidate,
// 1 usage or runtime error.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ucilab/experiment.hpp"

namespace {

struct FlagMap {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagMap kRunFlags[] = {
    {"--tol", "run.tol", "integrator tolerance"},
    {"--grid-n", "run.grid_n", "sampling grid size for sups"},
    {"--x-tail", "run.x_tail", "tail window start for limsup surrogates"},
    {"--x0", "run.x0", "IVP start point"},
    {"--u0", "run.u0", "IVP value"},
    {"--du0", "run.du0", "IVP slope"},
    {"--x-end", "run.x_end", "IVP end point"},
    {"--x-bar", "run.x_bar", "steep point for bounce detection"},
    {"--kappa", "run.kappa", "decay rate override"},
    {"--kappa-prime", "run.kappa_prime", "rate for dense-scan comparisons"},
    {"--max-h", "run.max_h", "bounce window auto-extension cap"},
    {"--tol-thm", "run.tol_thm", "envelope check slack"},
    {"--seeds", "run.seeds", "batch size for seeded families"},
    {"--workers", "run.workers", "worker pool size"},
    {"--du0-lo", "run.du0_lo", "batch slope draw, lower end"},
    {"--du0-hi", "run.du0_hi", "batch slope draw, upper end"},
    {"--mesh-n", "run.mesh_n", "eigen mesh subintervals"},
    {"--mesh-density", "run.mesh_density", "eigen mesh nodes per unit length"},
    {"--band", "run.band", "harmonics band"},
    {"--n-dim", "run.n_dim", "ambient dimension (2 or 3; barrier: >= 1)"},
    {"--r-lo", "run.r_lo", "radial window start"},
    {"--r-hi", "run.r_hi", "radial window end"},
    {"--nr", "run.nr", "radial sample count"},
    {"--R1", "run.R1", "tail radius the barrier threshold is computed from"},
    {"--R", "run.R", "barrier inner radius"},
    {"--h", "run.h", "barrier width parameter"},
    {"--delta", "run.delta", "barrier time-slope parameter"},
    {"--t-min", "run.t_min", "space-time window start"},
    {"--residual-tol", "run.residual_tol", "trajectory residual tolerance"},
};

void split_list(ucilab::ExperimentConfig& cfg, const std::string& prefix,
                const std::string& csv) {
  std::size_t pos = 0;
  int index = 0;
  while (pos <= csv.size()) {
    const auto comma = csv.find(',', pos);
    const std::string item =
        csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) cfg.set(prefix + "." + std::to_string(index++), item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale verifiers for exponential decay thresholds of 1D elliptic operators"};
  app.require_subcommand(1);

  std::string config_path, out_dir, profile, grid;
  std::string seed;
  std::vector<std::string> params, sets;
  std::string radii, x0_list, deltas;

  const std::vector<std::string> commands = {"rates",      "solve", "bounce",
                                             "uci-check",  "dense-scan", "eigen",
                                             "harmonics",  "barrier", "demo-bessel"};
  std::string chosen;
  std::vector<std::pair<std::string, std::string>> flag_values;

  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name, "run the '" + name + "' verifier");
    sub->add_option("--config", config_path, "INI config file to start from");
    sub->add_option("--out-dir", out_dir, "output directory (output.dir)");
    sub->add_option("--profile", profile, "field profile (field.profile)");
    sub->add_option("--seed", seed, "field seed (field.seed)");
    sub->add_option("--param", params, "field profile parameter key=value (field.params.*)");
    sub->add_option("--set", sets, "raw override section.key=value");
    sub->add_option("--radii", radii, "comma-separated radii (run.radii.*)");
    sub->add_option("--x0-list", x0_list, "comma-separated x0 values (run.x0_list.*)");
    sub->add_option("--deltas", deltas, "comma-separated deltas (run.deltas.*)");
    sub->add_option("--grid", grid, "barrier grid size (run.grid_nr and run.grid_nt)");
    for (const auto& f : kRunFlags) {
      sub->add_option_function<std::string>(
          f.flag, [&flag_values, key = std::string(f.key)](const std::string& v) {
            flag_values.emplace_back(key, v);
          },
          f.help);
    }
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    ucilab::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = ucilab::ExperimentConfig::parse_file(config_path);
    cfg.set("run.command", chosen);
    if (!out_dir.empty()) cfg.set("output.dir", out_dir);
    if (!profile.empty()) cfg.set("field.profile", profile);
    if (!seed.empty()) cfg.set("field.seed", seed);
    for (const auto& p : params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos)
        throw ucilab::ConfigParse("--param expects key=value, got '" + p + "'");
      cfg.set("field.params." + p.substr(0, eq), p.substr(eq + 1));
    }
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos)
        throw ucilab::ConfigParse("--set expects section.key=value, got '" + s + "'");
      cfg.set(s.substr(0, eq), s.substr(eq + 1));
    }
    if (!radii.empty()) split_list(cfg, "run.radii", radii);
    if (!x0_list.empty()) split_list(cfg, "run.x0_list", x0_list);
    if (!deltas.empty()) split_list(cfg, "run.deltas", deltas);
    if (!grid.empty()) {
      cfg.set("run.grid_nr", grid);
      cfg.set("run.grid_nt", grid);
    }
    return ucilab::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
