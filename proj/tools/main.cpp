#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "cslattice/cli/config.hpp"
#include "cslattice/cli/experiments.hpp"

namespace {

using namespace cslattice;
using namespace cslattice::cli;

struct Overrides {
  std::string out;
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  std::string ordering;
  std::optional<std::uint64_t> seed;
};

RunConfig prepare(const std::string& path, const Overrides& o) {
  RunConfig config = load_config(path);
  if (!o.out.empty()) config.out_dir = o.out;
  if (o.rel_tol) {
    if (!(*o.rel_tol > 0.0)) throw InvalidParameter("--rel-tol must be positive");
    config.integrator.rel_tol = *o.rel_tol;
  }
  if (o.abs_tol) {
    if (!(*o.abs_tol > 0.0)) throw InvalidParameter("--abs-tol must be positive");
    config.integrator.abs_tol = *o.abs_tol;
  }
  if (o.seed) config.initial.seed = *o.seed;
  if (!o.ordering.empty() && config.model != ModelKind::kXxz) {
    config.orderings = parse_ordering_selection(o.ordering);
    config.gdst.ordering = config.orderings.front();
    config.mdnls.ordering = config.orderings.front();
  }
  return config;
}

void report(const CommandResult& result, const std::string& root) {
  const auto& m = result.manifest;
  std::cout << fmt::format("{}: {} ({} files, manifest {}/manifest.json)\n", m.at("command").get<std::string>(),
                           m.at("status").get<std::string>(), m.at("files").size(), root);
  for (const auto& run : m.at("runs")) {
    if (run.contains("max_energy_drift")) {
      std::cout << fmt::format("  {}: {} samples, max charge drift {:.3g}, max energy drift {:.3g}\n",
                               run.at("label").get<std::string>(), run.at("samples").get<std::size_t>(),
                               run.at("max_charge_drift").get<double>(), run.at("max_energy_drift").get<double>());
    }
    if (run.contains("failure")) {
      std::cout << fmt::format("  {}: {}\n", run.at("label").get<std::string>(),
                               run.at("failure").at("message").get<std::string>());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent-state lattice dynamics: quasiclassical trajectories, thresholds and exact comparisons"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CSLATTICE_VERSION));

  Overrides overrides;
  std::string config_path;
  std::uint64_t seed = 12345;

  auto add_common = [&](CLI::App* sub, bool with_ordering) {
    sub->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", overrides.out, "Output directory (overrides output.dir)");
    sub->add_option("--rel-tol", overrides.rel_tol, "Integrator relative tolerance");
    sub->add_option("--abs-tol", overrides.abs_tol, "Integrator absolute tolerance");
    sub->add_option("--seed", overrides.seed, "Seed for random initial conditions");
    if (with_ordering) {
      sub->add_option("--ordering", overrides.ordering, "Operator ordering")
          ->check(CLI::IsMember({"no", "so", "both"}));
    }
  };

  auto* simulate = app.add_subcommand("simulate", "Integrate a trajectory and write all requested observables");
  auto* sweep = app.add_subcommand("sweep-gamma", "Locate the dimer self-trapping threshold for each N");
  auto* exact = app.add_subcommand("exact-compare", "Compare exact evolution with the factorized ansatz");
  auto* qfunc = app.add_subcommand("qfunc", "Integrate and write Q-function grids");
  auto* poisson = app.add_subcommand("poisson", "Integrate and write occupation distributions");
  for (auto* sub : {simulate, sweep, exact, qfunc, poisson}) add_common(sub, true);

  auto* geometry = app.add_subcommand("geometry", "Metric, curvature and distance checks");
  std::string geometry_out = "cslattice-geometry";
  geometry->add_option("--out", geometry_out, "Output directory");
  geometry->add_option("--seed", seed, "Seed for the random sample points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    CommandResult result;
    std::string root = geometry_out;
    if (geometry->parsed()) {
      result = geometry_report(geometry_out, seed);
    } else {
      const RunConfig config = prepare(config_path, overrides);
      root = config.out_dir;
      if (simulate->parsed()) result = run(config, Products::kAll, "simulate");
      if (qfunc->parsed()) result = run(config, Products::kQFunction, "qfunc");
      if (poisson->parsed()) result = run(config, Products::kPoisson, "poisson");
      if (sweep->parsed()) result = sweep_gamma(config);
      if (exact->parsed()) result = exact_compare(config);
    }
    report(result, root);
    return result.exit_code;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
