#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "cslattice/cli/config.hpp"
#include "cslattice/dynamics.hpp"

namespace cslattice::cli {

// Which observable tables a `run` writes besides the trajectory.
enum class Products { kAll, kQFunction, kPoisson };

struct CommandResult {
  nlohmann::json manifest;
  int exit_code = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// Uniform samples plus every requested observation time. Requested times
// within 1e-9 of a grid point replace it so that they are hit exactly.
IntegratorConfig sampling_for(const RunConfig& config, const std::vector<double>& extra_times);

BosonLatticeState initial_boson_state(const RunConfig& config);
SpinLatticeState initial_spin_state(const RunConfig& config);

// One trajectory per ordering, each in its own subdirectory ("no", "so", or
// "xxz" for the spin chain), run concurrently.
CommandResult run(const RunConfig& config, Products products, const std::string& command);

// Numeric vs analytic self-trapping threshold for each (N, ordering).
CommandResult sweep_gamma(const RunConfig& config);

// Exact Schroedinger evolution against the factorized coherent-state ansatz.
CommandResult exact_compare(const RunConfig& config);

// Metric, curvature, distance and triangle-inequality checks.
CommandResult geometry_report(const std::filesystem::path& out_dir, std::uint64_t seed);

}  // namespace cslattice::cli
