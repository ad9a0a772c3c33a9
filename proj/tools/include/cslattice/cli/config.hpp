#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cslattice/lattice.hpp"

namespace cslattice::cli {

enum class ModelKind { kGdst, kMdnls, kXxz };

std::string_view to_string(ModelKind kind) noexcept;

enum class InitialKind { kSingleSite, kAmplitudes, kRandom };

std::string_view to_string(InitialKind kind) noexcept;

struct InitialSpec {
  InitialKind kind = InitialKind::kSingleSite;
  Site site{1};
  double n_total = 1.0;
  std::vector<Complex> amplitudes;
  std::uint64_t seed = 1;
  // Radius of the disk random spin coordinates are drawn from.
  double z_max = 2.0;
};

struct IntegratorSpec {
  double horizon = 10.0;
  double dt = 0.1;
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double max_step = 0.0;  // 0 = unbounded
};

struct ObservableSpec {
  std::vector<double> qfunc_times;
  std::vector<Site> qfunc_sites;  // empty = every site
  double qfunc_half_width = 0.0;  // 0 = max(6, |beta| + 6)
  double qfunc_step = 0.05;
  std::vector<double> poisson_times;
  int poisson_n_max = 40;
  bool imbalance = false;
  bool fermion = false;
};

struct SweepSpec {
  std::vector<double> n_values;
  Site site{1};
  double gamma_lo = 0.0;
  double gamma_hi = 1.0;
  double rel_tol = 1e-3;
  double abs_tol = 0.0;
  int max_expansions = 40;
  std::optional<double> horizon;
  std::optional<double> sample_spacing;
};

struct ExactSpec {
  int n_max = 0;  // 0 = smallest cutoff meeting tail_bound
  double tail_bound = 1e-10;
};

struct RunConfig {
  ModelKind model = ModelKind::kGdst;
  std::vector<Ordering> orderings{Ordering::kNormal};
  GdstParams gdst;
  double lambda = 1.0;
  bool explicit_coupling = false;
  MdnlsParams mdnls;
  XxzParams xxz;
  InitialSpec initial;
  IntegratorSpec integrator;
  ObservableSpec observables;
  SweepSpec sweep;
  ExactSpec exact;
  std::string out_dir = "cslattice-out";

  std::size_t sites() const noexcept;
  // Every field, defaults included.
  nlohmann::json echo() const;
};

// Parses a sectioned key = value document ([model], [initial], [integrator],
// [observables], [sweep], [exact], [output]). Strings may be quoted, lists are
// written [a, b, c] and '#' starts a comment. Unknown keys are reported
// together in one ConfigError; bad values raise InvalidParameter or IndexError
// naming the offending key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

// "no", "so" or "both".
std::vector<Ordering> parse_ordering_selection(std::string_view text);

}  // namespace cslattice::cli
