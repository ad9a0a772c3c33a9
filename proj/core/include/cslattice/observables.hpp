#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cslattice/dynamics.hpp"
#include "cslattice/lattice.hpp"

namespace cslattice {

// ---- conserved symbols ----

double boson_norm(const BosonLatticeState& state);

// Coherent-state symbol of the GDST Hamiltonian; the mu_n terms are added for
// symmetric ordering only.
double gdst_energy(const BosonLatticeState& state, const GdstParams& params);

// V sum (A_j conj(A_{j+1}) + c.c.) - X sum (|A_{j+1}|^2 |A_{j+2}|^2 + |A_j|^4)
// - [SO] (3X/2) sum |A_j|^2
double mdnls_energy(const BosonLatticeState& state, const MdnlsParams& params);

// Symbol of H_XXZ built from the spin-1/2 symbols
//   <s^z> = -(1 - |z|^2) / (2 (1 + |z|^2)),  <s^-> = z / (1 + |z|^2),
// factorized across sites; includes (onsite + V) sum <s^z> when the linear term
// is enabled.
double xxz_energy_symbol(const SpinLatticeState& state, const XxzParams& params);

double sz_symbol(Complex z);
double total_sz_symbol(const SpinLatticeState& state);

// ---- phase-space distributions ----

// Regular grid: x_i = origin + (first + i) * step for i in [0, count).
struct Grid1d {
  double origin = 0.0;
  double step = 0.05;
  long first = 0;
  std::size_t count = 0;

  double at(std::size_t i) const noexcept {
    return origin + static_cast<double>(first + static_cast<long>(i)) * step;
  }
  // 2K+1 points with the middle one exactly on `center`, K = ceil(half_width/step).
  static Grid1d centered(double center, double half_width, double step);
};

struct QFunctionField {
  Grid1d grid_x;
  Grid1d grid_y;
  // Row-major, values[iy * grid_x.count + ix].
  std::vector<double> values;

  double at(std::size_t ix, std::size_t iy) const { return values[iy * grid_x.count + ix]; }
  double integral() const;
};

// Q(x, y) = exp(-(x - Re beta)^2 - (y - Im beta)^2) / pi
double q_value(Complex beta, double x, double y);
QFunctionField q_function(Complex beta, const Grid1d& grid_x, const Grid1d& grid_y);
// Square window centred on beta with half-width max(6, |beta| + 6), spacing 0.05.
QFunctionField q_function(Complex beta);

struct PoissonDist {
  std::vector<double> probs;  // P_0 ... P_{n_max}
  double tail_mass = 0.0;     // 1 - sum(probs)

  double mean() const;
};

PoissonDist poisson_distribution(Complex beta, int n_max);

// ---- self-trapping ----

// Dimer with quintic nonlinearity and unit hopping:
//   NO: 4 / N^2,   SO: 4 / (N (N + 3)).
double gamma_cr_analytic(double n_total, Ordering ordering);
// Same threshold for hopping lambda and nonlinearity m in {2, 3}; for m = 2
// both orderings give 4 lambda / N. Other m throw InvalidParameter.
double gamma_cr_analytic(double n_total, Ordering ordering, int m, double lambda);

// |beta_1|^2 - |beta_2|^2 for a dimer.
double population_imbalance(const BosonLatticeState& state);

// True iff |beta_{j0}(t)|^2 > N/2 at every sample of the trajectory.
bool is_self_trapped(const BosonTrajectory& trajectory, Site excited, double n_total);

struct GammaSearchOptions {
  Site excited{1};
  // Integration horizon; defaults to 20 linear beat periods pi / lambda_max.
  std::optional<double> horizon;
  // Sample spacing; defaults to 1/20 of the beat period.
  std::optional<double> sample_spacing;
  // Initial bracket. hi is doubled until the excitation is trapped.
  double gamma_lo = 0.0;
  double gamma_hi = 1.0;
  int max_expansions = 40;
  // Stop when hi - lo <= max(abs_tol, rel_tol * hi).
  double abs_tol = 0.0;
  double rel_tol = 1e-3;
  double integrator_rel_tol = 1e-10;
  double integrator_abs_tol = 1e-10;
};

struct GammaSearchResult {
  double gamma_cr = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int predicate_evaluations = 0;
};

// Bisection on gamma with is_self_trapped as predicate, starting from
// single_site_excitation(options.excited, n_total). The template's gamma is
// ignored. Throws BracketingError if no sign change can be found.
GammaSearchResult gamma_cr_numeric(const GdstParams& params_template, double n_total,
                                   const GammaSearchOptions& options = {});

// ---- Jordan-Wigner fermion observables on a spin coherent state ----

// <a_j^dagger> = prod_{k<j} (1 - |z_k|^2)/(1 + |z_k|^2) * conj(z_j) / (1 + |z_j|^2)
Complex fermion_amplitude(const SpinLatticeState& state, Site site);
// <n_j> = |z_j|^2 / (1 + |z_j|^2)
double fermion_number(const SpinLatticeState& state, Site site);

}  // namespace cslattice
