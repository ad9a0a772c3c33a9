#include "cslattice/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cslattice {
namespace {

std::size_t next_site(std::size_t j, std::size_t f) { return (j + 1) % f; }

double pow_int(double base, int exponent) {
  double out = 1.0;
  for (int k = 0; k < exponent; ++k) out *= base;
  return out;
}

}  // namespace

double boson_norm(const BosonLatticeState& state) {
  double n = 0.0;
  for (const auto& b : state.values()) n += std::norm(b);
  return n;
}

double gdst_energy(const BosonLatticeState& state, const GdstParams& params) {
  params.validate();
  if (state.size() != params.sites()) throw ShapeError("gdst_energy: state/coupling size mismatch");
  const bool so = params.ordering == Ordering::kSymmetric;
  const auto mu = so ? so_coefficients(params.m).mu : std::vector<double>{};
  double energy = 0.0;
  for (std::size_t j = 0; j < state.size(); ++j) {
    const double u = std::norm(state[j]);
    energy += params.omega0 * u - params.gamma / params.m * pow_int(u, params.m);
    double u_n = 1.0;
    for (double w : mu) {
      u_n *= u;
      energy -= params.gamma * w * u_n;
    }
  }
  // sum over ordered pairs of lambda_kl beta_k conj(beta_l); symmetric lambda
  // makes the sum real.
  for (const auto& bond : params.coupling.bonds()) {
    energy -= bond.strength * (state[bond.from] * std::conj(state[bond.to])).real();
  }
  return energy;
}

double mdnls_energy(const BosonLatticeState& state, const MdnlsParams& params) {
  params.validate();
  const std::size_t f = state.size();
  if (f != static_cast<std::size_t>(params.f)) throw ShapeError("mdnls_energy: size mismatch");
  double hop = 0.0;
  double quartic = 0.0;
  double norm = 0.0;
  for (std::size_t j = 0; j < f; ++j) {
    const std::size_t k = next_site(j, f);
    hop += 2.0 * (state[j] * std::conj(state[k])).real();
    const double u = std::norm(state[j]);
    quartic += std::norm(state[k]) * std::norm(state[next_site(k, f)]) + u * u;
    norm += u;
  }
  double energy = params.v * hop - params.x * quartic;
  if (params.ordering == Ordering::kSymmetric) energy -= 1.5 * params.x * norm;
  return energy;
}

double sz_symbol(Complex z) {
  const double u = std::norm(z);
  return (u - 1.0) / (2.0 * (1.0 + u));
}

double total_sz_symbol(const SpinLatticeState& state) {
  double total = 0.0;
  for (const auto& z : state.values()) total += sz_symbol(z);
  return total;
}

double xxz_energy_symbol(const SpinLatticeState& state, const XxzParams& params) {
  params.validate();
  const std::size_t f = state.size();
  if (f != static_cast<std::size_t>(params.f)) throw ShapeError("xxz_energy_symbol: size mismatch");
  double ising = 0.0;
  double hop = 0.0;
  for (std::size_t j = 0; j < f; ++j) {
    const std::size_t k = next_site(j, f);
    ising += sz_symbol(state[j]) * sz_symbol(state[k]);
    // <s+_j s-_k> + <s-_j s+_k> = 2 Re(conj(z_j) z_k) / ((1+|z_j|^2)(1+|z_k|^2))
    hop += 2.0 * (std::conj(state[j]) * state[k]).real() /
           ((1.0 + std::norm(state[j])) * (1.0 + std::norm(state[k])));
  }
  double energy = params.v * ising - params.g * hop;
  if (params.include_linear_term) energy += (params.onsite_energy + params.v) * total_sz_symbol(state);
  return energy;
}

// ---------------------------------------------------------------------------

Grid1d Grid1d::centered(double center, double half_width, double step) {
  if (!(step > 0.0) || !(half_width >= 0.0)) throw InvalidParameter("grid needs step > 0, half_width >= 0");
  const auto k = static_cast<long>(std::ceil(half_width / step - 1e-9));
  return Grid1d{center, step, -k, static_cast<std::size_t>(2 * k + 1)};
}

double q_value(Complex beta, double x, double y) {
  const double dx = x - beta.real();
  const double dy = y - beta.imag();
  return std::exp(-dx * dx - dy * dy) / std::numbers::pi;
}

QFunctionField q_function(Complex beta, const Grid1d& grid_x, const Grid1d& grid_y) {
  if (grid_x.count == 0 || grid_y.count == 0) throw InvalidParameter("q_function: empty grid");
  if (!(grid_x.step > 0.0) || !(grid_y.step > 0.0)) throw InvalidParameter("q_function: grid step must be > 0");
  QFunctionField field{grid_x, grid_y, {}};
  field.values.resize(grid_x.count * grid_y.count);
  for (std::size_t iy = 0; iy < grid_y.count; ++iy) {
    const double y = grid_y.at(iy);
    for (std::size_t ix = 0; ix < grid_x.count; ++ix) {
      field.values[iy * grid_x.count + ix] = q_value(beta, grid_x.at(ix), y);
    }
  }
  return field;
}

QFunctionField q_function(Complex beta) {
  const double half_width = std::max(6.0, std::abs(beta) + 6.0);
  return q_function(beta, Grid1d::centered(beta.real(), half_width, 0.05),
                    Grid1d::centered(beta.imag(), half_width, 0.05));
}

double QFunctionField::integral() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * grid_x.step * grid_y.step;
}

PoissonDist poisson_distribution(Complex beta, int n_max) {
  if (n_max < 0) throw InvalidParameter("poisson_distribution: n_max must be >= 0");
  const double mean = std::norm(beta);
  PoissonDist dist;
  dist.probs.resize(static_cast<std::size_t>(n_max) + 1);
  double p = std::exp(-mean);
  double total = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) p *= mean / n;
    dist.probs[static_cast<std::size_t>(n)] = p;
    total += p;
  }
  dist.tail_mass = std::max(0.0, 1.0 - total);
  return dist;
}

double PoissonDist::mean() const {
  double m = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) m += static_cast<double>(n) * probs[n];
  return m;
}

// ---------------------------------------------------------------------------

double gamma_cr_analytic(double n_total, Ordering ordering) {
  if (!(n_total > 0.0)) throw InvalidParameter("gamma_cr_analytic: n_total must be > 0");
  return ordering == Ordering::kNormal ? 4.0 / (n_total * n_total)
                                       : 4.0 / (n_total * (n_total + 3.0));
}

double gamma_cr_analytic(double n_total, Ordering ordering, int m, double lambda) {
  if (!(lambda > 0.0)) throw InvalidParameter("gamma_cr_analytic: lambda must be > 0");
  if (m == 3) return lambda * gamma_cr_analytic(n_total, ordering);
  if (m == 2) {
    if (!(n_total > 0.0)) throw InvalidParameter("gamma_cr_analytic: n_total must be > 0");
    return 4.0 * lambda / n_total;
  }
  throw InvalidParameter("gamma_cr_analytic: no closed form for m = " + std::to_string(m));
}

double population_imbalance(const BosonLatticeState& state) {
  if (state.size() != 2) {
    throw ShapeError("population_imbalance needs a dimer, got f = " + std::to_string(state.size()));
  }
  return std::norm(state[0]) - std::norm(state[1]);
}

bool is_self_trapped(const BosonTrajectory& trajectory, Site excited, double n_total) {
  const double half = 0.5 * n_total;
  for (const auto& s : trajectory.states) {
    if (!(std::norm(s.at(excited)) > half)) return false;
  }
  return true;
}

GammaSearchResult gamma_cr_numeric(const GdstParams& params_template, double n_total,
                                   const GammaSearchOptions& options) {
  params_template.validate();
  if (!(n_total > 0.0)) throw InvalidParameter("gamma_cr_numeric: n_total must be > 0");
  const std::size_t f = params_template.sites();
  options.excited.check(f);
  const double lambda = params_template.coupling.max_abs();
  if (!(lambda > 0.0)) throw InvalidParameter("gamma_cr_numeric: coupling matrix is zero");
  if (!(options.gamma_hi > options.gamma_lo)) throw InvalidParameter("gamma_cr_numeric: need gamma_hi > gamma_lo");

  const double beat = std::numbers::pi / lambda;
  auto cfg = IntegratorConfig::uniform(options.horizon.value_or(20.0 * beat),
                                       options.sample_spacing.value_or(beat / 20.0));
  cfg.rel_tol = options.integrator_rel_tol;
  cfg.abs_tol = options.integrator_abs_tol;
  const auto state0 = single_site_excitation(static_cast<int>(f), options.excited, n_total);

  GammaSearchResult result;
  auto params = params_template;
  auto trapped = [&](double gamma) {
    ++result.predicate_evaluations;
    params.gamma = gamma;
    return is_self_trapped(integrate(params, state0, cfg), options.excited, n_total);
  };

  double lo = options.gamma_lo;
  double hi = options.gamma_hi;
  if (trapped(lo)) {
    throw BracketingError("gamma_cr_numeric: excitation already trapped at gamma_lo = " +
                          std::to_string(lo));
  }
  int expansions = 0;
  while (!trapped(hi)) {
    if (++expansions > options.max_expansions) {
      throw BracketingError("gamma_cr_numeric: no self-trapping found up to gamma = " +
                            std::to_string(hi));
    }
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > std::max(options.abs_tol, options.rel_tol * hi)) {
    const double mid = 0.5 * (lo + hi);
    if (trapped(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  result.lo = lo;
  result.hi = hi;
  result.gamma_cr = 0.5 * (lo + hi);
  return result;
}

// ---------------------------------------------------------------------------

Complex fermion_amplitude(const SpinLatticeState& state, Site site) {
  site.check(state.size());
  double string = 1.0;
  for (std::size_t k = 0; k < site.offset(); ++k) {
    const double u = std::norm(state[k]);
    string *= (1.0 - u) / (1.0 + u);
  }
  const Complex z = state[site.offset()];
  return string * std::conj(z) / (1.0 + std::norm(z));
}

double fermion_number(const SpinLatticeState& state, Site site) {
  const double u = std::norm(state.at(site));
  return u / (1.0 + u);
}

}  // namespace cslattice
