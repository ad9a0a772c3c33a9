#include "cslattice/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "cslattice/observables.hpp"

namespace cslattice {
namespace {

constexpr Complex kI{0.0, 1.0};

// Returns -i * w, i.e. converts "i dy/dt = w" into dy/dt.
inline Complex minus_i(Complex w) { return {w.imag(), -w.real()}; }

std::size_t wrap(std::size_t j, std::ptrdiff_t delta, std::size_t f) {
  const auto n = static_cast<std::ptrdiff_t>(f);
  return static_cast<std::size_t>(((static_cast<std::ptrdiff_t>(j) + delta) % n + n) % n);
}

void check_ring(std::size_t size, int f, const char* model) {
  if (size != static_cast<std::size_t>(f)) {
    throw ShapeError(std::string(model) + " state has " + std::to_string(size) +
                     " sites, params expect " + std::to_string(f));
  }
}

// n * mu_n, n = 1 ... m-1; empty for normal ordering.
std::vector<double> so_weights(const GdstParams& p) {
  std::vector<double> w;
  if (p.ordering != Ordering::kSymmetric) return w;
  const auto so = so_coefficients(p.m);
  for (std::size_t n = 1; n <= so.mu.size(); ++n) w.push_back(static_cast<double>(n) * so.mu[n - 1]);
  return w;
}

void gdst_kernel(std::span<const Complex> b, std::span<Complex> out, const GdstParams& p,
                 std::span<const double> weights) {
  const std::size_t f = b.size();
  for (std::size_t j = 0; j < f; ++j) {
    const double u = std::norm(b[j]);
    double u_pow = 1.0;
    for (int k = 1; k < p.m; ++k) u_pow *= u;
    double onsite = p.omega0 - p.gamma * u_pow;
    // sum_n n mu_n u^(n-1), Horner from the top.
    double so = 0.0;
    for (std::size_t n = weights.size(); n-- > 0;) so = so * u + weights[n];
    onsite -= p.gamma * so;
    out[j] = onsite * b[j];
  }
  for (const auto& bond : p.coupling.bonds()) out[bond.from] -= bond.strength * b[bond.to];
  for (auto& w : out) w = minus_i(w);
}

void mdnls_kernel(std::span<const Complex> a, std::span<Complex> out, const MdnlsParams& p) {
  const std::size_t f = a.size();
  const double shift = p.ordering == Ordering::kSymmetric ? 1.5 * p.x : 0.0;
  for (std::size_t j = 0; j < f; ++j) {
    const Complex& prev = a[wrap(j, -1, f)];
    const Complex& next = a[wrap(j, 1, f)];
    const double load = std::norm(next) + std::norm(prev) + 2.0 * std::norm(a[j]);
    out[j] = minus_i(p.v * (next + prev) + (shift - p.x * load) * a[j]);
  }
}

void xxz_kernel(std::span<const Complex> z, std::span<Complex> out, const XxzParams& p) {
  const std::size_t f = z.size();
  const bool nonconservative = p.equation == XxzEquation::kNonconservative;
  const double linear = p.include_linear_term ? p.onsite_energy + p.v : 0.0;
  for (std::size_t j = 0; j < f; ++j) {
    const Complex& zl = z[wrap(j, -1, f)];
    const Complex& zr = z[wrap(j, 1, f)];
    const double a = std::norm(zl);
    const double b = std::norm(zr);
    const double u = std::norm(z[j]);
    const Complex hop = zl * (1.0 + b) + zr * (1.0 + a);
    const Complex hop_bar = std::conj(zl) * (1.0 + b) + std::conj(zr) * (1.0 + a);
    Complex numerator;
    if (nonconservative) {
      numerator = -p.v * z[j] * (1.0 - 2.0 * a * b) + (2.0 * p.g - 3.0 * p.g * u) * hop +
                  p.g * z[j] * z[j] * hop_bar;
    } else {
      numerator = -p.v * z[j] * (1.0 - a * b) - p.g * hop + p.g * z[j] * z[j] * hop_bar;
    }
    out[j] = minus_i(numerator / ((1.0 + a) * (1.0 + b)) + linear * z[j]);
  }
}

void require_finite(std::span<const Complex> z) {
  for (const auto& v : z) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("xxz_spin_rhs: non-finite spin coordinate");
    }
  }
}

template <class State>
double max_drift(const Trajectory<State>& traj, double Audit::*field) {
  if (traj.audits.empty()) return 0.0;
  const double ref = traj.audits.front().*field;
  const double scale = ref != 0.0 ? std::abs(ref) : 1.0;
  double worst = 0.0;
  for (const auto& a : traj.audits) worst = std::max(worst, std::abs(a.*field - ref) / scale);
  return worst;
}

}  // namespace

BosonLatticeState gdst_rhs(const BosonLatticeState& state, const GdstParams& params) {
  params.validate();
  if (state.size() != params.sites()) {
    throw ShapeError("gdst_rhs: state has " + std::to_string(state.size()) +
                     " sites, coupling has " + std::to_string(params.sites()));
  }
  std::vector<Complex> out(state.size());
  const auto weights = so_weights(params);
  gdst_kernel(state.values(), out, params, weights);
  return BosonLatticeState(std::move(out));
}

BosonLatticeState mdnls_rhs(const BosonLatticeState& state, const MdnlsParams& params) {
  params.validate();
  check_ring(state.size(), params.f, "MDNLS");
  std::vector<Complex> out(state.size());
  mdnls_kernel(state.values(), out, params);
  return BosonLatticeState(std::move(out));
}

SpinLatticeState xxz_spin_rhs(const SpinLatticeState& state, const XxzParams& params) {
  params.validate();
  check_ring(state.size(), params.f, "XXZ");
  std::vector<Complex> out(state.size());
  xxz_kernel(state.values(), out, params);
  return SpinLatticeState(std::move(out));
}

BosonLatticeState mdnls_gauge_transform(const BosonLatticeState& state, double t, double x) {
  const Complex phase = std::exp(-1.5 * kI * x * t);
  std::vector<Complex> out(state.values().begin(), state.values().end());
  for (auto& a : out) a *= phase;
  return BosonLatticeState(std::move(out));
}

// ---------------------------------------------------------------------------

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw InvalidParameter("integrator tolerances must be > 0");
  if (!(max_step > 0.0)) throw InvalidParameter("integrator max_step must be > 0");
  if (sample_times.empty()) throw InvalidParameter("integrator needs at least one sample time");
  for (std::size_t k = 0; k < sample_times.size(); ++k) {
    if (!std::isfinite(sample_times[k])) throw InvalidParameter("sample time is not finite");
    if (k > 0 && !(sample_times[k] > sample_times[k - 1])) {
      throw InvalidParameter("sample times must be strictly increasing");
    }
  }
}

IntegratorConfig IntegratorConfig::uniform(double horizon, double dt) {
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw InvalidParameter("horizon must be >= 0");
  if (!(dt > 0.0)) throw InvalidParameter("sample spacing must be > 0");
  IntegratorConfig cfg;
  if (horizon == 0.0) {
    cfg.sample_times = {0.0};
    return cfg;
  }
  const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9)));
  cfg.sample_times.reserve(steps + 1);
  for (std::size_t k = 0; k < steps; ++k) cfg.sample_times.push_back(static_cast<double>(k) * dt);
  cfg.sample_times.push_back(horizon);
  return cfg;
}

template <class State>
double Trajectory<State>::max_charge_drift() const {
  return max_drift(*this, &Audit::charge);
}

template <class State>
double Trajectory<State>::max_energy_drift() const {
  return max_drift(*this, &Audit::energy);
}

template struct Trajectory<BosonLatticeState>;
template struct Trajectory<SpinLatticeState>;

template <class State>
void integrate_into(const ComplexRhs& rhs, const AuditFn& audit, const State& state0,
                    const IntegratorConfig& cfg, Trajectory<State>& out) {
  namespace odeint = boost::numeric::odeint;
  using RealState = std::vector<double>;
  cfg.validate();

  const std::size_t f = state0.size();
  RealState x(2 * f);
  std::copy(state0.values().begin(), state0.values().end(), reinterpret_cast<Complex*>(x.data()));

  // std::complex<double> is layout-compatible with double[2].
  auto view = [f](const RealState& v) {
    return std::span<const Complex>(reinterpret_cast<const Complex*>(v.data()), f);
  };
  auto system = [&](const RealState& y, RealState& dydt, double /*t*/) {
    rhs(view(y), std::span<Complex>(reinterpret_cast<Complex*>(dydt.data()), f));
  };
  auto record = [&](double t) {
    auto values = view(x);
    out.times.push_back(t);
    out.states.emplace_back(std::vector<Complex>(values.begin(), values.end()));
    out.audits.push_back(audit(values));
  };

  using Stepper = odeint::runge_kutta_fehlberg78<RealState>;
  using Checker = odeint::default_error_checker<double, odeint::range_algebra,
                                                odeint::default_operations>;
  odeint::controlled_runge_kutta<Stepper> controller(Checker(cfg.abs_tol, cfg.rel_tol, 1.0, 1.0));

  const auto& ts = cfg.sample_times;
  double t = ts.front();
  double dt = std::min(cfg.max_step, 1e-2);
  RealState trial(x.size());
  auto finite = [](const RealState& v) {
    return std::all_of(v.begin(), v.end(), [](double c) { return std::isfinite(c); });
  };
  record(t);
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const double target = ts[k];
    while (t < target) {
      const double remaining = target - t;
      const bool lands = dt >= remaining;
      double h = lands ? remaining : dt;
      double t_try = t;
      const auto result = controller.try_step(system, x, t_try, trial, h);
      // The error estimate of an overflowed step is NaN, which the controller
      // does not reject on its own.
      if (result == odeint::success && finite(trial)) {
        x.swap(trial);
        t = lands ? target : t_try;
        // A clamped step says little about the natural step size; keep the
        // larger of the two.
        dt = std::min(cfg.max_step, lands ? std::max(dt, h) : h);
      } else {
        dt = result == odeint::success ? 0.1 * h : h;
        if (dt < 1e-13 * std::max(1.0, std::abs(t))) {
          throw IntegrationFailure("step size underflow at t = " + std::to_string(t), t);
        }
      }
    }
    if (!finite(x)) throw IntegrationFailure("state became non-finite", t);
    record(target);
  }
}

template void integrate_into<BosonLatticeState>(const ComplexRhs&, const AuditFn&,
                                                const BosonLatticeState&, const IntegratorConfig&,
                                                BosonTrajectory&);
template void integrate_into<SpinLatticeState>(const ComplexRhs&, const AuditFn&,
                                               const SpinLatticeState&, const IntegratorConfig&,
                                               SpinTrajectory&);

ComplexRhs make_rhs(const GdstParams& params) {
  params.validate();
  return [params, weights = so_weights(params)](std::span<const Complex> y, std::span<Complex> out) {
    gdst_kernel(y, out, params, weights);
  };
}

ComplexRhs make_rhs(const MdnlsParams& params) {
  params.validate();
  return [params](std::span<const Complex> y, std::span<Complex> out) {
    mdnls_kernel(y, out, params);
  };
}

ComplexRhs make_rhs(const XxzParams& params) {
  params.validate();
  return [params](std::span<const Complex> y, std::span<Complex> out) {
    xxz_kernel(y, out, params);
  };
}

AuditFn make_audit(const GdstParams& params) {
  return [params](std::span<const Complex> y) {
    BosonLatticeState s(std::vector<Complex>(y.begin(), y.end()));
    return Audit{boson_norm(s), gdst_energy(s, params)};
  };
}

AuditFn make_audit(const MdnlsParams& params) {
  return [params](std::span<const Complex> y) {
    BosonLatticeState s(std::vector<Complex>(y.begin(), y.end()));
    return Audit{boson_norm(s), mdnls_energy(s, params)};
  };
}

AuditFn make_audit(const XxzParams& params) {
  return [params](std::span<const Complex> y) {
    SpinLatticeState s(std::vector<Complex>(y.begin(), y.end()));
    return Audit{total_sz_symbol(s), xxz_energy_symbol(s, params)};
  };
}

BosonTrajectory integrate(const GdstParams& params, const BosonLatticeState& state0,
                          const IntegratorConfig& cfg) {
  if (state0.size() != params.sites()) throw ShapeError("integrate: state/coupling size mismatch");
  return integrate(make_rhs(params), make_audit(params), state0, cfg);
}

BosonTrajectory integrate(const MdnlsParams& params, const BosonLatticeState& state0,
                          const IntegratorConfig& cfg) {
  check_ring(state0.size(), params.f, "MDNLS");
  return integrate(make_rhs(params), make_audit(params), state0, cfg);
}

SpinTrajectory integrate(const XxzParams& params, const SpinLatticeState& state0,
                         const IntegratorConfig& cfg) {
  check_ring(state0.size(), params.f, "XXZ");
  require_finite(state0.values());
  return integrate(make_rhs(params), make_audit(params), state0, cfg);
}

}  // namespace cslattice
