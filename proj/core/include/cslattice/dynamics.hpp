#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cslattice/lattice.hpp"

namespace cslattice {

// ---------------------------------------------------------------------------
// Right-hand sides of the factorized coherent-state equations of motion.
// Each returns the time derivative d(label)/dt.
// ---------------------------------------------------------------------------

// i dbeta_j/dt = omega0 beta_j - gamma |beta_j|^(2m-2) beta_j - sum_k lambda_jk beta_k
//                - [SO] gamma sum_n mu_n n |beta_j|^(2n-2) beta_j
BosonLatticeState gdst_rhs(const BosonLatticeState& state, const GdstParams& params);

// i dA_j/dt = V (A_{j+1} + A_{j-1}) - X (|A_{j+1}|^2 + |A_{j-1}|^2 + 2|A_j|^2) A_j
//             + [SO] (3/2) X A_j
BosonLatticeState mdnls_rhs(const BosonLatticeState& state, const MdnlsParams& params);

SpinLatticeState xxz_spin_rhs(const SpinLatticeState& state, const XxzParams& params);

// A_j -> exp(-(3/2) i X t) A_j. Applying it with -t maps the symmetric-ordering
// MDNLS solution onto the classical one.
BosonLatticeState mdnls_gauge_transform(const BosonLatticeState& state, double t, double x);

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

struct IntegratorConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  // Strictly increasing; the first entry is the initial time.
  std::vector<double> sample_times;

  void validate() const;

  // Samples 0, dt, 2 dt, ... up to and including `horizon` (the last sample is
  // placed exactly on the horizon).
  static IntegratorConfig uniform(double horizon, double dt);
};

// Conserved quantities recorded at each sample. `charge` is the boson norm for
// GDST/MDNLS and the total S^z symbol for XXZ.
struct Audit {
  double charge = 0.0;
  double energy = 0.0;
};

template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<Audit> audits;

  std::size_t size() const noexcept { return times.size(); }

  // max_t |q(t) - q(0)| / |q(0)| (absolute when q(0) == 0).
  double max_charge_drift() const;
  double max_energy_drift() const;
};

using BosonTrajectory = Trajectory<BosonLatticeState>;
using SpinTrajectory = Trajectory<SpinLatticeState>;

// Derivative of a complex system written into `out`; `y` and `out` alias
// nothing and have the same length.
using ComplexRhs = std::function<void(std::span<const Complex> y, std::span<Complex> out)>;
using AuditFn = std::function<Audit(std::span<const Complex> y)>;

// Adaptive embedded Runge-Kutta (Fehlberg 7(8)) integration that lands
// exactly on every sample time. Samples are appended to `out` as they are
// reached, so after an IntegrationFailure `out` holds the partial trajectory.
template <class State>
void integrate_into(const ComplexRhs& rhs, const AuditFn& audit, const State& state0,
                    const IntegratorConfig& cfg, Trajectory<State>& out);

template <class State>
Trajectory<State> integrate(const ComplexRhs& rhs, const AuditFn& audit, const State& state0,
                            const IntegratorConfig& cfg) {
  Trajectory<State> out;
  integrate_into(rhs, audit, state0, cfg, out);
  return out;
}

// Model-specific conveniences: RHS + audits (norm/energy or S^z/energy).
ComplexRhs make_rhs(const GdstParams& params);
ComplexRhs make_rhs(const MdnlsParams& params);
ComplexRhs make_rhs(const XxzParams& params);
AuditFn make_audit(const GdstParams& params);
AuditFn make_audit(const MdnlsParams& params);
AuditFn make_audit(const XxzParams& params);

BosonTrajectory integrate(const GdstParams& params, const BosonLatticeState& state0,
                          const IntegratorConfig& cfg);
BosonTrajectory integrate(const MdnlsParams& params, const BosonLatticeState& state0,
                          const IntegratorConfig& cfg);
SpinTrajectory integrate(const XxzParams& params, const SpinLatticeState& state0,
                         const IntegratorConfig& cfg);

extern template void integrate_into<BosonLatticeState>(const ComplexRhs&, const AuditFn&,
                                                       const BosonLatticeState&,
                                                       const IntegratorConfig&, BosonTrajectory&);
extern template void integrate_into<SpinLatticeState>(const ComplexRhs&, const AuditFn&,
                                                      const SpinLatticeState&,
                                                      const IntegratorConfig&, SpinTrajectory&);

}  // namespace cslattice
