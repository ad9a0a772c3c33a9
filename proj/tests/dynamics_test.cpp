#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "cslattice/dynamics.hpp"
#include "cslattice/observables.hpp"

namespace cslattice {
namespace {

constexpr Complex kI{0.0, 1.0};

GdstParams gdst(std::size_t f, double omega0, double gamma, int m, Ordering ordering, double lambda = 1.0) {
  GdstParams p;
  p.omega0 = omega0;
  p.gamma = gamma;
  p.m = m;
  p.ordering = ordering;
  p.coupling = f >= 2 ? nearest_neighbor_ring(static_cast<int>(f), lambda) : CouplingMatrix(1, {0.0});
  return p;
}

std::vector<Complex> random_values(std::size_t f, double scale, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<Complex> v(f);
  for (auto& c : v) c = {u(rng), u(rng)};
  return v;
}

// -i dH/d(conj y_j) by central differences in Re/Im; `factor` is the
// Poisson-bracket weight of the manifold (1 for bosons, (1+|z|^2)^2 for spin 1/2).
template <class State>
std::vector<Complex> hamiltonian_flow(const std::function<double(const State&)>& energy, const State& s,
                                      const std::function<double(Complex)>& factor) {
  const double h = 1e-6;
  std::vector<Complex> base(s.values().begin(), s.values().end());
  std::vector<Complex> out(base.size());
  for (std::size_t j = 0; j < base.size(); ++j) {
    auto shifted = [&](Complex d) {
      auto v = base;
      v[j] += d;
      return energy(State(v));
    };
    const double hx = (shifted(h) - shifted(-h)) / (2 * h);
    const double hy = (shifted(h * kI) - shifted(-h * kI)) / (2 * h);
    out[j] = -kI * factor(base[j]) * 0.5 * Complex(hx, hy);
  }
  return out;
}

// ---- spec examples ----

TEST(GdstRhs, Examples) {
  const auto zero = gdst_rhs(BosonLatticeState::zeros(3), gdst(3, 1.3, 0.7, 3, Ordering::kSymmetric));
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(zero[j], Complex{});

  const auto linear = gdst_rhs(BosonLatticeState({1.0}), gdst(1, 1.0, 0.0, 2, Ordering::kNormal));
  EXPECT_NEAR(std::abs(linear[0] - (-kI)), 0.0, 1e-15);

  const auto so = gdst_rhs(BosonLatticeState({1.0}), gdst(1, 0.0, 1.0, 3, Ordering::kSymmetric));
  EXPECT_NEAR(std::abs(so[0] - 5.5 * kI), 0.0, 1e-14);
}

TEST(GdstRhs, RejectsSizeMismatch) {
  EXPECT_THROW(gdst_rhs(BosonLatticeState::zeros(2), gdst(3, 0, 0, 2, Ordering::kNormal)), ShapeError);
}

TEST(MdnlsRhs, Examples) {
  MdnlsParams p;
  p.f = 3;
  EXPECT_EQ(mdnls_rhs(BosonLatticeState::zeros(3), p)[1], Complex{});

  p.v = 1.0;
  p.x = 0.0;
  const auto linear = mdnls_rhs(BosonLatticeState({1.0, 1.0, 1.0}), p);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(linear[j] - (-2.0 * kI)), 0.0, 1e-15);

  p.v = 0.0;
  p.x = 1.0;
  p.ordering = Ordering::kSymmetric;
  const auto so = mdnls_rhs(BosonLatticeState({1.0, 1.0, 1.0}), p);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(so[j] - 2.5 * kI), 0.0, 1e-15);

  p.f = 2;
  EXPECT_THROW(mdnls_rhs(BosonLatticeState::zeros(2), p), InvalidParameter);
}

TEST(XxzRhs, ZeroStateIsStationary) {
  for (auto eq : {XxzEquation::kSymbolFlow, XxzEquation::kNonconservative}) {
    XxzParams p;
    p.equation = eq;
    const auto d = xxz_spin_rhs(SpinLatticeState::zeros(4), XxzParams{1.0, 1.0, 4, false, 0.0, eq});
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(d[j], Complex{});
  }
}

TEST(XxzRhs, NonconservativeEquationExamples) {
  XxzParams p{2.0, 0.0, 3, false, 0.0, XxzEquation::kNonconservative};
  const auto d = xxz_spin_rhs(SpinLatticeState({1.0, 1.0, 1.0}), p);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(d[j] - (-kI * 2.0 / 4.0)), 0.0, 1e-15);

  p.v = 0.0;
  p.g = 1.0;
  const auto eq = xxz_spin_rhs(SpinLatticeState({1.0, 1.0, 1.0}), p);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(eq[j]), 0.0, 1e-15);
}

TEST(XxzRhs, SymbolFlowExamples) {
  // With uniform |z| = 1 every <s^z> vanishes, so the V term exerts no force.
  XxzParams p{2.0, 0.0, 3, false, 0.0, XxzEquation::kSymbolFlow};
  const auto d = xxz_spin_rhs(SpinLatticeState({1.0, 1.0, 1.0}), p);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(d[j]), 0.0, 1e-15);
  p.v = 0.0;
  p.g = 1.0;
  const auto eq = xxz_spin_rhs(SpinLatticeState({1.0, 1.0, 1.0}), p);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(eq[j]), 0.0, 1e-15);
}

TEST(XxzRhs, RejectsWrongSize) {
  EXPECT_THROW(xxz_spin_rhs(SpinLatticeState::zeros(3), XxzParams{1, 1, 4, false, 0, {}}), ShapeError);
}

// ---- oracle: the right-hand sides are Hamiltonian flows of the energy symbols ----

TEST(GdstRhs, IsHamiltonianFlowOfSymbol) {
  for (auto ordering : {Ordering::kNormal, Ordering::kSymmetric}) {
    for (int m : {2, 3, 4}) {
      GdstParams p = gdst(4, 0.3, 0.8, m, ordering, 0.6);
      const BosonLatticeState s(random_values(4, 1.2, 11u + static_cast<unsigned>(m)));
      const auto expected = hamiltonian_flow<BosonLatticeState>(
          [&](const BosonLatticeState& x) { return gdst_energy(x, p); }, s, [](Complex) { return 1.0; });
      const auto got = gdst_rhs(s, p);
      for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(got[j] - expected[j]), 0.0, 1e-7) << "m=" << m;
    }
  }
}

TEST(MdnlsRhs, NormalOrderingIsHamiltonianFlowOfSymbol) {
  MdnlsParams p{0.9, 0.8, 5, Ordering::kNormal};
  const BosonLatticeState s(random_values(5, 1.0, 5u));
  const auto expected = hamiltonian_flow<BosonLatticeState>(
      [&](const BosonLatticeState& x) { return mdnls_energy(x, p); }, s, [](Complex) { return 1.0; });
  const auto got = mdnls_rhs(s, p);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(std::abs(got[j] - expected[j]), 0.0, 1e-7);
}

TEST(MdnlsRhs, SymmetricOrderingAddsUniformShift) {
  MdnlsParams no{0.9, 0.8, 5, Ordering::kNormal};
  MdnlsParams so = no;
  so.ordering = Ordering::kSymmetric;
  const BosonLatticeState s(random_values(5, 1.0, 6u));
  const auto a = mdnls_rhs(s, no);
  const auto b = mdnls_rhs(s, so);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(std::abs(b[j] - a[j] - (-kI * 1.5 * 0.8 * s[j])), 0.0, 1e-14);
}

TEST(XxzRhs, SymbolFlowIsHamiltonianFlowOfSymbol) {
  for (bool linear : {false, true}) {
    XxzParams p{1.1, 0.7, 5, linear, 0.4, XxzEquation::kSymbolFlow};
    const SpinLatticeState s(random_values(5, 1.4, 9u));
    const auto expected = hamiltonian_flow<SpinLatticeState>(
        [&](const SpinLatticeState& x) { return xxz_energy_symbol(x, p); }, s,
        [](Complex z) { return (1.0 + std::norm(z)) * (1.0 + std::norm(z)); });
    const auto got = xxz_spin_rhs(s, p);
    for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(std::abs(got[j] - expected[j]), 0.0, 1e-6);
  }
}

TEST(GdstRhs, SymmetricM2EqualsShiftedFrequency) {
  const BosonLatticeState s(random_values(3, 1.5, 21u));
  const auto so = gdst_rhs(s, gdst(3, 0.4, 0.9, 2, Ordering::kSymmetric));
  const auto no = gdst_rhs(s, gdst(3, 0.4 - 0.9 * so_coefficients(2).mu[0], 0.9, 2, Ordering::kNormal));
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(so[j] - no[j]), 0.0, 1e-14);
}

TEST(GdstRhs, OrderingsAgreeWithoutNonlinearity) {
  const BosonLatticeState s(random_values(3, 1.5, 22u));
  const auto so = gdst_rhs(s, gdst(3, 0.4, 0.0, 3, Ordering::kSymmetric));
  const auto no = gdst_rhs(s, gdst(3, 0.4, 0.0, 3, Ordering::kNormal));
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(so[j], no[j]);
}

// ---- gauge ----

TEST(GaugeTransform, Examples) {
  const BosonLatticeState s(random_values(4, 1.0, 3u));
  EXPECT_EQ(mdnls_gauge_transform(s, 0.0, 0.7), s);
  const auto g = mdnls_gauge_transform(s, 1.234, 0.7);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(g[j]), std::abs(s[j]), 1e-15);
  const auto flip = mdnls_gauge_transform(s, 2.0 * std::numbers::pi / 3.0, 1.0);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(flip[j] + s[j]), 0.0, 1e-14);
}

// ---- integration ----

TEST(IntegratorConfig, UniformSamplingHitsHorizon) {
  const auto cfg = IntegratorConfig::uniform(1.0, 0.3);
  ASSERT_EQ(cfg.sample_times.size(), 5u);
  EXPECT_EQ(cfg.sample_times.front(), 0.0);
  EXPECT_EQ(cfg.sample_times.back(), 1.0);
  EXPECT_EQ(IntegratorConfig::uniform(0.0, 0.1).sample_times.size(), 1u);
  IntegratorConfig bad;
  bad.sample_times = {0.0, 1.0, 1.0};
  EXPECT_THROW(bad.validate(), InvalidParameter);
}

TEST(Integrate, ZeroRhsGivesConstantTrajectory) {
  const BosonLatticeState s({1.0, kI});
  const auto traj = integrate<BosonLatticeState>(
      [](std::span<const Complex>, std::span<Complex> out) { std::fill(out.begin(), out.end(), Complex{}); },
      [](std::span<const Complex>) { return Audit{}; }, s, IntegratorConfig::uniform(5.0, 1.0));
  ASSERT_EQ(traj.size(), 6u);
  for (const auto& st : traj.states) EXPECT_EQ(st, s);
}

TEST(Integrate, LinearOscillatorHalfPeriod) {
  auto cfg = IntegratorConfig::uniform(std::numbers::pi, std::numbers::pi / 4);
  const auto traj = integrate(gdst(1, 1.0, 0.0, 2, Ordering::kNormal), BosonLatticeState({1.0}), cfg);
  EXPECT_EQ(traj.times.back(), std::numbers::pi);
  EXPECT_NEAR(std::abs(traj.states.back()[0] - Complex(-1.0, 0.0)), 0.0, 1e-9);
}

TEST(Integrate, LinearDimerBeating) {
  const auto traj = integrate(gdst(2, 0.0, 0.0, 3, Ordering::kNormal),
                              single_site_excitation(2, Site(1), 10.0), IntegratorConfig::uniform(10.0, 0.1));
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double c = std::cos(traj.times[i]);
    EXPECT_NEAR(std::norm(traj.states[i][0]), 10.0 * c * c, 1e-8);
  }
}

TEST(Integrate, ZeroHorizonKeepsInitialState) {
  const auto s = single_site_excitation(3, Site(2), 4.0);
  const auto traj = integrate(gdst(3, 0.0, 0.1, 3, Ordering::kSymmetric), s, IntegratorConfig::uniform(0.0, 0.1));
  ASSERT_EQ(traj.size(), 1u);
  EXPECT_EQ(traj.states[0], s);
}

TEST(Integrate, GdstConservesNormAndEnergy) {
  for (auto ordering : {Ordering::kNormal, Ordering::kSymmetric}) {
    auto cfg = IntegratorConfig::uniform(50.0, 0.5);
    cfg.rel_tol = cfg.abs_tol = 1e-10;
    const auto traj = integrate(gdst(3, 0.0, 0.055, 3, ordering), single_site_excitation(3, Site(1), 10.0), cfg);
    EXPECT_LT(traj.max_charge_drift(), 100 * cfg.rel_tol);
    EXPECT_LT(traj.max_energy_drift(), 100 * cfg.rel_tol);
  }
}

TEST(Integrate, MdnlsConservesNormAndEnergy) {
  auto cfg = IntegratorConfig::uniform(50.0, 0.5);
  cfg.rel_tol = cfg.abs_tol = 1e-10;
  const auto traj = integrate(MdnlsParams{1.0, 0.8, 5, Ordering::kSymmetric},
                              BosonLatticeState(random_values(5, 0.5, 4u)), cfg);
  EXPECT_LT(traj.max_charge_drift(), 100 * cfg.rel_tol);
  EXPECT_LT(traj.max_energy_drift(), 100 * cfg.rel_tol);
}

TEST(Integrate, XxzSymbolFlowConservesSzAndEnergy) {
  auto cfg = IntegratorConfig::uniform(50.0, 0.5);
  cfg.rel_tol = cfg.abs_tol = 1e-10;
  const auto traj = integrate(XxzParams{1.0, 0.7, 5, false, 0.0, XxzEquation::kSymbolFlow},
                              SpinLatticeState(random_values(5, 1.2, 8u)), cfg);
  EXPECT_LT(traj.max_charge_drift(), 100 * cfg.rel_tol);
  EXPECT_LT(traj.max_energy_drift(), 100 * cfg.rel_tol);
}

TEST(Integrate, NonconservativeXxzEquationFailsWithPartialTrajectory) {
  // The nonconservative variant is not a Hamiltonian flow; from this state it runs
  // away in finite time.
  const XxzParams p{1.0, 0.7, 5, false, 0.0, XxzEquation::kNonconservative};
  const SpinLatticeState s(random_values(5, 1.4, 8u));
  auto cfg = IntegratorConfig::uniform(20.0, 0.01);
  SpinTrajectory partial;
  try {
    integrate_into(make_rhs(p), make_audit(p), s, cfg, partial);
    FAIL() << "expected an integration failure";
  } catch (const IntegrationFailure& e) {
    EXPECT_GT(partial.size(), 0u);
    EXPECT_LE(partial.times.back(), e.reached_time());
    EXPECT_LT(e.reached_time(), 20.0);
  }
}

TEST(Integrate, GaugeMapsSymmetricOntoNormalOrdering) {
  const BosonLatticeState s(random_values(5, 0.6, 12u));
  auto cfg = IntegratorConfig::uniform(20.0, 0.5);
  cfg.rel_tol = cfg.abs_tol = 1e-11;
  const auto so = integrate(MdnlsParams{1.0, 0.8, 5, Ordering::kSymmetric}, s, cfg);
  const auto no = integrate(MdnlsParams{1.0, 0.8, 5, Ordering::kNormal}, s, cfg);
  for (std::size_t i = 0; i < so.size(); ++i) {
    const auto mapped = mdnls_gauge_transform(so.states[i], -so.times[i], 0.8);
    for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(std::abs(mapped[j] - no.states[i][j]), 0.0, 10 * 1e-9);
  }
}

TEST(Integrate, TimeReversalViaConjugation) {
  // For real couplings conj(beta(-t)) solves the same equation, so running
  // forward from conj(beta(T)) for time T returns conj(beta(0)).
  const auto p = gdst(3, 0.2, 0.055, 3, Ordering::kSymmetric);
  const auto s0 = BosonLatticeState(random_values(3, 1.5, 30u));
  auto cfg = IntegratorConfig::uniform(10.0, 10.0);
  cfg.rel_tol = cfg.abs_tol = 1e-11;
  const auto forward = integrate(p, s0, cfg);
  std::vector<Complex> back(forward.states.back().values().begin(), forward.states.back().values().end());
  for (auto& c : back) c = std::conj(c);
  const auto reverse = integrate(p, BosonLatticeState(back), cfg);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(std::abs(std::conj(reverse.states.back()[j]) - s0[j]), 0.0, 100 * cfg.rel_tol * 10);
  }
}

TEST(Integrate, SamplesLandExactlyOnRequestedTimes) {
  IntegratorConfig cfg;
  cfg.sample_times = {0.0, 0.1, 0.35, 2.0, 7.123};
  const auto traj = integrate(gdst(2, 0.0, 0.1, 3, Ordering::kNormal), single_site_excitation(2, Site(1), 4), cfg);
  EXPECT_EQ(traj.times, cfg.sample_times);
}

}  // namespace
}  // namespace cslattice
