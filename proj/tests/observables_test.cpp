#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cslattice/observables.hpp"

namespace cslattice {
namespace {

constexpr double kPi = std::numbers::pi;

GdstParams single_mode(double omega0, double gamma, int m, Ordering ordering) {
  GdstParams p;
  p.omega0 = omega0;
  p.gamma = gamma;
  p.m = m;
  p.ordering = ordering;
  p.coupling = CouplingMatrix(1, {0.0});
  return p;
}

GdstParams dimer(double gamma, Ordering ordering, int m = 3) {
  GdstParams p;
  p.gamma = gamma;
  p.m = m;
  p.ordering = ordering;
  p.coupling = nearest_neighbor_ring(2, 1.0);
  return p;
}

TEST(BosonNorm, Examples) {
  EXPECT_EQ(boson_norm(BosonLatticeState::zeros(3)), 0.0);
  EXPECT_NEAR(boson_norm(BosonLatticeState({std::sqrt(10.0), 0.0})), 10.0, 1e-14);
  EXPECT_DOUBLE_EQ(boson_norm(BosonLatticeState({1.0, Complex(0, 1)})), 2.0);
}

TEST(GdstEnergy, Examples) {
  EXPECT_EQ(gdst_energy(BosonLatticeState::zeros(2), dimer(0.3, Ordering::kSymmetric)), 0.0);
  EXPECT_DOUBLE_EQ(gdst_energy(BosonLatticeState({1.0}), single_mode(1.0, 2.0, 2, Ordering::kNormal)), 0.0);
  EXPECT_NEAR(gdst_energy(BosonLatticeState({1.0}), single_mode(0.0, 1.0, 3, Ordering::kSymmetric)), -10.0 / 3.0,
              1e-14);
}

TEST(GdstEnergy, HoppingIsReal) {
  // -(lambda b1 conj(b2) + lambda b2 conj(b1)) = -2 lambda Re(b1 conj(b2))
  const BosonLatticeState s({Complex(1, 2), Complex(-0.5, 0.3)});
  const double expected = -2.0 * (s[0] * std::conj(s[1])).real();
  EXPECT_NEAR(gdst_energy(s, dimer(0.0, Ordering::kNormal)), expected, 1e-14);
}

TEST(MdnlsEnergy, Examples) {
  EXPECT_EQ(mdnls_energy(BosonLatticeState::zeros(3), MdnlsParams{1, 1, 3, Ordering::kSymmetric}), 0.0);
  const BosonLatticeState uniform({1.0, 1.0, 1.0});
  EXPECT_DOUBLE_EQ(mdnls_energy(uniform, MdnlsParams{1, 0, 3, Ordering::kNormal}), 6.0);
  EXPECT_DOUBLE_EQ(mdnls_energy(uniform, MdnlsParams{0, 1, 3, Ordering::kSymmetric}), -10.5);
}

TEST(XxzEnergy, Examples) {
  const XxzParams p{1.3, 0.8, 4, false, 0.0, XxzEquation::kSymbolFlow};
  EXPECT_DOUBLE_EQ(xxz_energy_symbol(SpinLatticeState::zeros(4), p), 1.3 * 4 * 0.25);
  EXPECT_NEAR(xxz_energy_symbol(SpinLatticeState({1.0, 1.0, 1.0, 1.0}), p), -0.8 * 4 / 2.0, 1e-15);
  const XxzParams no_hop{1.3, 0.0, 4, false, 0.0, XxzEquation::kSymbolFlow};
  const SpinLatticeState s({0.3, Complex(1, 1), Complex(0, -2), 0.7});
  double expected = 0.0;
  for (std::size_t j = 0; j < 4; ++j) expected += 1.3 * sz_symbol(s[j]) * sz_symbol(s[(j + 1) % 4]);
  EXPECT_NEAR(xxz_energy_symbol(s, no_hop), expected, 1e-15);
}

TEST(TotalSz, Examples) {
  EXPECT_DOUBLE_EQ(total_sz_symbol(SpinLatticeState::zeros(3)), -1.5);
  EXPECT_NEAR(total_sz_symbol(SpinLatticeState({1.0, Complex(0, 1), Complex(-0.6, 0.8)})), 0.0, 1e-15);
  // (u - 1) / (2 (u + 1)) - 1 with u = 1e6
  EXPECT_NEAR(total_sz_symbol(SpinLatticeState({1e3, 0.0, 0.0})), (1e6 - 1) / (2 * (1e6 + 1)) - 1.0, 1e-15);
  EXPECT_NEAR(total_sz_symbol(SpinLatticeState({1e3, 0.0, 0.0})), -0.500001, 1e-9);
}

TEST(QFunction, Examples) {
  const Complex beta(1.3, -0.4);
  EXPECT_DOUBLE_EQ(q_value(beta, 1.3, -0.4), 1.0 / kPi);
  EXPECT_NEAR(q_value(beta, 2.3, -0.4), std::exp(-1.0) / kPi, 1e-15);
  const auto field = q_function(beta, Grid1d::centered(beta.real(), 6.0, 0.05),
                                Grid1d::centered(beta.imag(), 6.0, 0.05));
  EXPECT_NEAR(field.integral(), 1.0, 1e-3);
  EXPECT_THROW(q_function(beta, Grid1d{}, Grid1d::centered(0, 1, 0.1)), InvalidParameter);
}

TEST(QFunction, DefaultGridPeaksOnAmplitude) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 20; ++i) {
    const Complex beta(u(rng), u(rng));
    const auto field = q_function(beta);
    EXPECT_NEAR(field.integral(), 1.0, 1e-3);
    std::size_t best = 0;
    for (std::size_t k = 0; k < field.values.size(); ++k) {
      if (field.values[k] > field.values[best]) best = k;
    }
    const double x = field.grid_x.at(best % field.grid_x.count);
    const double y = field.grid_y.at(best / field.grid_x.count);
    EXPECT_LE(std::abs(x - beta.real()), field.grid_x.step);
    EXPECT_LE(std::abs(y - beta.imag()), field.grid_y.step);
    EXPECT_NEAR(field.values[best], 1.0 / kPi, 1e-6);
    for (double v : field.values) EXPECT_GE(v, 0.0);
  }
}

TEST(Poisson, Examples) {
  const auto vac = poisson_distribution(0.0, 5);
  EXPECT_EQ(vac.probs[0], 1.0);
  for (std::size_t n = 1; n < vac.probs.size(); ++n) EXPECT_EQ(vac.probs[n], 0.0);
  const auto two = poisson_distribution(std::sqrt(2.0), 30);
  EXPECT_NEAR(two.probs[2], 2.0 * std::exp(-2.0), 1e-15);
  EXPECT_NEAR(two.mean(), 2.0, 1e-12);
  EXPECT_THROW(poisson_distribution(1.0, -1), InvalidParameter);
}

TEST(Poisson, MassBalanceAndMeanConvergence) {
  for (double u : {0.5, 2.0, 10.0, 25.0}) {
    for (int n_max : {5, 20, 60}) {
      const auto d = poisson_distribution(std::sqrt(u), n_max);
      double sum = 0.0;
      for (double p : d.probs) {
        EXPECT_GE(p, 0.0);
        sum += p;
      }
      EXPECT_NEAR(sum + d.tail_mass, 1.0, 1e-15);
      // Truncated mean: sum_{n<=K} n P_n = u sum_{n<K} P_n = u (1 - tail - P_K).
      const double p_last = d.probs.back();
      EXPECT_NEAR(d.mean(), u * (1.0 - d.tail_mass - p_last), 1e-13 * u);
      if (n_max == 60 && u <= 10) EXPECT_NEAR(d.mean(), u, 1e-12 * u);
    }
  }
}

TEST(GammaCrAnalytic, Examples) {
  EXPECT_DOUBLE_EQ(gamma_cr_analytic(10, Ordering::kNormal), 0.04);
  EXPECT_DOUBLE_EQ(gamma_cr_analytic(10, Ordering::kSymmetric), 4.0 / 130.0);
  for (double n : {1.0, 10.0, 1e3, 1e6}) {
    const double ratio = gamma_cr_analytic(n, Ordering::kSymmetric) / gamma_cr_analytic(n, Ordering::kNormal);
    EXPECT_NEAR(ratio, n / (n + 3), 1e-14);
    EXPECT_LT(ratio, 1.0);
  }
  EXPECT_THROW(gamma_cr_analytic(0.0, Ordering::kNormal), InvalidParameter);
  EXPECT_DOUBLE_EQ(gamma_cr_analytic(10, Ordering::kNormal, 3, 0.5), 0.02);
  EXPECT_DOUBLE_EQ(gamma_cr_analytic(4, Ordering::kSymmetric, 2, 1.0), 1.0);
  EXPECT_THROW(gamma_cr_analytic(4, Ordering::kNormal, 4, 1.0), InvalidParameter);
}

TEST(PopulationImbalance, Examples) {
  EXPECT_NEAR(population_imbalance(BosonLatticeState({std::sqrt(10.0), 0.0})), 10.0, 1e-14);
  EXPECT_EQ(population_imbalance(BosonLatticeState({Complex(1, 1), Complex(1, -1)})), 0.0);
  EXPECT_NEAR(population_imbalance(BosonLatticeState({1.0, Complex(0, std::sqrt(3.0))})), -2.0, 1e-15);
  EXPECT_THROW(population_imbalance(BosonLatticeState::zeros(3)), ShapeError);
}

BosonTrajectory dimer_run(double gamma, Ordering ordering, double n_total) {
  return integrate(dimer(gamma, ordering), single_site_excitation(2, Site(1), n_total),
                   IntegratorConfig::uniform(20 * kPi, kPi / 20));
}

TEST(IsSelfTrapped, Examples) {
  EXPECT_TRUE(is_self_trapped(dimer_run(0.05, Ordering::kNormal, 10), Site(1), 10));
  EXPECT_FALSE(is_self_trapped(dimer_run(0.03, Ordering::kNormal, 10), Site(1), 10));
  EXPECT_FALSE(is_self_trapped(dimer_run(0.0, Ordering::kNormal, 10), Site(1), 10));
  const auto ring = integrate(GdstParams{0.0, 0.0, 3, nearest_neighbor_ring(5, 1.0), Ordering::kNormal},
                              single_site_excitation(5, Site(3), 4.0), IntegratorConfig::uniform(20, 0.1));
  EXPECT_FALSE(is_self_trapped(ring, Site(3), 4.0));
}

TEST(GammaCrNumeric, Examples) {
  EXPECT_NEAR(gamma_cr_numeric(dimer(0, Ordering::kNormal), 10).gamma_cr / 0.04, 1.0, 0.02);
  EXPECT_NEAR(gamma_cr_numeric(dimer(0, Ordering::kSymmetric), 10).gamma_cr / (4.0 / 130), 1.0, 0.02);
  const auto n2 = gamma_cr_numeric(dimer(0, Ordering::kNormal), 2);
  EXPECT_NEAR(n2.gamma_cr, 1.0, 0.02);
  EXPECT_LE(n2.hi - n2.lo, 1e-3 * n2.hi * 1.000001);
}

TEST(GammaCrNumeric, AgreesWithAnalyticForBothOrderings) {
  for (double n : {4.0, 10.0, 20.0}) {
    for (auto ordering : {Ordering::kNormal, Ordering::kSymmetric}) {
      const double numeric = gamma_cr_numeric(dimer(0, ordering), n).gamma_cr;
      EXPECT_NEAR(numeric / gamma_cr_analytic(n, ordering), 1.0, 0.02) << "N=" << n;
    }
  }
}

TEST(GammaCrNumeric, CubicDimerThreshold) {
  const double numeric = gamma_cr_numeric(dimer(0, Ordering::kNormal, 2), 4).gamma_cr;
  EXPECT_NEAR(numeric / gamma_cr_analytic(4, Ordering::kNormal, 2, 1.0), 1.0, 0.02);
}

TEST(GammaCrNumeric, BracketingErrors) {
  GammaSearchOptions opts;
  opts.gamma_lo = 1.0;  // already trapped at the lower end
  opts.gamma_hi = 2.0;
  EXPECT_THROW(gamma_cr_numeric(dimer(0, Ordering::kNormal), 10, opts), BracketingError);
  GammaSearchOptions capped;
  capped.gamma_hi = 1e-6;
  capped.max_expansions = 2;
  EXPECT_THROW(gamma_cr_numeric(dimer(0, Ordering::kNormal), 10, capped), BracketingError);
}

TEST(Fermion, AmplitudeExamples) {
  EXPECT_EQ(fermion_amplitude(SpinLatticeState::zeros(3), Site(2)), Complex{});
  EXPECT_NEAR(std::abs(fermion_amplitude(SpinLatticeState({1.0, 0.3, 0.0}), Site(1))), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(fermion_amplitude(SpinLatticeState({Complex(0, 1), Complex(2, 1), 0.0}), Site(2))), 0.0,
              1e-15);
  EXPECT_THROW(fermion_amplitude(SpinLatticeState::zeros(3), Site(4)), IndexError);
  // Phase follows -arg(z_j).
  const Complex z(0.4, 0.3);
  EXPECT_NEAR(std::arg(fermion_amplitude(SpinLatticeState({z, 0.0, 0.0}), Site(1))), -std::arg(z), 1e-15);
}

TEST(Fermion, NumberExamples) {
  EXPECT_EQ(fermion_number(SpinLatticeState::zeros(3), Site(1)), 0.0);
  EXPECT_DOUBLE_EQ(fermion_number(SpinLatticeState({Complex(0.6, 0.8), 0.0, 0.0}), Site(1)), 0.5);
  EXPECT_NEAR(fermion_number(SpinLatticeState({0.0, 3.0, 0.0}), Site(2)), 0.9, 1e-15);
  EXPECT_THROW(fermion_number(SpinLatticeState::zeros(3), Site(0)), IndexError);
}

TEST(Fermion, BoundsAndSzRelation) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Complex> v(6);
    for (auto& c : v) c = {u(rng), u(rng)};
    const SpinLatticeState s(v);
    for (int j = 1; j <= 6; ++j) {
      EXPECT_LE(std::abs(fermion_amplitude(s, Site(j))), 0.5 + 1e-15);
      const double n = fermion_number(s, Site(j));
      EXPECT_GE(n, 0.0);
      EXPECT_LT(n, 1.0);
      EXPECT_NEAR(n - 0.5, sz_symbol(s[static_cast<std::size_t>(j - 1)]), 1e-15);
    }
  }
}

}  // namespace
}  // namespace cslattice
