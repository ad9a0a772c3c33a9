#include "cslattice/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cslattice {

Spin::Spin(int twice_j) : twice_(twice_j) {
  if (twice_j < 1) throw InvalidParameter("spin needs 2j >= 1, got 2j = " + std::to_string(twice_j));
}

Spin Spin::from_value(double j) {
  const double twice = 2.0 * j;
  if (!(twice >= 1.0) || twice != std::round(twice) || twice > 1e6) {
    throw InvalidParameter("spin j must be a positive half-integer, got " + std::to_string(j));
  }
  return Spin(static_cast<int>(twice));
}

Complex boson_overlap(Complex a1, Complex a2) {
  return std::exp(-0.5 * std::norm(a1) - 0.5 * std::norm(a2) + std::conj(a1) * a2);
}

Complex su2_overlap(Complex z1, Complex z2, Spin j) {
  const double jv = j.value();
  const Complex w = 1.0 + std::conj(z1) * z2;
  if (w == Complex{}) return {};
  const double log_mod = 2.0 * jv * std::log(std::abs(w)) - jv * std::log1p(std::norm(z1)) -
                         jv * std::log1p(std::norm(z2));
  return std::polar(std::exp(log_mod), 2.0 * jv * std::arg(w));
}

double ray_distance(double overlap_modulus) {
  constexpr double kSlack = 1e-12;
  if (!(overlap_modulus >= -kSlack && overlap_modulus <= 1.0 + kSlack)) {
    throw InvalidParameter("ray_distance: overlap modulus outside [0, 1]: " +
                           std::to_string(overlap_modulus));
  }
  return std::sqrt(2.0 - 2.0 * std::clamp(overlap_modulus, 0.0, 1.0));
}

NormalizationFunction NormalizationFunction::weyl_heisenberg() {
  return {"weyl-heisenberg", [](long double u) { return std::exp(u); },
          [](double) { return 1.0; }};
}

NormalizationFunction NormalizationFunction::su2(Spin j) {
  const int twice = j.twice();
  return {"su2(j=" + std::to_string(j.value()) + ")",
          [twice](long double u) { return std::pow(1.0L + u, static_cast<long double>(twice)); },
          [twice](double u) { return twice / ((1.0 + u) * (1.0 + u)); }};
}

namespace {

double finite_difference_metric(const NormalizationFunction& n, double u) {
  const long double uu = u;
  const long double h = std::max(1e-5L, 1e-5L * uu);
  auto log_n = [&](long double x) { return std::log(n.value(x)); };
  long double first;
  long double second;
  if (uu >= h) {
    const long double lm = log_n(uu - h);
    const long double l0 = log_n(uu);
    const long double lp = log_n(uu + h);
    first = (lp - lm) / (2.0L * h);
    second = (lp - 2.0L * l0 + lm) / (h * h);
  } else {
    const long double l0 = log_n(uu);
    const long double l1 = log_n(uu + h);
    const long double l2 = log_n(uu + 2.0L * h);
    const long double l3 = log_n(uu + 3.0L * h);
    first = (-3.0L * l0 + 4.0L * l1 - l2) / (2.0L * h);
    second = (2.0L * l0 - 5.0L * l1 + 4.0L * l2 - l3) / (h * h);
  }
  return static_cast<double>(first + uu * second);
}

}  // namespace

double metric(const NormalizationFunction& n, Complex z, Differentiation mode) {
  const double u = std::norm(z);
  const double g = (mode == Differentiation::kClosedFormIfAvailable && n.closed_metric)
                       ? n.closed_metric(u)
                       : finite_difference_metric(n, u);
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw DegeneracyError("metric of " + n.name + " is not positive at |z|^2 = " + std::to_string(u));
  }
  return g;
}

double curvature(const NormalizationFunction& n, Complex z) {
  const double h = 1e-3 * std::max(1.0, std::abs(z));
  auto log_g = [&](Complex w) { return std::log(metric(n, w)); };
  const double center = log_g(z);
  const double laplacian = (log_g(z + h) + log_g(z - h) + log_g(z + Complex(0.0, h)) +
                            log_g(z - Complex(0.0, h)) - 4.0 * center) /
                           (h * h);
  const double r = -0.25 * laplacian / metric(n, z);
  if (!std::isfinite(r)) throw DegeneracyError("curvature of " + n.name + " is not finite");
  return r;
}

Su2Symbols su2_symbols(Complex z, Spin j) {
  const double jv = j.value();
  const double u = std::norm(z);
  const double d = 1.0 + u;
  return {2.0 * jv * std::conj(z) / d, 2.0 * jv * z / d, -jv * (1.0 - u) / d,
          (4.0 * jv * jv * u + 2.0 * jv) / (d * d)};
}

}  // namespace cslattice
