#pragma once

#include <functional>
#include <string>

#include "cslattice/lattice.hpp"

namespace cslattice {

// Spin quantum number j, stored as the integer 2j >= 1.
class Spin {
 public:
  explicit Spin(int twice_j);
  // Throws InvalidParameter unless j is a positive half-integer.
  static Spin from_value(double j);

  int twice() const noexcept { return twice_; }
  double value() const noexcept { return 0.5 * twice_; }

 private:
  int twice_;
};

// <a1|a2> = exp(-|a1|^2/2 - |a2|^2/2 + conj(a1) a2)
Complex boson_overlap(Complex a1, Complex a2);

// <z1|z2> = (1 + conj(z1) z2)^(2j) / ((1 + |z1|^2)^j (1 + |z2|^2)^j), evaluated
// in log space so that large |z| does not overflow.
Complex su2_overlap(Complex z1, Complex z2, Spin j);

// D = sqrt(2 - 2 |<1|2>|). Inputs within 1e-12 outside [0, 1] are clamped;
// anything further out throws InvalidParameter.
double ray_distance(double overlap_modulus);

// Squared norm n(u) = (zeta|| ||zeta) of the unnormalized coherent state as a
// function of u = |zeta|^2. Evaluated in long double because the metric takes
// two numerical derivatives of ln n.
struct NormalizationFunction {
  std::string name;
  std::function<long double(long double u)> value;
  // Registered closed form of the metric g(u); empty when unknown.
  std::function<double(double u)> closed_metric;

  // n(u) = e^u, g = 1
  static NormalizationFunction weyl_heisenberg();
  // n(u) = (1 + u)^(2j), g = 2j / (1 + u)^2
  static NormalizationFunction su2(Spin j);
};

enum class Differentiation { kClosedFormIfAvailable, kFiniteDifference };

// g = d/du [ (u / n) dn/du ] at u = |z|^2, i.e. g = L' + u L'' with L = ln n.
// Finite differences use a central stencil with h = max(1e-5, 1e-5 u)
// (forward stencil when u < h). Throws DegeneracyError if g <= 0.
double metric(const NormalizationFunction& n, Complex z,
              Differentiation mode = Differentiation::kClosedFormIfAvailable);

// R = -g^{-1} d_z d_zbar ln g, with d_z d_zbar = Laplacian / 4 evaluated by a
// five-point stencil of step 1e-3 max(1, |z|).
double curvature(const NormalizationFunction& n, Complex z);

struct Su2Symbols {
  Complex jp;    // <J+>
  Complex jm;    // <J->
  double j0;     // <J0>
  double jmjp;   // <J- J+>
};

Su2Symbols su2_symbols(Complex z, Spin j);

}  // namespace cslattice
