#include "cslattice/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cslattice {

void Site::check(std::size_t f) const {
  if (number_ < 1 || static_cast<std::size_t>(number_) > f) {
    throw IndexError("site " + std::to_string(number_) + " outside 1.." + std::to_string(f));
  }
}

std::string_view to_string(Ordering ordering) noexcept {
  return ordering == Ordering::kNormal ? "no" : "so";
}

Ordering parse_ordering(std::string_view text) {
  if (text == "no" || text == "normal") return Ordering::kNormal;
  if (text == "so" || text == "symmetric") return Ordering::kSymmetric;
  throw InvalidParameter("unknown ordering '" + std::string(text) + "' (expected no or so)");
}

std::string_view to_string(XxzEquation equation) noexcept {
  return equation == XxzEquation::kSymbolFlow ? "symbol-flow" : "nonconservative";
}

XxzEquation parse_xxz_equation(std::string_view text) {
  if (text == "symbol-flow") return XxzEquation::kSymbolFlow;
  if (text == "nonconservative") return XxzEquation::kNonconservative;
  throw InvalidParameter("unknown xxz equation '" + std::string(text) +
                         "' (expected symbol-flow or nonconservative)");
}

CouplingMatrix::CouplingMatrix(std::size_t f, std::vector<double> entries)
    : f_(f), entries_(std::move(entries)) {
  if (f_ == 0) throw InvalidParameter("coupling matrix needs at least one site");
  if (entries_.size() != f_ * f_) {
    throw ShapeError("coupling matrix has " + std::to_string(entries_.size()) +
                     " entries, expected " + std::to_string(f_ * f_));
  }
  for (std::size_t j = 0; j < f_; ++j) {
    if ((*this)(j, j) != 0.0) {
      throw InvalidParameter("coupling matrix diagonal must be zero (site " +
                             std::to_string(j + 1) + ")");
    }
    for (std::size_t k = 0; k < f_; ++k) {
      const double a = (*this)(j, k);
      if (!std::isfinite(a)) throw InvalidParameter("coupling matrix entry is not finite");
      // Asymmetric hopping would make the hopping operator non-Hermitian; it is
      // rejected instead of being symmetrized.
      if (a != (*this)(k, j)) {
        throw InvalidParameter("coupling matrix is not symmetric at (" + std::to_string(j + 1) +
                               "," + std::to_string(k + 1) + ")");
      }
      if (a != 0.0) bonds_.push_back({j, k, a});
    }
  }
}

double CouplingMatrix::max_abs() const noexcept {
  double best = 0.0;
  for (double a : entries_) best = std::max(best, std::abs(a));
  return best;
}

void GdstParams::validate() const {
  if (m < 2) throw InvalidParameter("m must be >= 2, got " + std::to_string(m));
  if (coupling.size() == 0) throw InvalidParameter("GDST coupling matrix is empty");
  if (!std::isfinite(omega0) || !std::isfinite(gamma)) {
    throw InvalidParameter("GDST omega0 and gamma must be finite");
  }
}

void MdnlsParams::validate() const {
  if (f < 3) throw InvalidParameter("MDNLS ring needs f >= 3, got " + std::to_string(f));
  if (!std::isfinite(v) || !std::isfinite(x)) throw InvalidParameter("MDNLS V and X must be finite");
}

void XxzParams::validate() const {
  if (f < 3) throw InvalidParameter("XXZ ring needs f >= 3, got " + std::to_string(f));
  if (!std::isfinite(v) || !std::isfinite(g) || !std::isfinite(onsite_energy)) {
    throw InvalidParameter("XXZ parameters must be finite");
  }
}

SoCoefficients so_coefficients(int m) {
  if (m < 1) throw InvalidParameter("so_coefficients: m must be >= 1, got " + std::to_string(m));
  // mu_n = ((m-1)!/2^m) * C(m, m-n) * 2^n / n!
  double prefactor = std::ldexp(1.0, -m);
  for (int k = 2; k < m; ++k) prefactor *= k;
  SoCoefficients out{m, {}};
  out.mu.reserve(static_cast<std::size_t>(m - 1));
  double binom = 1.0;  // C(m, n)
  double pow2_over_fact = 1.0;  // 2^n / n!
  for (int n = 1; n < m; ++n) {
    binom = binom * (m - n + 1) / n;
    pow2_over_fact = pow2_over_fact * 2.0 / n;
    out.mu.push_back(prefactor * binom * pow2_over_fact);
  }
  return out;
}

CouplingMatrix nearest_neighbor_ring(int f, double lambda) {
  if (f < 2) throw InvalidParameter("nearest_neighbor_ring needs f >= 2, got " + std::to_string(f));
  const auto n = static_cast<std::size_t>(f);
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t next = (j + 1) % n;
    entries[j * n + next] = lambda;
    entries[next * n + j] = lambda;
  }
  return CouplingMatrix(n, std::move(entries));
}

BosonLatticeState single_site_excitation(int f, Site excited, double n_total) {
  if (f < 1) throw InvalidParameter("single_site_excitation needs f >= 1");
  if (!(n_total >= 0.0) || !std::isfinite(n_total)) {
    throw InvalidParameter("single_site_excitation needs a finite n_total >= 0");
  }
  excited.check(static_cast<std::size_t>(f));
  std::vector<Complex> beta(static_cast<std::size_t>(f));
  beta[excited.offset()] = std::sqrt(n_total);
  return BosonLatticeState(std::move(beta));
}

}  // namespace cslattice
