#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "cslattice/errors.hpp"

namespace cslattice {

using Complex = std::complex<double>;

// A lattice site in user numbering (1 ... f). Internal code works with
// offset() and never exposes 0-based positions through the public API.
class Site {
 public:
  constexpr explicit Site(int number) : number_(number) {}

  constexpr int number() const noexcept { return number_; }
  constexpr std::size_t offset() const noexcept {
    return static_cast<std::size_t>(number_ - 1);
  }

  // Throws IndexError unless 1 <= number() <= f.
  void check(std::size_t f) const;

  friend constexpr bool operator==(Site, Site) = default;

 private:
  int number_;
};

enum class Ordering { kNormal, kSymmetric };

std::string_view to_string(Ordering ordering) noexcept;
// Accepts "no"/"normal" and "so"/"symmetric" (case-sensitive).
Ordering parse_ordering(std::string_view text);

// Sequence of finite complex labels, one per site. The tag keeps boson
// amplitudes and spin stereographic coordinates from being mixed up.
template <class Tag>
class LatticeVector {
 public:
  explicit LatticeVector(std::vector<Complex> values) : values_(std::move(values)) {
    if (values_.empty()) throw InvalidParameter("lattice state needs at least one site");
    for (const auto& v : values_) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw DomainError("lattice state component is not finite");
      }
    }
  }

  static LatticeVector zeros(std::size_t f) { return LatticeVector(std::vector<Complex>(f)); }

  std::size_t size() const noexcept { return values_.size(); }
  const Complex& operator[](std::size_t offset) const { return values_[offset]; }
  const Complex& at(Site site) const {
    site.check(values_.size());
    return values_[site.offset()];
  }
  std::span<const Complex> values() const noexcept { return values_; }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;

 private:
  std::vector<Complex> values_;
};

struct BosonTag {};
struct SpinTag {};

// Per-site boson coherent-state amplitudes beta_j.
using BosonLatticeState = LatticeVector<BosonTag>;
// Per-site su(2) coherent-state coordinates z_j; the north pole (z = inf) is
// not representable.
using SpinLatticeState = LatticeVector<SpinTag>;

// Dense symmetric hopping matrix with zero diagonal.
class CouplingMatrix {
 public:
  struct Bond {
    std::size_t from;
    std::size_t to;
    double strength;
  };

  CouplingMatrix() = default;

  // `entries` is row-major f x f. Throws InvalidParameter when the matrix is
  // not symmetric, has a non-zero diagonal or holds non-finite values.
  CouplingMatrix(std::size_t f, std::vector<double> entries);

  std::size_t size() const noexcept { return f_; }
  double operator()(std::size_t j, std::size_t k) const { return entries_[j * f_ + k]; }
  // Non-zero off-diagonal entries as ordered pairs (both (j,k) and (k,j)).
  std::span<const Bond> bonds() const noexcept { return bonds_; }
  double max_abs() const noexcept;

 private:
  std::size_t f_ = 0;
  std::vector<double> entries_;
  std::vector<Bond> bonds_;
};

// Lower-order weights mu_n^(m), n = 1 ... m-1, produced by symmetric ordering
// of |A|^(2m).
struct SoCoefficients {
  int order = 1;
  std::vector<double> mu;
};

struct GdstParams {
  double omega0 = 0.0;
  double gamma = 0.0;
  int m = 2;
  CouplingMatrix coupling;
  Ordering ordering = Ordering::kNormal;

  std::size_t sites() const noexcept { return coupling.size(); }
  void validate() const;
};

struct MdnlsParams {
  double v = 1.0;
  double x = 0.0;
  int f = 3;
  Ordering ordering = Ordering::kNormal;

  void validate() const;
};

// Which right-hand side drives the spin chain. kSymbolFlow is the Hamiltonian
// flow of the coherent-state energy symbol. kNonconservative is the variant with
// coefficients (1 - 2|z_{j-1}|^2|z_{j+1}|^2) and (2g - 3g|z_j|^2); it conserves
// neither the energy nor total S^z and is kept only for comparison.
enum class XxzEquation { kSymbolFlow, kNonconservative };

std::string_view to_string(XxzEquation equation) noexcept;
XxzEquation parse_xxz_equation(std::string_view text);

struct XxzParams {
  double v = 1.0;
  double g = 1.0;
  int f = 3;
  bool include_linear_term = false;
  // Fermion on-site energy; enters only through the (onsite + V) sum S^z term.
  double onsite_energy = 0.0;
  XxzEquation equation = XxzEquation::kSymbolFlow;

  void validate() const;
};

SoCoefficients so_coefficients(int m);

CouplingMatrix nearest_neighbor_ring(int f, double lambda);

BosonLatticeState single_site_excitation(int f, Site excited, double n_total);

}  // namespace cslattice
