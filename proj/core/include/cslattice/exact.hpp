#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cslattice/lattice.hpp"

namespace cslattice {

// Truncated multi-mode Fock basis. Occupation tuples are listed
// lexicographically with mode 1 most significant, optionally restricted to a
// single total-occupation sector.
class FockBasis {
 public:
  std::size_t modes() const noexcept { return f_; }
  int n_max() const noexcept { return n_max_; }
  std::optional<int> sector() const noexcept { return sector_; }
  std::size_t dimension() const noexcept { return codes_.size(); }

  // Occupation of mode `offset` (0-based) in basis state `index`.
  int occupation(std::size_t index, std::size_t offset) const {
    return occupations_[index * f_ + offset];
  }
  std::span<const int> state(std::size_t index) const {
    return {occupations_.data() + index * f_, f_};
  }
  int total(std::size_t index) const { return totals_[index]; }

  // Position of an occupation tuple, or nullopt when it lies outside the basis.
  std::optional<std::size_t> index_of(std::span<const int> occupations) const;

  // Basis indices grouped by total occupation, ascending.
  struct Sector {
    int total;
    std::vector<std::size_t> indices;
  };
  const std::vector<Sector>& sectors() const noexcept { return sectors_; }

 private:
  friend std::shared_ptr<const FockBasis> enumerate_basis(std::size_t, int, std::optional<int>);

  std::size_t f_ = 0;
  int n_max_ = 0;
  std::optional<int> sector_;
  std::vector<std::uint64_t> codes_;  // mixed-radix codes, strictly increasing
  std::vector<int> occupations_;
  std::vector<int> totals_;
  std::vector<Sector> sectors_;
};

using FockBasisPtr = std::shared_ptr<const FockBasis>;

// Largest basis enumerate_basis will build.
inline constexpr std::size_t kMaxBasisDimension = 4'000'000;

// Throws InvalidParameter for f < 1, n_max < 0 or oversize bases and
// EmptyBasisError when the sector is outside [0, f n_max].
FockBasisPtr enumerate_basis(std::size_t f, int n_max, std::optional<int> sector = std::nullopt);

struct QuantumState {
  FockBasisPtr basis;
  Eigen::VectorXcd amplitudes;
  double norm_defect = 0.0;  // |1 - ||psi|||

  double norm() const { return amplitudes.norm(); }
  // Rescales to unit norm and resets norm_defect.
  void normalize();
};

// Basis vector with the given occupations.
QuantumState number_state(const FockBasisPtr& basis, std::span<const int> occupations);

class HamiltonianMatrix {
 public:
  // Throws InvalidParameter unless `matrix` is square, matches the basis and
  // equals its adjoint exactly.
  HamiltonianMatrix(FockBasisPtr basis, Eigen::SparseMatrix<Complex> matrix, std::string label);

  const FockBasis& basis() const noexcept { return *basis_; }
  const FockBasisPtr& basis_ptr() const noexcept { return basis_; }
  const Eigen::SparseMatrix<Complex>& matrix() const noexcept { return matrix_; }
  const std::string& label() const noexcept { return label_; }

  Complex element(std::size_t row, std::size_t col) const { return matrix_.coeff(row, col); }
  // True when no element connects different total-occupation sectors.
  bool conserves_total_number() const noexcept { return block_diagonal_; }

  double expectation(const QuantumState& psi) const;

 private:
  FockBasisPtr basis_;
  Eigen::SparseMatrix<Complex> matrix_;
  std::string label_;
  bool block_diagonal_ = false;
};

// Normal-ordered GDST Hamiltonian
//   sum_j [omega0 n_j - (gamma/m) b^m+ b^m] - sum_{j != k} lambda_jk b_j^+ b_k
// plus - gamma sum_j sum_n mu_n b^n+ b^n for symmetric ordering.
// Throws ShapeError when the coupling size differs from the basis mode count.
HamiltonianMatrix build_gdst_hamiltonian(const GdstParams& params, const FockBasisPtr& basis);

// Dense eigendecomposition of H, one block per total-occupation sector when H
// conserves the total number and one full block otherwise. Immutable once
// built, so a single propagator can serve concurrent evolve() calls.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const HamiltonianMatrix& h);

  // psi(t) = exp(-i H t) psi0. The result's norm_defect records the actual
  // norm; nothing is renormalized.
  QuantumState evolve(const QuantumState& psi0, double t) const;

 private:
  struct Block {
    std::vector<std::size_t> indices;
    Eigen::VectorXd energies;
    Eigen::MatrixXcd vectors;
  };

  FockBasisPtr basis_;
  std::vector<Block> blocks_;
};

// One-shot convenience around SpectralPropagator.
QuantumState evolve(const HamiltonianMatrix& h, const QuantumState& psi0, double t);

struct CoherentPreparation {
  QuantumState state;
  double tail_mass = 0.0;  // probability outside the basis before renormalizing
};

// Product of per-mode coherent states |beta_j> projected onto an unrestricted
// basis and renormalized. Throws InvalidParameter for sector-restricted bases
// and CutoffTooSmall when the tail exceeds `max_tail`.
CoherentPreparation coherent_product_state(const BosonLatticeState& beta, const FockBasisPtr& basis,
                                           double max_tail = 1e-6);

// Probability of the product coherent state lying outside an n_max cutoff.
double coherent_tail_mass(const BosonLatticeState& beta, int n_max);

// Smallest n_max whose tail is below `bound`.
int cutoff_for_tail(const BosonLatticeState& beta, double bound);

// corr_index = 2 - 2 |<psi|psi_ref>| with psi_ref the renormalized product
// coherent state of beta_ref on psi's basis. Clamped to [0, 2].
double correlation_index(const QuantumState& psi, const BosonLatticeState& beta_ref);

// <b_j^+ b_j>
double mode_occupation(const QuantumState& psi, Site site);

struct QuadratureUncertainty {
  double dx = 0.0;
  double dp = 0.0;

  double product() const noexcept { return dx * dp; }
};

// Standard deviations of x = (b^+ + b)/sqrt2 and p = i(b^+ - b)/sqrt2 on mode j.
QuadratureUncertainty quadrature_uncertainty(const QuantumState& psi, Site site);

}  // namespace cslattice
