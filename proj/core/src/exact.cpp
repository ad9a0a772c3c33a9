#include "cslattice/exact.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace cslattice {

namespace {

// n (n-1) ... (n-k+1)
double falling_factorial(int n, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= static_cast<double>(n - i);
  return out;
}

std::uint64_t checked_power(std::uint64_t radix, std::size_t f) {
  constexpr auto kLimit = std::numeric_limits<std::uint64_t>::max() / 2;
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < f; ++i) {
    if (out > kLimit / radix) throw InvalidParameter("Fock basis: (n_max+1)^f overflows the index space");
    out *= radix;
  }
  return out;
}

// log P_n for a Poisson distribution of mean u > 0.
double log_poisson(double u, int n) {
  return -u + n * std::log(u) - std::lgamma(n + 1.0);
}

// Sum of P_n over n > n_max, summed directly so that tiny tails keep their
// relative accuracy.
double poisson_tail(double u, int n_max) {
  if (u == 0.0) return 0.0;
  double sum = 0.0;
  for (int n = n_max + 1;; ++n) {
    const double term = std::exp(log_poisson(u, n));
    sum += term;
    if (n > u && (term <= 1e-18 * sum || term < 1e-300)) break;
    if (n > n_max + 100000) break;
  }
  return std::min(sum, 1.0);
}

// Coherent-state amplitudes <n|beta> for n = 0 ... n_max.
std::vector<Complex> coherent_amplitudes(Complex beta, int n_max) {
  std::vector<Complex> out(static_cast<std::size_t>(n_max) + 1);
  const double u = std::norm(beta);
  if (u == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double log_mod = std::log(std::abs(beta));
  const double phase = std::arg(beta);
  for (int n = 0; n <= n_max; ++n) {
    const double log_amp = -0.5 * u + n * log_mod - 0.5 * std::lgamma(n + 1.0);
    out[static_cast<std::size_t>(n)] = std::polar(std::exp(log_amp), n * phase);
  }
  return out;
}

void require_state(const QuantumState& psi, const char* where) {
  if (!psi.basis) throw InvalidParameter(std::string(where) + ": state has no basis");
  if (static_cast<std::size_t>(psi.amplitudes.size()) != psi.basis->dimension()) {
    throw ShapeError(std::string(where) + ": amplitude count does not match the basis");
  }
}

// Amplitude of the state reached by removing `count` quanta from mode j of
// basis state i, or zero when that state lies outside the basis.
Complex lowered_amplitude(const QuantumState& psi, std::size_t i, std::size_t j, int count,
                          std::vector<int>& scratch) {
  const auto occ = psi.basis->state(i);
  scratch.assign(occ.begin(), occ.end());
  scratch[j] -= count;
  const auto target = psi.basis->index_of(scratch);
  return target ? psi.amplitudes[static_cast<Eigen::Index>(*target)] : Complex{};
}

}  // namespace

// ---- FockBasis ----

std::optional<std::size_t> FockBasis::index_of(std::span<const int> occupations) const {
  if (occupations.size() != f_) return std::nullopt;
  std::uint64_t code = 0;
  const auto radix = static_cast<std::uint64_t>(n_max_) + 1;
  for (const int n : occupations) {
    if (n < 0 || n > n_max_) return std::nullopt;
    code = code * radix + static_cast<std::uint64_t>(n);
  }
  const auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
  if (it == codes_.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - codes_.begin());
}

FockBasisPtr enumerate_basis(std::size_t f, int n_max, std::optional<int> sector) {
  if (f < 1) throw InvalidParameter("enumerate_basis: need at least one mode");
  if (n_max < 0) throw InvalidParameter("enumerate_basis: n_max must be >= 0, got " + std::to_string(n_max));
  const auto radix = static_cast<std::uint64_t>(n_max) + 1;
  const std::uint64_t full = checked_power(radix, f);
  if (sector) {
    const long long cap = static_cast<long long>(f) * n_max;
    if (*sector < 0 || *sector > cap) {
      throw EmptyBasisError("enumerate_basis: sector " + std::to_string(*sector) +
                            " is outside [0, " + std::to_string(cap) + "]");
    }
  } else if (full > kMaxBasisDimension) {
    throw InvalidParameter("enumerate_basis: dimension " + std::to_string(full) + " exceeds the limit");
  }

  auto basis = std::make_shared<FockBasis>();
  basis->f_ = f;
  basis->n_max_ = n_max;
  basis->sector_ = sector;

  std::vector<int> current(f, 0);
  // Depth-first over modes, ascending occupation at each level, which yields
  // lexicographic order with mode 1 most significant.
  auto visit = [&](auto&& self, std::size_t j, int used, std::uint64_t code) -> void {
    if (j == f) {
      if (sector && used != *sector) return;
      if (basis->codes_.size() >= kMaxBasisDimension) {
        throw InvalidParameter("enumerate_basis: dimension exceeds the limit");
      }
      basis->codes_.push_back(code);
      basis->occupations_.insert(basis->occupations_.end(), current.begin(), current.end());
      basis->totals_.push_back(used);
      return;
    }
    const int remaining_modes = static_cast<int>(f - j - 1);
    for (int n = 0; n <= n_max; ++n) {
      if (sector) {
        if (used + n > *sector) break;
        if (*sector - used - n > remaining_modes * n_max) continue;
      }
      current[j] = n;
      self(self, j + 1, used + n, code * radix + static_cast<std::uint64_t>(n));
    }
    current[j] = 0;
  };
  visit(visit, 0, 0, 0);

  std::vector<std::size_t> order(basis->codes_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return basis->totals_[a] < basis->totals_[b]; });
  for (const std::size_t i : order) {
    const int total = basis->totals_[i];
    if (basis->sectors_.empty() || basis->sectors_.back().total != total) {
      basis->sectors_.push_back({total, {}});
    }
    basis->sectors_.back().indices.push_back(i);
  }
  return basis;
}

// ---- QuantumState ----

void QuantumState::normalize() {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw DomainError("cannot normalize a zero state");
  amplitudes /= n;
  norm_defect = std::abs(1.0 - amplitudes.norm());
}

QuantumState number_state(const FockBasisPtr& basis, std::span<const int> occupations) {
  const auto index = basis->index_of(occupations);
  if (!index) throw IndexError("number_state: occupation tuple is not in the basis");
  QuantumState psi{basis, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dimension())), 0.0};
  psi.amplitudes[static_cast<Eigen::Index>(*index)] = 1.0;
  return psi;
}

// ---- HamiltonianMatrix ----

HamiltonianMatrix::HamiltonianMatrix(FockBasisPtr basis, Eigen::SparseMatrix<Complex> matrix,
                                     std::string label)
    : basis_(std::move(basis)), matrix_(std::move(matrix)), label_(std::move(label)) {
  if (!basis_) throw InvalidParameter("HamiltonianMatrix: missing basis");
  const auto dim = static_cast<Eigen::Index>(basis_->dimension());
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw ShapeError("HamiltonianMatrix: matrix is " + std::to_string(matrix_.rows()) + "x" +
                     std::to_string(matrix_.cols()) + " but the basis has dimension " +
                     std::to_string(dim));
  }
  matrix_.makeCompressed();
  block_diagonal_ = true;
  for (Eigen::Index col = 0; col < matrix_.outerSize(); ++col) {
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(matrix_, col); it; ++it) {
      if (it.value() != std::conj(matrix_.coeff(it.col(), it.row()))) {
        throw InvalidParameter("HamiltonianMatrix: matrix is not Hermitian");
      }
      if (it.value() != Complex{} && basis_->total(static_cast<std::size_t>(it.row())) !=
                                         basis_->total(static_cast<std::size_t>(it.col()))) {
        block_diagonal_ = false;
      }
    }
  }
}

double HamiltonianMatrix::expectation(const QuantumState& psi) const {
  require_state(psi, "expectation");
  const Eigen::VectorXcd h_psi = matrix_ * psi.amplitudes;
  return psi.amplitudes.dot(h_psi).real() / psi.amplitudes.squaredNorm();
}

HamiltonianMatrix build_gdst_hamiltonian(const GdstParams& params, const FockBasisPtr& basis) {
  params.validate();
  if (!basis) throw InvalidParameter("build_gdst_hamiltonian: missing basis");
  if (params.sites() != basis->modes()) {
    throw ShapeError("build_gdst_hamiltonian: coupling is " + std::to_string(params.sites()) +
                     "x" + std::to_string(params.sites()) + " but the basis has " +
                     std::to_string(basis->modes()) + " modes");
  }
  const std::size_t f = basis->modes();
  const std::size_t dim = basis->dimension();
  const bool symmetric = params.ordering == Ordering::kSymmetric;
  const SoCoefficients so = so_coefficients(params.m);

  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(dim * (1 + params.coupling.bonds().size()));
  std::vector<int> target;
  for (std::size_t i = 0; i < dim; ++i) {
    const auto occ = basis->state(i);
    double diagonal = 0.0;
    for (std::size_t j = 0; j < f; ++j) {
      const int n = occ[j];
      diagonal += params.omega0 * n - params.gamma / params.m * falling_factorial(n, params.m);
      if (symmetric) {
        for (std::size_t k = 0; k < so.mu.size(); ++k) {
          diagonal -= params.gamma * so.mu[k] * falling_factorial(n, static_cast<int>(k) + 1);
        }
      }
    }
    const auto row = static_cast<Eigen::Index>(i);
    triplets.emplace_back(row, row, diagonal);

    // -lambda_jk b_j^+ b_k
    for (const auto& bond : params.coupling.bonds()) {
      const int n_from = occ[bond.from];
      const int n_to = occ[bond.to];
      if (n_to == 0 || n_from == basis->n_max()) continue;
      target.assign(occ.begin(), occ.end());
      ++target[bond.from];
      --target[bond.to];
      const auto t = basis->index_of(target);
      if (!t) continue;
      triplets.emplace_back(static_cast<Eigen::Index>(*t), row,
                            -bond.strength * std::sqrt(static_cast<double>(n_from + 1) * n_to));
    }
  }
  Eigen::SparseMatrix<Complex> matrix(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  matrix.setFromTriplets(triplets.begin(), triplets.end());
  std::string label = "gdst m=" + std::to_string(params.m) + " " + std::string(to_string(params.ordering));
  return HamiltonianMatrix(basis, std::move(matrix), std::move(label));
}

// ---- propagation ----

SpectralPropagator::SpectralPropagator(const HamiltonianMatrix& h) : basis_(h.basis_ptr()) {
  const std::size_t dim = basis_->dimension();
  std::vector<std::size_t> block_of(dim, 0);
  std::vector<std::size_t> local_of(dim, 0);
  if (h.conserves_total_number()) {
    for (const auto& sector : basis_->sectors()) blocks_.push_back({sector.indices, {}, {}});
  } else {
    std::vector<std::size_t> all(dim);
    std::iota(all.begin(), all.end(), std::size_t{0});
    blocks_.push_back({std::move(all), {}, {}});
  }
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (std::size_t k = 0; k < blocks_[b].indices.size(); ++k) {
      block_of[blocks_[b].indices[k]] = b;
      local_of[blocks_[b].indices[k]] = k;
    }
  }

  std::vector<Eigen::MatrixXcd> dense(blocks_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto n = static_cast<Eigen::Index>(blocks_[b].indices.size());
    dense[b] = Eigen::MatrixXcd::Zero(n, n);
  }
  const auto& m = h.matrix();
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(m, col); it; ++it) {
      const auto r = static_cast<std::size_t>(it.row());
      const auto c = static_cast<std::size_t>(it.col());
      if (block_of[r] != block_of[c]) continue;  // only zeros can cross blocks here
      dense[block_of[r]](static_cast<Eigen::Index>(local_of[r]), static_cast<Eigen::Index>(local_of[c])) =
          it.value();
    }
  }
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense[b]);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("eigendecomposition failed for block " + std::to_string(b));
    }
    blocks_[b].energies = solver.eigenvalues();
    blocks_[b].vectors = solver.eigenvectors();
  }
}

QuantumState SpectralPropagator::evolve(const QuantumState& psi0, double t) const {
  require_state(psi0, "evolve");
  if (psi0.basis != basis_ && psi0.basis->dimension() != basis_->dimension()) {
    throw ShapeError("evolve: state and Hamiltonian live on different bases");
  }
  if (!std::isfinite(t)) throw DomainError("evolve: time is not finite");
  QuantumState out{basis_, Eigen::VectorXcd::Zero(psi0.amplitudes.size()), 0.0};
  for (const auto& block : blocks_) {
    const auto n = static_cast<Eigen::Index>(block.indices.size());
    Eigen::VectorXcd local(n);
    for (Eigen::Index k = 0; k < n; ++k) local[k] = psi0.amplitudes[static_cast<Eigen::Index>(block.indices[k])];
    Eigen::VectorXcd modal = block.vectors.adjoint() * local;
    for (Eigen::Index k = 0; k < n; ++k) modal[k] *= std::polar(1.0, -block.energies[k] * t);
    local = block.vectors * modal;
    for (Eigen::Index k = 0; k < n; ++k) out.amplitudes[static_cast<Eigen::Index>(block.indices[k])] = local[k];
  }
  out.norm_defect = std::abs(1.0 - out.amplitudes.norm());
  return out;
}

QuantumState evolve(const HamiltonianMatrix& h, const QuantumState& psi0, double t) {
  return SpectralPropagator(h).evolve(psi0, t);
}

// ---- coherent states ----

double coherent_tail_mass(const BosonLatticeState& beta, int n_max) {
  if (n_max < 0) throw InvalidParameter("coherent_tail_mass: n_max must be >= 0");
  double log_inside = 0.0;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    log_inside += std::log1p(-poisson_tail(std::norm(beta[j]), n_max));
  }
  return -std::expm1(log_inside);
}

int cutoff_for_tail(const BosonLatticeState& beta, double bound) {
  if (!(bound > 0.0)) throw InvalidParameter("cutoff_for_tail: bound must be positive");
  constexpr int kLimit = 100000;
  double u_max = 0.0;
  for (std::size_t j = 0; j < beta.size(); ++j) u_max = std::max(u_max, std::norm(beta[j]));
  // The tail is monotone in n_max; bisect on [0, kLimit].
  int lo = -1;
  int hi = static_cast<int>(std::ceil(u_max)) + 16;
  while (coherent_tail_mass(beta, hi) >= bound) {
    lo = hi;
    hi *= 2;
    if (hi > kLimit) throw InvalidParameter("cutoff_for_tail: bound is unreachable");
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (coherent_tail_mass(beta, mid) < bound) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

CoherentPreparation coherent_product_state(const BosonLatticeState& beta, const FockBasisPtr& basis,
                                           double max_tail) {
  if (!basis) throw InvalidParameter("coherent_product_state: missing basis");
  if (basis->sector()) {
    throw InvalidParameter("coherent_product_state: product states need an unrestricted basis");
  }
  if (beta.size() != basis->modes()) {
    throw ShapeError("coherent_product_state: " + std::to_string(beta.size()) +
                     " amplitudes for a basis with " + std::to_string(basis->modes()) + " modes");
  }
  const double tail = coherent_tail_mass(beta, basis->n_max());
  if (tail > max_tail) {
    throw CutoffTooSmall("coherent_product_state: tail mass " + std::to_string(tail) +
                             " exceeds the bound at n_max = " + std::to_string(basis->n_max()),
                         tail);
  }
  std::vector<std::vector<Complex>> per_mode;
  per_mode.reserve(beta.size());
  for (std::size_t j = 0; j < beta.size(); ++j) per_mode.push_back(coherent_amplitudes(beta[j], basis->n_max()));

  QuantumState psi{basis, Eigen::VectorXcd(static_cast<Eigen::Index>(basis->dimension())), 0.0};
  for (std::size_t i = 0; i < basis->dimension(); ++i) {
    Complex amp = 1.0;
    for (std::size_t j = 0; j < basis->modes(); ++j) amp *= per_mode[j][static_cast<std::size_t>(basis->occupation(i, j))];
    psi.amplitudes[static_cast<Eigen::Index>(i)] = amp;
  }
  psi.normalize();
  return {std::move(psi), tail};
}

double correlation_index(const QuantumState& psi, const BosonLatticeState& beta_ref) {
  require_state(psi, "correlation_index");
  const auto ref = coherent_product_state(beta_ref, psi.basis, 1.0);
  const double overlap = std::abs(ref.state.amplitudes.dot(psi.amplitudes));
  return std::clamp(2.0 - 2.0 * overlap, 0.0, 2.0);
}

// ---- observables ----

double mode_occupation(const QuantumState& psi, Site site) {
  require_state(psi, "mode_occupation");
  site.check(psi.basis->modes());
  const std::size_t j = site.offset();
  double sum = 0.0;
  for (std::size_t i = 0; i < psi.basis->dimension(); ++i) {
    sum += std::norm(psi.amplitudes[static_cast<Eigen::Index>(i)]) * psi.basis->occupation(i, j);
  }
  return sum / psi.amplitudes.squaredNorm();
}

QuadratureUncertainty quadrature_uncertainty(const QuantumState& psi, Site site) {
  require_state(psi, "quadrature_uncertainty");
  site.check(psi.basis->modes());
  const std::size_t j = site.offset();
  Complex b{};
  Complex b2{};
  double n_mean = 0.0;
  std::vector<int> scratch;
  for (std::size_t i = 0; i < psi.basis->dimension(); ++i) {
    const Complex a = psi.amplitudes[static_cast<Eigen::Index>(i)];
    if (a == Complex{}) continue;
    const int n = psi.basis->occupation(i, j);
    n_mean += std::norm(a) * n;
    if (n >= 1) b += std::conj(lowered_amplitude(psi, i, j, 1, scratch)) * a * std::sqrt(double(n));
    if (n >= 2) {
      b2 += std::conj(lowered_amplitude(psi, i, j, 2, scratch)) * a * std::sqrt(double(n) * (n - 1));
    }
  }
  const double norm2 = psi.amplitudes.squaredNorm();
  b /= norm2;
  b2 /= norm2;
  n_mean /= norm2;
  const double var_x = b2.real() + n_mean + 0.5 - 2.0 * b.real() * b.real();
  const double var_p = -b2.real() + n_mean + 0.5 - 2.0 * b.imag() * b.imag();
  return {std::sqrt(std::max(var_x, 0.0)), std::sqrt(std::max(var_p, 0.0))};
}

}  // namespace cslattice
