#pragma once

// Permutation-symmetric (Dicke) basis for N particles with d levels.
//
// A basis state |N, l> is labelled by the occupations l = (l_1, ..., l_{d-1})
// of the levels 1..d-1; level 0 holds the remaining N - sum(l) particles.
// Labels are ordered lexicographically in (l_1, ..., l_{d-1}).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace boat {

using Complex = std::complex<double>;
using DickeLabel = std::vector<int>;
using PhaseVector = std::vector<double>;

/// Largest full tensor-product dimension d^N that may be materialised.
inline constexpr std::size_t kDefaultExpandCap = 59049; // 3^10

/// Particle number and level count of a register of identical qudits.
class SystemDims {
public:
  SystemDims(int n_particles, int n_levels);

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }

  /// binomial(N + d - 1, d - 1)
  std::size_t basis_size() const;

  /// d^N, or SIZE_MAX if it does not fit.
  std::size_t full_size() const noexcept;

  friend bool operator==(const SystemDims&, const SystemDims&) = default;

private:
  int n_;
  int d_;
};

/// binomial(n, k) as a double; exact for the sizes used here.
double binomial(int n, int k);

/// Ordered Dicke basis with reverse lookup.
class DickeBasis {
public:
  explicit DickeBasis(SystemDims dims);

  const SystemDims& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return labels_.size(); }
  const DickeLabel& label(std::size_t index) const { return labels_.at(index); }
  const std::vector<DickeLabel>& labels() const noexcept { return labels_; }

  /// O(log size) lookup; throws DomainError for labels outside the basis.
  std::size_t index_of(std::span<const int> label) const;

  /// Index of the label with all N particles in `level` (0 <= level < d).
  std::size_t extreme_index(int level) const;

private:
  SystemDims dims_;
  std::vector<DickeLabel> labels_;
};

std::vector<DickeLabel> enumerate_basis(const SystemDims& dims);

/// Throws DomainError unless l has d-1 nonnegative entries summing to <= N.
void validate_label(const SystemDims& dims, std::span<const int> l);

/// Full occupation vector (n_0, n_1, ..., n_{d-1}) of a label.
std::vector<int> occupations(const SystemDims& dims, std::span<const int> l);

/// N! / prod(n_alpha!) computed with 64-bit integers; requires N <= 20.
std::uint64_t multinomial_exact(std::span<const int> occupations);

/// log(N! / prod(n_alpha!)) through log-gamma sums.
double log_multinomial(std::span<const int> occupations);

/// d^{-N/2} sqrt(N! / ((N - sum l)! prod l!)) -- the Dicke-basis amplitude of
/// the equal-weight product state.
double multinomial_amplitude(const SystemDims& dims, std::span<const int> l);

/// Pure state expanded in the Dicke basis.
class SymmetricState {
public:
  SymmetricState(SystemDims dims, Eigen::VectorXcd amplitudes);

  /// All particles in level 0.
  static SymmetricState ground(SystemDims dims);
  /// Single Dicke basis state.
  static SymmetricState basis_state(SystemDims dims, std::span<const int> l);

  const SystemDims& dims() const noexcept { return dims_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  double norm() const { return amplitudes_.norm(); }

private:
  SystemDims dims_;
  Eigen::VectorXcd amplitudes_;
};

/// [ (|0> + sum_alpha e^{i phi_alpha} |alpha>) / sqrt(d) ]^{(x) N}
SymmetricState coherent_state(const SystemDims& dims, const PhaseVector& phases);

/// Single-particle vector (1, e^{i phi_1}, ..., e^{i phi_{d-1}}) / sqrt(d).
Eigen::VectorXcd single_particle_state(int d, const PhaseVector& phases);

/// <a|b>
Complex overlap(const SymmetricState& a, const SymmetricState& b);

/// Amplitudes over the d^N product basis. Particle 0 is the most significant
/// digit, so for N=2, d=2 the order is |00>, |01>, |10>, |11>.
Eigen::VectorXcd expand_to_full(const SymmetricState& s,
                                std::size_t cap = kDefaultExpandCap);

/// Orthogonal projection of a full-space vector onto the symmetric subspace,
/// expressed in the Dicke basis. Adjoint of expand_to_full.
Eigen::VectorXcd project_to_symmetric(const Eigen::VectorXcd& full,
                                      const SystemDims& dims,
                                      std::size_t cap = kDefaultExpandCap);

/// Throws DomainError unless u is square of size d and unitary within tol.
void require_unitary(const Eigen::MatrixXcd& u, int d, double tol = 1e-10);

/// u^{(x)N} applied to s, computed inside the symmetric subspace.
SymmetricState apply_global_unitary(const SymmetricState& s,
                                    const Eigen::MatrixXcd& u);

/// Matrix of u^{(x)N} restricted to the symmetric subspace.
Eigen::MatrixXcd symmetric_power(const SystemDims& dims,
                                 const Eigen::MatrixXcd& u);

/// d x d unitary F_{jk} = exp(2 pi i jk/d)/sqrt(d).
Eigen::MatrixXcd dft_matrix(int d);

} // namespace boat
