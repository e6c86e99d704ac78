#pragma once

// Balanced one-axis twisting (BOAT) dynamics in the Dicke basis.
//
// H = -chi' sum_{a<b} S_{ba,z}^2 is diagonal in |N, l> with eigenvalue
// -chi (g(l) - h(l)) up to a constant, where chi = (d/2) chi',
// g(l) = sum_{a<=b} l_a l_b and h(l) = N sum_a l_a. Times are the
// dimensionless product t = chi * tau.

#include <optional>
#include <span>
#include <vector>

#include "boat/dicke.hpp"

namespace boat {

/// Dimensionless evolution time t = chi * tau. Rational multiples of 2 pi are
/// stored exactly so that phases at the special times are reduced with
/// integer arithmetic.
class EvolutionTime {
public:
  static EvolutionTime radians(double t);
  /// t = 2 pi * num / den, den >= 1.
  static EvolutionTime two_pi_times(long long num, long long den);
  /// t = 2 pi / m, m >= 1.
  static EvolutionTime two_pi_over(long long m) { return two_pi_times(1, m); }

  double value() const noexcept { return value_; }
  bool is_rational() const noexcept { return den_ != 0; }
  long long numerator() const noexcept { return num_; }
  long long denominator() const noexcept { return den_; }

  /// If t = 2 pi / m for a positive integer m, returns m.
  std::optional<int> period() const noexcept;

  /// exp(i t k) for integer k.
  Complex phase(long long k) const;

  EvolutionTime negated() const;

private:
  EvolutionTime(double value, long long num, long long den) : value_(value), num_(num), den_(den) {}
  double value_;
  long long num_;
  long long den_; // 0 when the time is not a rational multiple of 2 pi
};

/// chi = (d/2) chi'
double chi_from_chi_prime(int d, double chi_prime);
double chi_prime_from_chi(int d, double chi);

struct InteractionPhase {
  long long g;   ///< sum_{a<=b} l_a l_b
  double lambda; ///< -(g - N sum_a l_a), chi = 1
};

InteractionPhase interaction_phase(const SystemDims& dims, std::span<const int> l);

/// Exact BOAT evolution: amplitude at l gains exp(i t (g(l) - N sum l)).
SymmetricState evolve(const SymmetricState& s, const EvolutionTime& t);

/// Diagonal of the evolution operator in the Dicke basis.
Eigen::VectorXcd evolution_phases(const SystemDims& dims, const EvolutionTime& t);

struct CoherentComponent {
  Complex coefficient;      ///< f_q
  std::vector<int> q;       ///< Fourier index
  PhaseVector phases;       ///< phi_q = phi + 2 pi q / m, phi = phi' - (2 pi / m) N
};

/// Decomposition of evolve(coherent_state(phases), 2 pi / m) into coherent
/// states; only components with |f_q| > tol are returned.
std::vector<CoherentComponent> coherent_decomposition(const SystemDims& dims,
                                                      const PhaseVector& phases, int m,
                                                      double tol = 1e-10);

/// Sum_k c_k |phi_k>
SymmetricState reconstruct(const SystemDims& dims, std::span<const CoherentComponent> comps);

/// Single-particle unitary sending component k's single-particle state to
/// |k>, so that u^{(x)N} maps the decomposed GHZ state onto
/// sum_k f_k |k>^{(x)N}. Requires exactly d mutually orthogonal components.
Eigen::MatrixXcd alignment_unitary(std::span<const CoherentComponent> comps, int d,
                                   double tol = 1e-10);

/// Single-particle unitary with |0> -> (|0> + sum_a e^{i phi_a}|a>)/sqrt(d).
Eigen::MatrixXcd preparation_unitary(int d, const PhaseVector& phases);

} // namespace boat
