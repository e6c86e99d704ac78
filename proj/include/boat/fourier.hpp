#pragma once

// Multidimensional Fourier analysis of the BOAT phase function
// exp(2 pi i g(l) / m) on the periodic lattice l in {0..m-1}^{d-1}.

#include <vector>

#include "boat/dicke.hpp"

namespace boat {

struct FourierSpectrum {
  int m;
  int d;
  /// f_q for q in {0..m-1}^{d-1}, lexicographic (q_1 most significant).
  std::vector<Complex> coeffs;

  std::size_t size() const noexcept { return coeffs.size(); }
  /// Fourier index of a flat position.
  std::vector<int> index(std::size_t flat) const;
};

/// f_q = m^{-(d-1)} sum_l exp(2 pi i g(l)/m) exp(-2 pi i q.l/m)
FourierSpectrum fourier_spectrum(int m, int d);

inline constexpr double kFourierZeroTol = 1e-10;

std::size_t nonzero_count(const FourierSpectrum& spectrum, double tol = kFourierZeroTol);

struct KCheck {
  long long counted;
  long long formula; ///< m^{d-1} / gcd(m, d)
  bool agree;
};

KCheck verify_K(int m, int d);

struct GHZReport {
  int m;
  int d;
  bool is_ghz;
  std::size_t nonzero_count;
  std::vector<std::vector<int>> nonzero_q;
  std::vector<double> magnitudes;
  std::vector<Complex> coefficients;
  /// 2 pi q / m for each nonzero q (phases relative to the common phi).
  std::vector<PhaseVector> component_phases;
  bool equal_magnitudes;
  bool pairwise_orthogonal;
};

/// Evaluates both GHZ criteria at t = 2 pi / m. The result does not depend on
/// the particle number.
GHZReport ghz_check(int m, int d, double tol = kFourierZeroTol);

} // namespace boat
