#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "boat/dicke.hpp"
#include "boat/errors.hpp"
#include "boat/evolution.hpp"
#include "boat/fourier.hpp"
#include "oracles.hpp"

using namespace boat;
using std::numbers::pi;

namespace {

bool same_angle(double a, double b, double tol = 1e-12) {
  return std::abs(std::polar(1.0, a - b) - 1.0) < tol;
}

bool has_component_shifted_by(const std::vector<CoherentComponent>& comps, const PhaseVector& start,
                              const PhaseVector& shift) {
  return std::any_of(comps.begin(), comps.end(), [&](const CoherentComponent& c) {
    for (std::size_t a = 0; a < start.size(); ++a) {
      if (!same_angle(c.phases[a], start[a] + shift[a])) return false;
    }
    return true;
  });
}

// Global phase between exp(-iHt) for H = -(2/d) sum_{a<b} S_z^2 and the
// Dicke-basis evolution exp(i t (g - N sum l)):
//   H = -(1/2) sum_a n_a^2 + N^2/(2d),  sum_a n_a^2 / 2 = N^2/2 - N sum l + g
// so exp(-iHt) = exp(i t (g - N sum l)) exp(i t N^2 (d-1)/(2d)).
Complex dense_offset(int n, int d, double t) {
  return std::polar(1.0, t * n * n * (d - 1) / (2.0 * d));
}

} // namespace

TEST(Time, RationalConstruction) {
  const auto t = EvolutionTime::two_pi_times(2, 6);
  EXPECT_EQ(t.numerator(), 1);
  EXPECT_EQ(t.denominator(), 3);
  EXPECT_EQ(t.period(), 3);
  EXPECT_NEAR(t.value(), 2 * pi / 3, 1e-15);
  EXPECT_FALSE(EvolutionTime::two_pi_times(2, 3).period().has_value());
  EXPECT_FALSE(EvolutionTime::radians(1.0).is_rational());
  EXPECT_THROW(EvolutionTime::two_pi_times(1, 0), DomainError);
  EXPECT_THROW(EvolutionTime::radians(std::nan("")), DomainError);
  EXPECT_EQ(EvolutionTime::two_pi_over(4).phase(1), Complex(0.0, 1.0));
  EXPECT_EQ(EvolutionTime::two_pi_over(4).phase(-1), Complex(0.0, -1.0));
  EXPECT_EQ(EvolutionTime::two_pi_over(4).negated().phase(1), Complex(0.0, -1.0));
}

TEST(Time, ChiConversions) {
  EXPECT_DOUBLE_EQ(chi_from_chi_prime(3, 2.0 / 3.0), 1.0);
  EXPECT_DOUBLE_EQ(chi_prime_from_chi(4, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(chi_prime_from_chi(5, chi_from_chi_prime(5, 0.7)), 0.7);
}

TEST(InteractionPhase, Examples) {
  EXPECT_EQ(interaction_phase(SystemDims(2, 3), std::vector<int>{1, 1}).g, 3);
  for (int l = 0; l <= 7; ++l) EXPECT_EQ(interaction_phase(SystemDims(7, 2), std::vector<int>{l}).g, l * l);
  EXPECT_EQ(interaction_phase(SystemDims(4, 5), std::vector<int>{0, 0, 0, 0}).g, 0);
  const auto ip = interaction_phase(SystemDims(5, 3), std::vector<int>{2, 1});
  EXPECT_EQ(ip.g, 4 + 2 + 1);
  EXPECT_DOUBLE_EQ(ip.lambda, -(7.0 - 15.0));
}

TEST(Evolve, ZeroTimeIsIdentity) {
  const auto s = coherent_state(SystemDims(5, 3), {0.3, 1.2});
  EXPECT_EQ(evolve(s, EvolutionTime::radians(0.0)).amplitudes(), s.amplitudes());
  EXPECT_EQ(evolve(s, EvolutionTime::two_pi_times(0, 1)).amplitudes(), s.amplitudes());
}

TEST(Evolve, RevivalIsExact) {
  for (int d : {2, 3, 4, 5}) {
    const SystemDims dims(9, d);
    const auto s = coherent_state(dims, PhaseVector(static_cast<std::size_t>(d - 1), 0.7));
    EXPECT_EQ(evolve(s, EvolutionTime::two_pi_times(1, 1)).amplitudes(), s.amplitudes()) << d;
  }
}

TEST(Evolve, UnitaryAndDiagonal) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-20, 20);
  const auto s = coherent_state(SystemDims(15, 4), {0.1, 0.2, 0.3});
  for (int k = 0; k < 10; ++k) {
    const auto out = evolve(s, EvolutionTime::radians(u(rng)));
    EXPECT_NEAR(out.norm(), 1.0, 1e-12);
    EXPECT_LT((out.amplitudes().cwiseAbs() - s.amplitudes().cwiseAbs()).norm(), 1e-14);
  }
}

TEST(Evolve, ThreeQutritsFormTargetGhz) {
  const int n = 3;
  const SystemDims dims(n, 3);
  const auto out = evolve(coherent_state(dims, {0.0, 0.0}), EvolutionTime::two_pi_over(3));
  const double w = 2 * pi / 3;
  Eigen::VectorXcd target = std::polar(1.0, w) * coherent_state(dims, {-w * n, -w * n}).amplitudes() +
                            coherent_state(dims, {-w * (n - 1), -w * (n - 2)}).amplitudes() +
                            coherent_state(dims, {-w * (n - 2), -w * (n - 1)}).amplitudes();
  target /= std::sqrt(3.0);
  EXPECT_NEAR(std::abs(target.dot(out.amplitudes())), 1.0, 1e-12);
}

TEST(Evolve, MatchesDenseOracleWithKnownOffset) {
  for (const auto& [n, d] : {std::pair{1, 3}, std::pair{2, 3}, std::pair{3, 3}, std::pair{4, 3},
                              std::pair{2, 4}, std::pair{3, 4}, std::pair{5, 2}, std::pair{2, 5}}) {
    const SystemDims dims(n, d);
    const PhaseVector ph(static_cast<std::size_t>(d - 1), 0.4);
    const auto h = oracle::boat_hamiltonian(n, d);
    for (double t : {0.37, 2 * pi / 3, pi, 5.1}) {
      const Eigen::VectorXcd dense =
          oracle::propagator(h, t) * oracle::product(oracle::single(d, ph), n);
      const Eigen::VectorXcd sym = expand_to_full(evolve(coherent_state(dims, ph), EvolutionTime::radians(t)));
      EXPECT_LT((dense - dense_offset(n, d, t) * sym).norm(), 1e-10) << n << "," << d << "," << t;
    }
  }
}

TEST(Fourier, QutritAtThirdPeriod) {
  const auto spec = fourier_spectrum(3, 3);
  EXPECT_EQ(nonzero_count(spec), 3u);
  // equal up to the global phase e^{-i pi/6} carried by the definition of f_q
  const double r = 1.0 / std::sqrt(3.0);
  const Complex g = std::polar(1.0, pi / 6);
  EXPECT_NEAR(std::abs(g * spec.coeffs[1 * 3 + 2] - r), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(g * spec.coeffs[2 * 3 + 1] - r), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(g * std::polar(1.0, -2 * pi / 3) * spec.coeffs[0] - r), 0.0, 1e-12);
}

TEST(Fourier, QubitAtQuarterPeriod) {
  const auto spec = fourier_spectrum(4, 2);
  EXPECT_EQ(nonzero_count(spec), 2u);
  for (auto c : spec.coeffs) {
    if (std::abs(c) > kFourierZeroTol) EXPECT_NEAR(std::abs(c), 1 / std::sqrt(2.0), 1e-12);
  }
}

TEST(Fourier, QuquartAtHalfPeriod) {
  const auto spec = fourier_spectrum(2, 4);
  std::vector<Complex> nz;
  for (auto c : spec.coeffs) {
    if (std::abs(c) > kFourierZeroTol) nz.push_back(c);
  }
  ASSERT_EQ(nz.size(), 4u);
  int plus = 0;
  int minus = 0;
  for (auto c : nz) {
    EXPECT_NEAR(std::abs(c), 0.5, 1e-12);
    if (std::abs(c - nz[0]) < 1e-12) ++plus;
    if (std::abs(c + nz[0]) < 1e-12) ++minus;
  }
  EXPECT_EQ(std::min(plus, minus), 1);
  EXPECT_EQ(plus + minus, 4);
}

TEST(Fourier, ParsevalOverGrid) {
  for (int m = 1; m <= 6; ++m) {
    for (int d = 2; d <= 6; ++d) {
      const auto spec = fourier_spectrum(m, d);
      double sum = 0;
      for (auto c : spec.coeffs) sum += std::norm(c);
      EXPECT_NEAR(sum, 1.0, 1e-12) << m << "," << d;
      EXPECT_EQ(spec.size(), static_cast<std::size_t>(std::pow(m, d - 1)));
    }
  }
}

TEST(Fourier, MatchesDirectSummation) {
  // f_q = m^{-(d-1)} sum_l exp(2 pi i g(l)/m) exp(-2 pi i q.l/m), brute force
  for (const auto& [m, d] : {std::pair{3, 3}, std::pair{5, 3}, std::pair{4, 4}, std::pair{6, 2}}) {
    const auto spec = fourier_spectrum(m, d);
    const int axes = d - 1;
    const long total = oracle::ipow(m, axes);
    for (long qf = 0; qf < total; ++qf) {
      const auto q = oracle::digits(qf, axes, m);
      Complex acc = 0;
      for (long lf = 0; lf < total; ++lf) {
        const auto l = oracle::digits(lf, axes, m);
        long g = 0;
        long ql = 0;
        for (int a = 0; a < axes; ++a) {
          ql += static_cast<long>(q[a]) * l[a];
          for (int b = a; b < axes; ++b) g += static_cast<long>(l[a]) * l[b];
        }
        acc += std::polar(1.0, 2 * pi * static_cast<double>(g - ql) / m);
      }
      acc /= static_cast<double>(total);
      EXPECT_NEAR(std::abs(acc - spec.coeffs[static_cast<std::size_t>(qf)]), 0.0, 1e-12);
    }
  }
}

TEST(Fourier, KExamples) {
  EXPECT_EQ(verify_K(6, 3).counted, 12);
  EXPECT_EQ(verify_K(4, 2).counted, 2);
  EXPECT_EQ(verify_K(5, 5).counted, 125);
  EXPECT_TRUE(verify_K(6, 3).agree);
  EXPECT_THROW(fourier_spectrum(0, 3), DomainError);
  EXPECT_THROW(fourier_spectrum(3, 1), DomainError);
}

TEST(GhzCheck, Examples) {
  EXPECT_TRUE(ghz_check(3, 3).is_ghz);
  EXPECT_TRUE(ghz_check(2, 4).is_ghz);
  EXPECT_TRUE(ghz_check(4, 2).is_ghz);
  const auto r = ghz_check(5, 5);
  EXPECT_FALSE(r.is_ghz);
  EXPECT_EQ(r.nonzero_count, 125u);
}

TEST(GhzCheck, OnlyThreeGhzCombinationsInScan) {
  std::set<std::pair<int, int>> found;
  for (int m = 2; m <= 6; ++m) {
    for (int d = 2; d <= 7; ++d) {
      const auto r = ghz_check(m, d);
      EXPECT_EQ(r.is_ghz, r.nonzero_count == static_cast<std::size_t>(d) && r.equal_magnitudes &&
                              r.pairwise_orthogonal);
      if (r.is_ghz) found.insert({m, d});
    }
  }
  EXPECT_EQ(found, (std::set<std::pair<int, int>>{{4, 2}, {3, 3}, {2, 4}}));
}

TEST(GhzCheck, OrthogonalityFailsWhenTooManyComponents) {
  const auto r = ghz_check(2, 3); // four components in C^3
  EXPECT_EQ(r.nonzero_count, 4u);
  EXPECT_FALSE(r.pairwise_orthogonal);
}

TEST(Decomposition, QutritOrientationByNMod3) {
  const double w = 2 * pi / 3;
  const PhaseVector start{0.0, 0.0};
  EXPECT_TRUE(has_component_shifted_by(coherent_decomposition(SystemDims(3, 3), start, 3), start, {0, 0}));
  EXPECT_TRUE(has_component_shifted_by(coherent_decomposition(SystemDims(6, 3), start, 3), start, {0, 0}));
  EXPECT_TRUE(has_component_shifted_by(coherent_decomposition(SystemDims(4, 3), start, 3), start, {-w, -w}));
  EXPECT_TRUE(has_component_shifted_by(coherent_decomposition(SystemDims(7, 3), start, 3), start, {-w, -w}));
  EXPECT_TRUE(has_component_shifted_by(coherent_decomposition(SystemDims(5, 3), start, 3), start, {w, w}));
  EXPECT_FALSE(has_component_shifted_by(coherent_decomposition(SystemDims(4, 3), start, 3), start, {0, 0}));
}

TEST(Decomposition, QuquartOrientationByParity) {
  const PhaseVector start{0.2, -0.4, 1.0};
  for (int n : {2, 4, 6}) {
    const auto comps = coherent_decomposition(SystemDims(n, 4), start, 2);
    EXPECT_EQ(comps.size(), 4u);
    EXPECT_TRUE(has_component_shifted_by(comps, start, {0, 0, 0})) << n;
  }
  for (int n : {3, 5}) {
    const auto comps = coherent_decomposition(SystemDims(n, 4), start, 2);
    EXPECT_TRUE(has_component_shifted_by(comps, start, {pi, pi, pi})) << n;
  }
}

TEST(Decomposition, ReconstructsEvolvedState) {
  for (const auto& [m, d] : {std::pair{4, 2}, std::pair{3, 3}, std::pair{2, 4}}) {
    const PhaseVector ph(static_cast<std::size_t>(d - 1), 0.3);
    for (int n = 2; n <= 12; ++n) {
      const SystemDims dims(n, d);
      const auto comps = coherent_decomposition(dims, ph, m);
      const auto evolved = evolve(coherent_state(dims, ph), EvolutionTime::two_pi_over(m));
      EXPECT_LT((reconstruct(dims, comps).amplitudes() - evolved.amplitudes()).norm(), 1e-10)
          << m << "," << d << "," << n;
    }
  }
  // also for non-GHZ periods
  const SystemDims dims(5, 3);
  const auto comps = coherent_decomposition(dims, {0.1, 0.2}, 5);
  EXPECT_EQ(comps.size(), 25u);
  EXPECT_LT((reconstruct(dims, comps).amplitudes() -
             evolve(coherent_state(dims, {0.1, 0.2}), EvolutionTime::two_pi_over(5)).amplitudes())
                .norm(),
            1e-10);
  EXPECT_THROW(coherent_decomposition(dims, {0.0, 0.0}, 0), DomainError);
}

TEST(Alignment, UnitaryAndProducesPopulationGhz) {
  for (int n : {2, 3, 6, 11}) {
    const SystemDims dims(n, 3);
    const auto comps = coherent_decomposition(dims, {0.0, 0.0}, 3);
    const auto u = alignment_unitary(comps, 3);
    EXPECT_LT((u * u.adjoint() - Eigen::MatrixXcd::Identity(3, 3)).norm(), 1e-10);
    const auto aligned =
        apply_global_unitary(evolve(coherent_state(dims, {0.0, 0.0}), EvolutionTime::two_pi_over(3)), u);
    const DickeBasis basis(dims);
    double extreme = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double mag = std::abs(aligned.amplitude(basis.extreme_index(a)));
      EXPECT_NEAR(mag, 1 / std::sqrt(3.0), 1e-10);
      extreme += mag * mag;
    }
    EXPECT_NEAR(extreme, 1.0, 1e-10);
  }
}

TEST(Alignment, DftLikeForQutrits) {
  const auto comps = coherent_decomposition(SystemDims(3, 3), {0.0, 0.0}, 3);
  const auto u = alignment_unitary(comps, 3);
  // every entry of the inverse of a DFT-like frame has modulus 1/sqrt(3)
  EXPECT_LT((u.cwiseAbs() - Eigen::MatrixXd::Constant(3, 3, 1 / std::sqrt(3.0))).norm(), 1e-12);
}

TEST(Alignment, RejectsNonGhzDecomposition) {
  const auto comps = coherent_decomposition(SystemDims(3, 3), {0.0, 0.0}, 5);
  EXPECT_THROW(alignment_unitary(comps, 3), DomainError);
  auto three = std::vector<CoherentComponent>(comps.begin(), comps.begin() + 3);
  EXPECT_THROW(alignment_unitary(three, 3), DomainError);
}
