#pragma once

// Time-reversal multiple-quantum-coherence (MQC) measurement for qutrits.
//
// The probe rotation R(phi) = exp(-i phi (p S_11 + q S_22)) multiplies the
// density-matrix element (l, l') by exp(-i phi m) with
// m = p (l_1 - l_1') + q (l_2 - l_2'). The echo fidelity
// F(phi) = Tr[R rho R^dag rho] = sum_m I_m exp(-i m phi) then carries the
// squared coherence magnitudes grouped by m.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "boat/dicke.hpp"
#include "boat/evolution.hpp"

namespace boat {

struct ProbeSettings {
  int p = 2;
  int q = 1;

  /// Throws DomainError for (0,0) or weights beyond max_weight.
  void validate(int max_weight = 4) const;
};

/// Density matrix over the Dicke basis.
class SymmetricDensity {
public:
  /// Checks Hermiticity and unit trace within 1e-12.
  SymmetricDensity(SystemDims dims, Eigen::MatrixXcd matrix);

  static SymmetricDensity from_pure(const SymmetricState& state);
  /// Full physicality check, including eigenvalues >= -1e-10.
  static SymmetricDensity from_matrix(SystemDims dims, Eigen::MatrixXcd matrix);

  const SystemDims& dims() const noexcept { return dims_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return matrix_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  double purity() const { return matrix_.squaredNorm(); }
  double min_eigenvalue() const;

private:
  SystemDims dims_;
  Eigen::MatrixXcd matrix_;
};

SymmetricState probe_rotation(const SymmetricState& state, const ProbeSettings& settings,
                              double phi);
SymmetricDensity probe_rotation(const SymmetricDensity& rho, const ProbeSettings& settings,
                                double phi);

/// Tr[R(phi) rho R(phi)^dag rho]
double loschmidt_fidelity(const SymmetricDensity& rho, const ProbeSettings& settings, double phi);

/// I_m for m in [-m_max, m_max].
struct MQCSpectrum {
  int m_max = 0;
  std::vector<double> values;
  int samples = 0; ///< phi samples used; 0 for direct summation

  double at(int m) const;
  double total() const;
};

/// Largest |p dl_1 + q dl_2| over pairs of Dicke labels.
int max_coherence_order(const SystemDims& dims, const ProbeSettings& settings);

/// 4 (|p| + |q|) N + 1
int default_sample_count(const SystemDims& dims, const ProbeSettings& settings);

/// Uniform phi grid 2 pi k / samples, k = 0..samples-1.
std::vector<double> phi_grid(int samples);

/// I_m from uniformly sampled F(phi_k), phi_k = 2 pi k / S. Throws
/// ConfigurationError when S <= 2 m_max (aliasing).
MQCSpectrum spectrum_from_samples(const std::vector<double>& fidelities, int m_max);

/// Spectrum from sampled echo fidelities followed by a DFT.
MQCSpectrum mqc_spectrum(const SymmetricDensity& rho, const ProbeSettings& settings,
                         std::optional<int> samples = std::nullopt);

/// Spectrum by direct summation of |rho_{l,l'}|^2 over m = p dl_1 + q dl_2.
MQCSpectrum mqc_spectrum_direct(const SymmetricDensity& rho, const ProbeSettings& settings);

struct CoherenceMagnitudes {
  double rho01; ///< |<0^N| rho |1^N>|
  double rho02; ///< |<0^N| rho |2^N>|
  double rho12; ///< |<1^N| rho |2^N>|
};

/// The three probe settings isolating I_{2N}: (2,1), (1,2), (-1,1).
std::array<ProbeSettings, 3> isolating_settings();

/// sqrt(I_{2N}) for each of the isolating settings.
CoherenceMagnitudes coherence_magnitudes(const SymmetricDensity& rho);

/// rho_{l,l'} *= exp(-gamma [dl_1^2 + dl_2^2 + (dl_1 + dl_2)^2] / 2)
SymmetricDensity collective_dephase(const SymmetricDensity& rho, double gamma);

struct ProtocolOptions {
  PhaseVector phases{0.0, 0.0};
  EvolutionTime time = EvolutionTime::two_pi_over(3);
  /// Rotate the prepared GHZ state onto the population basis. Requires
  /// time = 2 pi / m.
  bool align = true;
  /// Dephasing strength applied on the forward leg and again, with equal
  /// strength, on the reversed leg.
  std::optional<double> gamma;
  ProbeSettings settings{2, 1};
  std::optional<int> samples;
  /// Replace exact readout by a binomial estimate from this many shots.
  std::optional<long> shots;
  std::uint64_t seed = 20240601;
};

struct ProtocolResult {
  std::vector<double> phi;
  std::vector<double> fidelity;
  MQCSpectrum spectrum;
  CoherenceMagnitudes magnitudes;
  /// State right before the probe rotation.
  SymmetricDensity prepared;
};

/// Simulates preparation, probe, time reversal and |0>^N readout.
ProtocolResult full_protocol(const SystemDims& dims, const ProtocolOptions& options);

/// Fraction of `shots` Bernoulli trials with success probability p.
double sample_readout(double probability, long shots, std::mt19937_64& rng);

} // namespace boat
