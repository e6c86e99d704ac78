#include "boat/mqc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "boat/errors.hpp"
#include "linalg.hpp"

namespace boat {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kEigenTol = 1e-10;

void require_qutrit(const SystemDims& dims, const char* what) {
  if (dims.d() != 3) {
    throw UnsupportedDimension(std::string(what) + " is defined for qutrits only (d = 3), got d = " +
                               std::to_string(dims.d()));
  }
}

// p l_1 + q l_2 for every Dicke label.
std::vector<long> probe_weights(const DickeBasis& basis, const ProbeSettings& s) {
  std::vector<long> out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& l = basis.label(i);
    out[i] = static_cast<long>(s.p) * l[0] + static_cast<long>(s.q) * l[1];
  }
  return out;
}

} // namespace

void ProbeSettings::validate(int max_weight) const {
  if (p == 0 && q == 0) throw DomainError("probe settings (p, q) = (0, 0) carry no signal");
  if (std::abs(p) > max_weight || std::abs(q) > max_weight) {
    throw DomainError("probe weights must satisfy |p|, |q| <= " + std::to_string(max_weight));
  }
}

SymmetricDensity::SymmetricDensity(SystemDims dims, Eigen::MatrixXcd matrix)
    : dims_(dims), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(dims_.basis_size());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw DomainError("density matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) throw DomainError("density matrix is not Hermitian");
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw DomainError("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
  }
}

SymmetricDensity SymmetricDensity::from_pure(const SymmetricState& state) {
  return SymmetricDensity(state.dims(), state.amplitudes() * state.amplitudes().adjoint());
}

SymmetricDensity SymmetricDensity::from_matrix(SystemDims dims, Eigen::MatrixXcd matrix) {
  SymmetricDensity rho(dims, std::move(matrix));
  if (rho.min_eigenvalue() < -kEigenTol) throw DomainError("density matrix is not positive");
  return rho;
}

double SymmetricDensity::min_eigenvalue() const {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(matrix_, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

SymmetricState probe_rotation(const SymmetricState& state, const ProbeSettings& settings,
                              double phi) {
  require_qutrit(state.dims(), "probe rotation");
  const DickeBasis basis(state.dims());
  const auto w = probe_weights(basis, settings);
  Eigen::VectorXcd amps = state.amplitudes();
  for (std::size_t i = 0; i < w.size(); ++i) {
    amps(static_cast<Eigen::Index>(i)) *= std::polar(1.0, -phi * static_cast<double>(w[i]));
  }
  return SymmetricState(state.dims(), std::move(amps));
}

SymmetricDensity probe_rotation(const SymmetricDensity& rho, const ProbeSettings& settings,
                                double phi) {
  require_qutrit(rho.dims(), "probe rotation");
  const DickeBasis basis(rho.dims());
  const auto w = probe_weights(basis, settings);
  Eigen::VectorXcd phase(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    phase(static_cast<Eigen::Index>(i)) = std::polar(1.0, -phi * static_cast<double>(w[i]));
  }
  Eigen::MatrixXcd out = phase.asDiagonal() * rho.matrix() * phase.conjugate().asDiagonal();
  return SymmetricDensity(rho.dims(), std::move(out));
}

double loschmidt_fidelity(const SymmetricDensity& rho, const ProbeSettings& settings, double phi) {
  const auto rotated = probe_rotation(rho, settings, phi);
  // Tr[A B] = sum_ij A_ij B_ji
  return rotated.matrix().cwiseProduct(rho.matrix().transpose()).sum().real();
}

double MQCSpectrum::at(int m) const {
  if (m < -m_max || m > m_max) return 0.0;
  return values[static_cast<std::size_t>(m + m_max)];
}

double MQCSpectrum::total() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

int max_coherence_order(const SystemDims& dims, const ProbeSettings& settings) {
  require_qutrit(dims, "coherence order");
  const DickeBasis basis(dims);
  const auto w = probe_weights(basis, settings);
  const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
  return static_cast<int>(*hi - *lo);
}

int default_sample_count(const SystemDims& dims, const ProbeSettings& settings) {
  return 4 * (std::abs(settings.p) + std::abs(settings.q)) * dims.n() + 1;
}

std::vector<double> phi_grid(int samples) {
  std::vector<double> phi(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    phi[static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * k / samples;
  }
  return phi;
}

MQCSpectrum spectrum_from_samples(const std::vector<double>& fidelities, int m_max) {
  const auto samples = static_cast<long long>(fidelities.size());
  if (samples < 2LL * m_max + 1) {
    throw ConfigurationError("aliasing: " + std::to_string(samples) +
                             " phi samples cannot resolve coherence orders up to " +
                             std::to_string(m_max) + " (need at least " +
                             std::to_string(2 * m_max + 1) + ")");
  }
  MQCSpectrum spec;
  spec.m_max = m_max;
  spec.samples = static_cast<int>(samples);
  spec.values.resize(static_cast<std::size_t>(2 * m_max + 1));
  // F(phi) = sum_m I_m e^{-i m phi}  =>  I_m = (1/S) sum_k F_k e^{i m phi_k}
  for (int m = -m_max; m <= m_max; ++m) {
    Complex acc{};
    for (long long k = 0; k < samples; ++k) {
      acc += fidelities[static_cast<std::size_t>(k)] * detail::unit_root(m * k, samples);
    }
    spec.values[static_cast<std::size_t>(m + m_max)] = acc.real() / static_cast<double>(samples);
  }
  return spec;
}

MQCSpectrum mqc_spectrum(const SymmetricDensity& rho, const ProbeSettings& settings,
                         std::optional<int> samples) {
  settings.validate();
  const int m_max = max_coherence_order(rho.dims(), settings);
  const int count = samples.value_or(default_sample_count(rho.dims(), settings));
  if (count < 2 * m_max + 1) {
    throw ConfigurationError("aliasing: " + std::to_string(count) + " samples < 2*" +
                             std::to_string(m_max) + "+1; refusing to compute spectrum");
  }
  std::vector<double> fidelities;
  fidelities.reserve(static_cast<std::size_t>(count));
  for (double phi : phi_grid(count)) fidelities.push_back(loschmidt_fidelity(rho, settings, phi));
  return spectrum_from_samples(fidelities, m_max);
}

MQCSpectrum mqc_spectrum_direct(const SymmetricDensity& rho, const ProbeSettings& settings) {
  settings.validate();
  const DickeBasis basis(rho.dims());
  const auto w = probe_weights(basis, settings);
  const int m_max = max_coherence_order(rho.dims(), settings);
  MQCSpectrum spec;
  spec.m_max = m_max;
  spec.values.assign(static_cast<std::size_t>(2 * m_max + 1), 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const long m = w[i] - w[j];
      spec.values[static_cast<std::size_t>(m + m_max)] += std::norm(rho(i, j));
    }
  }
  return spec;
}

std::array<ProbeSettings, 3> isolating_settings() {
  return {ProbeSettings{2, 1}, ProbeSettings{1, 2}, ProbeSettings{-1, 1}};
}

CoherenceMagnitudes coherence_magnitudes(const SymmetricDensity& rho) {
  require_qutrit(rho.dims(), "coherence extraction");
  const int top = 2 * rho.dims().n();
  std::array<double, 3> mags{};
  const auto settings = isolating_settings();
  for (std::size_t k = 0; k < settings.size(); ++k) {
    mags[k] = std::sqrt(std::max(0.0, mqc_spectrum(rho, settings[k]).at(top)));
  }
  return {mags[0], mags[1], mags[2]};
}

SymmetricDensity collective_dephase(const SymmetricDensity& rho, double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw DomainError("dephasing strength must be a finite nonnegative number");
  }
  require_qutrit(rho.dims(), "collective dephasing");
  const DickeBasis basis(rho.dims());
  Eigen::MatrixXcd out = rho.matrix();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      const double d1 = basis.label(i)[0] - basis.label(j)[0];
      const double d2 = basis.label(i)[1] - basis.label(j)[1];
      const double q = d1 * d1 + d2 * d2 + (d1 + d2) * (d1 + d2);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *= std::exp(-0.5 * gamma * q);
    }
  }
  return SymmetricDensity(rho.dims(), std::move(out));
}

double sample_readout(double probability, long shots, std::mt19937_64& rng) {
  if (shots < 1) throw DomainError("shot count must be >= 1");
  std::binomial_distribution<long> dist(shots, std::clamp(probability, 0.0, 1.0));
  return static_cast<double>(dist(rng)) / static_cast<double>(shots);
}

ProtocolResult full_protocol(const SystemDims& dims, const ProtocolOptions& options) {
  require_qutrit(dims, "MQC protocol");
  options.settings.validate();
  if (options.gamma && !(*options.gamma >= 0.0)) {
    throw DomainError("dephasing strength must be nonnegative");
  }

  // Forward preparation W = U_align * exp(-iHt) * R_p in the Dicke basis.
  const Eigen::MatrixXcd prep = symmetric_power(dims, preparation_unitary(3, options.phases));
  const Eigen::VectorXcd twist = evolution_phases(dims, options.time);
  Eigen::MatrixXcd forward = twist.asDiagonal() * prep;
  if (options.align) {
    const auto m = options.time.period();
    if (!m) throw ConfigurationError("alignment requires an evolution time of the form 2pi/m");
    const auto comps = coherent_decomposition(dims, options.phases, *m);
    forward = symmetric_power(dims, alignment_unitary(comps, 3)) * forward;
  }

  const Eigen::VectorXcd psi = forward.col(0); // W |0...0>
  SymmetricDensity rho(dims, psi * psi.adjoint());
  if (options.gamma) rho = collective_dephase(rho, *options.gamma);

  std::mt19937_64 rng(options.seed);
  auto echo = [&](const ProbeSettings& s, double phi) {
    auto rotated = probe_rotation(rho, s, phi);
    if (options.gamma) rotated = collective_dephase(rotated, *options.gamma);
    // Reverse the preparation and read out the |0...0> population, i.e. the
    // (0,0) entry of W^dag rho_phi W.
    double f = (forward.col(0).adjoint() * rotated.matrix() * forward.col(0))(0, 0).real();
    if (options.shots) f = sample_readout(f, *options.shots, rng);
    return f;
  };
  auto sweep = [&](const ProbeSettings& s) {
    const int count = options.samples.value_or(default_sample_count(dims, s));
    const int m_max = max_coherence_order(dims, s);
    if (count < 2 * m_max + 1) {
      throw ConfigurationError("aliasing: " + std::to_string(count) + " samples < 2*" +
                               std::to_string(m_max) + "+1; refusing to compute spectrum");
    }
    std::vector<double> f;
    for (double phi : phi_grid(count)) f.push_back(echo(s, phi));
    return f;
  };

  ProtocolResult result{{}, {}, {}, {}, rho};
  result.fidelity = sweep(options.settings);
  result.phi = phi_grid(static_cast<int>(result.fidelity.size()));
  result.spectrum =
      spectrum_from_samples(result.fidelity, max_coherence_order(dims, options.settings));

  const int top = 2 * dims.n();
  std::array<double, 3> mags{};
  const auto settings = isolating_settings();
  for (std::size_t k = 0; k < settings.size(); ++k) {
    const auto spec = spectrum_from_samples(sweep(settings[k]), max_coherence_order(dims, settings[k]));
    mags[k] = std::sqrt(std::max(0.0, spec.at(top)));
  }
  result.magnitudes = {mags[0], mags[1], mags[2]};
  return result;
}

} // namespace boat
