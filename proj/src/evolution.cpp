#include "boat/evolution.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "boat/errors.hpp"
#include "boat/fourier.hpp"
#include "linalg.hpp"

namespace boat {

EvolutionTime EvolutionTime::radians(double t) {
  if (!std::isfinite(t)) throw DomainError("evolution time must be finite");
  return EvolutionTime(t, 0, 0);
}

EvolutionTime EvolutionTime::two_pi_times(long long num, long long den) {
  if (den < 1) throw DomainError("time denominator must be >= 1");
  const long long g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  const double value = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return EvolutionTime(value, num, den);
}

std::optional<int> EvolutionTime::period() const noexcept {
  if (den_ != 0 && num_ == 1) return static_cast<int>(den_);
  return std::nullopt;
}

Complex EvolutionTime::phase(long long k) const {
  if (den_ != 0) {
    const long long reduced = ((k % den_) + den_) % den_;
    return detail::unit_root((num_ % den_) * reduced, den_);
  }
  return std::polar(1.0, value_ * static_cast<double>(k));
}

EvolutionTime EvolutionTime::negated() const {
  if (den_ != 0) return two_pi_times(-num_, den_);
  return radians(-value_);
}

double chi_from_chi_prime(int d, double chi_prime) { return 0.5 * d * chi_prime; }

double chi_prime_from_chi(int d, double chi) { return 2.0 * chi / d; }

InteractionPhase interaction_phase(const SystemDims& dims, std::span<const int> l) {
  validate_label(dims, l);
  long long g = 0;
  long long total = 0;
  for (std::size_t a = 0; a < l.size(); ++a) {
    total += l[a];
    for (std::size_t b = a; b < l.size(); ++b) g += static_cast<long long>(l[a]) * l[b];
  }
  const long long h = static_cast<long long>(dims.n()) * total;
  return {g, -static_cast<double>(g - h)};
}

Eigen::VectorXcd evolution_phases(const SystemDims& dims, const EvolutionTime& t) {
  const DickeBasis basis(dims);
  Eigen::VectorXcd phases(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& l = basis.label(i);
    const long long total = std::accumulate(l.begin(), l.end(), 0LL);
    const long long k = interaction_phase(dims, l).g - static_cast<long long>(dims.n()) * total;
    phases(static_cast<Eigen::Index>(i)) = t.phase(k);
  }
  return phases;
}

SymmetricState evolve(const SymmetricState& s, const EvolutionTime& t) {
  return SymmetricState(s.dims(),
                        evolution_phases(s.dims(), t).cwiseProduct(s.amplitudes()));
}

std::vector<CoherentComponent> coherent_decomposition(const SystemDims& dims,
                                                      const PhaseVector& phases, int m,
                                                      double tol) {
  if (m < 1) throw DomainError("period m must be >= 1, got " + std::to_string(m));
  if (phases.size() != static_cast<std::size_t>(dims.d() - 1)) {
    throw DomainError("decomposition needs d-1 phases");
  }
  const auto spectrum = fourier_spectrum(m, dims.d());
  std::vector<CoherentComponent> out;
  for (std::size_t flat = 0; flat < spectrum.size(); ++flat) {
    const Complex f = spectrum.coeffs[flat];
    if (std::abs(f) <= tol) continue;
    CoherentComponent comp{f, spectrum.index(flat), {}};
    comp.phases.resize(phases.size());
    for (std::size_t a = 0; a < phases.size(); ++a) {
      // phi' - 2 pi N/m + 2 pi q/m, with the integer part reduced mod m
      const long long shift = ((static_cast<long long>(comp.q[a]) - dims.n()) % m + m) % m;
      comp.phases[a] = phases[a] + 2.0 * std::numbers::pi * static_cast<double>(shift) / m;
    }
    out.push_back(std::move(comp));
  }
  return out;
}

SymmetricState reconstruct(const SystemDims& dims, std::span<const CoherentComponent> comps) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dims.basis_size()));
  for (const auto& c : comps) amps += c.coefficient * coherent_state(dims, c.phases).amplitudes();
  return SymmetricState(dims, std::move(amps));
}

Eigen::MatrixXcd alignment_unitary(std::span<const CoherentComponent> comps, int d, double tol) {
  if (comps.size() != static_cast<std::size_t>(d)) {
    throw DomainError("alignment needs exactly " + std::to_string(d) + " components, got " +
                      std::to_string(comps.size()));
  }
  Eigen::MatrixXcd v(d, d);
  for (int k = 0; k < d; ++k) v.col(k) = single_particle_state(d, comps[static_cast<std::size_t>(k)].phases);
  const Eigen::MatrixXcd gram = v.adjoint() * v;
  const double off = (gram - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (off > tol) {
    throw DomainError("components are not mutually orthogonal (max overlap " +
                      std::to_string(off) + "); this (m, d) does not produce a GHZ state");
  }
  return v.adjoint();
}

Eigen::MatrixXcd preparation_unitary(int d, const PhaseVector& phases) {
  if (phases.size() != static_cast<std::size_t>(d - 1)) {
    throw DomainError("preparation needs d-1 phases");
  }
  Eigen::VectorXcd diag(d);
  diag(0) = 1.0;
  for (int a = 1; a < d; ++a) diag(a) = std::polar(1.0, phases[static_cast<std::size_t>(a - 1)]);
  return diag.asDiagonal() * dft_matrix(d);
}

} // namespace boat
