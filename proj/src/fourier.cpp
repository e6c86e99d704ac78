#include "boat/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "boat/errors.hpp"
#include "linalg.hpp"

namespace boat {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void check_md(int m, int d) {
  if (m < 1) throw DomainError("period m must be >= 1, got " + std::to_string(m));
  if (d < 2) throw DomainError("level count d must be >= 2, got " + std::to_string(d));
}

} // namespace

std::vector<int> FourierSpectrum::index(std::size_t flat) const {
  std::vector<int> q(static_cast<std::size_t>(d - 1));
  for (std::size_t a = q.size(); a-- > 0;) {
    q[a] = static_cast<int>(flat % static_cast<std::size_t>(m));
    flat /= static_cast<std::size_t>(m);
  }
  return q;
}

FourierSpectrum fourier_spectrum(int m, int d) {
  check_md(m, d);
  const int axes = d - 1;
  const std::size_t total = ipow(static_cast<std::size_t>(m), axes);
  FourierSpectrum spec{m, d, std::vector<Complex>(total)};

  // Samples of exp(2 pi i g(l)/m) over the lattice; g is reduced mod m.
  std::vector<int> l(static_cast<std::size_t>(axes), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    long long sum = 0;
    long long sq = 0;
    for (int v : l) {
      sum += v;
      sq += static_cast<long long>(v) * v;
    }
    const long long g = (sum * sum + sq) / 2; // sum_{a<=b} l_a l_b
    spec.coeffs[flat] = detail::unit_root(g, m);
    for (std::size_t a = l.size(); a-- > 0;) { // odometer increment
      if (++l[a] < m) break;
      l[a] = 0;
    }
  }

  // Separable inverse DFT, one axis at a time.
  std::vector<Complex> twiddle(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) twiddle[static_cast<std::size_t>(k)] = detail::unit_root(-k, m);
  std::vector<Complex> line(static_cast<std::size_t>(m));
  for (int axis = 0; axis < axes; ++axis) {
    const std::size_t stride = ipow(static_cast<std::size_t>(m), axes - 1 - axis);
    const std::size_t block = stride * static_cast<std::size_t>(m);
    for (std::size_t outer = 0; outer < total; outer += block) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = outer + inner;
        for (int q = 0; q < m; ++q) {
          Complex acc{};
          for (int j = 0; j < m; ++j) {
            acc += spec.coeffs[base + static_cast<std::size_t>(j) * stride] *
                   twiddle[static_cast<std::size_t>((q * j) % m)];
          }
          line[static_cast<std::size_t>(q)] = acc;
        }
        for (int q = 0; q < m; ++q) {
          spec.coeffs[base + static_cast<std::size_t>(q) * stride] =
              line[static_cast<std::size_t>(q)] / static_cast<double>(m);
        }
      }
    }
  }
  return spec;
}

std::size_t nonzero_count(const FourierSpectrum& spectrum, double tol) {
  return static_cast<std::size_t>(std::count_if(spectrum.coeffs.begin(), spectrum.coeffs.end(),
                                                [tol](Complex c) { return std::abs(c) > tol; }));
}

KCheck verify_K(int m, int d) {
  check_md(m, d);
  const auto counted = static_cast<long long>(nonzero_count(fourier_spectrum(m, d)));
  const auto formula =
      static_cast<long long>(ipow(static_cast<std::size_t>(m), d - 1)) / std::gcd(m, d);
  return {counted, formula, counted == formula};
}

GHZReport ghz_check(int m, int d, double tol) {
  const auto spec = fourier_spectrum(m, d);
  GHZReport report{};
  report.m = m;
  report.d = d;
  for (std::size_t flat = 0; flat < spec.size(); ++flat) {
    const Complex f = spec.coeffs[flat];
    if (std::abs(f) <= tol) continue;
    auto q = spec.index(flat);
    PhaseVector phases(q.size());
    for (std::size_t a = 0; a < q.size(); ++a) phases[a] = 2.0 * std::numbers::pi * q[a] / m;
    report.nonzero_q.push_back(std::move(q));
    report.magnitudes.push_back(std::abs(f));
    report.coefficients.push_back(f);
    report.component_phases.push_back(std::move(phases));
  }
  report.nonzero_count = report.nonzero_q.size();

  const auto [lo, hi] = std::minmax_element(report.magnitudes.begin(), report.magnitudes.end());
  report.equal_magnitudes = report.magnitudes.empty() || (*hi - *lo) <= tol;

  // C^d holds at most d mutually orthogonal vectors.
  report.pairwise_orthogonal = report.nonzero_count <= static_cast<std::size_t>(d);
  for (std::size_t i = 0; report.pairwise_orthogonal && i < report.nonzero_count; ++i) {
    for (std::size_t j = i + 1; j < report.nonzero_count; ++j) {
      // single-particle overlap (1/d)(1 + sum_a exp(2 pi i (q'_a - q_a)/m))
      Complex ov{1.0, 0.0};
      for (std::size_t a = 0; a < report.nonzero_q[i].size(); ++a) {
        ov += detail::unit_root(report.nonzero_q[j][a] - report.nonzero_q[i][a], m);
      }
      if (std::abs(ov) / d > tol) {
        report.pairwise_orthogonal = false;
        break;
      }
    }
  }
  report.is_ghz = report.nonzero_count == static_cast<std::size_t>(d) &&
                  report.equal_magnitudes && report.pairwise_orthogonal;
  return report;
}

} // namespace boat
