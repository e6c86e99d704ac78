#include "boat/dicke.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "boat/errors.hpp"
#include "linalg.hpp"

namespace boat {

SystemDims::SystemDims(int n_particles, int n_levels) : n_(n_particles), d_(n_levels) {
  if (n_particles < 1) {
    throw DomainError("particle number must be >= 1, got " + std::to_string(n_particles));
  }
  if (n_levels < 2) {
    throw DomainError("level count must be >= 2, got " + std::to_string(n_levels));
  }
}

std::size_t SystemDims::basis_size() const {
  return static_cast<std::size_t>(std::llround(binomial(n_ + d_ - 1, d_ - 1)));
}

std::size_t SystemDims::full_size() const noexcept {
  std::size_t size = 1;
  for (int i = 0; i < n_; ++i) {
    if (size > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(d_)) {
      return std::numeric_limits<std::size_t>::max();
    }
    size *= static_cast<std::size_t>(d_);
  }
  return size;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return std::round(result);
}

namespace {

// Lexicographic enumeration: recursively fix l_1, then l_2, ...
void enumerate_rec(int remaining, std::size_t pos, DickeLabel& current,
                   std::vector<DickeLabel>& out) {
  if (pos == current.size()) {
    out.push_back(current);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    current[pos] = v;
    enumerate_rec(remaining - v, pos + 1, current, out);
  }
  current[pos] = 0;
}

} // namespace

std::vector<DickeLabel> enumerate_basis(const SystemDims& dims) {
  std::vector<DickeLabel> out;
  out.reserve(dims.basis_size());
  DickeLabel current(static_cast<std::size_t>(dims.d() - 1), 0);
  enumerate_rec(dims.n(), 0, current, out);
  return out;
}

DickeBasis::DickeBasis(SystemDims dims) : dims_(dims), labels_(enumerate_basis(dims)) {}

std::size_t DickeBasis::index_of(std::span<const int> label) const {
  validate_label(dims_, label);
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label,
                             [](const DickeLabel& a, std::span<const int> b) {
                               return std::lexicographical_compare(a.begin(), a.end(),
                                                                   b.begin(), b.end());
                             });
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t DickeBasis::extreme_index(int level) const {
  if (level < 0 || level >= dims_.d()) {
    throw DomainError("level " + std::to_string(level) + " out of range");
  }
  DickeLabel l(static_cast<std::size_t>(dims_.d() - 1), 0);
  if (level > 0) l[static_cast<std::size_t>(level - 1)] = dims_.n();
  return index_of(l);
}

void validate_label(const SystemDims& dims, std::span<const int> l) {
  if (l.size() != static_cast<std::size_t>(dims.d() - 1)) {
    throw DomainError("label has " + std::to_string(l.size()) + " entries, expected " +
                      std::to_string(dims.d() - 1));
  }
  long total = 0;
  for (int v : l) {
    if (v < 0) throw DomainError("label entries must be nonnegative");
    total += v;
  }
  if (total > dims.n()) throw DomainError("label occupation exceeds particle number");
}

std::vector<int> occupations(const SystemDims& dims, std::span<const int> l) {
  validate_label(dims, l);
  std::vector<int> occ(static_cast<std::size_t>(dims.d()));
  occ[0] = dims.n() - std::accumulate(l.begin(), l.end(), 0);
  std::copy(l.begin(), l.end(), occ.begin() + 1);
  return occ;
}

std::uint64_t multinomial_exact(std::span<const int> occ) {
  // Product of binomials C(n_0 + ... + n_k, n_k); each partial result is an
  // integer and stays below N! <= 20!.
  std::uint64_t result = 1;
  int running = 0;
  for (int count : occ) {
    for (int i = 1; i <= count; ++i) {
      ++running;
      result = result * static_cast<std::uint64_t>(running) / static_cast<std::uint64_t>(i);
    }
  }
  if (running > 20) throw DomainError("exact multinomial limited to N <= 20");
  return result;
}

double log_multinomial(std::span<const int> occ) {
  int total = 0;
  double log_den = 0.0;
  for (int count : occ) {
    total += count;
    log_den += std::lgamma(count + 1.0);
  }
  return std::lgamma(total + 1.0) - log_den;
}

namespace {

double multiplicity(std::span<const int> occ) {
  const int total = std::accumulate(occ.begin(), occ.end(), 0);
  if (total <= 20) return static_cast<double>(multinomial_exact(occ));
  return std::exp(log_multinomial(occ));
}

} // namespace

double multinomial_amplitude(const SystemDims& dims, std::span<const int> l) {
  const auto occ = occupations(dims, l);
  const double log_amp =
      0.5 * log_multinomial(occ) - 0.5 * dims.n() * std::log(static_cast<double>(dims.d()));
  return std::exp(log_amp);
}

SymmetricState::SymmetricState(SystemDims dims, Eigen::VectorXcd amplitudes)
    : dims_(dims), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != dims_.basis_size()) {
    throw DomainError("amplitude vector length " + std::to_string(amplitudes_.size()) +
                      " does not match basis size " + std::to_string(dims_.basis_size()));
  }
}

SymmetricState SymmetricState::ground(SystemDims dims) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dims.basis_size()));
  amps(0) = 1.0;
  return SymmetricState(dims, std::move(amps));
}

SymmetricState SymmetricState::basis_state(SystemDims dims, std::span<const int> l) {
  const DickeBasis basis(dims);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  amps(static_cast<Eigen::Index>(basis.index_of(l))) = 1.0;
  return SymmetricState(dims, std::move(amps));
}

SymmetricState coherent_state(const SystemDims& dims, const PhaseVector& phases) {
  if (phases.size() != static_cast<std::size_t>(dims.d() - 1)) {
    throw DomainError("coherent state needs " + std::to_string(dims.d() - 1) +
                      " phases, got " + std::to_string(phases.size()));
  }
  const DickeBasis basis(dims);
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& l = basis.label(i);
    double phase = 0.0;
    for (std::size_t a = 0; a < l.size(); ++a) phase += phases[a] * l[a];
    amps(static_cast<Eigen::Index>(i)) = multinomial_amplitude(dims, l) * std::polar(1.0, phase);
  }
  return SymmetricState(dims, std::move(amps));
}

Eigen::VectorXcd single_particle_state(int d, const PhaseVector& phases) {
  if (phases.size() != static_cast<std::size_t>(d - 1)) {
    throw DomainError("single-particle state needs d-1 phases");
  }
  Eigen::VectorXcd v(d);
  v(0) = 1.0;
  for (int a = 1; a < d; ++a) v(a) = std::polar(1.0, phases[static_cast<std::size_t>(a - 1)]);
  return v / std::sqrt(static_cast<double>(d));
}

Complex overlap(const SymmetricState& a, const SymmetricState& b) {
  if (!(a.dims() == b.dims())) throw DomainError("overlap of states with different dims");
  return a.amplitudes().dot(b.amplitudes()); // Eigen's dot conjugates the first argument
}

namespace {

void check_cap(const SystemDims& dims, std::size_t cap) {
  if (dims.full_size() > cap) {
    throw ResourceError("full space dimension " + std::to_string(dims.d()) + "^" +
                        std::to_string(dims.n()) + " exceeds cap " + std::to_string(cap));
  }
}

// For every product-basis index: the Dicke index and 1/sqrt(multiplicity).
struct FullMap {
  std::vector<std::size_t> dicke_index;
  std::vector<double> weight;
};

FullMap full_map(const SystemDims& dims) {
  const DickeBasis basis(dims);
  const std::size_t full = dims.full_size();
  FullMap map;
  map.dicke_index.resize(full);
  map.weight.resize(full);
  std::vector<int> occ(static_cast<std::size_t>(dims.d()), 0);
  for (std::size_t idx = 0; idx < full; ++idx) {
    std::fill(occ.begin(), occ.end(), 0);
    std::size_t rest = idx;
    for (int p = dims.n() - 1; p >= 0; --p) {
      ++occ[rest % static_cast<std::size_t>(dims.d())];
      rest /= static_cast<std::size_t>(dims.d());
    }
    map.dicke_index[idx] = basis.index_of(std::span<const int>(occ).subspan(1));
    map.weight[idx] = 1.0 / std::sqrt(multiplicity(occ));
  }
  return map;
}

} // namespace

Eigen::VectorXcd expand_to_full(const SymmetricState& s, std::size_t cap) {
  check_cap(s.dims(), cap);
  const auto map = full_map(s.dims());
  Eigen::VectorXcd full(static_cast<Eigen::Index>(map.weight.size()));
  for (std::size_t idx = 0; idx < map.weight.size(); ++idx) {
    full(static_cast<Eigen::Index>(idx)) = s.amplitude(map.dicke_index[idx]) * map.weight[idx];
  }
  return full;
}

Eigen::VectorXcd project_to_symmetric(const Eigen::VectorXcd& full, const SystemDims& dims,
                                      std::size_t cap) {
  check_cap(dims, cap);
  if (static_cast<std::size_t>(full.size()) != dims.full_size()) {
    throw DomainError("full-space vector has wrong length");
  }
  const auto map = full_map(dims);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dims.basis_size()));
  for (std::size_t idx = 0; idx < map.weight.size(); ++idx) {
    out(static_cast<Eigen::Index>(map.dicke_index[idx])) +=
        full(static_cast<Eigen::Index>(idx)) * map.weight[idx];
  }
  return out;
}

void require_unitary(const Eigen::MatrixXcd& u, int d, double tol) {
  if (u.rows() != d || u.cols() != d) {
    throw DomainError("expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
  }
  const double err = (u * u.adjoint() - Eigen::MatrixXcd::Identity(d, d)).norm();
  if (!(err <= tol)) {
    throw DomainError("matrix is not unitary (|u u^dag - 1| = " + std::to_string(err) + ")");
  }
}

namespace {

// Second-quantised generator sum_{ab} A_ab a_a^dag a_b restricted to the
// Dicke basis.
Eigen::MatrixXcd collective_generator(const DickeBasis& basis, const Eigen::MatrixXcd& a) {
  const auto& dims = basis.dims();
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto occ = occupations(dims, basis.label(col));
    for (int beta = 0; beta < dims.d(); ++beta) {
      const int nb = occ[static_cast<std::size_t>(beta)];
      if (nb == 0) continue;
      for (int alpha = 0; alpha < dims.d(); ++alpha) {
        const Complex coeff = a(alpha, beta);
        if (coeff == Complex{}) continue;
        if (alpha == beta) {
          g(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(col)) += coeff * double(nb);
          continue;
        }
        auto target = occ;
        --target[static_cast<std::size_t>(beta)];
        ++target[static_cast<std::size_t>(alpha)];
        const double amp = std::sqrt(double(nb) * double(target[static_cast<std::size_t>(alpha)]));
        const auto row = basis.index_of(std::span<const int>(target).subspan(1));
        g(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += coeff * amp;
      }
    }
  }
  return g;
}

} // namespace

Eigen::MatrixXcd symmetric_power(const SystemDims& dims, const Eigen::MatrixXcd& u) {
  require_unitary(u, dims.d());
  // u = exp(i A) with A Hermitian; then u^{(x)N} = exp(i dGamma(A)).
  const Eigen::MatrixXcd a = detail::unitary_log(u);
  const DickeBasis basis(dims);
  return detail::expi_hermitian(collective_generator(basis, a), 1.0);
}

SymmetricState apply_global_unitary(const SymmetricState& s, const Eigen::MatrixXcd& u) {
  return SymmetricState(s.dims(), symmetric_power(s.dims(), u) * s.amplitudes());
}

Eigen::MatrixXcd dft_matrix(int d) {
  Eigen::MatrixXcd f(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      f(j, k) = scale * detail::unit_root((j * k) % d, d);
    }
  }
  return f;
}

} // namespace boat
