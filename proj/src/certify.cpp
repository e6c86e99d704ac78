#include "boat/certify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "boat/errors.hpp"

namespace boat {

namespace {

constexpr double kDegenerateTol = 1e-12;
constexpr double kSOverflowTol = 1e-9;
constexpr double kPsdTol = 1e-12;

void validate_block(const GHZBlock& b) {
  double total = 0.0;
  for (double p : b.populations) {
    if (!std::isfinite(p) || p < -kBlockTol) throw DomainError("negative or non-finite population");
    total += p;
  }
  if (total > 1.0 + kBlockTol) {
    throw DomainError("block populations sum to " + std::to_string(total) + " > 1");
  }
  for (double m : b.magnitudes) {
    if (!std::isfinite(m) || m < 0.0) throw DomainError("negative or non-finite coherence magnitude");
  }
  static constexpr std::array<std::array<int, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (std::size_t k = 0; k < 3; ++k) {
    const double bound =
        std::sqrt(std::max(0.0, b.populations[static_cast<std::size_t>(pairs[k][0])]) *
                  std::max(0.0, b.populations[static_cast<std::size_t>(pairs[k][1])]));
    if (b.magnitudes[k] > bound + kBlockTol) {
      throw DomainError("coherence |rho_" + std::to_string(pairs[k][0]) +
                        std::to_string(pairs[k][1]) + "| = " + std::to_string(b.magnitudes[k]) +
                        " violates Cauchy-Schwarz (bound " + std::to_string(bound) + ")");
    }
  }
}

int pair_slot(int i, int j) {
  if (i > j) std::swap(i, j);
  return i == 0 ? j - 1 : 2; // (0,1) -> 0, (0,2) -> 1, (1,2) -> 2
}

// Relabelled block with cos(theta) = c on the 1'2' coherence.
bool psd_at(double p0, double p1, double p2, double a, double b, double c, double cos_theta) {
  const double theta = std::acos(std::clamp(cos_theta, -1.0, 1.0));
  Eigen::Matrix3cd m;
  m << p0, a, b, a, p1, std::polar(c, theta), b, std::polar(c, -theta), p2;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -kPsdTol;
}

} // namespace

GHZBlock GHZBlock::make(std::array<double, 3> populations, std::array<double, 3> magnitudes,
                        std::optional<std::array<double, 3>> phases) {
  GHZBlock b{populations, magnitudes, phases};
  validate_block(b);
  return b;
}

Eigen::Matrix3cd GHZBlock::matrix() const {
  const auto ph = phases.value_or(std::array<double, 3>{0.0, 0.0, 0.0});
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  for (int a = 0; a < 3; ++a) m(a, a) = populations[static_cast<std::size_t>(a)];
  const Complex r01 = std::polar(magnitudes[0], ph[0]);
  const Complex r02 = std::polar(magnitudes[1], ph[1]);
  const Complex r12 = std::polar(magnitudes[2], ph[2]);
  m(0, 1) = r01;
  m(1, 0) = std::conj(r01);
  m(0, 2) = r02;
  m(2, 0) = std::conj(r02);
  m(1, 2) = r12;
  m(2, 1) = std::conj(r12);
  return m;
}

GHZBlock ghz_block(const SymmetricDensity& rho) {
  if (rho.dims().d() != 3) {
    throw UnsupportedDimension("GHZ block extraction supports d = 3 only, got d = " +
                               std::to_string(rho.dims().d()));
  }
  const DickeBasis basis(rho.dims());
  const std::array<std::size_t, 3> idx{basis.extreme_index(0), basis.extreme_index(1),
                                       basis.extreme_index(2)};
  std::array<double, 3> pops{};
  for (std::size_t a = 0; a < 3; ++a) pops[a] = rho(idx[a], idx[a]).real();
  const Complex r01 = rho(idx[0], idx[1]);
  const Complex r02 = rho(idx[0], idx[2]);
  const Complex r12 = rho(idx[1], idx[2]);
  return GHZBlock::make(pops, {std::abs(r01), std::abs(r02), std::abs(r12)},
                        std::array<double, 3>{std::arg(r01), std::arg(r02), std::arg(r12)});
}

GHZBlock block_from_measurements(std::array<double, 3> populations,
                                 const CoherenceMagnitudes& magnitudes) {
  return GHZBlock::make(populations, {magnitudes.rho01, magnitudes.rho02, magnitudes.rho12});
}

FidelityBounds fidelity_bounds(const GHZBlock& block) {
  validate_block(block);
  const auto& mag = block.magnitudes;

  // The smallest coherence becomes 1'2'; its complementary level is 0'.
  static constexpr std::array<std::array<int, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  std::size_t smallest = 0;
  for (std::size_t k = 1; k < 3; ++k) {
    if (mag[k] <= mag[smallest]) smallest = k;
  }
  const int i = pairs[smallest][0];
  const int j = pairs[smallest][1];
  const int zero = 3 - i - j;
  int one = i;
  int two = j;
  if (mag[static_cast<std::size_t>(pair_slot(zero, j))] >
      mag[static_cast<std::size_t>(pair_slot(zero, i))]) {
    std::swap(one, two);
  }

  const double p0 = block.populations[static_cast<std::size_t>(zero)];
  const double p1 = block.populations[static_cast<std::size_t>(one)];
  const double p2 = block.populations[static_cast<std::size_t>(two)];
  const double a = mag[static_cast<std::size_t>(pair_slot(zero, one))];
  const double b = mag[static_cast<std::size_t>(pair_slot(zero, two))];
  const double c = mag[static_cast<std::size_t>(pair_slot(one, two))];

  FidelityBounds out{};
  out.relabeling = {zero, one, two};
  out.upper = (p0 + p1 + p2) / 3.0 + 2.0 / 3.0 * (a + b + c);

  if (c < kDegenerateTol) {
    out.degenerate = true;
    out.s_raw = 0.0;
    out.s = 0.0;
    out.lower = out.upper - 2.0 / 3.0 * c;
  } else {
    if (a * b < kDegenerateTol) {
      out.degenerate = true;
      out.s_raw = -1.0;
    } else {
      using ld = long double;
      const ld num = static_cast<ld>(c) * c * p0 + static_cast<ld>(a) * a * p2 +
                     static_cast<ld>(b) * b * p1 - static_cast<ld>(p0) * p1 * p2;
      const ld den = 2.0L * a * b * c;
      out.s_raw = static_cast<double>(num / den);
    }
    if (out.s_raw > 1.0 + kSOverflowTol) {
      throw DomainError("block is not positive-semidefinite completable (s = " +
                        std::to_string(out.s_raw) + " > 1)");
    }
    out.s = std::clamp(out.s_raw, -1.0, 1.0);
    out.lower = out.upper - 2.0 / 3.0 * c * (1.0 - out.s);
  }

  // Exact feasible range of cos(theta) by bisection on the smallest eigenvalue.
  if (psd_at(p0, p1, p2, a, b, c, -1.0)) {
    out.s_eigen = -1.0;
  } else if (!psd_at(p0, p1, p2, a, b, c, 1.0)) {
    out.s_eigen = 1.0;
  } else {
    double lo = -1.0;
    double hi = 1.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (psd_at(p0, p1, p2, a, b, c, mid) ? hi : lo) = mid;
    }
    out.s_eigen = hi;
  }
  return out;
}

Verdict certify(const FidelityBounds& bounds, int d) {
  if (d < 2) throw DomainError("certification needs d >= 2");
  const double threshold = static_cast<double>(d - 1) / d;
  return {bounds.lower > threshold, d, threshold, bounds.lower - threshold, bounds};
}

std::vector<std::uint32_t> bipartition_masks(int n) {
  if (n < 1 || n > 30) throw DomainError("bipartitions need 1 <= N <= 30");
  std::vector<std::uint32_t> out;
  const std::uint32_t all = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t mask = 1; mask < all; ++mask) {
    const int size = std::popcount(mask);
    if (2 * size < n || (2 * size == n && (mask & 1U))) out.push_back(mask);
  }
  return out;
}

namespace {

void check_full(const Eigen::VectorXcd& full, const SystemDims& dims, std::size_t cap) {
  if (dims.full_size() > cap) {
    throw ResourceError("full space dimension " + std::to_string(dims.d()) + "^" +
                        std::to_string(dims.n()) + " exceeds cap " + std::to_string(cap));
  }
  if (static_cast<std::size_t>(full.size()) != dims.full_size()) {
    throw DomainError("state vector has length " + std::to_string(full.size()) + ", expected " +
                      std::to_string(dims.full_size()));
  }
}

// State reshaped to a (d^|A|) x (d^|B|) matrix. Particle 0 is the most
// significant digit of the flat index; within A and B the particle order is
// kept.
Eigen::MatrixXcd reshape_cut(const Eigen::VectorXcd& full, const SystemDims& dims,
                             std::uint32_t mask, std::vector<std::array<Eigen::Index, 2>>* where) {
  const int n = dims.n();
  const auto d = static_cast<Eigen::Index>(dims.d());
  const int na = std::popcount(mask);
  Eigen::Index rows = 1;
  for (int k = 0; k < na; ++k) rows *= d;
  const Eigen::Index cols = full.size() / rows;
  Eigen::MatrixXcd m(rows, cols);
  if (where) where->resize(static_cast<std::size_t>(full.size()));
  for (Eigen::Index flat = 0; flat < full.size(); ++flat) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    Eigen::Index rest = flat;
    Eigen::Index place_r = 1;
    Eigen::Index place_c = 1;
    for (int j = n - 1; j >= 0; --j) { // least significant digit first
      const Eigen::Index digit = rest % d;
      rest /= d;
      if (mask & (std::uint32_t{1} << j)) {
        r += digit * place_r;
        place_r *= d;
      } else {
        c += digit * place_c;
        place_c *= d;
      }
    }
    m(r, c) = full(flat);
    if (where) (*where)[static_cast<std::size_t>(flat)] = {r, c};
  }
  return m;
}

int count_rank(const Eigen::MatrixXcd& m, double tol) {
  const Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) throw DomainError("Schmidt rank of the zero vector");
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > tol * sv(0)) ++rank;
  }
  return rank;
}

void check_mask(const SystemDims& dims, std::uint32_t mask) {
  const std::uint32_t all = (std::uint32_t{1} << dims.n()) - 1;
  if (mask == 0 || mask >= all) throw DomainError("mask must select a proper nonempty subset");
}

Eigen::MatrixXcd orthonormal_columns(const Eigen::MatrixXcd& m) {
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
}

} // namespace

int schmidt_rank(const Eigen::VectorXcd& full, const SystemDims& dims, std::uint32_t mask,
                 double tol, std::size_t cap) {
  check_full(full, dims, cap);
  check_mask(dims, mask);
  return count_rank(reshape_cut(full, dims, mask, nullptr), tol);
}

SchmidtVector schmidt_vector(const Eigen::VectorXcd& full, const SystemDims& dims, double tol,
                             std::size_t cap) {
  check_full(full, dims, cap);
  SchmidtVector out;
  out.masks = bipartition_masks(dims.n());
  out.ranks.reserve(out.masks.size());
  for (auto mask : out.masks) out.ranks.push_back(count_rank(reshape_cut(full, dims, mask, nullptr), tol));
  return out;
}

Eigen::VectorXcd ghz_full_state(const SystemDims& dims, std::size_t cap) {
  if (dims.full_size() > cap) {
    throw ResourceError("full space dimension exceeds cap " + std::to_string(cap));
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dims.full_size()));
  // |a a ... a> has flat index a (d^{N-1} + ... + 1)
  Eigen::Index repunit = 0;
  for (int k = 0; k < dims.n(); ++k) repunit = repunit * dims.d() + 1;
  for (int a = 0; a < dims.d(); ++a) v(a * repunit) = 1.0 / std::sqrt(static_cast<double>(dims.d()));
  return v;
}

LowerRankResult max_fidelity_lower_rank(int d, int n, int trials, const LowerRankOptions& options,
                                        std::size_t cap) {
  if (n < 2) throw DomainError("a bipartition needs N >= 2");
  if (trials < 100) throw DomainError("at least 100 random restarts are required");
  const SystemDims dims(n, d);
  const Eigen::VectorXcd ghz = ghz_full_state(dims, cap);
  const std::uint32_t mask = options.mask.value_or((std::uint32_t{1} << (n / 2)) - 1);
  check_mask(dims, mask);

  std::vector<std::array<Eigen::Index, 2>> where;
  const Eigen::MatrixXcd m = reshape_cut(ghz, dims, mask, &where);
  const int full_rank = static_cast<int>(std::min(m.rows(), m.cols()));
  const int r = std::min(options.rank_cap.value_or(d - 1), full_rank);
  if (r < 1) throw DomainError("rank cap must be >= 1");

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  LowerRankResult best{-1.0, {}, mask, r};
  Eigen::MatrixXcd best_coeffs;

  for (int trial = 0; trial < trials; ++trial) {
    Eigen::MatrixXcd p(m.cols(), r);
    for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = Complex(gauss(rng), gauss(rng));
    p = orthonormal_columns(p);
    Eigen::MatrixXcd qa;
    double value = -1.0;
    for (int it = 0; it < options.max_iterations; ++it) {
      qa = orthonormal_columns(m * p);
      p = orthonormal_columns(m.adjoint() * qa);
      const double next = (qa.adjoint() * m * p).squaredNorm();
      const bool settled = next - value < 1e-15;
      value = next;
      if (settled) break;
    }
    if (value > best.fidelity) {
      best.fidelity = value;
      const Eigen::MatrixXcd g = qa.adjoint() * m * p;
      best_coeffs = qa * g * p.adjoint() / g.norm();
    }
  }

  best.state.resize(ghz.size());
  for (std::size_t flat = 0; flat < where.size(); ++flat) {
    best.state(static_cast<Eigen::Index>(flat)) = best_coeffs(where[flat][0], where[flat][1]);
  }
  return best;
}

} // namespace boat
