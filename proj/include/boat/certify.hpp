#pragma once

// GHZ-fidelity bounds, threshold verdicts and Schmidt-rank analysis.
//
// For qutrits the GHZ fidelity depends on the 3x3 block of rho spanned by
// |0>^N, |1>^N, |2>^N. When only coherence magnitudes are known, the unknown
// phase combination theta gives
//   F(theta) = (p0 + p1 + p2)/3 + (2/3)(|r01| + |r02| + |r12| cos theta),
// and positivity of the block forces cos theta >= s.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "boat/dicke.hpp"
#include "boat/mqc.hpp"

namespace boat {

inline constexpr double kBlockTol = 1e-12;

struct GHZBlock {
  std::array<double, 3> populations{}; ///< rho_00, rho_11, rho_22
  std::array<double, 3> magnitudes{};  ///< |rho_01|, |rho_02|, |rho_12|
  std::optional<std::array<double, 3>> phases; ///< arg rho_01, arg rho_02, arg rho_12

  /// Validated construction: nonnegative entries, trace <= 1, Cauchy-Schwarz.
  static GHZBlock make(std::array<double, 3> populations, std::array<double, 3> magnitudes,
                       std::optional<std::array<double, 3>> phases = std::nullopt);

  /// Block as a Hermitian matrix; missing phases are taken as zero.
  Eigen::Matrix3cd matrix() const;
};

/// Sub-block of rho on the labels (0,0), (N,0), (0,N). Qutrits only.
GHZBlock ghz_block(const SymmetricDensity& rho);

/// Phase-free block from measured populations and MQC magnitudes.
GHZBlock block_from_measurements(std::array<double, 3> populations,
                                 const CoherenceMagnitudes& magnitudes);

struct FidelityBounds {
  double lower;
  double upper;
  double s;     ///< clamped to [-1, 1]
  double s_raw; ///< before clamping
  /// Original level placed at positions 0', 1', 2' so that
  /// |r0'1'| >= |r0'2'| >= |r1'2'|.
  std::array<int, 3> relabeling;
  bool degenerate; ///< a coherence product below 1e-12 fixed s by convention
  /// Smallest cos(theta) with the block positive semidefinite, found by
  /// eigenvalue bisection.
  double s_eigen;
};

/// Throws DomainError when the block violates Cauchy-Schwarz or admits no
/// positive completion (s > 1).
FidelityBounds fidelity_bounds(const GHZBlock& block);

struct Verdict {
  bool certified;
  int d;
  double threshold; ///< (d-1)/d
  double margin;    ///< lower - threshold
  FidelityBounds bounds;
};

Verdict certify(const FidelityBounds& bounds, int d);

/// Bipartitions of N particles, one mask per unordered cut. The mask marks
/// the smaller side (bit j = particle j); for even splits the side holding
/// particle 0. Sorted ascending; 2^{N-1} - 1 entries.
std::vector<std::uint32_t> bipartition_masks(int n);

struct SchmidtVector {
  std::vector<std::uint32_t> masks;
  std::vector<int> ranks;
};

/// Schmidt rank across every bipartition, counting singular values above
/// tol * sigma_max.
SchmidtVector schmidt_vector(const Eigen::VectorXcd& full, const SystemDims& dims,
                             double tol = 1e-8, std::size_t cap = kDefaultExpandCap);

/// Single Schmidt rank across one cut.
int schmidt_rank(const Eigen::VectorXcd& full, const SystemDims& dims, std::uint32_t mask,
                 double tol = 1e-8, std::size_t cap = kDefaultExpandCap);

/// (1/sqrt d) sum_alpha |alpha>^N in the full product basis.
Eigen::VectorXcd ghz_full_state(const SystemDims& dims, std::size_t cap = kDefaultExpandCap);

struct LowerRankOptions {
  std::optional<int> rank_cap;      ///< default d - 1
  std::optional<std::uint32_t> mask; ///< default: the lowest floor(N/2) particles
  std::uint64_t seed = 7;
  int max_iterations = 500;
};

struct LowerRankResult {
  double fidelity;
  Eigen::VectorXcd state; ///< maximiser, full product basis
  std::uint32_t mask;
  int rank_cap;
};

/// Maximises |<phi|GHZ>|^2 over states of Schmidt rank <= rank_cap across
/// one cut, by alternating subspace updates from `trials` random starts.
LowerRankResult max_fidelity_lower_rank(int d, int n, int trials,
                                        const LowerRankOptions& options = {},
                                        std::size_t cap = kDefaultExpandCap);

} // namespace boat
