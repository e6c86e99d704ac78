#pragma once

// Serial compilation of BOAT into two-level OAT pulses conjugated by global
// level swaps.
//
// Pair operators for levels alpha, beta (beta plays the "up" role):
//   sigma_z = |beta><beta| - |alpha><alpha|
//   sigma_x = |beta><alpha| + |alpha><beta|
//   sigma_y = -i|beta><alpha| + i|alpha><beta|
// and S^a = sum_j sigma_a^j / 2 over the N particles.
//
// Ops are listed in time order: ops[0] acts first.

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "boat/dicke.hpp"
#include "boat/evolution.hpp"

namespace boat {

/// exp(-i pi S^x_{gamma alpha}), or its inverse when adjoint is set.
struct SwapGate {
  int gamma;
  int alpha;
  bool adjoint = false;
  friend bool operator==(const SwapGate&, const SwapGate&) = default;
};

/// exp(-i duration S_{beta alpha,z}^2)
struct OatGate {
  int alpha;
  int beta;
  double duration;
  friend bool operator==(const OatGate&, const OatGate&) = default;
};

/// exp(-i duration S_{beta alpha,x}^2), the native Molmer-Sorensen form.
struct MsGate {
  int alpha;
  int beta;
  double duration;
  friend bool operator==(const MsGate&, const MsGate&) = default;
};

enum class Axis { x, y };

/// exp(-i angle S^axis_{beta alpha})
struct RotationGate {
  int alpha;
  int beta;
  Axis axis;
  double angle;
  friend bool operator==(const RotationGate&, const RotationGate&) = default;
};

using GateOp = std::variant<SwapGate, OatGate, MsGate, RotationGate>;

struct Circuit {
  SystemDims dims;
  std::vector<GateOp> ops;

  /// Throws DomainError on out-of-range levels, degenerate pairs or
  /// non-finite parameters.
  void validate() const;
};

/// BOAT evolution exp(-iHt) with H = -(2/d) sum_{a<b} S_{ba,z}^2 as one
/// conjugated OAT block per level pair, pairs in lexicographic order. With
/// native_ms each OAT pulse is replaced by ms_to_z_wrapper.
Circuit boat_circuit(const SystemDims& dims, const EvolutionTime& t,
                     std::pair<int, int> fixed_pair = {0, 1}, bool native_ms = false);

/// [R_y(+pi/2), MS(duration), R_y(-pi/2)] on (alpha, beta); the composite is
/// exp(-i duration S_{beta alpha,z}^2).
std::vector<GateOp> ms_to_z_wrapper(std::pair<int, int> pair, double duration);

/// Number of OAT-type pulses (OAT or MS).
std::size_t entangling_count(const Circuit& c);

/// Cap for dense d^N x d^N unitaries.
inline constexpr std::size_t kDenseCap = 729; // 3^6

/// Single-particle d x d generator sigma_axis for the pair; axis in {x,y,z}.
Eigen::MatrixXcd pair_pauli(int d, int alpha, int beta, char axis);

/// sum_j 1 (x) ... (x) op_j (x) ... (x) 1 on the full product space.
Eigen::MatrixXcd collective_operator(const SystemDims& dims, const Eigen::MatrixXcd& op,
                                     std::size_t cap = kDenseCap);

/// Dense product of the gate unitaries.
Eigen::MatrixXcd circuit_unitary(const Circuit& c, std::size_t cap = kDenseCap);

/// Dense diagonal exp(-iHt) on the product space.
Eigen::MatrixXcd dense_boat_unitary(const SystemDims& dims, const EvolutionTime& t,
                                    std::size_t cap = kDenseCap);

/// Runs the circuit inside the symmetric subspace.
SymmetricState apply_circuit(const Circuit& c, const SymmetricState& s);

struct EquivalenceReport {
  /// ||U - e^{i phi} V||_2 with e^{i phi} from tr(V^dag U); absent when d^N
  /// exceeds the dense cap.
  std::optional<double> unitary_residual;
  /// || c|coh> - e^{i phi} evolve(|coh>, t) || for the phase-zero coherent state.
  double state_residual;
};

EquivalenceReport verify_equivalence(const Circuit& c, const EvolutionTime& t,
                                     std::size_t cap = kDenseCap);

} // namespace boat
