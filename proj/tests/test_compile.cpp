#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "boat/certify.hpp"
#include "boat/compile.hpp"
#include "boat/errors.hpp"
#include "boat/evolution.hpp"
#include "oracles.hpp"

using namespace boat;
using std::numbers::pi;

namespace {

// (|b><a| + |a><b|)/2 summed over particles
Eigen::MatrixXcd sx_oracle(int n, int d, int a, int b) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d, d);
  s(a, b) = s(b, a) = 0.5;
  return oracle::collective(n, s);
}

std::size_t swap_count(const Circuit& c) {
  return static_cast<std::size_t>(std::count_if(c.ops.begin(), c.ops.end(), [](const GateOp& op) {
    return std::holds_alternative<SwapGate>(op);
  }));
}

// Splits a serial circuit into its conjugated blocks: k swaps, one pulse, k swaps.
std::vector<std::vector<GateOp>> blocks_of(const Circuit& c) {
  std::vector<std::vector<GateOp>> out;
  std::size_t i = 0;
  while (i < c.ops.size()) {
    std::size_t k = 0;
    while (std::holds_alternative<SwapGate>(c.ops[i + k])) ++k;
    const std::size_t len = 2 * k + 1;
    out.emplace_back(c.ops.begin() + static_cast<long>(i), c.ops.begin() + static_cast<long>(i + len));
    i += len;
  }
  return out;
}

Circuit join(const SystemDims& dims, const std::vector<std::vector<GateOp>>& blocks) {
  Circuit c{dims, {}};
  for (const auto& b : blocks) c.ops.insert(c.ops.end(), b.begin(), b.end());
  return c;
}

} // namespace

TEST(Compile, PulseCounts) {
  for (int d = 2; d <= 6; ++d) {
    const auto c = boat_circuit(SystemDims(3, d), EvolutionTime::two_pi_over(d));
    EXPECT_EQ(entangling_count(c), static_cast<std::size_t>(d * (d - 1) / 2));
    EXPECT_LE(swap_count(c), 4 * entangling_count(c));
    for (const auto& op : c.ops) {
      if (const auto* g = std::get_if<OatGate>(&op)) {
        EXPECT_EQ(g->alpha, 0);
        EXPECT_EQ(g->beta, 1);
        EXPECT_NEAR(g->duration, -(2.0 / d) * (2 * pi / d), 1e-15);
      }
    }
  }
  const auto qubit = boat_circuit(SystemDims(4, 2), EvolutionTime::radians(0.3));
  ASSERT_EQ(qubit.ops.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<OatGate>(qubit.ops[0]));
}

TEST(Compile, InvalidPair) {
  const SystemDims dims(2, 3);
  const auto t = EvolutionTime::two_pi_over(3);
  EXPECT_THROW(boat_circuit(dims, t, {1, 1}), DomainError);
  EXPECT_THROW(boat_circuit(dims, t, {2, 1}), DomainError);
  EXPECT_THROW(boat_circuit(dims, t, {0, 3}), DomainError);
}

TEST(Compile, ValidateRejectsBadOps) {
  const SystemDims dims(2, 3);
  EXPECT_THROW((Circuit{dims, {OatGate{1, 1, 0.3}}}.validate()), DomainError);
  EXPECT_THROW((Circuit{dims, {OatGate{0, 3, 0.3}}}.validate()), DomainError);
  EXPECT_THROW((Circuit{dims, {OatGate{0, 1, std::nan("")}}}.validate()), DomainError);
  EXPECT_THROW((Circuit{dims, {RotationGate{0, 1, Axis::x, INFINITY}}}.validate()), DomainError);
  EXPECT_THROW((Circuit{dims, {SwapGate{-1, 0}}}.validate()), DomainError);
  EXPECT_NO_THROW((Circuit{dims, {SwapGate{1, 1}}}.validate()));
}

TEST(Unitary, EmptyIsIdentity) {
  const SystemDims dims(3, 3);
  EXPECT_EQ(circuit_unitary(Circuit{dims, {}}), Eigen::MatrixXcd::Identity(27, 27));
}

TEST(Unitary, SingleSwap) {
  const Eigen::MatrixXcd u = circuit_unitary(Circuit{SystemDims(1, 3), {SwapGate{1, 0}}});
  Eigen::Matrix3cd expect = Eigen::Matrix3cd::Zero();
  expect(0, 1) = expect(1, 0) = Complex(0.0, -1.0);
  expect(2, 2) = 1.0;
  EXPECT_LT((u - expect).norm(), 1e-12);
  const Eigen::MatrixXcd back = circuit_unitary(Circuit{SystemDims(1, 3), {SwapGate{1, 0, true}}});
  EXPECT_LT((back * u - Eigen::MatrixXcd::Identity(3, 3)).norm(), 1e-12);
}

TEST(Unitary, SwapTwiceIsMinusOneOnPair) {
  const Eigen::MatrixXcd u = circuit_unitary(Circuit{SystemDims(1, 4), {SwapGate{3, 1}, SwapGate{3, 1}}});
  Eigen::VectorXcd diag(4);
  diag << 1.0, -1.0, 1.0, -1.0;
  EXPECT_LT((u - Eigen::MatrixXcd(diag.asDiagonal())).norm(), 1e-12);
}

TEST(Unitary, OatMatchesOracle) {
  const int n = 3;
  const int d = 3;
  const Eigen::MatrixXcd s = oracle::sz(n, d, 0, 2);
  const Eigen::MatrixXcd expect = oracle::propagator(s * s, 0.45);
  EXPECT_LT((circuit_unitary(Circuit{SystemDims(n, d), {OatGate{0, 2, 0.45}}}) - expect).norm(), 1e-10);
}

TEST(Wrapper, QubitPairMatchesZTwist) {
  const SystemDims dims(2, 2);
  const Eigen::MatrixXcd sz = oracle::sz(2, 2, 0, 1);
  for (double theta : {0.7, -1.3, 2.0}) {
    const Eigen::MatrixXcd u = circuit_unitary(Circuit{dims, ms_to_z_wrapper({0, 1}, theta)});
    EXPECT_LT((u - oracle::propagator(sz * sz, theta)).norm(), 1e-10) << theta;
  }
  const Eigen::MatrixXcd id = circuit_unitary(Circuit{dims, ms_to_z_wrapper({0, 1}, 0.0)});
  EXPECT_LT((id - Eigen::MatrixXcd::Identity(4, 4)).norm(), 1e-12);
}

TEST(Wrapper, MsPulseMatchesOracle) {
  const Eigen::MatrixXcd sx = sx_oracle(2, 3, 1, 2);
  const Eigen::MatrixXcd u = circuit_unitary(Circuit{SystemDims(2, 3), {MsGate{1, 2, 0.9}}});
  EXPECT_LT((u - oracle::propagator(sx * sx, 0.9)).norm(), 1e-10);
}

TEST(Wrapper, LeavesOtherLevelsAlone) {
  const SystemDims dims(2, 3);
  const Eigen::MatrixXcd u = circuit_unitary(Circuit{dims, ms_to_z_wrapper({0, 1}, 0.7)});
  // |22> has flat index 8
  EXPECT_NEAR(std::abs(u(8, 8) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(u.col(8).norm(), 1.0, 1e-12);
  const Eigen::MatrixXcd sz = oracle::sz(2, 3, 0, 1);
  EXPECT_LT((u - oracle::propagator(sz * sz, 0.7)).norm(), 1e-10);
}

TEST(Dense, BoatUnitaryMatchesOracle) {
  for (const auto& [n, d] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{2, 4}, std::pair{3, 2}}) {
    const SystemDims dims(n, d);
    for (double t : {0.3, 2 * pi / 3, pi}) {
      const Eigen::MatrixXcd expect = oracle::propagator(oracle::boat_hamiltonian(n, d), t);
      EXPECT_LT((dense_boat_unitary(dims, EvolutionTime::radians(t)) - expect).norm(), 1e-10);
    }
  }
}

TEST(Verify, SerialCircuitsAreExact) {
  for (const auto& [n, d, t] : {std::tuple{2, 3, EvolutionTime::two_pi_over(3)},
                                 std::tuple{3, 3, EvolutionTime::two_pi_over(3)},
                                 std::tuple{2, 4, EvolutionTime::two_pi_over(2)},
                                 std::tuple{3, 4, EvolutionTime::radians(0.8)},
                                 std::tuple{5, 2, EvolutionTime::radians(1.1)}}) {
    const SystemDims dims(n, d);
    const auto c = boat_circuit(dims, t);
    const Eigen::MatrixXcd expect = oracle::propagator(oracle::boat_hamiltonian(n, d), t.value());
    const Eigen::MatrixXcd u = circuit_unitary(c);
    EXPECT_LT(oracle::op_norm(u - expect), 1e-10) << n << "," << d;
    EXPECT_LT(oracle::phase_free_op_distance(u, expect), 1e-10);
    const auto report = verify_equivalence(c, t);
    ASSERT_TRUE(report.unitary_residual.has_value());
    EXPECT_LT(*report.unitary_residual, 1e-10);
    EXPECT_LT(report.state_residual, 1e-10);
  }
}

TEST(Verify, OtherFixedPairsAndNativeMs) {
  const SystemDims dims(2, 4);
  const auto t = EvolutionTime::two_pi_over(2);
  for (std::pair<int, int> pair : {std::pair{0, 1}, std::pair{1, 3}, std::pair{0, 2}}) {
    for (bool ms : {false, true}) {
      const auto c = boat_circuit(dims, t, pair, ms);
      EXPECT_EQ(entangling_count(c), 6u);
      const auto report = verify_equivalence(c, t);
      EXPECT_LT(*report.unitary_residual, 1e-10) << pair.first << pair.second << ms;
      EXPECT_LT(report.state_residual, 1e-10);
    }
  }
}

TEST(Verify, MissingBlockIsDetected) {
  const SystemDims dims(2, 3);
  const auto t = EvolutionTime::two_pi_over(3);
  auto blocks = blocks_of(boat_circuit(dims, t));
  ASSERT_EQ(blocks.size(), 3u);
  blocks.erase(blocks.begin() + 1);
  const auto report = verify_equivalence(join(dims, blocks), t);
  EXPECT_GT(*report.unitary_residual, 0.1);
  EXPECT_GT(report.state_residual, 0.01);
}

TEST(Verify, BlockOrderDoesNotMatter) {
  for (const auto& [n, d] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{2, 4}}) {
    const SystemDims dims(n, d);
    const auto c = boat_circuit(dims, EvolutionTime::radians(0.9));
    const Eigen::MatrixXcd base = circuit_unitary(c);
    auto blocks = blocks_of(c);
    ASSERT_EQ(blocks.size(), static_cast<std::size_t>(d * (d - 1) / 2));
    std::mt19937_64 rng(static_cast<std::uint64_t>(n * 10 + d));
    for (int trial = 0; trial < 8; ++trial) {
      std::shuffle(blocks.begin(), blocks.end(), rng);
      EXPECT_LT(oracle::op_norm(circuit_unitary(join(dims, blocks)) - base), 1e-10);
    }
  }
}

TEST(Verify, LargeSystemsAtStateLevel) {
  const SystemDims dims(9, 3);
  const auto t = EvolutionTime::two_pi_over(3);
  const auto report = verify_equivalence(boat_circuit(dims, t), t);
  EXPECT_FALSE(report.unitary_residual.has_value());
  EXPECT_LT(report.state_residual, 1e-10);
  EXPECT_THROW(circuit_unitary(boat_circuit(SystemDims(7, 3), t)), ResourceError);
}

TEST(Apply, SymmetricMatchesDense) {
  const SystemDims dims(3, 3);
  const auto c = boat_circuit(dims, EvolutionTime::radians(0.6), {0, 2}, true);
  const auto s = coherent_state(dims, {0.3, -0.9});
  const Eigen::VectorXcd dense = circuit_unitary(c) * expand_to_full(s);
  EXPECT_LT((expand_to_full(apply_circuit(c, s)) - dense).norm(), 1e-10);
  EXPECT_THROW(apply_circuit(c, coherent_state(SystemDims(4, 3), {0, 0})), DomainError);
}

TEST(Apply, CompiledPreparationGivesSameBlock) {
  const auto t = EvolutionTime::two_pi_over(3);
  for (int n : {2, 3}) {
    const SystemDims dims(n, 3);
    const auto comps = coherent_decomposition(dims, {0.0, 0.0}, 3);
    const auto align = alignment_unitary(comps, 3);
    const auto start = apply_global_unitary(SymmetricState::ground(dims), preparation_unitary(3, {0.0, 0.0}));
    const auto compiled = apply_global_unitary(apply_circuit(boat_circuit(dims, t), start), align);
    const auto direct = apply_global_unitary(evolve(start, t), align);
    const auto a = ghz_block(SymmetricDensity::from_pure(compiled));
    const auto b = ghz_block(SymmetricDensity::from_pure(direct));
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_NEAR(a.populations[k], b.populations[k], 1e-10);
      EXPECT_NEAR(a.magnitudes[k], b.magnitudes[k], 1e-10);
    }
    EXPECT_NEAR(fidelity_bounds(a).lower, 1.0, 1e-9);
  }
}
