#include "boat/compile.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "boat/errors.hpp"
#include "linalg.hpp"

namespace boat {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };

void check_level(const SystemDims& dims, int level) {
  if (level < 0 || level >= dims.d()) {
    throw DomainError("level " + std::to_string(level) + " out of range for d = " +
                      std::to_string(dims.d()));
  }
}

void check_pair(const SystemDims& dims, int a, int b) {
  check_level(dims, a);
  check_level(dims, b);
  if (a == b) throw DomainError("pair gate needs two distinct levels");
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void check_dense(const SystemDims& dims, std::size_t cap) {
  if (dims.full_size() > cap) {
    throw ResourceError("dense unitary of dimension " + std::to_string(dims.d()) + "^" +
                        std::to_string(dims.n()) + " exceeds cap " + std::to_string(cap) +
                        "; use the state-level check");
  }
}

// Single-particle unitary of a swap: -i sigma_x on the pair (or +i for the
// adjoint), identity elsewhere.
Eigen::MatrixXcd swap_matrix(int d, const SwapGate& g) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
  if (g.gamma == g.alpha) return u;
  const Complex f = g.adjoint ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
  u(g.gamma, g.gamma) = 0.0;
  u(g.alpha, g.alpha) = 0.0;
  u(g.gamma, g.alpha) = f;
  u(g.alpha, g.gamma) = f;
  return u;
}

Eigen::MatrixXcd rotation_matrix(int d, const RotationGate& g) {
  const char axis = g.axis == Axis::x ? 'x' : 'y';
  return detail::expi_hermitian(pair_pauli(d, g.alpha, g.beta, axis), -0.5 * g.angle);
}

int swapped(int level, int a, int b) {
  if (level == a) return b;
  if (level == b) return a;
  return level;
}

// exp(-i duration ((n_beta - n_alpha)/2)^2) for a label's occupations.
Complex oat_phase(const std::vector<int>& occ, int alpha, int beta, double duration) {
  const double sz = 0.5 * (occ[static_cast<std::size_t>(beta)] - occ[static_cast<std::size_t>(alpha)]);
  return std::polar(1.0, -duration * sz * sz);
}

Eigen::VectorXcd oat_diagonal_symmetric(const SystemDims& dims, int alpha, int beta,
                                        double duration) {
  const DickeBasis basis(dims);
  Eigen::VectorXcd diag(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    diag(static_cast<Eigen::Index>(i)) =
        oat_phase(occupations(dims, basis.label(i)), alpha, beta, duration);
  }
  return diag;
}

// Level occupations of every product basis state; particle 0 is the most
// significant digit.
std::vector<std::vector<int>> product_occupations(const SystemDims& dims) {
  const auto size = dims.full_size();
  std::vector<std::vector<int>> out(size, std::vector<int>(static_cast<std::size_t>(dims.d()), 0));
  for (std::size_t flat = 0; flat < size; ++flat) {
    std::size_t rest = flat;
    for (int j = 0; j < dims.n(); ++j) {
      ++out[flat][rest % static_cast<std::size_t>(dims.d())];
      rest /= static_cast<std::size_t>(dims.d());
    }
  }
  return out;
}

// m <- u^{(x)N} m, one particle at a time.
void apply_product_left(const Eigen::MatrixXcd& u, int n, Eigen::MatrixXcd& m) {
  const Eigen::Index d = u.rows();
  Eigen::MatrixXcd rows(d, m.cols());
  Eigen::Index stride = 1;
  for (int j = 0; j < n; ++j, stride *= d) {
    for (Eigen::Index base = 0; base < m.rows(); base += stride * d) {
      for (Eigen::Index off = 0; off < stride; ++off) {
        for (Eigen::Index k = 0; k < d; ++k) rows.row(k) = m.row(base + off + k * stride);
        rows = u * rows;
        for (Eigen::Index k = 0; k < d; ++k) m.row(base + off + k * stride) = rows.row(k);
      }
    }
  }
}

void scale_rows_oat(const std::vector<std::vector<int>>& occ, int alpha, int beta, double duration,
                    Eigen::MatrixXcd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    m.row(i) *= oat_phase(occ[static_cast<std::size_t>(i)], alpha, beta, duration);
  }
}

} // namespace

void Circuit::validate() const {
  for (const auto& op : ops) {
    std::visit(overloaded{
                   [&](const SwapGate& g) {
                     check_level(dims, g.gamma);
                     check_level(dims, g.alpha);
                   },
                   [&](const OatGate& g) {
                     check_pair(dims, g.alpha, g.beta);
                     check_finite(g.duration, "OAT duration");
                   },
                   [&](const MsGate& g) {
                     check_pair(dims, g.alpha, g.beta);
                     check_finite(g.duration, "MS duration");
                   },
                   [&](const RotationGate& g) {
                     check_pair(dims, g.alpha, g.beta);
                     check_finite(g.angle, "rotation angle");
                   },
               },
               op);
  }
}

std::vector<GateOp> ms_to_z_wrapper(std::pair<int, int> pair, double duration) {
  const auto [alpha, beta] = pair;
  if (alpha == beta) throw DomainError("pair gate needs two distinct levels");
  const double quarter = 0.5 * std::numbers::pi;
  return {RotationGate{alpha, beta, Axis::y, quarter}, MsGate{alpha, beta, duration},
          RotationGate{alpha, beta, Axis::y, -quarter}};
}

Circuit boat_circuit(const SystemDims& dims, const EvolutionTime& t, std::pair<int, int> fixed_pair,
                     bool native_ms) {
  const auto [alpha, beta] = fixed_pair;
  if (alpha < 0 || beta <= alpha || beta >= dims.d()) {
    throw DomainError("fixed pair must satisfy 0 <= alpha < beta < d");
  }
  const double duration = -2.0 / dims.d() * t.value();
  Circuit c{dims, {}};
  for (int gamma = 0; gamma < dims.d(); ++gamma) {
    for (int delta = gamma + 1; delta < dims.d(); ++delta) {
      // Swap pairs (first, second in time) whose combined level permutation
      // carries {gamma, delta} onto {alpha, beta}.
      const std::array<std::array<SwapGate, 2>, 4> candidates{{
          {SwapGate{gamma, alpha}, SwapGate{delta, beta}},
          {SwapGate{delta, beta}, SwapGate{gamma, alpha}},
          {SwapGate{gamma, beta}, SwapGate{delta, alpha}},
          {SwapGate{delta, alpha}, SwapGate{gamma, beta}},
      }};
      const std::array<SwapGate, 2>* chosen = nullptr;
      for (const auto& cand : candidates) {
        auto image = [&](int level) {
          level = swapped(level, cand[0].gamma, cand[0].alpha);
          return swapped(level, cand[1].gamma, cand[1].alpha);
        };
        const int a = image(gamma);
        const int b = image(delta);
        if ((a == alpha && b == beta) || (a == beta && b == alpha)) {
          chosen = &cand;
          break;
        }
      }
      if (!chosen) throw std::logic_error("no swap sequence found for a level pair");

      std::vector<GateOp> block;
      for (const auto& s : *chosen) {
        if (s.gamma != s.alpha) block.emplace_back(s);
      }
      const std::size_t swaps = block.size();
      if (native_ms) {
        for (auto& g : ms_to_z_wrapper({alpha, beta}, duration)) block.push_back(g);
      } else {
        block.emplace_back(OatGate{alpha, beta, duration});
      }
      for (std::size_t k = swaps; k-- > 0;) {
        auto s = std::get<SwapGate>(block[k]);
        s.adjoint = !s.adjoint;
        block.emplace_back(s);
      }
      c.ops.insert(c.ops.end(), block.begin(), block.end());
    }
  }
  return c;
}

std::size_t entangling_count(const Circuit& c) {
  std::size_t n = 0;
  for (const auto& op : c.ops) {
    if (std::holds_alternative<OatGate>(op) || std::holds_alternative<MsGate>(op)) ++n;
  }
  return n;
}

Eigen::MatrixXcd pair_pauli(int d, int alpha, int beta, char axis) {
  if (alpha < 0 || beta < 0 || alpha >= d || beta >= d || alpha == beta) {
    throw DomainError("invalid level pair");
  }
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d, d);
  switch (axis) {
  case 'x':
    s(beta, alpha) = 1.0;
    s(alpha, beta) = 1.0;
    break;
  case 'y':
    s(beta, alpha) = Complex(0.0, -1.0);
    s(alpha, beta) = Complex(0.0, 1.0);
    break;
  case 'z':
    s(beta, beta) = 1.0;
    s(alpha, alpha) = -1.0;
    break;
  default:
    throw DomainError(std::string("unknown axis ") + axis);
  }
  return s;
}

Eigen::MatrixXcd collective_operator(const SystemDims& dims, const Eigen::MatrixXcd& op,
                                     std::size_t cap) {
  check_dense(dims, cap);
  const auto d = static_cast<Eigen::Index>(dims.d());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dims.full_size()),
                                                static_cast<Eigen::Index>(dims.full_size()));
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  for (int j = 0; j < dims.n(); ++j) {
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < dims.n(); ++k) term = detail::kron(term, k == j ? op : id);
    out += term;
  }
  return out;
}

Eigen::MatrixXcd circuit_unitary(const Circuit& c, std::size_t cap) {
  c.validate();
  check_dense(c.dims, cap);
  const auto dim = static_cast<Eigen::Index>(c.dims.full_size());
  const int d = c.dims.d();
  const int n = c.dims.n();
  const auto occ = product_occupations(c.dims);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& op : c.ops) {
    std::visit(overloaded{
                   [&](const SwapGate& g) { apply_product_left(swap_matrix(d, g), n, u); },
                   [&](const RotationGate& g) { apply_product_left(rotation_matrix(d, g), n, u); },
                   [&](const OatGate& g) { scale_rows_oat(occ, g.alpha, g.beta, g.duration, u); },
                   [&](const MsGate& g) {
                     // S_x = R S_z R^dag with R = exp(-i (pi/2) S_y)
                     const Eigen::MatrixXcd r =
                         rotation_matrix(d, {g.alpha, g.beta, Axis::y, 0.5 * std::numbers::pi});
                     apply_product_left(r.adjoint(), n, u);
                     scale_rows_oat(occ, g.alpha, g.beta, g.duration, u);
                     apply_product_left(r, n, u);
                   },
               },
               op);
  }
  return u;
}

Eigen::MatrixXcd dense_boat_unitary(const SystemDims& dims, const EvolutionTime& t,
                                    std::size_t cap) {
  check_dense(dims, cap);
  const auto dim = static_cast<Eigen::Index>(dims.full_size());
  const auto occ = product_occupations(dims);
  const double chi_prime = 2.0 / dims.d();
  Eigen::VectorXcd diag(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    double h = 0.0;
    const auto& o = occ[static_cast<std::size_t>(i)];
    for (int a = 0; a < dims.d(); ++a) {
      for (int b = a + 1; b < dims.d(); ++b) {
        const double sz = 0.5 * (o[static_cast<std::size_t>(b)] - o[static_cast<std::size_t>(a)]);
        h -= chi_prime * sz * sz;
      }
    }
    diag(i) = std::polar(1.0, -h * t.value());
  }
  return diag.asDiagonal();
}

SymmetricState apply_circuit(const Circuit& c, const SymmetricState& s) {
  c.validate();
  if (!(c.dims == s.dims())) throw DomainError("circuit and state dimensions differ");
  const int d = c.dims.d();
  Eigen::VectorXcd amps = s.amplitudes();
  for (const auto& op : c.ops) {
    std::visit(overloaded{
                   [&](const SwapGate& g) {
                     amps = symmetric_power(c.dims, swap_matrix(d, g)) * amps;
                   },
                   [&](const RotationGate& g) {
                     amps = symmetric_power(c.dims, rotation_matrix(d, g)) * amps;
                   },
                   [&](const OatGate& g) {
                     amps = oat_diagonal_symmetric(c.dims, g.alpha, g.beta, g.duration)
                                .cwiseProduct(amps);
                   },
                   [&](const MsGate& g) {
                     // S_x = R S_z R^dag with R = exp(-i (pi/2) S_y)
                     const Eigen::MatrixXcd r = symmetric_power(
                         c.dims, rotation_matrix(d, {g.alpha, g.beta, Axis::y,
                                                     0.5 * std::numbers::pi}));
                     const Eigen::VectorXcd diag =
                         oat_diagonal_symmetric(c.dims, g.alpha, g.beta, g.duration);
                     amps = r * diag.cwiseProduct(r.adjoint() * amps);
                   },
               },
               op);
  }
  return SymmetricState(c.dims, std::move(amps));
}

EquivalenceReport verify_equivalence(const Circuit& c, const EvolutionTime& t, std::size_t cap) {
  EquivalenceReport report{};
  if (c.dims.full_size() <= cap) {
    const Eigen::MatrixXcd u = circuit_unitary(c, cap);
    const Eigen::MatrixXcd v = dense_boat_unitary(c.dims, t, cap);
    const Complex tr = (v.adjoint() * u).trace();
    const Complex phase = std::abs(tr) > 0.0 ? tr / std::abs(tr) : Complex(1.0, 0.0);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u - phase * v);
    report.unitary_residual = svd.singularValues()(0);
  }
  const auto start = coherent_state(c.dims, PhaseVector(static_cast<std::size_t>(c.dims.d() - 1), 0.0));
  const Eigen::VectorXcd a = apply_circuit(c, start).amplitudes();
  const Eigen::VectorXcd b = evolve(start, t).amplitudes();
  report.state_residual = (a - detail::best_phase(a, b) * b).norm();
  return report;
}

} // namespace boat
