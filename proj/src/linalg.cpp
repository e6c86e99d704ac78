#include "linalg.hpp"

#include <cmath>
#include <numbers>

namespace boat::detail {

std::complex<double> unit_root(long long k, long long m) {
  k %= m;
  if (k < 0) k += m;
  if (k == 0) return {1.0, 0.0};
  if (2 * k == m) return {-1.0, 0.0};
  if (4 * k == m) return {0.0, 1.0};
  if (4 * k == 3 * m) return {0.0, -1.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
}

Eigen::MatrixXcd expi_hermitian(const Eigen::MatrixXcd& h, double t) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) phases(i) = std::polar(1.0, t * lambda(i));
  const Eigen::MatrixXcd& v = eig.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

Eigen::MatrixXcd unitary_log(const Eigen::MatrixXcd& u) {
  // The Schur form of a normal matrix is diagonal, and the Schur vectors stay
  // orthonormal inside degenerate eigenspaces.
  const Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u);
  const Eigen::MatrixXcd& q = schur.matrixU();
  const Eigen::MatrixXcd& t = schur.matrixT();
  Eigen::VectorXd angles(u.rows());
  for (Eigen::Index i = 0; i < u.rows(); ++i) angles(i) = std::arg(t(i, i));
  return q * angles.cast<std::complex<double>>().asDiagonal() * q.adjoint();
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::MatrixXcd kron_power(const Eigen::MatrixXcd& u, int n) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int i = 0; i < n; ++i) out = kron(out, u);
  return out;
}

std::complex<double> best_phase(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const std::complex<double> ov = b.dot(a); // <b|a>
  if (std::abs(ov) == 0.0) return {1.0, 0.0};
  return ov / std::abs(ov);
}

} // namespace boat::detail
