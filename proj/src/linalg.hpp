#pragma once

// Small dense linear-algebra helpers shared by the library sources.

#include <complex>

#include <Eigen/Dense>

namespace boat::detail {

/// exp(2 pi i k / m) with k reduced modulo m; quarter turns are exact.
std::complex<double> unit_root(long long k, long long m);

/// exp(i t H) for Hermitian H via its eigendecomposition.
Eigen::MatrixXcd expi_hermitian(const Eigen::MatrixXcd& h, double t);

/// Hermitian A with exp(i A) = u, for unitary u. Eigenvalues of A lie in
/// (-pi, pi].
Eigen::MatrixXcd unitary_log(const Eigen::MatrixXcd& u);

/// Kronecker product a (x) b.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// u^{(x) n} as a dense matrix.
Eigen::MatrixXcd kron_power(const Eigen::MatrixXcd& u, int n);

/// Phase e^{i phi} maximising Re<a| e^{i phi} b>, i.e. the global phase that
/// best aligns b with a.
std::complex<double> best_phase(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

} // namespace boat::detail
