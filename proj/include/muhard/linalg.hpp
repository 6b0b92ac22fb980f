#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "muhard/matrix.hpp"

namespace muhard {

enum class NormKind { Spectral, Frobenius, Trace };

using EigenMatrix = Eigen::MatrixXcd;

EigenMatrix to_eigen(const FloatMatrix& a);
FloatMatrix from_eigen(const EigenMatrix& a);

/// Spectral and trace norms come from the eigenvalues of A*A.
double norm(const FloatMatrix& a, NormKind kind);

bool is_hermitian(const FloatMatrix& a, double tol = 1e-12);
bool is_unitary(const FloatMatrix& a, double tol = 1e-10);
/// Minimum eigenvalue of the Hermitian part is at least -tol.
bool is_psd(const FloatMatrix& a, double tol = 1e-12);

/// Ascending eigenvalues of the Hermitian part of a.
Eigen::VectorXd hermitian_eigenvalues(const EigenMatrix& a);

/// vec(U) vec(U)*; throws PreconditionError when U is not unitary within 1e-10.
FloatMatrix choi_of_unitary(const FloatMatrix& u);

/// Haar-distributed unitary from QR of a complex Ginibre matrix with the
/// phases of R's diagonal absorbed into Q.
EigenMatrix haar_unitary(std::size_t n, std::mt19937_64& rng);

/// Q factor of the QR decomposition, with R's diagonal made positive real.
EigenMatrix orthonormalize(const EigenMatrix& a);

/// Unitary factor of the polar decomposition a = W·P.
EigenMatrix polar_unitary(const EigenMatrix& a);

/// exp(iH) for Hermitian H.
EigenMatrix exp_i_hermitian(const EigenMatrix& h);

}  // namespace muhard
