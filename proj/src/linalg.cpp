#include "muhard/linalg.hpp"

#include <cmath>

namespace muhard {

Rational exact_frobenius_norm_sq(const ExactMatrix& a) {
  Rational s = 0;
  for (const auto& e : a.entries()) {
    if (!e.is_zero()) s += e.norm_sq();
  }
  return s;
}

bool is_hermitian(const ExactMatrix& a) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (a(i, j) != a(j, i).conj()) return false;
  return true;
}

FloatMatrix to_float(const ExactMatrix& a) {
  FloatMatrix out(a.rows(), a.cols());
  auto src = a.entries();
  auto dst = out.entries();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i].is_zero() ? Complex(0.0) : src[i].to_complex();
  return out;
}

EigenMatrix to_eigen(const FloatMatrix& a) {
  EigenMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

FloatMatrix from_eigen(const EigenMatrix& a) {
  FloatMatrix out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const EigenMatrix& a) {
  EigenMatrix h = (a + a.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double norm(const FloatMatrix& a, NormKind kind) {
  if (kind == NormKind::Frobenius) return std::sqrt(frobenius_norm_sq(a));
  if (kind == NormKind::Trace && !a.is_square()) throw DimensionError("trace norm expects a square operator");
  EigenMatrix m = to_eigen(a);
  EigenMatrix gram = m.adjoint() * m;
  Eigen::VectorXd ev = hermitian_eigenvalues(gram);
  if (kind == NormKind::Spectral) return std::sqrt(std::max(ev.maxCoeff(), 0.0));
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) s += std::sqrt(std::max(ev(i), 0.0));
  return s;
}

bool is_hermitian(const FloatMatrix& a, double tol) {
  if (!a.is_square()) return false;
  return norm(a - adjoint(a), NormKind::Frobenius) <= tol;
}

bool is_unitary(const FloatMatrix& a, double tol) {
  if (!a.is_square()) return false;
  EigenMatrix m = to_eigen(a);
  EigenMatrix d = m.adjoint() * m - EigenMatrix::Identity(m.rows(), m.cols());
  return d.norm() <= tol;
}

bool is_psd(const FloatMatrix& a, double tol) {
  if (!a.is_square()) return false;
  return hermitian_eigenvalues(to_eigen(a)).minCoeff() >= -tol;
}

FloatMatrix choi_of_unitary(const FloatMatrix& u) {
  if (!u.is_square()) throw DimensionError("choi_of_unitary expects a square operator");
  if (!is_unitary(u, 1e-10)) throw PreconditionError("choi_of_unitary: operator is not unitary");
  std::vector<Complex> v = vec(u);
  return outer<Complex>(v, v);
}

EigenMatrix orthonormalize(const EigenMatrix& a) {
  Eigen::HouseholderQR<EigenMatrix> qr(a);
  EigenMatrix q = qr.householderQ() * EigenMatrix::Identity(a.rows(), a.cols());
  const EigenMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    std::complex<double> d = r(j, j);
    double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

EigenMatrix haar_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  EigenMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double re = gauss(rng);
      double im = gauss(rng);
      g(i, j) = {re, im};
    }
  return orthonormalize(g);
}

EigenMatrix polar_unitary(const EigenMatrix& a) {
  Eigen::JacobiSVD<EigenMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

EigenMatrix exp_i_hermitian(const EigenMatrix& h) {
  EigenMatrix herm = (h + h.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(herm);
  const auto& vals = solver.eigenvalues();
  Eigen::VectorXcd phases(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) phases(i) = std::polar(1.0, vals(i));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace muhard
