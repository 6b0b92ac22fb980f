#include "muhard/objective.hpp"

#include "muhard/error.hpp"

namespace muhard {

QuadraticObjective QuadraticObjective::from_instance(const UqmInstance& inst) {
  QuadraticObjective f;
  f.n_ = inst.dim();
  for (const auto& a : inst.operators()) {
    std::vector<Entry> entries;
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c)
        if (!a(r, c).is_zero()) {
          entries.push_back({Eigen::Index(r), Eigen::Index(c), std::conj(a(r, c).to_complex())});
        }
    if (!entries.empty()) f.operators_.push_back(std::move(entries));
  }
  return f;
}

QuadraticObjective QuadraticObjective::from_matrix(EigenMatrix p, std::size_t n) {
  if (p.rows() != Eigen::Index(n * n) || p.cols() != Eigen::Index(n * n)) {
    throw DimensionError("quadratic form must be n^2 x n^2");
  }
  QuadraticObjective f;
  f.n_ = n;
  f.dense_ = std::move(p);
  f.is_dense_ = true;
  return f;
}

namespace {

Eigen::VectorXcd vec_of(const EigenMatrix& u) {
  const Eigen::Index n = u.rows();
  Eigen::VectorXcd v(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) v(i * n + j) = u(i, j);
  return v;
}

}  // namespace

double QuadraticObjective::value(const EigenMatrix& u) const {
  if (is_dense_) {
    Eigen::VectorXcd v = vec_of(u);
    return v.dot(dense_ * v).real();
  }
  double total = 0.0;
  for (const auto& op : operators_) {
    Complex c = 0.0;
    for (const auto& e : op) c += e.conj_value * u(e.row, e.col);
    total += std::norm(c);
  }
  return total;
}

double QuadraticObjective::value_and_gradient(const EigenMatrix& u, EigenMatrix& gradient) const {
  const Eigen::Index n = Eigen::Index(n_);
  gradient.setZero(n, n);
  if (is_dense_) {
    Eigen::VectorXcd v = vec_of(u);
    Eigen::VectorXcd pv = dense_ * v;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) gradient(i, j) = 2.0 * pv(i * n + j);
    return v.dot(pv).real();
  }
  double total = 0.0;
  for (const auto& op : operators_) {
    Complex c = 0.0;
    for (const auto& e : op) c += e.conj_value * u(e.row, e.col);
    if (c == Complex(0.0)) continue;
    total += std::norm(c);
    // 2·<A, U>·A, with A(r, c) = conj(conj_value)
    for (const auto& e : op) gradient(e.row, e.col) += 2.0 * c * std::conj(e.conj_value);
  }
  return total;
}

double uqm_objective(const UqmInstance& inst, const FloatMatrix& u) {
  if (u.rows() != inst.dim() || u.cols() != inst.dim()) {
    throw DimensionError("unitary dimension " + std::to_string(u.rows()) + " does not match instance dimension " +
                         std::to_string(inst.dim()));
  }
  if (!is_unitary(u, 1e-8)) throw PreconditionError("uqm_objective: input is not unitary within 1e-8");
  return QuadraticObjective::from_instance(inst).value(to_eigen(u));
}

}  // namespace muhard
