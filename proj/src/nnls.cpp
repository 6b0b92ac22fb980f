#include "muhard/nnls.hpp"

#include <limits>
#include <vector>

#include "muhard/error.hpp"

namespace muhard {

namespace {

Eigen::VectorXd solve_passive(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const std::vector<bool>& passive) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index j = 0; j < Eigen::Index(passive.size()); ++j)
    if (passive[j]) idx.push_back(j);
  Eigen::MatrixXd sub(a.rows(), Eigen::Index(idx.size()));
  for (std::size_t t = 0; t < idx.size(); ++t) sub.col(Eigen::Index(t)) = a.col(idx[t]);
  Eigen::VectorXd s_sub = sub.colPivHouseholderQr().solve(b);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(a.cols());
  for (std::size_t t = 0; t < idx.size(); ++t) s(idx[t]) = s_sub(Eigen::Index(t));
  return s;
}

}  // namespace

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol) {
  if (a.rows() != b.size()) throw DimensionError("nnls: row count does not match right-hand side");
  const Eigen::Index n = a.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);
  const std::size_t max_outer = 3 * std::size_t(n) + 10;

  for (std::size_t outer = 0; outer < max_outer; ++outer) {
    Eigen::VectorXd w = a.transpose() * (b - a * x);
    Eigen::Index best = -1;
    double best_w = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;

    for (std::size_t inner = 0; inner < max_outer; ++inner) {
      Eigen::VectorXd s = solve_passive(a, b, passive);
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[j] && s(j) <= 0) feasible = false;
      if (feasible) {
        x = s;
        break;
      }
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && s(j) <= 0) alpha = std::min(alpha, x(j) / (x(j) - s(j)));
      }
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && x(j) <= tol) {
          passive[j] = false;
          x(j) = 0;
        }
      }
    }
  }
  return x;
}

}  // namespace muhard
