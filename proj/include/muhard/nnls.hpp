#pragma once

#include <Eigen/Dense>

namespace muhard {

/// argmin ‖Ax − b‖ subject to x ≥ 0 (Lawson–Hanson active set).
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol = 1e-12);

}  // namespace muhard
