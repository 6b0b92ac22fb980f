#pragma once

#include <vector>

#include "muhard/instances.hpp"
#include "muhard/linalg.hpp"

namespace muhard {

/// f(U) = vec(U)* P vec(U) for Hermitian P, stored either as a list of
/// sparse operators (P = Σ vec(A_j)vec(A_j)*) or as a dense matrix.
class QuadraticObjective {
 public:
  static QuadraticObjective from_instance(const UqmInstance& inst);
  /// P is n²×n² in the row-major vec convention.
  static QuadraticObjective from_matrix(EigenMatrix p, std::size_t n);

  std::size_t dim() const { return n_; }

  double value(const EigenMatrix& u) const;
  /// Returns f(U) and writes the Euclidean gradient 2·unvec(P vec U).
  double value_and_gradient(const EigenMatrix& u, EigenMatrix& gradient) const;

 private:
  struct Entry {
    Eigen::Index row, col;
    Complex conj_value;
  };

  std::size_t n_ = 0;
  std::vector<std::vector<Entry>> operators_;
  EigenMatrix dense_;
  bool is_dense_ = false;
};

/// Σ_j |<A_j, U>|². Throws DimensionError on a size mismatch and
/// PreconditionError when U is not unitary within 1e-8.
double uqm_objective(const UqmInstance& inst, const FloatMatrix& u);

}  // namespace muhard
