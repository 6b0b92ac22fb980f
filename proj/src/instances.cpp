#include "muhard/instances.hpp"

#include <string>

namespace muhard {

namespace {

void require_positive(const Integer& m, const char* what) {
  if (sgn(m) <= 0) throw PreconditionError(std::string(what) + ": precision parameter must be positive");
}

}  // namespace

UqmInstance::UqmInstance(std::size_t dim, std::vector<ExactMatrix> operators, Rational alpha, Integer precision_m)
    : dim_(dim), operators_(std::move(operators)), alpha_(std::move(alpha)), precision_m_(std::move(precision_m)) {
  if (dim_ == 0) throw PreconditionError("UQM instance needs dim >= 1");
  require_positive(precision_m_, "UQM instance");
  for (std::size_t j = 0; j < operators_.size(); ++j) {
    const auto& a = operators_[j];
    if (a.rows() != dim_ || a.cols() != dim_) {
      throw DimensionError("UQM operator " + std::to_string(j) + " is not " + std::to_string(dim_) + "x" +
                           std::to_string(dim_));
    }
    if (exact_frobenius_norm_sq(a) > 1) {
      throw PreconditionError("UQM operator " + std::to_string(j) + " has 2-norm above 1");
    }
  }
}

Rational squared_norm(const std::vector<Rational>& v) {
  Rational s = 0;
  for (const auto& x : v)
    if (sgn(x) != 0) s += x * x;
  return s;
}

WoptInstance::WoptInstance(std::vector<Rational> u, Rational beta, Integer precision_m)
    : u_(std::move(u)), beta_(std::move(beta)), precision_m_(std::move(precision_m)) {
  if (u_.empty()) throw PreconditionError("WOPT instance needs N >= 1");
  require_positive(precision_m_, "WOPT instance");
  if (squared_norm(u_) > 1) throw PreconditionError("WOPT direction u has norm above 1");
}

WmemInstance::WmemInstance(std::vector<Rational> x, Integer precision_m)
    : x_(std::move(x)), precision_m_(std::move(precision_m)) {
  if (x_.empty()) throw PreconditionError("WMEM instance needs N >= 1");
  require_positive(precision_m_, "WMEM instance");
}

MudInstance::MudInstance(std::size_t n, ExactMatrix choi, Integer precision_m)
    : n_(n), choi_(std::move(choi)), precision_m_(std::move(precision_m)) {
  if (n_ < 1) throw PreconditionError("MUD instance needs n >= 1");
  require_positive(precision_m_, "MUD instance");
  if (choi_.rows() != n_ * n_ || choi_.cols() != n_ * n_) throw DimensionError("MUD Choi matrix is not n^2 x n^2");
  if (!is_hermitian(choi_)) throw NotInAffineSubspace("MUD Choi matrix is not Hermitian");
  const ExactMatrix id = ExactMatrix::identity(n_);
  if (partial_trace(choi_, TracedFactor::Left, n_) != id) {
    throw NotInAffineSubspace("MUD Choi matrix is not trace preserving");
  }
  if (partial_trace(choi_, TracedFactor::Right, n_) != id) throw NotInAffineSubspace("MUD Choi matrix is not unital");
}

}  // namespace muhard
