#include "muhard/basis.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "muhard/linalg.hpp"

namespace muhard {

GellMannBasis::GellMannBasis(std::size_t n) : n_(n), pairs_(n * (n - 1) / 2) {
  if (n < 2) throw PreconditionError("Gell-Mann basis needs n >= 2, got " + std::to_string(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) entries_.push_back({{j, k, 1, 0}, {k, j, 1, 0}});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) entries_.push_back({{j, k, 0, 1}, {k, j, 0, -1}});
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<GaussianEntry> diag;
    for (std::size_t j = 0; j < k; ++j) diag.push_back({j, j, 1, 0});
    diag.push_back({k, k, -static_cast<long>(k), 0});
    entries_.push_back(std::move(diag));
  }

  by_position_.resize(n * n);
  for (std::size_t idx = 0; idx < entries_.size(); ++idx) {
    long s = 0;
    for (const auto& e : entries_[idx]) {
      s += e.re * e.re + e.im * e.im;
      by_position_[e.row * n + e.col].push_back({idx, e.re, e.im});
    }
    norm_sq_.push_back(s);
  }
}

std::shared_ptr<const GellMannBasis> GellMannBasis::cached(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const GellMannBasis>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto basis = std::make_shared<const GellMannBasis>(n);
  cache.emplace(n, basis);
  return basis;
}

GellMannFamily GellMannBasis::family(std::size_t j) const {
  if (j >= size()) throw std::out_of_range("Gell-Mann index out of range");
  if (j < pairs_) return GellMannFamily::Symmetric;
  if (j < 2 * pairs_) return GellMannFamily::Antisymmetric;
  return GellMannFamily::Diagonal;
}

ExactMatrix GellMannBasis::exact(std::size_t j) const {
  ExactMatrix m(n_, n_);
  for (const auto& e : entries(j)) m(e.row, e.col) = RationalComplex(Integer(e.re), Integer(e.im), Integer(1));
  return m;
}

FloatMatrix GellMannBasis::dense(std::size_t j) const {
  FloatMatrix m(n_, n_);
  for (const auto& e : entries(j)) m(e.row, e.col) = Complex(double(e.re), double(e.im));
  return m;
}

ExactMatrix TensorBasis::exact(std::size_t j) const {
  const std::size_t d = n() * n();
  ExactMatrix m(d, d);
  for_each_entry(j, [&](std::size_t r, std::size_t c, long re, long im) {
    m(r, c) = RationalComplex(Integer(re), Integer(im), Integer(1));
  });
  return m;
}

FloatMatrix TensorBasis::dense(std::size_t j) const {
  const std::size_t d = n() * n();
  FloatMatrix m(d, d);
  for_each_entry(j, [&](std::size_t r, std::size_t c, long re, long im) { m(r, c) = Complex(double(re), double(im)); });
  return m;
}

std::size_t coordinate_count(std::size_t n) { return (n * n - 1) * (n * n - 1); }

ExactMatrix depolarizing_choi(std::size_t n) {
  ExactMatrix m(n * n, n * n);
  const RationalComplex inv_n(make_rational(1, Integer(static_cast<unsigned long>(n))));
  for (std::size_t i = 0; i < n * n; ++i) m(i, i) = inv_n;
  return m;
}

FloatMatrix depolarizing_choi_float(std::size_t n) {
  FloatMatrix m(n * n, n * n);
  for (std::size_t i = 0; i < n * n; ++i) m(i, i) = 1.0 / double(n);
  return m;
}

namespace {

template <typename Real>
void require_length(const AffinePoint<Real>& p) {
  if (p.n < 2) throw PreconditionError("affine point needs n >= 2");
  if (p.x.size() != coordinate_count(p.n)) {
    throw DimensionError("affine point has " + std::to_string(p.x.size()) + " coordinates, expected " +
                         std::to_string(coordinate_count(p.n)));
  }
}

}  // namespace

ExactMatrix phi_map(const ExactPoint& point) {
  require_length(point);
  const std::size_t n = point.n;
  const std::size_t d = n * n;
  TensorBasis basis(n);
  std::vector<Rational> re(d * d), im(d * d);
  const Rational inv_n = make_rational(1, Integer(static_cast<unsigned long>(n)));
  for (std::size_t i = 0; i < d; ++i) re[i * d + i] = inv_n;
  for (std::size_t j = 0; j < point.x.size(); ++j) {
    const Rational& xj = point.x[j];
    if (sgn(xj) == 0) continue;
    basis.for_each_entry(j, [&](std::size_t r, std::size_t c, long hr, long hi) {
      if (hr != 0) re[r * d + c] += xj * hr;
      if (hi != 0) im[r * d + c] += xj * hi;
    });
  }
  ExactMatrix out(d, d);
  for (std::size_t i = 0; i < d * d; ++i) {
    if (sgn(re[i]) != 0 || sgn(im[i]) != 0) out.entries()[i] = RationalComplex(re[i], im[i]);
  }
  return out;
}

FloatMatrix phi_map(const FloatPoint& point) {
  require_length(point);
  const std::size_t n = point.n;
  TensorBasis basis(n);
  FloatMatrix out = depolarizing_choi_float(n);
  for (std::size_t j = 0; j < point.x.size(); ++j) {
    const double xj = point.x[j];
    if (xj == 0.0) continue;
    basis.for_each_entry(j, [&](std::size_t r, std::size_t c, long hr, long hi) {
      out(r, c) += xj * Complex(double(hr), double(hi));
    });
  }
  return out;
}

ExactPoint phi_inverse(const ExactMatrix& x, std::size_t n) {
  if (x.rows() != n * n || x.cols() != n * n) throw DimensionError("phi_inverse: expected an n^2 x n^2 operator");
  if (!is_hermitian(x)) throw NotInAffineSubspace("phi_inverse: operator is not Hermitian");
  const ExactMatrix id = ExactMatrix::identity(n);
  if (partial_trace(x, TracedFactor::Left, n) != id || partial_trace(x, TracedFactor::Right, n) != id) {
    throw NotInAffineSubspace("phi_inverse: partial traces differ from the identity");
  }
  const std::size_t d = n * n;
  std::vector<Rational> re(d * d), im(d * d);
  for (std::size_t i = 0; i < d * d; ++i) {
    const auto& e = x.entries()[i];
    if (e.is_zero()) continue;
    re[i] = e.real();
    im[i] = e.imag();
  }
  TensorBasis basis(n);
  ExactPoint out{n, std::vector<Rational>(basis.size())};
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Rational acc = 0;
    // Re(conj(h)·X) = hr·Re X + hi·Im X
    basis.for_each_entry(j, [&](std::size_t r, std::size_t c, long hr, long hi) {
      if (hr != 0) acc += re[r * d + c] * hr;
      if (hi != 0) acc += im[r * d + c] * hi;
    });
    out.x[j] = acc / basis.norm_sq(j);
  }
  return out;
}

FloatPoint phi_inverse(const FloatMatrix& x, std::size_t n, double tol) {
  if (x.rows() != n * n || x.cols() != n * n) throw DimensionError("phi_inverse: expected an n^2 x n^2 operator");
  if (!is_hermitian(x, tol)) throw NotInAffineSubspace("phi_inverse: operator is not Hermitian");
  const FloatMatrix id = FloatMatrix::identity(n);
  if (norm(partial_trace(x, TracedFactor::Left, n) - id, NormKind::Frobenius) > tol ||
      norm(partial_trace(x, TracedFactor::Right, n) - id, NormKind::Frobenius) > tol) {
    throw NotInAffineSubspace("phi_inverse: partial traces differ from the identity");
  }
  const std::size_t d = n * n;
  TensorBasis basis(n);
  FloatPoint out{n, std::vector<double>(basis.size())};
  for (std::size_t j = 0; j < basis.size(); ++j) {
    double acc = 0.0;
    basis.for_each_entry(j, [&](std::size_t r, std::size_t c, long hr, long hi) {
      const Complex& e = x.entries()[r * d + c];
      acc += double(hr) * e.real() + double(hi) * e.imag();
    });
    out.x[j] = acc / double(basis.norm_sq(j));
  }
  return out;
}

std::optional<std::size_t> channel_dimension_for(std::size_t k) {
  std::size_t root = static_cast<std::size_t>(std::llround(std::sqrt(double(k))));
  for (std::size_t s = root > 0 ? root - 1 : 0; s <= root + 1; ++s) {
    if (s * s != k) continue;
    std::size_t n = static_cast<std::size_t>(std::llround(std::sqrt(double(s + 1))));
    for (std::size_t t = n > 0 ? n - 1 : 0; t <= n + 1; ++t) {
      if (t >= 2 && t * t == s + 1) return t;
    }
  }
  return std::nullopt;
}

ConvexFamilyMember convex_set_for_dimension(std::size_t k) {
  if (auto n = channel_dimension_for(k)) return MixedUnitaryCoordinates{*n};
  return UnitBall{k};
}

}  // namespace muhard
