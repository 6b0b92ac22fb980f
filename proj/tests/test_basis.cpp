#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "muhard/basis.hpp"
#include "muhard/linalg.hpp"

using namespace muhard;

namespace {

// Textbook construction, written out separately from the library's table.
std::vector<ExactMatrix> gell_mann_oracle(std::size_t n) {
  std::vector<ExactMatrix> sym, anti, diag;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      ExactMatrix s(n, n), a(n, n);
      s(j, k) = 1;
      s(k, j) = 1;
      a(j, k) = RationalComplex::i();
      a(k, j) = -RationalComplex::i();
      sym.push_back(s);
      anti.push_back(a);
    }
  for (std::size_t k = 1; k < n; ++k) {
    ExactMatrix d(n, n);
    for (std::size_t j = 0; j < k; ++j) d(j, j) = 1;
    d(k, k) = -static_cast<long>(k);
    diag.push_back(d);
  }
  std::vector<ExactMatrix> out = sym;
  out.insert(out.end(), anti.begin(), anti.end());
  out.insert(out.end(), diag.begin(), diag.end());
  return out;
}

FloatPoint random_point(std::size_t n, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  FloatPoint p{n, std::vector<double>(coordinate_count(n))};
  for (auto& v : p.x) v = u(rng);
  return p;
}

}  // namespace

TEST(GellMann, MatchesOracleForSmallDimensions) {
  for (std::size_t n : {2, 3, 4}) {
    const GellMannBasis basis(n);
    const auto oracle = gell_mann_oracle(n);
    ASSERT_EQ(basis.size(), n * n - 1);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      EXPECT_EQ(basis.exact(j), oracle[j]) << "n=" << n << " j=" << j;
      EXPECT_EQ(Rational(basis.norm_sq(j)), exact_frobenius_norm_sq(oracle[j]));
    }
  }
}

TEST(GellMann, QubitCase) {
  const GellMannBasis b(2);
  EXPECT_EQ(b.norm_sq(2), 2);
  ExactMatrix z(2, 2);
  z(0, 0) = 1;
  z(1, 1) = -1;
  EXPECT_EQ(b.exact(2), z);
  EXPECT_EQ(b.family(0), GellMannFamily::Symmetric);
  EXPECT_EQ(b.family(1), GellMannFamily::Antisymmetric);
  EXPECT_EQ(b.family(2), GellMannFamily::Diagonal);
}

TEST(GellMann, QutritLastOperator) {
  const GellMannBasis b(3);
  ASSERT_EQ(b.size(), 8u);
  const ExactMatrix last = b.exact(7);
  EXPECT_EQ(last(0, 0), RationalComplex(1));
  EXPECT_EQ(last(1, 1), RationalComplex(1));
  EXPECT_EQ(last(2, 2), RationalComplex(-2));
  EXPECT_EQ(b.norm_sq(7), 6);
}

TEST(GellMann, OccurrenceIndexIsConsistent) {
  const GellMannBasis b(3);
  for (std::size_t j = 0; j < b.size(); ++j)
    for (const auto& e : b.entries(j)) {
      bool found = false;
      for (const auto& o : b.occurrences(e.row, e.col)) found |= o.index == j && o.re == e.re && o.im == e.im;
      EXPECT_TRUE(found);
    }
}

TEST(TensorBasis, LastQubitElement) {
  const TensorBasis h(2);
  ASSERT_EQ(h.size(), 9u);
  ExactMatrix z(2, 2);
  z(0, 0) = 1;
  z(1, 1) = -1;
  EXPECT_EQ(h.exact(8), kron(z, z));
}

TEST(TensorBasis, ExactOrthogonalityAndNormBounds) {
  for (std::size_t n : {2, 3}) {
    const TensorBasis h(n);
    std::vector<ExactMatrix> ops;
    for (std::size_t j = 0; j < h.size(); ++j) ops.push_back(h.exact(j));
    for (std::size_t i = 0; i < ops.size(); ++i) {
      EXPECT_TRUE(trace(ops[i]).is_zero());
      EXPECT_TRUE(is_hermitian(ops[i]));
      const long ns = h.norm_sq(i);
      EXPECT_GE(ns, 1);
      EXPECT_LE(ns, static_cast<long>(n * n * n * n));
      EXPECT_EQ(inner(ops[i], ops[i]), RationalComplex(ns));
      for (std::size_t j = i + 1; j < ops.size(); ++j) ASSERT_TRUE(inner(ops[i], ops[j]).is_zero()) << i << "," << j;
    }
  }
}

TEST(TensorBasis, ForEachEntryMatchesKron) {
  const TensorBasis h(3);
  const GellMannBasis& g = h.factor_basis();
  for (std::size_t j : {0ul, 13ul, 40ul, 63ul}) {
    auto [a, b] = h.factors(j);
    EXPECT_EQ(h.exact(j), kron(g.exact(a), g.exact(b)));
  }
}

TEST(AffineMap, ZeroIsDepolarizing) {
  for (std::size_t n : {2, 3}) {
    const ExactPoint zero{n, std::vector<Rational>(coordinate_count(n))};
    const ExactMatrix j = phi_map(zero);
    ExactMatrix expected = kron(ExactMatrix::identity(n), ExactMatrix::identity(n));
    expected *= RationalComplex(make_rational(1, n));
    EXPECT_EQ(j, expected);
    EXPECT_EQ(j, depolarizing_choi(n));
    const ExactPoint back = phi_inverse(j, n);
    for (const auto& v : back.x) EXPECT_EQ(v, 0);
  }
}

TEST(AffineMap, ScaledLastCoordinateStaysInSubspace) {
  ExactPoint x{2, std::vector<Rational>(9)};
  x.x[8] = make_rational(1, 4);
  const ExactMatrix j = phi_map(x);
  EXPECT_TRUE(is_hermitian(j));
  EXPECT_EQ(partial_trace(j, TracedFactor::Left, 2), ExactMatrix::identity(2));
  EXPECT_EQ(partial_trace(j, TracedFactor::Right, 2), ExactMatrix::identity(2));
}

TEST(AffineMap, FrobeniusNormIdentity) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> num(-5, 5);
  for (std::size_t n : {2, 3}) {
    const TensorBasis h(n);
    ExactPoint x{n, std::vector<Rational>(coordinate_count(n))};
    Rational expected = 1;
    for (std::size_t j = 0; j < x.x.size(); ++j) {
      x.x[j] = make_rational(num(rng), 7);
      expected += x.x[j] * x.x[j] * h.norm_sq(j);
    }
    EXPECT_EQ(exact_frobenius_norm_sq(phi_map(x)), expected);
  }
}

TEST(AffineMap, FloatRoundtripAndMarginals) {
  std::mt19937_64 rng(12);
  for (std::size_t n : {2, 3, 4}) {
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
      const FloatPoint x = random_point(n, rng, 0.05);
      const FloatMatrix j = phi_map(x);
      const FloatPoint back = phi_inverse(j, n);
      for (std::size_t i = 0; i < x.x.size(); ++i) worst = std::max(worst, std::abs(back.x[i] - x.x[i]));
      const FloatMatrix id = FloatMatrix::identity(n);
      EXPECT_LE(norm(partial_trace(j, TracedFactor::Left, n) - id, NormKind::Frobenius), 1e-12);
      EXPECT_LE(norm(partial_trace(j, TracedFactor::Right, n) - id, NormKind::Frobenius), 1e-12);
    }
    EXPECT_LE(worst, 1e-12) << "n=" << n;
  }
}

TEST(AffineMap, UnitaryChoiCoordinatesAreBounded) {
  std::mt19937_64 rng(31);
  for (std::size_t n : {2, 3}) {
    const FloatMatrix j = choi_of_unitary(from_eigen(haar_unitary(n, rng)));
    const FloatPoint x = phi_inverse(j, n);
    double s = 0;
    for (double v : x.x) s += v * v;
    EXPECT_LT(std::sqrt(s), double(n));
    EXPECT_LT(norm(phi_map(x) - j, NormKind::Frobenius), 1e-10);
  }
}

TEST(AffineMap, RejectsMatricesOffTheSubspace) {
  ExactMatrix bad = ExactMatrix::identity(4);
  EXPECT_THROW(phi_inverse(bad, 2), NotInAffineSubspace);
  FloatMatrix fbad = FloatMatrix::identity(4);
  EXPECT_THROW(phi_inverse(fbad, 2), NotInAffineSubspace);
  EXPECT_THROW(phi_map(ExactPoint{2, std::vector<Rational>(8)}), DimensionError);
}

TEST(AffineMap, ChannelDimensionLookup) {
  EXPECT_EQ(channel_dimension_for(9), 2u);
  EXPECT_EQ(channel_dimension_for(64), 3u);
  EXPECT_EQ(channel_dimension_for(225), 4u);
  EXPECT_FALSE(channel_dimension_for(5).has_value());
  EXPECT_FALSE(channel_dimension_for(0).has_value());
  EXPECT_TRUE(std::holds_alternative<UnitBall>(convex_set_for_dimension(5)));
  EXPECT_EQ(std::get<MixedUnitaryCoordinates>(convex_set_for_dimension(64)).n, 3u);
}
