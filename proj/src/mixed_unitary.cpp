#include "muhard/mixed_unitary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "muhard/error.hpp"
#include "muhard/manifold.hpp"
#include "muhard/nnls.hpp"

namespace muhard {

namespace {

constexpr double kAffineTol = 1e-10;
constexpr double kPsdTol = 1e-9;
constexpr double kBallMargin = 1e-12;
constexpr std::size_t kFullEigenLimit = 256;

void require_affine(const FloatMatrix& choi, std::size_t n) {
  if (choi.rows() != n * n || choi.cols() != n * n) throw DimensionError("Choi matrix must be n^2 x n^2");
  if (!is_hermitian(choi, kAffineTol)) throw NotInAffineSubspace("Choi matrix is not Hermitian");
  const FloatMatrix id = FloatMatrix::identity(n);
  if (norm(partial_trace(choi, TracedFactor::Left, n) - id, NormKind::Frobenius) > kAffineTol ||
      norm(partial_trace(choi, TracedFactor::Right, n) - id, NormKind::Frobenius) > kAffineTol) {
    throw NotInAffineSubspace("partial traces of the Choi matrix differ from the identity");
  }
}

EigenMatrix hermitian_part(const FloatMatrix& a) {
  EigenMatrix m = to_eigen(a);
  return (m + m.adjoint()) * 0.5;
}

double distance_from_spectrum(const Eigen::VectorXd& ev, std::size_t n) {
  double dist = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) dist = std::max(dist, std::abs(ev(i) - 1.0 / double(n)));
  return dist;
}

double radius(std::size_t n) { return 1.0 / (double(n) * (double(n * n) - 1.0)); }

Eigen::VectorXcd vec_of(const EigenMatrix& u) {
  const Eigen::Index n = u.rows();
  Eigen::VectorXcd v(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) v(i * n + j) = u(i, j);
  return v;
}

EigenMatrix unvec_of(const Eigen::VectorXcd& v, Eigen::Index n) {
  EigenMatrix u(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) u(i, j) = v(i * n + j);
  return u;
}

/// Eigenvector of the largest eigenvalue of Hermitian h.
Eigen::VectorXcd top_eigenvector(const EigenMatrix& h) {
  const Eigen::Index d = h.rows();
  if (std::size_t(d) <= kFullEigenLimit) {
    Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(h);
    return solver.eigenvectors().col(d - 1);
  }
  // Shifted power iteration from a deterministic start.
  const double shift = h.norm();
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(d) / std::sqrt(double(d));
  for (Eigen::Index i = 0; i < d; ++i) v(i) += Complex(1e-3 * double(i % 7), 1e-3 * double(i % 5));
  v.normalize();
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXcd next = h * v + shift * v;
    const double nn = next.norm();
    if (nn == 0) break;
    next /= nn;
    const double change = (next - v).norm();
    v = std::move(next);
    if (change < 1e-13) break;
  }
  return v;
}

/// Real coordinates of a Hermitian matrix with off-diagonals scaled by √2,
/// so the Euclidean norm equals the Frobenius norm.
Eigen::VectorXd embed(const EigenMatrix& h) {
  const Eigen::Index d = h.rows();
  Eigen::VectorXd out(d * d);
  Eigen::Index k = 0;
  const double s = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i) out(k++) = h(i, i).real();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      out(k++) = s * h(i, j).real();
      out(k++) = s * h(i, j).imag();
    }
  return out;
}

struct Atom {
  EigenMatrix u;
  Eigen::VectorXcd a;
  Eigen::VectorXd embedded;
};

EigenMatrix mixture(const std::vector<Atom>& atoms, const std::vector<double>& w, Eigen::Index d) {
  EigenMatrix m = EigenMatrix::Zero(d, d);
  for (std::size_t k = 0; k < atoms.size(); ++k) m.noalias() += w[k] * (atoms[k].a * atoms[k].a.adjoint());
  return m;
}

std::vector<double> refit_weights(const std::vector<Atom>& atoms, const Eigen::VectorXd& target) {
  const Eigen::Index rows = target.size();
  const Eigen::Index cols = Eigen::Index(atoms.size());
  constexpr double kSumWeight = 100.0;
  Eigen::MatrixXd a(rows + 1, cols);
  Eigen::VectorXd b(rows + 1);
  for (Eigen::Index k = 0; k < cols; ++k) {
    a.col(k).head(rows) = atoms[k].embedded;
    a(rows, k) = kSumWeight;
  }
  b.head(rows) = target;
  b(rows) = kSumWeight;
  Eigen::VectorXd x = nnls(a, b);
  double sum = x.sum();
  std::vector<double> w(atoms.size());
  if (!(sum > 0)) {
    std::fill(w.begin(), w.end(), 1.0 / double(w.size()));
    return w;
  }
  for (Eigen::Index k = 0; k < cols; ++k) w[k] = x(k) / sum;
  return w;
}

Atom make_atom(EigenMatrix u) {
  Atom atom;
  atom.a = vec_of(u);
  atom.embedded = embed(atom.a * atom.a.adjoint());
  atom.u = std::move(u);
  return atom;
}

/// Block-coordinate moves of the atoms: with the weights fixed, the best U_k
/// maximizes vec(U)* R_k vec(U) where R_k is the residual without atom k.
double refine(std::vector<Atom>& atoms, std::vector<double>& weights, const EigenMatrix& j,
              const Eigen::VectorXd& target, EigenMatrix& residual, const DecompositionConfig& cfg) {
  const Eigen::Index d = j.rows();
  const std::size_t n = std::size_t(atoms.front().u.rows());
  SolverConfig sub;
  sub.max_iterations = cfg.subproblem_iterations;
  sub.diagonal_warm_start = false;
  sub.tolerance = 1e-16;
  sub.restarts = 1;
  double res_norm = residual.norm();
  for (std::size_t sweep = 0; sweep < cfg.refine_sweeps; ++sweep) {
    const double before = res_norm;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const EigenMatrix partial = residual + weights[k] * (atoms[k].a * atoms[k].a.adjoint());
      ManifoldResult moved = minimize_unitary(QuadraticObjective::from_matrix(-partial, n), sub, {atoms[k].u});
      atoms[k] = make_atom(std::move(moved.u));
      residual = partial - weights[k] * (atoms[k].a * atoms[k].a.adjoint());
    }
    weights = refit_weights(atoms, target);
    residual = j - mixture(atoms, weights, d);
    res_norm = residual.norm();
    if (res_norm <= cfg.tolerance || before - res_norm < 1e-3 * before) break;
  }
  return res_norm;
}

/// Rotation search. With J = BB*, every k-atom decomposition is √p_k vec(U_k) = B x_k
/// for the columns x_k of an r×k matrix with orthonormal rows. Minimizes
/// Σ_k ‖M_k*M_k − tr(M_k*M_k)/n·I‖² over such matrices, M_k = unvec(B x_k).
class RotationSearch {
 public:
  RotationSearch(const EigenMatrix& b, std::size_t n, Eigen::Index k) : b_(b), n_(Eigen::Index(n)), k_(k) {}

  /// Objective and Euclidean gradient for Y = X* (k×r, orthonormal columns).
  double value(const EigenMatrix& y, EigenMatrix* grad) const {
    const EigenMatrix cols = b_ * y.adjoint();
    if (grad) grad->resize(k_, b_.cols());
    double f = 0;
    for (Eigen::Index c = 0; c < k_; ++c) {
      const EigenMatrix m = unvec_of(cols.col(c), n_);
      EigenMatrix t = m.adjoint() * m;
      t.diagonal().array() -= t.trace() / double(n_);
      f += t.squaredNorm();
      if (grad) grad->row(c) = (4.0 * (b_.adjoint() * vec_of(m * t))).adjoint();
    }
    return f;
  }

  EigenMatrix descend(EigenMatrix y, std::size_t iterations, double* final_value) const {
    EigenMatrix g;
    double f = value(y, &g);
    double step = 1.0;
    for (std::size_t it = 0; it < iterations && f > 1e-28; ++it) {
      const EigenMatrix sym = y.adjoint() * g;
      const EigenMatrix rg = g - y * ((sym + sym.adjoint()) * 0.5);
      bool accepted = false;
      EigenMatrix trial;
      double trial_f = 0;
      while (step > 1e-14) {
        trial = retract(y - step * rg);
        trial_f = value(trial, nullptr);
        if (trial_f < f) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
      y = std::move(trial);
      f = value(y, &g);
      step = std::min(step * 2.0, 1e3);
    }
    *final_value = f;
    return y;
  }

  /// Levenberg–Marquardt on the same residuals plus Y*Y − I, in real coordinates.
  EigenMatrix polish(const EigenMatrix& y, std::size_t iterations) const {
    struct Residuals {
      using Scalar = double;
      using InputType = Eigen::VectorXd;
      using ValueType = Eigen::VectorXd;
      using JacobianType = Eigen::MatrixXd;
      enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
      const RotationSearch* self;
      Eigen::Index rows, cols;
      int inputs() const { return int(2 * rows * cols); }
      int values() const { return int(2 * rows * self->n_ * self->n_ + 2 * cols * cols); }
      int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
        const EigenMatrix y = unpack(x, rows, cols);
        const EigenMatrix all = self->b_ * y.adjoint();
        const Eigen::Index nn = self->n_;
        Eigen::Index at = 0;
        for (Eigen::Index c = 0; c < rows; ++c) {
          const EigenMatrix m = unvec_of(all.col(c), nn);
          EigenMatrix t = m.adjoint() * m;
          t.diagonal().array() -= t.trace() / double(nn);
          for (Eigen::Index i = 0; i < t.size(); ++i) {
            out(at++) = t(i).real();
            out(at++) = t(i).imag();
          }
        }
        const EigenMatrix gram = y.adjoint() * y - EigenMatrix::Identity(cols, cols);
        for (Eigen::Index i = 0; i < gram.size(); ++i) {
          out(at++) = gram(i).real();
          out(at++) = gram(i).imag();
        }
        return 0;
      }
    };
    Residuals f{this, y.rows(), y.cols()};
    Eigen::NumericalDiff<Residuals, Eigen::Central> diff(f);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Residuals, Eigen::Central>> lm(diff);
    lm.parameters.maxfev = int(iterations) * (f.inputs() * 2 + 1);
    lm.parameters.xtol = 1e-15;
    lm.parameters.ftol = 1e-30;
    Eigen::VectorXd x = pack(y);
    lm.minimize(x);
    return retract(unpack(x, y.rows(), y.cols()));
  }

  static Eigen::VectorXd pack(const EigenMatrix& y) {
    Eigen::VectorXd x(2 * y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      x(2 * i) = y(i).real();
      x(2 * i + 1) = y(i).imag();
    }
    return x;
  }

  static EigenMatrix unpack(const Eigen::VectorXd& x, Eigen::Index rows, Eigen::Index cols) {
    EigenMatrix y(rows, cols);
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = Complex(x(2 * i), x(2 * i + 1));
    return y;
  }

  static EigenMatrix retract(const EigenMatrix& a) {
    Eigen::JacobiSVD<EigenMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().adjoint();
  }

  std::vector<Atom> atoms(const EigenMatrix& y) const {
    const EigenMatrix cols = b_ * y.adjoint();
    std::vector<Atom> out;
    for (Eigen::Index c = 0; c < k_; ++c) {
      if (cols.col(c).squaredNorm() < 1e-14) continue;
      out.push_back(make_atom(polar_unitary(unvec_of(cols.col(c), n_))));
    }
    return out;
  }

 private:
  EigenMatrix b_;
  Eigen::Index n_;
  Eigen::Index k_;
};

std::vector<Atom> rotation_atoms(const EigenMatrix& j, const Eigen::VectorXd& target, std::size_t n,
                                 const DecompositionConfig& cfg) {
  const Eigen::Index d = j.rows();
  if (cfg.rotation_restarts == 0 || std::size_t(d) > kFullEigenLimit) return {};
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(j);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double cut = 1e-9 * std::max(ev.maxCoeff(), 1.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < d; ++i) rank += ev(i) > cut;
  if (rank == 0) return {};
  const EigenMatrix b =
      solver.eigenvectors().rightCols(rank) * ev.tail(rank).cwiseMax(0).cwiseSqrt().cast<Complex>().asDiagonal();

  std::vector<Atom> best;
  double best_res = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = rank; k <= std::min<Eigen::Index>(rank + Eigen::Index(cfg.rotation_extra_atoms), d * d); ++k) {
    const RotationSearch search(b, n, k);
    for (std::size_t r = 0; r < cfg.rotation_restarts; ++r) {
      auto rng = restart_rng(cfg.seed ^ 0xD1B54A32D192ED03ULL, std::uint64_t(k) * 1000003ULL + r);
      std::normal_distribution<double> gauss;
      EigenMatrix start(k, rank);
      for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index c = 0; c < rank; ++c) start(i, c) = Complex(gauss(rng), gauss(rng));
      double f = 0;
      EigenMatrix y = search.descend(RotationSearch::retract(start), cfg.rotation_iterations, &f);
      if (f > 1e-24) y = search.polish(y, cfg.rotation_polish_iterations);
      std::vector<Atom> found = search.atoms(y);
      if (found.empty()) continue;
      const double res = (j - mixture(found, refit_weights(found, target), d)).norm();
      if (res < best_res) {
        best_res = res;
        best = std::move(found);
      }
      if (best_res <= cfg.tolerance) return best;
    }
  }
  return best;
}

DecompositionCertificate decompose(const EigenMatrix& j, std::size_t n, const DecompositionConfig& cfg,
                                   const Eigen::VectorXcd* top_hint) {
  const Eigen::Index d = Eigen::Index(n * n);
  const Eigen::VectorXd target = embed(j);
  const std::size_t cap = n * n * n * n + 1;
  std::vector<Atom> atoms;
  std::vector<double> weights;
  DecompositionCertificate cert;
  EigenMatrix residual = j;
  double res_norm = residual.norm();

  SolverConfig sub;
  sub.max_iterations = cfg.subproblem_iterations;
  sub.diagonal_warm_start = false;
  sub.tolerance = 1e-15;

  atoms = rotation_atoms(j, target, n, cfg);
  if (!atoms.empty()) {
    weights = refit_weights(atoms, target);
    residual = j - mixture(atoms, weights, d);
    res_norm = residual.norm();
    if (cfg.refine_sweeps > 0 && res_norm > cfg.tolerance) res_norm = refine(atoms, weights, j, target, residual, cfg);
  }

  for (std::size_t it = 0; it < cfg.max_iterations && res_norm > cfg.tolerance; ++it) {
    cert.iterations = it + 1;
    // Linear subproblem: maximize <R, vec(U)vec(U)*>.
    Eigen::VectorXcd top = (it == 0 && top_hint && atoms.empty()) ? *top_hint : top_eigenvector(residual);
    std::vector<EigenMatrix> warm{polar_unitary(unvec_of(top, Eigen::Index(n)))};
    sub.restarts = it == 0 ? 1 : cfg.subproblem_restarts;
    sub.seed = cfg.seed + 0x9E3779B97F4A7C15ULL * (it + 1);
    ManifoldResult best = minimize_unitary(QuadraticObjective::from_matrix(-residual, n), sub, warm);

    Atom candidate = make_atom(std::move(best.u));
    const double gain = candidate.a.dot(residual * candidate.a).real();
    const double current = atoms.empty() ? 0.0 : (residual.adjoint() * mixture(atoms, weights, d)).trace().real();
    if (gain - current <= 1e-15) break;

    bool duplicate = false;
    for (const auto& atom : atoms) {
      if (std::abs((atom.u.adjoint() * candidate.u).trace()) >= double(n) - 5e-13) duplicate = true;
    }
    if (duplicate) break;
    atoms.push_back(std::move(candidate));

    weights = refit_weights(atoms, target);
    for (;;) {
      std::vector<Atom> kept;
      for (std::size_t k = 0; k < atoms.size(); ++k)
        if (weights[k] > 0) kept.push_back(std::move(atoms[k]));
      atoms = std::move(kept);
      if (atoms.size() <= cap) {
        weights = refit_weights(atoms, target);
        break;
      }
      auto smallest = std::min_element(weights.begin(), weights.end()) - weights.begin();
      atoms.erase(atoms.begin() + smallest);
      weights = refit_weights(atoms, target);
    }
    residual = j - mixture(atoms, weights, d);
    res_norm = residual.norm();
    if (cfg.refine_sweeps > 0 && res_norm > cfg.tolerance) res_norm = refine(atoms, weights, j, target, residual, cfg);
  }

  cert.weights = weights;
  for (const auto& atom : atoms) cert.unitaries.push_back(from_eigen(atom.u));
  cert.residual = atoms.empty() ? j.norm() : res_norm;
  return cert;
}

}  // namespace

double ball_distance(const FloatMatrix& choi, std::size_t n) {
  require_affine(choi, n);
  return distance_from_spectrum(hermitian_eigenvalues(hermitian_part(choi)), n);
}

bool ball_certificate(const FloatMatrix& choi, std::size_t n) {
  return ball_distance(choi, n) <= radius(n) - kBallMargin;
}

DecompositionCertificate frank_wolfe_decompose(const FloatMatrix& choi, std::size_t n,
                                               const DecompositionConfig& cfg) {
  require_affine(choi, n);
  EigenMatrix j = hermitian_part(choi);
  if (hermitian_eigenvalues(j).minCoeff() < -kPsdTol) {
    throw PreconditionError("Choi matrix is not positive semidefinite");
  }
  return decompose(j, n, cfg, nullptr);
}

double certificate_residual(const FloatMatrix& choi, const DecompositionCertificate& cert) {
  EigenMatrix m = to_eigen(choi);
  for (std::size_t k = 0; k < cert.unitaries.size(); ++k) {
    Eigen::VectorXcd a = vec_of(to_eigen(cert.unitaries[k]));
    m.noalias() -= cert.weights[k] * (a * a.adjoint());
  }
  return m.norm();
}

std::string to_string(MudOutcome outcome) {
  switch (outcome) {
    case MudOutcome::YesCertified:
      return "yes-certified";
    case MudOutcome::YesByBall:
      return "yes-by-ball";
    case MudOutcome::NoEvidence:
      return "no-evidence";
    case MudOutcome::Unknown:
      break;
  }
  return "unknown";
}

MudVerdict mud_decide(const MudInstance& inst, const DecompositionConfig& cfg) {
  const std::size_t n = inst.n();
  MudVerdict v;
  v.ball_radius = radius(n);
  v.residual_threshold = std::min({0.5 / inst.precision_m().get_d(), 1e-6, cfg.tolerance});
  v.best_residual = std::numeric_limits<double>::quiet_NaN();

  const EigenMatrix j = hermitian_part(to_float(inst.choi()));
  const Eigen::Index d = j.rows();
  Eigen::VectorXcd top;
  Eigen::VectorXd ev;
  if (std::size_t(d) <= kFullEigenLimit) {
    Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(j);
    ev = solver.eigenvalues();
    top = solver.eigenvectors().col(d - 1);
  } else {
    ev = Eigen::SelfAdjointEigenSolver<EigenMatrix>(j, Eigen::EigenvaluesOnly).eigenvalues();
  }
  v.min_eigenvalue = ev.minCoeff();
  v.ball_distance = distance_from_spectrum(ev, n);
  if (v.min_eigenvalue < -kPsdTol) {
    v.outcome = MudOutcome::NoEvidence;
    return v;
  }
  if (v.ball_distance <= v.ball_radius - kBallMargin) {
    v.outcome = MudOutcome::YesByBall;
    return v;
  }
  if (top.size() == 0) top = top_eigenvector(j);
  DecompositionConfig run = cfg;
  run.tolerance = v.residual_threshold;
  DecompositionCertificate cert = decompose(j, n, run, &top);
  v.best_residual = cert.residual;
  if (cert.residual <= v.residual_threshold) {
    v.outcome = MudOutcome::YesCertified;
    v.certificate = std::move(cert);
  } else {
    v.outcome = MudOutcome::Unknown;
  }
  return v;
}

}  // namespace muhard
