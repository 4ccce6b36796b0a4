#include "tglasso/matrix_kernels.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace tglasso {

namespace {

void require_finite(const DenseMatrix& m) {
  if (!m.allFinite()) {
    throw InvalidParams("matrix has non-finite entries");
  }
}

}  // namespace

SymMatrix::SymMatrix(Index p) : values_(DenseMatrix::Zero(p, p)) {
  if (p < 0) {
    throw InvalidParams("negative matrix dimension");
  }
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  const auto p = static_cast<Index>(rows.size());
  values_.resize(p, p);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != p) {
      throw InvalidParams("SymMatrix rows must form a square matrix");
    }
    Index j = 0;
    for (double v : row) {
      values_(i, j++) = v;
    }
    ++i;
  }
  require_finite(values_);
  if (values_ != values_.transpose()) {
    throw InvalidParams("SymMatrix literal is not symmetric");
  }
}

SymMatrix SymMatrix::identity(Index p) {
  SymMatrix out(p);
  out.values_.diagonal().setOnes();
  return out;
}

SymMatrix SymMatrix::diagonal(std::span<const double> values) {
  SymMatrix out(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.values_(static_cast<Index>(i), static_cast<Index>(i)) = values[i];
  }
  require_finite(out.values_);
  return out;
}

SymMatrix SymMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

SymMatrix SymMatrix::symmetrize(const DenseMatrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidParams("cannot symmetrize a non-square matrix");
  }
  require_finite(m);
  SymMatrix out;
  out.values_ = 0.5 * (m + m.transpose());
  return out;
}

SymMatrix SymMatrix::from_exact(DenseMatrix m) {
  if (m.rows() != m.cols()) {
    throw InvalidParams("SymMatrix requires a square matrix");
  }
  require_finite(m);
  if (m != m.transpose()) {
    throw InvalidParams("matrix is not exactly symmetric");
  }
  SymMatrix out;
  out.values_ = std::move(m);
  return out;
}

void SymMatrix::set(Index i, Index j, double value) {
  if (!std::isfinite(value)) {
    throw InvalidParams("SymMatrix entries must be finite");
  }
  values_(i, j) = value;
  values_(j, i) = value;
}

PrecisionEstimate::PrecisionEstimate(SymMatrix m)
    : matrix_(std::move(m)), factor_(cholesky(matrix_)) {}

PrecisionEstimate::PrecisionEstimate(SymMatrix m, CholeskyFactor factor)
    : matrix_(std::move(m)), factor_(std::move(factor)) {
  if (factor_.dim() != matrix_.dim()) {
    throw DimensionMismatch("factor dimension does not match matrix");
  }
}

std::optional<CholeskyFactor> try_cholesky(const SymMatrix& m) {
  const Index p = m.dim();
  const DenseMatrix& a = m.dense();
  DenseMatrix lower = DenseMatrix::Zero(p, p);
  for (Index j = 0; j < p; ++j) {
    const double pivot = a(j, j) - lower.row(j).head(j).squaredNorm();
    // Catches NaN as well as non-positive pivots.
    if (!(pivot > 0.0)) {
      return std::nullopt;
    }
    const double ljj = std::sqrt(pivot);
    lower(j, j) = ljj;
    const Index rest = p - j - 1;
    if (rest > 0) {
      lower.col(j).tail(rest) =
          (a.col(j).tail(rest) - lower.bottomLeftCorner(rest, j) * lower.row(j).head(j).transpose()) / ljj;
    }
  }
  return CholeskyFactor(std::move(lower));
}

CholeskyFactor cholesky(const SymMatrix& m) {
  auto f = try_cholesky(m);
  if (!f) {
    throw NotPositiveDefinite("matrix of dimension " + std::to_string(m.dim()) +
                              " is not positive definite");
  }
  return std::move(*f);
}

double log_det(const CholeskyFactor& f) {
  return 2.0 * f.lower().diagonal().array().log().sum();
}

SymMatrix inverse_from_factor(const CholeskyFactor& f) {
  const Index p = f.dim();
  DenseMatrix linv = DenseMatrix::Identity(p, p);
  f.lower().triangularView<Eigen::Lower>().solveInPlace(linv);
  // A^{-1} = L^{-T} L^{-1}
  const DenseMatrix inv = linv.transpose() * linv;
  return SymMatrix::symmetrize(inv);
}

SymMatrix soft_threshold_offdiag(const SymMatrix& u, double nu) {
  if (!(nu >= 0.0)) {
    throw InvalidParams("soft-threshold level must be nonnegative");
  }
  const Index p = u.dim();
  DenseMatrix out = u.dense();
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) {
      if (i == j) continue;
      const double x = out(i, j);
      const double mag = std::abs(x) - nu;
      out(i, j) = mag > 0.0 ? std::copysign(mag, x) : 0.0;
    }
  }
  return SymMatrix::from_exact(std::move(out));
}

SpectrumBounds extreme_eigenvalues(const SymMatrix& m) {
  const Index p = m.dim();
  if (p == 0) {
    throw InvalidParams("eigenvalues of an empty matrix");
  }
  const DenseMatrix& a = m.dense();
  if (p == 1) {
    return {a(0, 0), a(0, 0)};
  }

  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  const double breakdown = 1e-12 * scale;
  const Index max_steps = 10 * p;

  DenseMatrix basis(p, p);
  Vector alpha = Vector::Zero(p);
  Vector beta = Vector::Zero(p - 1);

  auto orthogonalize = [&](Vector& w, Index k) {
    // Two passes of classical Gram-Schmidt keep the basis orthogonal to
    // working precision.
    for (int pass = 0; pass < 2; ++pass) {
      w -= basis.leftCols(k) * (basis.leftCols(k).transpose() * w);
    }
  };

  Vector q = Vector::Ones(p) / std::sqrt(static_cast<double>(p));
  Index steps = 0;
  for (Index k = 0; k < p; ++k) {
    if (++steps > max_steps) {
      throw NoConvergence("Lanczos iteration cap reached");
    }
    basis.col(k) = q;
    Vector w = a * q;
    alpha(k) = q.dot(w);
    orthogonalize(w, k + 1);
    if (k + 1 == p) break;

    const double b = w.norm();
    if (b > breakdown) {
      beta(k) = b;
      q = w / b;
      continue;
    }
    // Invariant subspace found; restart from the coordinate direction with
    // the largest component outside the current basis.
    beta(k) = 0.0;
    const Vector outside =
        (Vector::Ones(p) - basis.leftCols(k + 1).rowwise().squaredNorm()).cwiseMax(0.0);
    Index best = 0;
    outside.maxCoeff(&best);
    Vector e = Vector::Unit(p, best);
    orthogonalize(e, k + 1);
    const double len = e.norm();
    if (!(len > 1e-8)) {
      throw NoConvergence("Lanczos restart could not find a new direction");
    }
    q = e / len;
  }

  Eigen::SelfAdjointEigenSolver<DenseMatrix> tri;
  tri.computeFromTridiagonal(alpha, beta, Eigen::EigenvaluesOnly);
  if (tri.info() != Eigen::Success) {
    throw NoConvergence("tridiagonal eigenvalue solve failed");
  }
  const Vector& ev = tri.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

double spectral_norm(const SymMatrix& m) {
  const auto b = extreme_eigenvalues(m);
  return std::max(std::abs(b.min), std::abs(b.max));
}

double min_eigenvalue(const SymMatrix& m) {
  return extreme_eigenvalues(m).min;
}

SymMatrix project_l1_ball(const SymMatrix& m, double radius) {
  if (!(radius > 0.0)) {
    throw InvalidParams("l1-ball radius must be positive");
  }
  if (std::isinf(radius)) {
    return m;
  }
  const DenseMatrix& a = m.dense();
  const double norm = a.cwiseAbs().sum();
  if (norm <= radius) {
    return m;
  }
  // Simplex projection of the absolute values (sort-based threshold search).
  std::vector<double> mags(a.data(), a.data() + a.size());
  for (double& v : mags) v = std::abs(v);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    cumsum += mags[k];
    const double candidate = (cumsum - radius) / static_cast<double>(k + 1);
    if (mags[k] - candidate > 0.0) {
      theta = candidate;
    } else {
      break;
    }
  }
  DenseMatrix out = a.unaryExpr([theta](double x) {
    const double mag = std::abs(x) - theta;
    return mag > 0.0 ? std::copysign(mag, x) : 0.0;
  });
  return SymMatrix::symmetrize(out);
}

double offdiag_l1(const SymMatrix& m) {
  const DenseMatrix& a = m.dense();
  double total = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (i != j) total += std::abs(a(i, j));
    }
  }
  return total;
}

double l1_norm(const SymMatrix& m) { return m.dense().cwiseAbs().sum(); }

double trace_inner(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("trace inner product of matrices with different dimensions");
  }
  return a.dense().cwiseProduct(b.dense()).sum();
}

}  // namespace tglasso
