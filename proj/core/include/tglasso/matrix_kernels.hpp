#pragma once

// Dense symmetric linear algebra used throughout the estimator: a symmetric
// matrix value type, Cholesky factors that witness positive definiteness,
// the off-diagonal soft-thresholding proximal map and an l1-ball projection.

#include <Eigen/Core>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>

#include "tglasso/errors.hpp"

namespace tglasso {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;

/// Dense p x p symmetric matrix with finite entries.
///
/// Symmetry is exact: every mutation writes both (i, j) and (j, i), and
/// construction from an arbitrary dense matrix averages it with its transpose.
class SymMatrix {
public:
  SymMatrix() = default;

  /// Zero matrix of dimension p.
  explicit SymMatrix(Index p);

  /// Rows of an exactly symmetric matrix; throws InvalidParams otherwise.
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SymMatrix identity(Index p);
  static SymMatrix diagonal(std::span<const double> values);
  static SymMatrix diagonal(std::initializer_list<double> values);

  /// Returns (m + m^T) / 2. Throws InvalidParams on non-square or non-finite input.
  static SymMatrix symmetrize(const DenseMatrix& m);

  /// Wraps m, which must already be exactly symmetric and finite.
  static SymMatrix from_exact(DenseMatrix m);

  [[nodiscard]] Index dim() const noexcept { return values_.rows(); }
  [[nodiscard]] double operator()(Index i, Index j) const { return values_(i, j); }

  /// Writes value at (i, j) and (j, i).
  void set(Index i, Index j, double value);

  [[nodiscard]] const DenseMatrix& dense() const noexcept { return values_; }

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
    return a.values_.rows() == b.values_.rows() && a.values_ == b.values_;
  }

private:
  DenseMatrix values_;
};

/// Lower-triangular L with strictly positive diagonal and L L^T = A.
class CholeskyFactor {
public:
  [[nodiscard]] Index dim() const noexcept { return lower_.rows(); }
  [[nodiscard]] const DenseMatrix& lower() const noexcept { return lower_; }

private:
  explicit CholeskyFactor(DenseMatrix lower) : lower_(std::move(lower)) {}
  friend std::optional<CholeskyFactor> try_cholesky(const SymMatrix& m);

  DenseMatrix lower_;
};

/// A symmetric positive definite matrix together with its Cholesky factor.
class PrecisionEstimate {
public:
  /// Factors m; throws NotPositiveDefinite if m is not PD.
  explicit PrecisionEstimate(SymMatrix m);
  PrecisionEstimate(SymMatrix m, CholeskyFactor factor);

  [[nodiscard]] const SymMatrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] const CholeskyFactor& factor() const noexcept { return factor_; }
  [[nodiscard]] Index dim() const noexcept { return matrix_.dim(); }

private:
  SymMatrix matrix_;
  CholeskyFactor factor_;
};

/// Lower Cholesky factor of m. Throws NotPositiveDefinite on a pivot <= 0.
CholeskyFactor cholesky(const SymMatrix& m);

/// Same as cholesky() but reports failure as an empty optional.
std::optional<CholeskyFactor> try_cholesky(const SymMatrix& m);

/// log det of the factored matrix: 2 * sum(log(diag(L))).
double log_det(const CholeskyFactor& f);

/// Inverse of the factored matrix via triangular solves, symmetrized.
SymMatrix inverse_from_factor(const CholeskyFactor& f);

/// Off-diagonal entries shrunk by nu towards zero; diagonal untouched.
SymMatrix soft_threshold_offdiag(const SymMatrix& u, double nu);

/// Largest absolute eigenvalue.
double spectral_norm(const SymMatrix& m);

/// Smallest eigenvalue.
double min_eigenvalue(const SymMatrix& m);

/// Smallest and largest eigenvalue from one Lanczos pass.
struct SpectrumBounds {
  double min = 0.0;
  double max = 0.0;
};
SpectrumBounds extreme_eigenvalues(const SymMatrix& m);

/// Euclidean projection of all p*p entries onto {||.||_1 <= radius}.
/// Diagonal entries count towards the norm.
SymMatrix project_l1_ball(const SymMatrix& m, double radius);

// Small helpers used across modules.

/// Element-wise l1 norm over i != j.
double offdiag_l1(const SymMatrix& m);
/// Element-wise l1 norm over all entries.
double l1_norm(const SymMatrix& m);
/// Trace inner product <a, b>.
double trace_inner(const SymMatrix& a, const SymMatrix& b);

}  // namespace tglasso
