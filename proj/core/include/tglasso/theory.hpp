#pragma once

// Plug-in values of the error guarantees for local optima of the trimmed
// estimator: restricted curvature, the regularization level that satisfies
// the lambda condition, the incoherence terms tau1 / tau2 and the Frobenius
// and off-diagonal l1 error bounds.

#include <optional>

#include "tglasso/synthetic.hpp"

namespace tglasso {

struct TheoryInputs {
  Index n = 0;
  Index h = 0;
  /// Number of corrupted samples |B|.
  Index b_count = 0;
  /// Outlier covariance; when given, f(X^B) follows the Gaussian-outlier formula.
  std::optional<SymMatrix> sigma_b;
  /// User-supplied f(X^B); required when b_count > 0 and sigma_b is absent.
  std::optional<double> f_xb;
  /// Sample-covariance concentration constant, any value > 2.
  double tau = 2.5;
  /// l1 radius R; defaults to ||Theta*||_1, the smallest admissible value.
  std::optional<double> radius;
};

struct TheoryDiagnostics {
  double kappa_l = 0.0;
  double lambda_theory = 0.0;
  double frobenius_bound = 0.0;
  double offdiag_l1_bound = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double f_xb = 0.0;

  /// |B| / sqrt(n).
  double a = 0.0;
  double radius = 0.0;
  /// Number of nonzero off-diagonal entries of Theta* (both triangles).
  Index k = 0;
  /// Upper end of the admissible lambda window, (kappa_l - tau1) / (3 R).
  double lambda_upper = 0.0;
  /// lambda_theory exceeds lambda_upper: the guarantee is vacuous here.
  bool bound_vacuous = false;
  /// Constant c of lambda = c sqrt(log p / n) when |B| <= a sqrt(n).
  double sqrt_n_rate_constant = 0.0;
  /// Sample size above which that lambda satisfies the window.
  double min_sample_size = 0.0;
};

/// (|||Theta*|||_2 + 1)^{-2}.
double curvature_lower_bound(const SymMatrix& theta_star);

/// <Theta*^{-1} - (Theta* + delta)^{-1}, delta> / ||delta||_F^2. Theta* + delta
/// must be PD.
double curvature_ratio(const SymMatrix& theta_star, const SymMatrix& delta);

/// (1 / kappa) (3 lambda sqrt(k + p) / 2 + tau1).
double frobenius_error_bound(double kappa_l, double lambda, Index k, Index p, double tau1);

/// (2 / (lambda kappa)) (3 lambda sqrt(k + p) + tau1)^2.
double offdiag_error_bound(double kappa_l, double lambda, Index k, Index p, double tau1);

/// f(X^B) for Gaussian outliers: 4 sqrt(2) a (1 + sqrt(log p))^2 |||Sigma_B|||_2 / sqrt(log p).
double gaussian_outlier_f(double a, Index p, double sigma_b_norm);

/// All diagnostics for a ground truth and sample configuration. Throws
/// InvalidParams unless b_count < h <= n, tau > 2 and p >= 2.
TheoryDiagnostics theory_diagnostics(const GroundTruth& gt, const TheoryInputs& in);

}  // namespace tglasso
