#include "tglasso/theory.hpp"

#include <algorithm>
#include <cmath>

namespace tglasso {

double curvature_lower_bound(const SymMatrix& theta_star) {
  const double s = spectral_norm(theta_star) + 1.0;
  return 1.0 / (s * s);
}

double curvature_ratio(const SymMatrix& theta_star, const SymMatrix& delta) {
  if (theta_star.dim() != delta.dim()) throw DimensionMismatch("delta dimension mismatch");
  const double norm2 = delta.dense().squaredNorm();
  if (!(norm2 > 0.0)) throw InvalidParams("delta must be nonzero");
  const SymMatrix sigma = inverse_from_factor(cholesky(theta_star));
  const SymMatrix moved = SymMatrix::from_exact(theta_star.dense() + delta.dense());
  const SymMatrix moved_inv = inverse_from_factor(cholesky(moved));
  return (sigma.dense() - moved_inv.dense()).cwiseProduct(delta.dense()).sum() / norm2;
}

double frobenius_error_bound(double kappa_l, double lambda, Index k, Index p, double tau1) {
  const double root = std::sqrt(static_cast<double>(k + p));
  return (1.5 * lambda * root + tau1) / kappa_l;
}

double offdiag_error_bound(double kappa_l, double lambda, Index k, Index p, double tau1) {
  const double root = std::sqrt(static_cast<double>(k + p));
  const double inner = 3.0 * lambda * root + tau1;
  return 2.0 / (lambda * kappa_l) * inner * inner;
}

double gaussian_outlier_f(double a, Index p, double sigma_b_norm) {
  const double lp = std::log(static_cast<double>(p));
  const double grow = 1.0 + std::sqrt(lp);
  return 4.0 * std::sqrt(2.0) * a * grow * grow * sigma_b_norm / std::sqrt(lp);
}

TheoryDiagnostics theory_diagnostics(const GroundTruth& gt, const TheoryInputs& in) {
  const SymMatrix& theta = gt.theta_star;
  const Index p = theta.dim();
  if (p < 2) throw InvalidParams("diagnostics need p >= 2");
  if (!(in.b_count >= 0 && in.b_count < in.h && in.h <= in.n)) {
    throw InvalidParams("diagnostics need 0 <= b_count < h <= n");
  }
  if (!(in.tau > 2.0)) throw InvalidParams("tau must exceed 2");
  if (in.sigma_b && in.sigma_b->dim() != p) throw DimensionMismatch("Sigma_B dimension mismatch");

  const double n = static_cast<double>(in.n);
  const double h = static_cast<double>(in.h);
  const double b = static_cast<double>(in.b_count);
  const double log_p = std::log(static_cast<double>(p));

  TheoryDiagnostics d;
  const SymMatrix sigma = inverse_from_factor(cholesky(theta));
  const double max_diag = sigma.dense().diagonal().maxCoeff();
  const double sigma_inf = sigma.dense().cwiseAbs().maxCoeff();
  const double theta_norm = spectral_norm(theta);

  d.kappa_l = 1.0 / ((theta_norm + 1.0) * (theta_norm + 1.0));
  d.a = b / std::sqrt(n);
  if (in.sigma_b) {
    d.f_xb = gaussian_outlier_f(d.a, p, spectral_norm(*in.sigma_b));
  } else if (in.f_xb) {
    if (!(*in.f_xb >= 0.0)) throw InvalidParams("f(X^B) must be >= 0");
    d.f_xb = *in.f_xb;
  } else if (in.b_count > 0) {
    throw InvalidParams("b_count > 0 requires sigma_b or an explicit f(X^B)");
  }

  d.tau1 = d.f_xb * std::sqrt(b * log_p / h);
  d.tau2 = d.f_xb * std::sqrt(log_p / h);

  const double clean_term = 8.0 * max_diag * std::sqrt(10.0 * in.tau * log_p / (h - b)) +
                            (b / h) * sigma_inf;
  d.lambda_theory = 4.0 * std::max(clean_term, d.tau2);

  d.k = 2 * static_cast<Index>(gt.support.size());
  d.frobenius_bound = frobenius_error_bound(d.kappa_l, d.lambda_theory, d.k, p, d.tau1);
  d.offdiag_l1_bound = offdiag_error_bound(d.kappa_l, d.lambda_theory, d.k, p, d.tau1);

  d.radius = in.radius ? *in.radius : l1_norm(theta);
  if (!(d.radius > 0.0)) throw InvalidParams("radius must be positive");
  d.lambda_upper = (d.kappa_l - d.tau1) / (3.0 * d.radius);
  d.bound_vacuous = d.lambda_theory > d.lambda_upper;

  d.sqrt_n_rate_constant =
      4.0 * std::max(16.0 * max_diag * std::sqrt(5.0 * in.tau) + 2.0 * d.a * sigma_inf / std::sqrt(log_p),
                     std::sqrt(2.0) * d.f_xb);
  const double grow = std::pow(theta_norm + 1.0, 4.0);
  const double term = 3.0 * d.radius * d.sqrt_n_rate_constant + d.f_xb * std::sqrt(2.0 * b);
  d.min_sample_size = std::max(16.0 * d.a * d.a, grow * term * term * log_p);
  return d;
}

}  // namespace tglasso
