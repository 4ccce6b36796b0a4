#pragma once

#include <random>

#include "oracles.hpp"
#include "tglasso/ggm_model.hpp"

namespace testing_helpers {

inline tglasso::SymMatrix sym(const oracle::Mat& m) { return tglasso::SymMatrix::symmetrize(m); }

inline tglasso::PrecisionEstimate spd_estimate(int p, std::mt19937_64& gen, double lo = 0.5,
                                               double hi = 3.0) {
  return tglasso::PrecisionEstimate(sym(oracle::random_spd(p, gen, lo, hi)));
}

/// n Gaussian rows with covariance inverse(theta), generated without the library.
inline tglasso::SampleSet gaussian_rows(const oracle::Mat& theta, int n, std::mt19937_64& gen) {
  const oracle::Mat cov = oracle::inverse(theta);
  const Eigen::LLT<oracle::Mat> llt(0.5 * (cov + cov.transpose()));
  const oracle::Mat l = llt.matrixL();
  return tglasso::SampleSet(oracle::random_normal(n, static_cast<int>(theta.rows()), gen) *
                            l.transpose());
}

}  // namespace testing_helpers
