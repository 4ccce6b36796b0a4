#pragma once

#include <cstddef>
#include <vector>

#include "tglasso/matrix_kernels.hpp"

namespace tglasso {

/// n x p observations, one sample per row. Immutable once built.
///
/// Samples are taken as already centered; the model is zero-mean.
class SampleSet {
public:
  SampleSet() = default;
  /// Throws InvalidParams when p == 0 or any entry is non-finite.
  explicit SampleSet(DenseMatrix rows);

  [[nodiscard]] Index n() const noexcept { return rows_.rows(); }
  [[nodiscard]] Index p() const noexcept { return rows_.cols(); }
  [[nodiscard]] const DenseMatrix& rows() const noexcept { return rows_; }
  [[nodiscard]] auto row(Index i) const { return rows_.row(i); }

  /// Subset of rows in the given order.
  [[nodiscard]] SampleSet select(const std::vector<Index>& indices) const;

private:
  DenseMatrix rows_;
};

/// Per-sample weights in [0, 1] summing to h.
class TrimWeights {
public:
  TrimWeights() = default;
  /// Throws InvalidParams if an entry leaves [0, 1], h is outside [1, n], or
  /// the entries do not sum to h.
  TrimWeights(std::vector<double> values, Index h);

  static TrimWeights all_ones(Index n);
  /// Binary weights from a keep-mask; h is the number of kept samples.
  static TrimWeights from_mask(const std::vector<bool>& keep);

  [[nodiscard]] Index n() const noexcept { return static_cast<Index>(values_.size()); }
  [[nodiscard]] Index h() const noexcept { return h_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] double operator[](Index i) const { return values_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const TrimWeights&, const TrimWeights&) = default;

private:
  std::vector<double> values_;
  Index h_ = 0;
};

struct ObjectiveValue {
  double total = 0.0;
  double smooth = 0.0;
  double penalty = 0.0;
};

/// (1/h) * sum_i w_i x_i x_i^T.
SymMatrix weighted_empirical_cov(const SampleSet& s, const TrimWeights& w);

/// (1/n) * sum_i x_i x_i^T.
SymMatrix empirical_cov(const SampleSet& s);

/// Negative log-likelihood of one sample up to the constant (p/2) log(2 pi):
/// x^T Theta x / 2 - log det(Theta) / 2.
double per_sample_nll(const PrecisionEstimate& theta, std::span<const double> x);
double per_sample_nll(const PrecisionEstimate& theta, const Vector& x);

/// per_sample_nll for every row of s.
Vector per_sample_nll_all(const PrecisionEstimate& theta, const SampleSet& s);

/// <Theta, cov> - log det(Theta).
double smooth_value(const PrecisionEstimate& theta, const SymMatrix& cov);

/// Trimmed objective: smooth part at the weighted covariance plus
/// lambda * ||Theta||_{1,off}.
ObjectiveValue objective(const PrecisionEstimate& theta, const SampleSet& s,
                         const TrimWeights& w, double lambda);

/// Same objective with the weighted covariance already formed.
ObjectiveValue objective_at_cov(const PrecisionEstimate& theta, const SymMatrix& cov,
                                double lambda);

/// Gradient of the smooth part: cov - Theta^{-1}.
SymMatrix smooth_gradient(const PrecisionEstimate& theta, const SymMatrix& cov);

/// Running sum_i w_i x_i x_i^T for binary weights.
///
/// Flipping a few weights applies rank-1 updates; when more than n/4 weights
/// change the sum is rebuilt from scratch to keep round-off from accumulating.
class WeightedScatter {
public:
  WeightedScatter(const SampleSet& s, const TrimWeights& w);

  /// Moves to new weights and returns how many entries changed.
  Index update(const TrimWeights& w);

  /// (1/h) * scatter, symmetrized.
  [[nodiscard]] SymMatrix covariance() const;
  [[nodiscard]] const TrimWeights& weights() const noexcept { return weights_; }

private:
  void rebuild();

  const SampleSet* samples_;
  TrimWeights weights_;
  DenseMatrix scatter_;
};

/// Column means and standard deviations removed by standardize_columns.
struct Standardization {
  Vector means;
  Vector scales;
};

/// Zero-mean, unit-variance columns (sample standard deviation, n - 1).
/// Constant columns are centered but left unscaled.
SampleSet standardize_columns(const SampleSet& s, Standardization* transform = nullptr);

}  // namespace tglasso
