#include "tglasso/ggm_model.hpp"

#include <cmath>
#include <string>

namespace tglasso {

SampleSet::SampleSet(DenseMatrix rows) : rows_(std::move(rows)) {
  if (rows_.cols() < 1) {
    throw InvalidParams("a sample set needs at least one variable");
  }
  if (!rows_.allFinite()) {
    throw InvalidParams("sample set has non-finite entries");
  }
}

SampleSet SampleSet::select(const std::vector<Index>& indices) const {
  DenseMatrix out(static_cast<Index>(indices.size()), p());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    out.row(static_cast<Index>(k)) = rows_.row(indices[k]);
  }
  return SampleSet(std::move(out));
}

TrimWeights::TrimWeights(std::vector<double> values, Index h)
    : values_(std::move(values)), h_(h) {
  const auto n = static_cast<Index>(values_.size());
  if (h_ < 1 || h_ > n) {
    throw InvalidParams("trim count h=" + std::to_string(h_) + " outside [1, " +
                        std::to_string(n) + "]");
  }
  double sum = 0.0;
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidParams("trim weights must lie in [0, 1]");
    }
    sum += v;
  }
  if (std::abs(sum - static_cast<double>(h_)) > 1e-9 * static_cast<double>(n)) {
    throw InvalidParams("trim weights do not sum to h");
  }
}

TrimWeights TrimWeights::all_ones(Index n) {
  return TrimWeights(std::vector<double>(static_cast<std::size_t>(n), 1.0), n);
}

TrimWeights TrimWeights::from_mask(const std::vector<bool>& keep) {
  std::vector<double> values(keep.size(), 0.0);
  Index h = 0;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) {
      values[i] = 1.0;
      ++h;
    }
  }
  return TrimWeights(std::move(values), h);
}

SymMatrix weighted_empirical_cov(const SampleSet& s, const TrimWeights& w) {
  if (w.n() != s.n()) {
    throw DimensionMismatch("weights length " + std::to_string(w.n()) +
                            " does not match sample count " + std::to_string(s.n()));
  }
  const Eigen::Map<const Vector> wv(w.values().data(), w.n());
  const DenseMatrix scatter = s.rows().transpose() * wv.asDiagonal() * s.rows();
  return SymMatrix::symmetrize(scatter / static_cast<double>(w.h()));
}

SymMatrix empirical_cov(const SampleSet& s) {
  if (s.n() < 1) {
    throw InvalidParams("empirical covariance of an empty sample set");
  }
  const DenseMatrix scatter = s.rows().transpose() * s.rows();
  return SymMatrix::symmetrize(scatter / static_cast<double>(s.n()));
}

double per_sample_nll(const PrecisionEstimate& theta, const Vector& x) {
  if (x.size() != theta.dim()) {
    throw DimensionMismatch("sample length does not match precision dimension");
  }
  const double quad = x.dot(theta.matrix().dense() * x);
  return 0.5 * quad - 0.5 * log_det(theta.factor());
}

double per_sample_nll(const PrecisionEstimate& theta, std::span<const double> x) {
  const Eigen::Map<const Vector> v(x.data(), static_cast<Index>(x.size()));
  return per_sample_nll(theta, Vector(v));
}

Vector per_sample_nll_all(const PrecisionEstimate& theta, const SampleSet& s) {
  if (s.p() != theta.dim()) {
    throw DimensionMismatch("sample dimension does not match precision dimension");
  }
  const DenseMatrix projected = s.rows() * theta.matrix().dense();
  const Vector quad = projected.cwiseProduct(s.rows()).rowwise().sum();
  const double half_log_det = 0.5 * log_det(theta.factor());
  return (0.5 * quad).array() - half_log_det;
}

double smooth_value(const PrecisionEstimate& theta, const SymMatrix& cov) {
  return trace_inner(theta.matrix(), cov) - log_det(theta.factor());
}

ObjectiveValue objective_at_cov(const PrecisionEstimate& theta, const SymMatrix& cov,
                                double lambda) {
  if (!(lambda >= 0.0)) {
    throw InvalidParams("lambda must be nonnegative");
  }
  ObjectiveValue v;
  v.smooth = smooth_value(theta, cov);
  v.penalty = lambda * offdiag_l1(theta.matrix());
  v.total = v.smooth + v.penalty;
  return v;
}

ObjectiveValue objective(const PrecisionEstimate& theta, const SampleSet& s,
                         const TrimWeights& w, double lambda) {
  if (s.p() != theta.dim()) {
    throw DimensionMismatch("sample dimension does not match precision dimension");
  }
  return objective_at_cov(theta, weighted_empirical_cov(s, w), lambda);
}

SymMatrix smooth_gradient(const PrecisionEstimate& theta, const SymMatrix& cov) {
  if (cov.dim() != theta.dim()) {
    throw DimensionMismatch("covariance dimension does not match precision dimension");
  }
  const SymMatrix inv = inverse_from_factor(theta.factor());
  return SymMatrix::from_exact(cov.dense() - inv.dense());
}

WeightedScatter::WeightedScatter(const SampleSet& s, const TrimWeights& w)
    : samples_(&s), weights_(w) {
  if (w.n() != s.n()) {
    throw DimensionMismatch("weights length does not match sample count");
  }
  rebuild();
}

void WeightedScatter::rebuild() {
  const Eigen::Map<const Vector> wv(weights_.values().data(), weights_.n());
  scatter_ = samples_->rows().transpose() * wv.asDiagonal() * samples_->rows();
}

Index WeightedScatter::update(const TrimWeights& w) {
  if (w.n() != weights_.n()) {
    throw DimensionMismatch("weights length does not match sample count");
  }
  std::vector<Index> changed;
  for (Index i = 0; i < w.n(); ++i) {
    if (w[i] != weights_[i]) changed.push_back(i);
  }
  const auto flips = static_cast<Index>(changed.size());
  if (flips == 0) {
    weights_ = w;
    return 0;
  }
  if (4 * flips > w.n()) {
    weights_ = w;
    rebuild();
    return flips;
  }
  for (Index i : changed) {
    const double delta = w[i] - weights_[i];
    const Vector x = samples_->row(i).transpose();
    scatter_.noalias() += delta * (x * x.transpose());
  }
  weights_ = w;
  return flips;
}

SymMatrix WeightedScatter::covariance() const {
  return SymMatrix::symmetrize(scatter_ / static_cast<double>(weights_.h()));
}

SampleSet standardize_columns(const SampleSet& s, Standardization* transform) {
  const Index n = s.n();
  if (n < 2) {
    throw InvalidParams("standardization needs at least two samples");
  }
  const Vector means = s.rows().colwise().mean().transpose();
  DenseMatrix centered = s.rows().rowwise() - means.transpose();
  Vector scales = (centered.colwise().squaredNorm() / static_cast<double>(n - 1))
                      .transpose()
                      .cwiseSqrt();
  for (Index j = 0; j < scales.size(); ++j) {
    if (!(scales(j) > 0.0)) scales(j) = 1.0;
  }
  centered = centered.array().rowwise() / scales.transpose().array();
  if (transform != nullptr) {
    transform->means = means;
    transform->scales = scales;
  }
  return SampleSet(std::move(centered));
}

}  // namespace tglasso
