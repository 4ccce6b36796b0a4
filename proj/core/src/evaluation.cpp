#include "tglasso/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tglasso/parallel.hpp"

namespace tglasso {

void EdgeSet::add(Index i, Index j) {
  if (i == j) throw InvalidParams("edge sets have no self-loops");
  if (i < 0 || j < 0 || i >= p_ || j >= p_) throw InvalidParams("edge endpoint out of range");
  edges_.emplace(std::min(i, j), std::max(i, j));
}

bool EdgeSet::contains(Index i, Index j) const {
  return edges_.contains({std::min(i, j), std::max(i, j)});
}

EdgeSet edges_of(const SymMatrix& theta, double threshold) {
  if (!(threshold >= 0.0)) throw InvalidParams("edge threshold must be >= 0");
  EdgeSet out(theta.dim());
  for (Index i = 0; i < theta.dim(); ++i) {
    for (Index j = i + 1; j < theta.dim(); ++j) {
      if (std::abs(theta(i, j)) > threshold) out.add(i, j);
    }
  }
  return out;
}

namespace {

std::size_t intersection_size(const EdgeSet& a, const EdgeSet& b) {
  std::size_t count = 0;
  for (const auto& e : a) {
    if (b.edges().contains(e)) ++count;
  }
  return count;
}

void require_same_p(const EdgeSet& a, const EdgeSet& b) {
  if (a.p() != b.p()) throw DimensionMismatch("edge sets over different node counts");
}

}  // namespace

RocPoint roc_point(const EdgeSet& est, const EdgeSet& truth) {
  require_same_p(est, truth);
  const std::size_t hits = intersection_size(est, truth);
  const std::size_t negatives = truth.pair_count() - truth.size();
  RocPoint pt;
  pt.tpr = truth.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(truth.size());
  pt.fpr = negatives == 0 ? 0.0
                          : static_cast<double>(est.size() - hits) / static_cast<double>(negatives);
  return pt;
}

double auc(const RocCurve& curve) {
  if (curve.points.size() < 2) throw TooFewPoints("AUC needs at least two ROC points");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(curve.points.size() + 2);
  pts.emplace_back(0.0, 0.0);
  for (const auto& p : curve.points) pts.emplace_back(p.fpr, p.tpr);
  std::sort(pts.begin() + 1, pts.end());
  pts.emplace_back(1.0, 1.0);
  double area = 0.0;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    area += (pts[k].first - pts[k - 1].first) * 0.5 * (pts[k].second + pts[k - 1].second);
  }
  return area;
}

RocCurve average_roc(const std::vector<RocCurve>& curves) {
  RocCurve out;
  if (curves.empty()) return out;
  const std::size_t len = curves.front().points.size();
  for (const auto& c : curves) {
    if (c.points.size() != len) throw DimensionMismatch("ROC curves differ in length");
  }
  out.points.resize(len);
  const auto count = static_cast<double>(curves.size());
  for (std::size_t k = 0; k < len; ++k) {
    for (const auto& c : curves) {
      out.points[k].fpr += c.points[k].fpr / count;
      out.points[k].tpr += c.points[k].tpr / count;
      out.points[k].lambda += c.points[k].lambda / count;
    }
  }
  return out;
}

EdgeScores edge_scores(const EdgeSet& est, const EdgeSet& reference) {
  require_same_p(est, reference);
  const auto hits = static_cast<double>(intersection_size(est, reference));
  EdgeScores s;
  s.precision = est.empty() ? 0.0 : hits / static_cast<double>(est.size());
  s.recall = reference.empty() ? 0.0 : hits / static_cast<double>(reference.size());
  const double denom = s.precision + s.recall;
  s.f1 = denom > 0.0 ? 2.0 * s.precision * s.recall / denom : 0.0;
  return s;
}

double f1_score(const EdgeSet& est, const EdgeSet& reference) {
  return edge_scores(est, reference).f1;
}

EstimationErrors estimation_errors(const SymMatrix& est, const SymMatrix& truth) {
  if (est.dim() != truth.dim()) throw DimensionMismatch("estimate and truth differ in dimension");
  const SymMatrix diff = SymMatrix::from_exact(est.dense() - truth.dense());
  return {diff.dense().norm(), offdiag_l1(diff)};
}

Index trimmed_count(double h_frac, Index m) {
  const auto kept = static_cast<Index>(std::llround(h_frac * static_cast<double>(m)));
  return std::clamp<Index>(kept, 1, std::max<Index>(m, 1));
}

std::vector<int> assign_folds(Index n, int folds, RngStream& rng) {
  if (folds < 2) throw InvalidParams("cross-validation needs at least two folds");
  if (n < folds) throw InvalidParams("fewer samples than folds");
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  for (Index k = n - 1; k > 0; --k) {
    const auto pick = static_cast<Index>(rng.uniform_int(static_cast<std::uint64_t>(k + 1)));
    std::swap(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(pick)]);
  }
  std::vector<int> fold(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    fold[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] =
        static_cast<int>(k % folds);
  }
  return fold;
}

CvResult trimmed_cv(const SampleSet& s, const std::vector<double>& lambdas,
                    const std::vector<double>& h_fracs, const SolverConfig& cfg, RngStream& rng,
                    const CvOptions& options) {
  if (lambdas.empty() || h_fracs.empty()) throw InvalidParams("CV grids must be nonempty");
  for (double l : lambdas) {
    if (!(l >= 0.0)) throw InvalidParams("CV lambdas must be >= 0");
  }
  for (double f : h_fracs) {
    if (!(f > 0.0 && f <= 1.0)) throw InvalidParams("CV h fractions must lie in (0, 1]");
  }
  const std::vector<int> fold_of = assign_folds(s.n(), options.folds, rng);

  std::vector<SampleSet> train(static_cast<std::size_t>(options.folds));
  std::vector<SampleSet> held(static_cast<std::size_t>(options.folds));
  for (int f = 0; f < options.folds; ++f) {
    std::vector<Index> in;
    std::vector<Index> out;
    for (Index i = 0; i < s.n(); ++i) {
      (fold_of[static_cast<std::size_t>(i)] == f ? out : in).push_back(i);
    }
    train[static_cast<std::size_t>(f)] = s.select(in);
    held[static_cast<std::size_t>(f)] = s.select(out);
  }

  CvResult result;
  const std::size_t folds = static_cast<std::size_t>(options.folds);
  result.table.resize(lambdas.size() * h_fracs.size() * folds);

  parallel_for(result.table.size(), options.jobs, [&](std::size_t cell) {
    const std::size_t f = cell % folds;
    const std::size_t hk = (cell / folds) % h_fracs.size();
    const std::size_t lk = cell / (folds * h_fracs.size());
    CvCell& out = result.table[cell];
    out.lambda = lambdas[lk];
    out.h_frac = h_fracs[hk];
    out.fold = static_cast<int>(f);

    const SampleSet& tr = train[f];
    const SampleSet& va = held[f];
    SolverConfig c = cfg;
    c.lambda = out.lambda;
    c.h = trimmed_count(out.h_frac, tr.n());
    try {
      const FitResult r = fit(tr, c);
      if (r.termination == Termination::LineSearchFailed) {
        out.ok = false;
        out.status = to_string(r.termination);
        return;
      }
      Vector nll = per_sample_nll_all(r.estimate, va);
      std::sort(nll.data(), nll.data() + nll.size());
      const Index keep = trimmed_count(out.h_frac, va.n());
      out.score = nll.head(keep).mean();
    } catch (const Error& e) {
      out.ok = false;
      out.status = e.what();
    }
  });

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t lk = 0; lk < lambdas.size(); ++lk) {
    for (std::size_t hk = 0; hk < h_fracs.size(); ++hk) {
      CvSummary sum{lambdas[lk], h_fracs[hk], 0.0, true};
      for (std::size_t f = 0; f < folds; ++f) {
        const CvCell& c = result.table[(lk * h_fracs.size() + hk) * folds + f];
        sum.ok = sum.ok && c.ok;
        sum.mean_score += c.score / static_cast<double>(folds);
      }
      if (!sum.ok) sum.mean_score = std::numeric_limits<double>::quiet_NaN();
      if (sum.ok && sum.mean_score < best) {
        best = sum.mean_score;
        result.best_lambda = sum.lambda;
        result.best_h_frac = sum.h_frac;
        result.any_ok = true;
      }
      result.summary.push_back(sum);
    }
  }
  result.best_h = trimmed_count(result.best_h_frac, s.n());
  return result;
}

}  // namespace tglasso
