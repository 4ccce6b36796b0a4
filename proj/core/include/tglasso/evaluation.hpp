#pragma once

#include <string>
#include <vector>

#include "tglasso/edge_set.hpp"
#include "tglasso/random.hpp"
#include "tglasso/trimmed_solver.hpp"

namespace tglasso {

/// {i < j : |theta_ij| > threshold}.
EdgeSet edges_of(const SymMatrix& theta, double threshold = 1e-8);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  struct Point {
    double fpr = 0.0;
    double tpr = 0.0;
    double lambda = 0.0;
  };
  std::vector<Point> points;
};

/// TPR = |est & truth| / |truth|, FPR = |est \ truth| / (C(p,2) - |truth|).
/// An empty truth gives TPR 1; a complete truth gives FPR 0.
RocPoint roc_point(const EdgeSet& est, const EdgeSet& truth);

/// Trapezoidal area after sorting by (fpr, tpr) and adding (0,0) and (1,1).
/// Throws TooFewPoints with fewer than two points.
double auc(const RocCurve& curve);

/// Point-wise mean of curves that share the same lambda grid (averaged at
/// fixed lambda index).
RocCurve average_roc(const std::vector<RocCurve>& curves);

struct EdgeScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Precision and recall of est against reference; each is 0 when its
/// denominator is empty.
EdgeScores edge_scores(const EdgeSet& est, const EdgeSet& reference);

/// Harmonic mean of precision and recall; 0 when both are 0.
double f1_score(const EdgeSet& est, const EdgeSet& reference);

struct EstimationErrors {
  double frobenius = 0.0;
  double offdiag_l1 = 0.0;
};

EstimationErrors estimation_errors(const SymMatrix& est, const SymMatrix& truth);

struct CvOptions {
  int folds = 5;
  unsigned jobs = 1;
};

struct CvCell {
  double lambda = 0.0;
  double h_frac = 1.0;
  int fold = 0;
  /// Mean NLL over the retained share of held-out samples.
  double score = 0.0;
  bool ok = true;
  std::string status = "ok";
};

struct CvSummary {
  double lambda = 0.0;
  double h_frac = 1.0;
  double mean_score = 0.0;
  bool ok = true;
};

struct CvResult {
  double best_lambda = 0.0;
  double best_h_frac = 1.0;
  /// best_h_frac applied to the full sample count.
  Index best_h = 0;
  bool any_ok = false;
  /// Ordered by (lambda, h_frac, fold) in grid order.
  std::vector<CvCell> table;
  std::vector<CvSummary> summary;
};

/// Number of samples kept when trimming a share h_frac of m samples:
/// round(h_frac * m), clamped to [1, m].
Index trimmed_count(double h_frac, Index m);

/// Fold index of every sample from a seeded shuffle.
std::vector<int> assign_folds(Index n, int folds, RngStream& rng);

/// K-fold cross-validation over lambda x h_frac.
///
/// Each training fit uses h = round(h_frac * n_train). The held-out score
/// averages per-sample NLL over the round(h_frac * m) held-out samples with
/// the lowest NLL, so contaminated validation folds are trimmed the same way
/// as training. Cells whose fit fails are marked and excluded from the argmin.
CvResult trimmed_cv(const SampleSet& s, const std::vector<double>& lambdas,
                    const std::vector<double>& h_fracs, const SolverConfig& cfg, RngStream& rng,
                    const CvOptions& options = {});

}  // namespace tglasso
