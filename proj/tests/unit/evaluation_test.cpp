#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "tglasso/evaluation.hpp"
#include "tglasso/synthetic.hpp"

using namespace tglasso;
using oracle::Mat;

namespace {

EdgeSet edges(Index p, std::initializer_list<std::pair<Index, Index>> list) {
  EdgeSet e(p);
  for (auto [i, j] : list) e.add(i, j);
  return e;
}

EdgeSet all_pairs(Index p) {
  EdgeSet e(p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) e.add(i, j);
  }
  return e;
}

RocCurve curve(std::initializer_list<std::pair<double, double>> pts) {
  RocCurve c;
  for (auto [f, t] : pts) c.points.push_back({f, t, 0.0});
  return c;
}

}  // namespace

TEST(EdgeSet, Basics) {
  EdgeSet e(4);
  e.add(2, 1);
  EXPECT_TRUE(e.contains(1, 2));
  EXPECT_TRUE(e.contains(2, 1));
  EXPECT_EQ(e.edges().begin()->first, 1);
  EXPECT_THROW(e.add(1, 1), InvalidParams);
  EXPECT_THROW(e.add(0, 4), InvalidParams);
  EXPECT_EQ(e.pair_count(), 6u);
}

TEST(EdgesOf, Examples) {
  EXPECT_TRUE(edges_of(SymMatrix::identity(5), 0.3).empty());
  EXPECT_TRUE(edges_of(SymMatrix::identity(5)).empty());
  EXPECT_EQ(edges_of(SymMatrix{{1.0, 0.5}, {0.5, 1.0}}, 0.1), edges(2, {{0, 1}}));
  EXPECT_TRUE(edges_of(SymMatrix{{1.0, 1e-12}, {1e-12, 1.0}}, 1e-8).empty());
  EXPECT_THROW(edges_of(SymMatrix::identity(2), -1.0), InvalidParams);
}

TEST(RocPoint, Examples) {
  const EdgeSet truth = edges(5, {{0, 1}, {2, 3}});
  RocPoint pt = roc_point(truth, truth);
  EXPECT_EQ(pt.fpr, 0.0);
  EXPECT_EQ(pt.tpr, 1.0);
  pt = roc_point(EdgeSet(5), truth);
  EXPECT_EQ(pt.fpr, 0.0);
  EXPECT_EQ(pt.tpr, 0.0);
  pt = roc_point(all_pairs(5), truth);
  EXPECT_EQ(pt.fpr, 1.0);
  EXPECT_EQ(pt.tpr, 1.0);
  pt = roc_point(EdgeSet(5), EdgeSet(5));
  EXPECT_EQ(pt.tpr, 1.0);
  EXPECT_THROW(roc_point(EdgeSet(4), truth), DimensionMismatch);
}

TEST(RocPoint, StaysInUnitSquare) {
  std::mt19937_64 gen(51);
  for (int trial = 0; trial < 50; ++trial) {
    EdgeSet a(8), b(8);
    for (int k = 0; k < 10; ++k) {
      const Index i = static_cast<Index>(gen() % 8), j = static_cast<Index>(gen() % 8);
      if (i != j) (k % 2 ? a : b).add(i, j);
    }
    const RocPoint pt = roc_point(a, b);
    EXPECT_GE(pt.fpr, 0.0);
    EXPECT_LE(pt.fpr, 1.0);
    EXPECT_GE(pt.tpr, 0.0);
    EXPECT_LE(pt.tpr, 1.0);
  }
}

TEST(Auc, Examples) {
  EXPECT_DOUBLE_EQ(auc(curve({{0.0, 0.0}, {1.0, 1.0}})), 0.5);
  EXPECT_DOUBLE_EQ(auc(curve({{0.0, 1.0}, {1.0, 1.0}})), 1.0);
  EXPECT_DOUBLE_EQ(auc(curve({{0.0, 0.0}, {0.5, 0.5}, {1.0, 1.0}})), 0.5);
  EXPECT_THROW(auc(curve({{0.2, 0.4}})), TooFewPoints);
}

TEST(Auc, DominatingCurveHasLargerArea) {
  std::mt19937_64 gen(52);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    RocCurve low, high;
    for (int k = 0; k < 6; ++k) {
      const double f = u(gen);
      const double t = u(gen);
      low.points.push_back({f, t * 0.8, 0.0});
      high.points.push_back({f, std::min(1.0, t * 0.8 + 0.1 * u(gen)), 0.0});
    }
    EXPECT_GE(auc(high), auc(low));
  }
}

TEST(AverageRoc, PointwiseMean) {
  RocCurve a = curve({{0.0, 0.2}, {0.4, 0.8}});
  RocCurve b = curve({{0.2, 0.4}, {0.6, 1.0}});
  const RocCurve m = average_roc({a, b});
  EXPECT_DOUBLE_EQ(m.points[0].fpr, 0.1);
  EXPECT_DOUBLE_EQ(m.points[1].tpr, 0.9);
  EXPECT_THROW(average_roc({a, curve({{0.0, 0.0}})}), DimensionMismatch);
}

TEST(F1, Examples) {
  const EdgeSet a = edges(4, {{0, 1}, {1, 2}});
  EXPECT_EQ(f1_score(a, a), 1.0);
  EXPECT_EQ(f1_score(a, edges(4, {{2, 3}})), 0.0);
  const EdgeScores s = edge_scores(edges(4, {{0, 1}, {0, 2}}), edges(4, {{0, 1}}));
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_DOUBLE_EQ(s.f1, 2.0 / 3.0);
  EXPECT_EQ(f1_score(EdgeSet(4), EdgeSet(4)), 0.0);
}

TEST(F1, RangeAndEqualityCharacterization) {
  std::mt19937_64 gen(53);
  for (int trial = 0; trial < 100; ++trial) {
    EdgeSet a(6), b(6);
    for (int k = 0; k < 6; ++k) {
      const Index i = static_cast<Index>(gen() % 6), j = static_cast<Index>(gen() % 6);
      if (i != j) a.add(i, j);
      const Index x = static_cast<Index>(gen() % 6), y = static_cast<Index>(gen() % 6);
      if (x != y) b.add(x, y);
    }
    const double f = f1_score(a, b);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
    EXPECT_EQ(f == 1.0, a == b && !a.empty());
    if (a.size() == b.size()) EXPECT_DOUBLE_EQ(f, f1_score(b, a));
  }
}

TEST(EstimationErrors, Examples) {
  const SymMatrix t{{2.0, 0.1}, {0.1, 3.0}};
  EstimationErrors e = estimation_errors(t, t);
  EXPECT_EQ(e.frobenius, 0.0);
  EXPECT_EQ(e.offdiag_l1, 0.0);

  const SymMatrix shifted = SymMatrix::from_exact(t.dense() + Mat::Identity(2, 2));
  e = estimation_errors(shifted, t);
  EXPECT_NEAR(e.frobenius, std::sqrt(2.0), 1e-15);
  EXPECT_EQ(e.offdiag_l1, 0.0);

  const SymMatrix est{{2.0, 0.4}, {0.4, 3.0}};
  e = estimation_errors(est, t);
  EXPECT_NEAR(e.frobenius, std::sqrt(0.18), 1e-15);
  EXPECT_NEAR(e.frobenius, 0.42426, 1e-5);
  EXPECT_NEAR(e.offdiag_l1, 0.6, 1e-15);
  EXPECT_THROW(estimation_errors(SymMatrix::identity(3), t), DimensionMismatch);
}

TEST(TrimmedCount, RoundsAndClamps) {
  EXPECT_EQ(trimmed_count(0.8, 100), 80);
  EXPECT_EQ(trimmed_count(0.85, 20), 17);
  EXPECT_EQ(trimmed_count(0.01, 10), 1);
  EXPECT_EQ(trimmed_count(1.0, 7), 7);
}

TEST(AssignFolds, BalancedAndSeeded) {
  RngStream a(1, 0), b(1, 0);
  const auto f = assign_folds(23, 5, a);
  EXPECT_EQ(f, assign_folds(23, 5, b));
  std::vector<int> counts(5, 0);
  for (int k : f) ++counts[static_cast<std::size_t>(k)];
  for (int c : counts) EXPECT_TRUE(c == 4 || c == 5);
  RngStream c(1, 0);
  EXPECT_THROW(assign_folds(3, 5, c), InvalidParams);
  EXPECT_THROW(assign_folds(10, 1, c), InvalidParams);
}

namespace {

SampleSet clean_sample(std::uint64_t seed, Index p, Index n) {
  RngStream rng(seed, 0);
  const GroundTruth gt = gen_hub_precision(p, rng, {.edge_prob = 0.2, .hub_count = 1});
  return sample_gaussian(n, inverse_from_factor(cholesky(gt.theta_star)), rng);
}

}  // namespace

TEST(TrimmedCv, SingleCell) {
  const SampleSet s = clean_sample(61, 5, 60);
  RngStream rng(3, 0);
  SolverConfig cfg;
  const CvResult r = trimmed_cv(s, {0.2}, {0.9}, cfg, rng);
  EXPECT_TRUE(r.any_ok);
  EXPECT_EQ(r.best_lambda, 0.2);
  EXPECT_EQ(r.best_h_frac, 0.9);
  EXPECT_EQ(r.best_h, 54);
  EXPECT_EQ(r.table.size(), 5u);
  EXPECT_EQ(r.summary.size(), 1u);
}

TEST(TrimmedCv, SmallLambdaWinsOnCleanData) {
  const SampleSet s = clean_sample(62, 6, 600);
  RngStream rng(4, 0);
  const CvResult r = trimmed_cv(s, {5.0, 0.01}, {1.0}, SolverConfig{}, rng);
  EXPECT_EQ(r.best_lambda, 0.01);
  EXPECT_LT(r.summary[1].mean_score, r.summary[0].mean_score);
}

TEST(TrimmedCv, DefaultHGrid) {
  const SampleSet s = clean_sample(63, 5, 80);
  RngStream rng(5, 0);
  const std::vector<double> hs{0.90, 0.85, 0.80};
  const CvResult r = trimmed_cv(s, {0.3, 0.1}, hs, SolverConfig{}, rng, {.folds = 5, .jobs = 2});
  EXPECT_EQ(r.table.size(), 2u * 3u * 5u);
  EXPECT_NE(std::find(hs.begin(), hs.end(), r.best_h_frac), hs.end());
  for (std::size_t k = 0; k < r.table.size(); ++k) {
    EXPECT_EQ(r.table[k].fold, static_cast<int>(k % 5));
    EXPECT_TRUE(r.table[k].ok);
  }
}

TEST(TrimmedCv, FullRetentionIsStandardKFold) {
  const SampleSet s = clean_sample(64, 4, 50);
  RngStream rng(6, 0);
  SolverConfig cfg;
  const CvResult r = trimmed_cv(s, {0.15}, {1.0}, cfg, rng, {.folds = 5, .jobs = 1});

  RngStream again(6, 0);
  const auto folds = assign_folds(50, 5, again);
  for (int f = 0; f < 5; ++f) {
    std::vector<Index> train, held;
    for (Index i = 0; i < 50; ++i) (folds[static_cast<std::size_t>(i)] == f ? held : train).push_back(i);
    SolverConfig c = cfg;
    c.lambda = 0.15;
    c.h = static_cast<Index>(train.size());
    const FitResult fit_f = fit(s.select(train), c);
    const double mean = per_sample_nll_all(fit_f.estimate, s.select(held)).mean();
    EXPECT_NEAR(r.table[static_cast<std::size_t>(f)].score, mean, 1e-12);
  }
}

TEST(TrimmedCv, DeterministicAcrossJobs) {
  const SampleSet s = clean_sample(65, 5, 60);
  RngStream a(7, 0), b(7, 0);
  const CvResult x = trimmed_cv(s, {0.3, 0.1}, {1.0, 0.8}, SolverConfig{}, a, {.folds = 3, .jobs = 1});
  const CvResult y = trimmed_cv(s, {0.3, 0.1}, {1.0, 0.8}, SolverConfig{}, b, {.folds = 3, .jobs = 3});
  ASSERT_EQ(x.table.size(), y.table.size());
  for (std::size_t k = 0; k < x.table.size(); ++k) EXPECT_EQ(x.table[k].score, y.table[k].score);
}

TEST(TrimmedCv, RejectsBadGrids) {
  const SampleSet s = clean_sample(66, 4, 30);
  RngStream rng(8, 0);
  EXPECT_THROW(trimmed_cv(s, {}, {1.0}, SolverConfig{}, rng), InvalidParams);
  EXPECT_THROW(trimmed_cv(s, {0.1}, {1.5}, SolverConfig{}, rng), InvalidParams);
  EXPECT_THROW(trimmed_cv(s, {-0.1}, {1.0}, SolverConfig{}, rng), InvalidParams);
}
