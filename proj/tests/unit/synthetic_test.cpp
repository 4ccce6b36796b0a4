#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "tglasso/synthetic.hpp"

using namespace tglasso;
using oracle::Mat;

TEST(RngStream, SameSeedAndStreamReproduce) {
  RngStream a(42, 7);
  RngStream b(42, 7);
  for (int k = 0; k < 1000; ++k) EXPECT_EQ(a.next_u64(), b.next_u64());
  RngStream c(42, 8);
  RngStream d(43, 7);
  RngStream e(42, 7);
  EXPECT_NE(c.next_u64(), e.next_u64());
  RngStream f(42, 7);
  EXPECT_NE(d.next_u64(), f.next_u64());
}

TEST(RngStream, SplitIsDeterministicAndDistinct) {
  const RngStream base(9, 0);
  RngStream a = base.split(1);
  RngStream b = base.split(1);
  RngStream c = base.split(2);
  const auto x = a.next_u64();
  EXPECT_EQ(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
}

TEST(RngStream, UniformAndNormalMoments) {
  RngStream rng(1, 2);
  const int n = 200000;
  double sum = 0.0, sq = 0.0, nsum = 0.0, nsq = 0.0;
  for (int k = 0; k < n; ++k) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
    const double z = rng.normal();
    nsum += z;
    nsq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
  EXPECT_NEAR(sq / n - 0.25, 1.0 / 12.0, 0.003);
  EXPECT_NEAR(nsum / n, 0.0, 0.01);
  EXPECT_NEAR(nsq / n, 1.0, 0.01);
}

TEST(RngStream, UniformIntCoversRange) {
  RngStream rng(3, 0);
  std::vector<int> counts(7, 0);
  for (int k = 0; k < 70000; ++k) {
    const auto v = rng.uniform_int(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
  EXPECT_EQ(rng.uniform_int(1), 0u);
}

TEST(HubPrecision, MinEigenvalueIsShifted) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RngStream rng(seed, 0);
    const GroundTruth gt = gen_hub_precision(40, rng);
    EXPECT_NEAR(oracle::eigenvalues(gt.theta_star.dense())(0), 0.1, 1e-8);
    EXPECT_TRUE(try_cholesky(gt.theta_star).has_value());
  }
}

TEST(HubPrecision, DefaultParameters) {
  const HubNetworkParams hp;
  EXPECT_EQ(hp.edge_prob, 0.03);
  EXPECT_EQ(hp.hub_count, 9);
  EXPECT_EQ(hp.hub_prob, 0.4);
  EXPECT_EQ(hp.neg_lo, -0.75);
  EXPECT_EQ(hp.neg_hi, -0.23);
  EXPECT_EQ(hp.pos_lo, 0.25);
  EXPECT_EQ(hp.pos_hi, 0.75);
  EXPECT_EQ(hp.draw, CoefficientDraw::UnionUniform);

  RngStream rng(5, 0);
  const GroundTruth gt = gen_hub_precision(150, rng);
  EXPECT_EQ(gt.theta_star.dim(), 150);
  EXPECT_EQ(gt.hubs.size(), 9u);
  EXPECT_EQ(std::set<Index>(gt.hubs.begin(), gt.hubs.end()).size(), 9u);
  // Hub rows carry about 0.4 * 149 links each.
  double hub_degree = 0.0;
  for (Index hub : gt.hubs) {
    for (Index j = 0; j < 150; ++j) {
      if (j != hub && gt.support.contains(hub, j)) hub_degree += 1.0;
    }
  }
  EXPECT_NEAR(hub_degree / 9.0, 0.4 * 149.0, 15.0);
}

TEST(HubPrecision, NoEdgesGivesScaledIdentity) {
  RngStream rng(6, 0);
  const GroundTruth gt = gen_hub_precision(12, rng, {.edge_prob = 0.0, .hub_prob = 0.0});
  EXPECT_TRUE(gt.support.empty());
  EXPECT_LE((gt.theta_star.dense() - 0.1 * Mat::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(HubPrecision, SupportIsExactNonzeroPattern) {
  RngStream rng(7, 0);
  const GroundTruth gt = gen_hub_precision(60, rng, {.edge_prob = 0.08});
  for (Index i = 0; i < 60; ++i) {
    for (Index j = 0; j < 60; ++j) {
      EXPECT_EQ(gt.theta_star(i, j), gt.theta_star.dense()(j, i));
      if (i != j) EXPECT_EQ(gt.support.contains(i, j), gt.theta_star(i, j) != 0.0);
    }
  }
}

TEST(HubPrecision, CoefficientsComeFromIntervals) {
  // With only background edges each coefficient is the average of two draws
  // from the union (or one draw and a zero when a single triangle is linked),
  // so every magnitude is at most 0.75.
  for (CoefficientDraw draw : {CoefficientDraw::UnionUniform, CoefficientDraw::FairCoin}) {
    RngStream rng(8, 0);
    HubNetworkParams hp;
    hp.draw = draw;
    hp.hub_count = 0;
    hp.edge_prob = 0.3;
    const GroundTruth gt = gen_hub_precision(30, rng, hp);
    for (const auto& [i, j] : gt.support) EXPECT_LE(std::abs(gt.theta_star(i, j)), 0.75);
    EXPECT_FALSE(gt.support.empty());
  }
}

TEST(HubPrecision, InvalidParams) {
  RngStream rng(9, 0);
  EXPECT_THROW(gen_hub_precision(9, rng), InvalidParams);
  EXPECT_THROW(gen_hub_precision(20, rng, {.edge_prob = 1.5}), InvalidParams);
  HubNetworkParams hp;
  hp.min_eigenvalue = 0.0;
  EXPECT_THROW(gen_hub_precision(20, rng, hp), InvalidParams);
}

TEST(HubPrecision, Reproducible) {
  RngStream a(10, 3);
  RngStream b(10, 3);
  const GroundTruth x = gen_hub_precision(50, a);
  const GroundTruth y = gen_hub_precision(50, b);
  EXPECT_EQ(x.theta_star, y.theta_star);
  EXPECT_EQ(x.support, y.support);
  EXPECT_EQ(x.hubs, y.hubs);
}

TEST(SampleGaussian, IdentityCovariance) {
  RngStream rng(11, 0);
  const SampleSet s = sample_gaussian(100000, SymMatrix::identity(2), rng);
  const Mat cov = s.rows().transpose() * s.rows() / 100000.0;
  EXPECT_LE((cov - Mat::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.05);
}

TEST(SampleGaussian, EmptySample) {
  RngStream rng(12, 0);
  const SampleSet s = sample_gaussian(0, SymMatrix::identity(3), rng);
  EXPECT_EQ(s.n(), 0);
  EXPECT_EQ(s.p(), 3);
}

TEST(SampleGaussian, VarianceRatio) {
  RngStream rng(13, 0);
  const SampleSet s = sample_gaussian(50000, SymMatrix::diagonal({4.0, 1.0}), rng);
  const double v0 = s.rows().col(0).squaredNorm();
  const double v1 = s.rows().col(1).squaredNorm();
  EXPECT_NEAR(v0 / v1, 4.0, 0.4);
  EXPECT_THROW(sample_gaussian(3, SymMatrix{{1.0, 2.0}, {2.0, 1.0}}, rng), NotPositiveDefinite);
}

TEST(Contaminated, NoOutliersWhenP0IsZero) {
  RngStream rng(14, 0);
  const GroundTruth gt = gen_hub_precision(20, rng);
  const ContaminatedSample cs = gen_contaminated(gt, Scenario::M1, 500, 0.0, rng);
  EXPECT_EQ(cs.outlier_count(), 0);
  EXPECT_EQ(cs.labels.size(), 500u);
}

TEST(Contaminated, DefaultProtocolSize) {
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RngStream rng(seed, 1);
    const GroundTruth gt = gen_hub_precision(150, rng);
    const ContaminatedSample cs = gen_contaminated(gt, Scenario::M1, 100, 0.1, rng);
    EXPECT_EQ(cs.data.n(), 100);
    EXPECT_EQ(cs.data.p(), 150);
    ASSERT_TRUE(cs.outlier_theta.has_value());
    EXPECT_NEAR(oracle::eigenvalues(cs.outlier_theta->dense())(0), 0.1, 1e-8);
    total += static_cast<double>(cs.outlier_count());
  }
  // Mean of 30 Binomial(100, 0.1) counts: sd 3 / sqrt(30).
  EXPECT_NEAR(total / 30.0, 10.0, 3.0 * 3.0 / std::sqrt(30.0));
}

TEST(Contaminated, OutlierMomentsM4) {
  RngStream rng(15, 0);
  const GroundTruth gt = gen_hub_precision(10, rng, {.hub_count = 2});
  const ContaminatedSample cs = gen_contaminated(gt, Scenario::M4, 40000, 0.45, rng);
  std::vector<int> pos, neg;
  for (Index i = 0; i < cs.data.n(); ++i) {
    if (!cs.labels[static_cast<std::size_t>(i)]) continue;
    (cs.data.rows().row(i).mean() > 0.0 ? pos : neg).push_back(static_cast<int>(i));
  }
  ASSERT_GT(pos.size(), 5000u);
  ASSERT_GT(neg.size(), 5000u);
  for (const auto* group : {&pos, &neg}) {
    Mat rows(static_cast<Index>(group->size()), 10);
    for (std::size_t k = 0; k < group->size(); ++k) {
      rows.row(static_cast<Index>(k)) = cs.data.rows().row((*group)[k]);
    }
    const oracle::Vec mean = rows.colwise().mean().transpose();
    const double sign = group == &pos ? 1.0 : -1.0;
    EXPECT_LE((mean.array() - sign * 1.5).abs().maxCoeff(), 0.06);
    const Mat centered = rows.rowwise() - mean.transpose();
    const Mat cov = centered.transpose() * centered / static_cast<double>(rows.rows());
    EXPECT_LE((cov - Mat::Identity(10, 10)).cwiseAbs().maxCoeff(), 0.08);
  }
}

TEST(Contaminated, M5HasOneSidedMean) {
  RngStream rng(16, 0);
  const GroundTruth gt = gen_hub_precision(10, rng, {.hub_count = 2});
  const ContaminatedSample cs = gen_contaminated(gt, Scenario::M5, 20000, 0.3, rng);
  oracle::Vec sum = oracle::Vec::Zero(10);
  for (Index i = 0; i < cs.data.n(); ++i) {
    if (cs.labels[static_cast<std::size_t>(i)]) sum += cs.data.rows().row(i).transpose();
  }
  const oracle::Vec mean = sum / static_cast<double>(cs.outlier_count());
  EXPECT_LE((mean.array() - 2.0).abs().maxCoeff(), 0.06);
  EXPECT_FALSE(cs.outlier_theta.has_value());
}

TEST(Contaminated, LabelRateWithinBinomialBand) {
  RngStream rng(17, 0);
  const GroundTruth gt = gen_hub_precision(15, rng, {.hub_count = 3});
  const ContaminatedSample cs = gen_contaminated(gt, Scenario::M2, 10000, 0.1, rng);
  const double sd = std::sqrt(10000 * 0.1 * 0.9);
  EXPECT_NEAR(static_cast<double>(cs.outlier_count()), 1000.0, 3.0 * sd);
}

TEST(Contaminated, ReproducibleAndValidated) {
  RngStream g(18, 0);
  const GroundTruth gt = gen_hub_precision(20, g);
  RngStream a(19, 4);
  RngStream b(19, 4);
  const ContaminatedSample x = gen_contaminated(gt, Scenario::M2, 200, 0.2, a);
  const ContaminatedSample y = gen_contaminated(gt, Scenario::M2, 200, 0.2, b);
  EXPECT_EQ(x.data.rows(), y.data.rows());
  EXPECT_EQ(x.labels, y.labels);
  EXPECT_THROW(gen_contaminated(gt, Scenario::M1, 10, 0.5, a), InvalidParams);
  EXPECT_THROW(gen_contaminated(gt, Scenario::M1, 10, -0.1, a), InvalidParams);
}

TEST(Scenario, ParseAndPrint) {
  EXPECT_EQ(parse_scenario("M3"), Scenario::M3);
  EXPECT_EQ(parse_scenario("m5"), Scenario::M5);
  EXPECT_EQ(to_string(Scenario::M2), "m2");
  EXPECT_THROW(parse_scenario("m6"), InvalidParams);
}
