#include "tglasso/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

namespace tglasso {

namespace {

void validate(Index p, const HubNetworkParams& hp) {
  auto is_prob = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (hp.hub_count < 0) throw InvalidParams("hub_count must be >= 0");
  if (p <= hp.hub_count) {
    throw InvalidParams("p=" + std::to_string(p) + " must exceed hub_count=" +
                        std::to_string(hp.hub_count));
  }
  if (!is_prob(hp.edge_prob) || !is_prob(hp.hub_prob)) {
    throw InvalidParams("edge and hub probabilities must lie in [0, 1]");
  }
  if (!(hp.neg_lo <= hp.neg_hi && hp.pos_lo <= hp.pos_hi)) {
    throw InvalidParams("coefficient intervals must have lo <= hi");
  }
  if (!(hp.neg_hi - hp.neg_lo + hp.pos_hi - hp.pos_lo > 0.0)) {
    throw InvalidParams("coefficient intervals are empty");
  }
  if (!(hp.min_eigenvalue > 0.0)) throw InvalidParams("min_eigenvalue must be positive");
}

double draw_coefficient(RngStream& rng, const HubNetworkParams& hp) {
  const double neg_len = hp.neg_hi - hp.neg_lo;
  const double pos_len = hp.pos_hi - hp.pos_lo;
  if (hp.draw == CoefficientDraw::FairCoin) {
    return rng.bernoulli(0.5) ? rng.uniform(hp.neg_lo, hp.neg_hi) : rng.uniform(hp.pos_lo, hp.pos_hi);
  }
  const double u = rng.uniform() * (neg_len + pos_len);
  return u < neg_len ? hp.neg_lo + u : hp.pos_lo + (u - neg_len);
}

}  // namespace

std::string_view to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::M1: return "m1";
    case Scenario::M2: return "m2";
    case Scenario::M3: return "m3";
    case Scenario::M4: return "m4";
    case Scenario::M5: return "m5";
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "m1") return Scenario::M1;
  if (lower == "m2") return Scenario::M2;
  if (lower == "m3") return Scenario::M3;
  if (lower == "m4") return Scenario::M4;
  if (lower == "m5") return Scenario::M5;
  throw InvalidParams("unknown scenario '" + std::string(text) + "' (expected m1..m5)");
}

Index ContaminatedSample::outlier_count() const {
  return static_cast<Index>(std::count(labels.begin(), labels.end(), true));
}

GroundTruth gen_hub_precision(Index p, RngStream& rng, const HubNetworkParams& params) {
  validate(p, params);

  // Adjacency, upper triangle first.
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> adj =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(p, p, false);
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      const bool linked = rng.bernoulli(params.edge_prob);
      adj(i, j) = linked;
      adj(j, i) = linked;
    }
  }

  // Hubs: partial Fisher-Yates over node ids.
  std::vector<Index> nodes(static_cast<std::size_t>(p));
  std::iota(nodes.begin(), nodes.end(), Index{0});
  for (Index k = 0; k < params.hub_count; ++k) {
    const auto pick = k + static_cast<Index>(rng.uniform_int(static_cast<std::uint64_t>(p - k)));
    std::swap(nodes[static_cast<std::size_t>(k)], nodes[static_cast<std::size_t>(pick)]);
  }
  std::vector<Index> hubs(nodes.begin(), nodes.begin() + params.hub_count);
  for (Index hub : hubs) {
    for (Index j = 0; j < p; ++j) {
      if (j == hub) continue;
      const bool linked = rng.bernoulli(params.hub_prob);
      adj(hub, j) = linked;
      adj(j, hub) = linked;
    }
  }

  DenseMatrix e = DenseMatrix::Zero(p, p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j < p; ++j) {
      if (i != j && adj(i, j)) e(i, j) = draw_coefficient(rng, params);
    }
  }
  SymMatrix sym = SymMatrix::symmetrize(e);
  const double shift = params.min_eigenvalue - min_eigenvalue(sym);
  DenseMatrix theta = sym.dense();
  theta.diagonal().array() += shift;

  GroundTruth gt{SymMatrix::from_exact(std::move(theta)), EdgeSet(p), std::move(hubs), params};
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      if (gt.theta_star(i, j) != 0.0) gt.support.add(i, j);
    }
  }
  std::sort(gt.hubs.begin(), gt.hubs.end());
  return gt;
}

SampleSet sample_gaussian(Index n, const SymMatrix& cov, RngStream& rng) {
  if (n < 0) throw InvalidParams("sample count must be >= 0");
  const CholeskyFactor f = cholesky(cov);
  const Index p = cov.dim();
  DenseMatrix z(n, p);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) z(i, j) = rng.normal();
  }
  return SampleSet(z * f.lower().transpose());
}

ContaminatedSample gen_contaminated(const GroundTruth& gt, Scenario scenario, Index n, double p0,
                                    RngStream& rng) {
  if (!(p0 >= 0.0 && p0 < 0.5)) throw InvalidParams("p0 must lie in [0, 0.5)");
  if (n < 0) throw InvalidParams("sample count must be >= 0");
  const Index p = gt.theta_star.dim();

  ContaminatedSample out;
  out.scenario = scenario;
  out.p0 = p0;

  const DenseMatrix good_lower =
      cholesky(inverse_from_factor(cholesky(gt.theta_star))).lower();
  DenseMatrix outlier_lower = DenseMatrix::Identity(p, p);
  double mu = 0.0;
  bool symmetric_means = true;
  switch (scenario) {
    case Scenario::M1:
    case Scenario::M2: {
      GroundTruth other = gen_hub_precision(p, rng, gt.params);
      outlier_lower = cholesky(inverse_from_factor(cholesky(other.theta_star))).lower();
      out.outlier_theta = std::move(other.theta_star);
      mu = scenario == Scenario::M1 ? 1.0 : 1.5;
      break;
    }
    case Scenario::M3:
      mu = 1.0;
      break;
    case Scenario::M4:
      mu = 1.5;
      break;
    case Scenario::M5:
      mu = 2.0;
      symmetric_means = false;
      break;
  }

  DenseMatrix rows(n, p);
  out.labels.assign(static_cast<std::size_t>(n), false);
  Vector z(p);
  for (Index i = 0; i < n; ++i) {
    const bool outlier = rng.bernoulli(p0);
    double sign = 1.0;
    if (outlier && symmetric_means) sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
    for (Index j = 0; j < p; ++j) z(j) = rng.normal();
    if (outlier) {
      out.labels[static_cast<std::size_t>(i)] = true;
      rows.row(i) = (outlier_lower * z).transpose().array() + sign * mu;
    } else {
      rows.row(i) = (good_lower * z).transpose();
    }
  }
  out.data = SampleSet(std::move(rows));
  return out;
}

}  // namespace tglasso
