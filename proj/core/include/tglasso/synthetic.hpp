#pragma once

// Ground-truth hub networks and contaminated Gaussian samples.

#include <optional>
#include <string_view>
#include <vector>

#include "tglasso/edge_set.hpp"
#include "tglasso/ggm_model.hpp"
#include "tglasso/random.hpp"

namespace tglasso {

/// How an off-diagonal coefficient is drawn from [neg_lo, neg_hi] U [pos_lo, pos_hi].
enum class CoefficientDraw {
  /// Uniform over the union (interval picked in proportion to its length).
  UnionUniform,
  /// Fair coin between the two intervals, then uniform within.
  FairCoin,
};

struct HubNetworkParams {
  double edge_prob = 0.03;
  Index hub_count = 9;
  double hub_prob = 0.4;
  double neg_lo = -0.75;
  double neg_hi = -0.23;
  double pos_lo = 0.25;
  double pos_hi = 0.75;
  CoefficientDraw draw = CoefficientDraw::UnionUniform;
  /// Smallest eigenvalue of the generated precision matrix.
  double min_eigenvalue = 0.1;
};

struct GroundTruth {
  SymMatrix theta_star;
  /// Nonzero off-diagonal pattern of theta_star.
  EdgeSet support;
  std::vector<Index> hubs;
  HubNetworkParams params;
};

enum class Scenario { M1, M2, M3, M4, M5 };

std::string_view to_string(Scenario s) noexcept;
/// Accepts "m1".."m5" in either case; throws InvalidParams otherwise.
Scenario parse_scenario(std::string_view text);

struct ContaminatedSample {
  SampleSet data;
  /// true marks an outlier.
  std::vector<bool> labels;
  Scenario scenario = Scenario::M1;
  double p0 = 0.0;
  /// Outlier precision matrix for M1/M2, drawn like the ground truth.
  std::optional<SymMatrix> outlier_theta;

  [[nodiscard]] Index outlier_count() const;
};

/// Random hub-network precision matrix.
///
/// Adjacency A: each pair i < j is linked with probability edge_prob; then
/// hub_count hubs are chosen uniformly and every entry of their rows and
/// columns is reset to 1 with probability hub_prob (0 otherwise). Each
/// linked entry of E (both triangles, drawn independently) gets a
/// coefficient from the two intervals, E <- (E + E^T) / 2, and
/// Theta = E + (min_eigenvalue - lambda_min(E)) I.
GroundTruth gen_hub_precision(Index p, RngStream& rng, const HubNetworkParams& params = {});

/// n rows z L^T with z standard normal and L = cholesky(cov).
SampleSet sample_gaussian(Index n, const SymMatrix& cov, RngStream& rng);

/// Mixture sample: with probability 1 - p0 a row is N(0, Theta*^{-1});
/// otherwise an outlier drawn per scenario:
///   M1/M2: N(+-mu 1, Theta~^{-1}) with mu = 1 / 1.5, fair sign, Theta~ a fresh hub network
///   M3/M4: N(+-mu 1, I) with mu = 1 / 1.5, fair sign
///   M5:    N(2 * 1, I)
ContaminatedSample gen_contaminated(const GroundTruth& gt, Scenario scenario, Index n, double p0,
                                    RngStream& rng);

}  // namespace tglasso
