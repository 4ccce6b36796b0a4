#pragma once

// Solvers for the trimmed l1-penalized Gaussian likelihood
//
//   min_{Theta PD, w}  <Theta, (1/h) sum_i w_i x_i x_i^T> - log det Theta
//                      + lambda * ||Theta||_{1,off}
//   s.t. w in [0,1]^n, 1^T w = h, ||Theta||_1 <= R.
//
// Two strategies are provided. Composite interleaves one weight update with a
// single proximal-gradient step on Theta. Alternating solves the convex
// Theta-subproblem to tolerance between weight updates. With h = n and
// R = infinity both reduce to the ordinary graphical lasso.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tglasso/ggm_model.hpp"

namespace tglasso {

enum class Strategy { Composite, Alternating };

enum class Termination { Converged, MaxIters, LineSearchFailed };

const char* to_string(Strategy s) noexcept;
const char* to_string(Termination t) noexcept;

struct SolverConfig {
  double lambda = 0.0;
  Index h = 0;
  double radius = std::numeric_limits<double>::infinity();
  int max_iters = 500;
  /// Relative change of the total objective between iterations.
  double tol = 1e-6;
  double initial_step = 1.0;
  double backtrack_factor = 0.5;
  Strategy strategy = Strategy::Composite;
  /// Alternating strategy only: iteration cap of each inner solve.
  int inner_max_iters = 200;

  /// Throws InvalidConfig when a field is out of range for n samples.
  void validate(Index n) const;
};

struct TraceEntry {
  int iteration = 0;
  double objective = 0.0;
  double step = 0.0;
  bool weights_changed = false;
};

struct FitResult {
  PrecisionEstimate estimate;
  TrimWeights weights;
  std::vector<TraceEntry> trace;
  Termination termination = Termination::MaxIters;
  /// Non-fatal conditions noticed during the fit (e.g. h < p).
  std::vector<std::string> warnings;
};

/// Optional starting point and per-iteration observer for fit().
struct FitControl {
  /// Warm start; replaces the (S + lambda I)^{-1} initialization.
  std::optional<SymMatrix> initial_theta;
  /// Called after every accepted iterate with its trace entry.
  std::function<void(const TraceEntry&, const PrecisionEstimate&, const TrimWeights&)> observer;
};

struct StepResult {
  PrecisionEstimate estimate;
  double step = 0.0;
};

struct StationarityReport {
  /// max(|g_ij| - lambda, 0) over off-diagonal zeros of Theta.
  double max_zero_violation = 0.0;
  /// max |g_ij + lambda * sign(Theta_ij)| over off-diagonal nonzeros.
  double max_active_violation = 0.0;
  /// max |g_ii|.
  double max_diag_gradient = 0.0;
  bool weights_optimal = false;
};

/// Binary weights keeping the h samples with the smallest negative
/// log-likelihood under theta. Ties go to the lower sample index.
TrimWeights update_weights(const PrecisionEstimate& theta, const SampleSet& s, Index h);

/// One proximal-gradient step with backtracking.
///
/// The candidate soft-thresholds Theta - eta * grad at eta * lambda (and is
/// projected onto the l1 ball when the radius is finite). eta shrinks by
/// backtrack_factor until the candidate is PD and satisfies the quadratic
/// upper-bound condition on the smooth part. Throws LineSearchFailed when eta
/// drops below 1e-12.
StepResult composite_step(const PrecisionEstimate& theta, const SymMatrix& cov,
                          const SolverConfig& cfg, double step);

/// Runs the configured strategy. A failed line search ends the fit with
/// Termination::LineSearchFailed and keeps the partial trace.
FitResult fit(const SampleSet& s, const SolverConfig& cfg, const FitControl& control = {});

struct PathOptions {
  /// Seed each fit with the previous lambda's estimate.
  bool warm_start = true;
  /// Worker threads; only used when warm_start is false.
  unsigned jobs = 1;
};

/// One fit per lambda (strictly descending, all >= 0). Lambda in cfg is
/// ignored. A failed fit is kept in the output and the next lambda restarts
/// cold.
std::vector<FitResult> fit_path(const SampleSet& s, const std::vector<double>& lambdas,
                                const SolverConfig& cfg, const PathOptions& options = {});

/// First-order optimality of the estimate in Theta at its weights, and
/// optimality of the weights at the estimate.
StationarityReport check_stationarity(const FitResult& r, const SampleSet& s, double lambda);

/// Initial iterate (S + lambda I)^{-1} with S the full empirical covariance.
/// Falls back to the inverse of diag(S) + lambda (or the identity) when
/// S + lambda I is singular.
SymMatrix initial_precision(const SampleSet& s, double lambda);

}  // namespace tglasso
