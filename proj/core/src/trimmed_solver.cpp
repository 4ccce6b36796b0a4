#include "tglasso/trimmed_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tglasso/parallel.hpp"

namespace tglasso {

namespace {

constexpr double kMinStep = 1e-12;

// Round-off allowance in the sufficient-decrease test, relative to the size
// of the smooth objective.
constexpr double kDecreaseSlack = 1e-13;

bool small_relative_change(double previous, double current, double tol) {
  return std::abs(previous - current) <= tol * std::max(1.0, std::abs(previous));
}

}  // namespace

const char* to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::Composite:
      return "composite";
    case Strategy::Alternating:
      return "alternating";
  }
  return "unknown";
}

const char* to_string(Termination t) noexcept {
  switch (t) {
    case Termination::Converged:
      return "converged";
    case Termination::MaxIters:
      return "max_iters";
    case Termination::LineSearchFailed:
      return "line_search_failed";
  }
  return "unknown";
}

void SolverConfig::validate(Index n) const {
  if (n < 1) throw InvalidConfig("no samples to fit");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidConfig("lambda must be finite and >= 0");
  if (h < 1 || h > n) {
    throw InvalidConfig("h=" + std::to_string(h) + " must lie in [1, " + std::to_string(n) + "]");
  }
  if (!(radius > 0.0)) throw InvalidConfig("radius must be positive");
  if (max_iters < 1) throw InvalidConfig("max_iters must be positive");
  if (!(tol > 0.0)) throw InvalidConfig("tol must be positive");
  if (!(initial_step > 0.0) || !std::isfinite(initial_step)) throw InvalidConfig("initial_step must be positive");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw InvalidConfig("backtrack_factor must lie in (0, 1)");
  }
  if (inner_max_iters < 1) throw InvalidConfig("inner_max_iters must be positive");
}

TrimWeights update_weights(const PrecisionEstimate& theta, const SampleSet& s, Index h) {
  const Index n = s.n();
  if (h < 1 || h > n) {
    throw InvalidParams("h=" + std::to_string(h) + " must lie in [1, " + std::to_string(n) + "]");
  }
  const Vector nll = per_sample_nll_all(theta, s);
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&nll](Index a, Index b) { return nll(a) < nll(b); });
  std::vector<double> values(static_cast<std::size_t>(n), 0.0);
  for (Index k = 0; k < h; ++k) {
    values[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = 1.0;
  }
  return TrimWeights(std::move(values), h);
}

StepResult composite_step(const PrecisionEstimate& theta, const SymMatrix& cov,
                          const SolverConfig& cfg, double step) {
  if (!(step > 0.0)) throw InvalidParams("step must be positive");
  const SymMatrix grad = smooth_gradient(theta, cov);
  const double f0 = smooth_value(theta, cov);
  const double slack = kDecreaseSlack * (1.0 + std::abs(f0));
  const DenseMatrix& current = theta.matrix().dense();

  for (double eta = step; eta >= kMinStep; eta *= cfg.backtrack_factor) {
    SymMatrix candidate = soft_threshold_offdiag(
        SymMatrix::symmetrize(current - eta * grad.dense()), eta * cfg.lambda);
    if (std::isfinite(cfg.radius)) {
      candidate = project_l1_ball(candidate, cfg.radius);
    }
    auto factor = try_cholesky(candidate);
    if (!factor) continue;

    PrecisionEstimate next(std::move(candidate), std::move(*factor));
    const DenseMatrix diff = next.matrix().dense() - current;
    if (diff.isZero(0.0)) {
      return {std::move(next), eta};
    }
    const double f1 = smooth_value(next, cov);
    const double model =
        f0 + grad.dense().cwiseProduct(diff).sum() + diff.squaredNorm() / (2.0 * eta);
    if (f1 <= model + slack) {
      return {std::move(next), eta};
    }
  }
  throw LineSearchFailed("step size fell below 1e-12 without an acceptable iterate");
}

SymMatrix initial_precision(const SampleSet& s, double lambda) {
  const SymMatrix cov = empirical_cov(s);
  const Index p = cov.dim();
  DenseMatrix shifted = cov.dense();
  shifted.diagonal().array() += lambda;
  if (auto f = try_cholesky(SymMatrix::from_exact(shifted))) {
    return inverse_from_factor(*f);
  }
  SymMatrix out = SymMatrix::identity(p);
  for (Index i = 0; i < p; ++i) {
    const double d = cov(i, i) + lambda;
    if (d > 0.0) out.set(i, i, 1.0 / d);
  }
  return out;
}

namespace {

PrecisionEstimate starting_point(const SampleSet& s, const SolverConfig& cfg,
                                 const FitControl& control) {
  SymMatrix start = control.initial_theta ? *control.initial_theta
                                          : initial_precision(s, cfg.lambda);
  if (start.dim() != s.p()) {
    throw InvalidConfig("initial precision dimension does not match the data");
  }
  if (std::isfinite(cfg.radius)) {
    SymMatrix projected = project_l1_ball(start, cfg.radius);
    if (auto f = try_cholesky(projected)) {
      return PrecisionEstimate(std::move(projected), std::move(*f));
    }
  }
  auto f = try_cholesky(start);
  if (!f) throw InvalidConfig("initial precision is not positive definite");
  return PrecisionEstimate(std::move(start), std::move(*f));
}

// Shared loop state for both strategies.
struct FitState {
  const SampleSet& samples;
  const SolverConfig& cfg;
  const FitControl& control;
  PrecisionEstimate theta;
  TrimWeights weights;
  std::optional<WeightedScatter> scatter;
  std::vector<TraceEntry> trace;
  double step;

  // Re-optimizes the weights at the current iterate; true if any flipped.
  bool refresh_weights() {
    TrimWeights next = update_weights(theta, samples, cfg.h);
    bool changed = true;
    if (!scatter) {
      scatter.emplace(samples, next);
    } else {
      changed = scatter->update(next) > 0;
    }
    weights = std::move(next);
    return changed;
  }

  // Takes one composite step at fixed weights and records it.
  double advance(const SymMatrix& cov, bool weights_changed) {
    StepResult r = composite_step(theta, cov, cfg, step);
    theta = std::move(r.estimate);
    const double total = objective_at_cov(theta, cov, cfg.lambda).total;
    TraceEntry entry{static_cast<int>(trace.size()) + 1, total, r.step, weights_changed};
    trace.push_back(entry);
    if (control.observer) control.observer(entry, theta, weights);
    step = std::min(2.0 * r.step, cfg.initial_step);
    return total;
  }
};

Termination run_composite(FitState& st) {
  double previous = 0.0;
  for (int it = 1; it <= st.cfg.max_iters; ++it) {
    const bool changed = st.refresh_weights();
    const SymMatrix cov = st.scatter->covariance();
    const double total = st.advance(cov, changed);
    if (it > 1 && small_relative_change(previous, total, st.cfg.tol)) {
      return Termination::Converged;
    }
    previous = total;
  }
  return Termination::MaxIters;
}

Termination run_alternating(FitState& st) {
  const double inner_tol = st.cfg.tol / 10.0;
  double outer_previous = 0.0;
  for (int outer = 1; outer <= st.cfg.max_iters; ++outer) {
    const bool changed = st.refresh_weights();
    const SymMatrix cov = st.scatter->covariance();
    double base = objective_at_cov(st.theta, cov, st.cfg.lambda).total;
    double total = base;
    for (int inner = 1; inner <= st.cfg.inner_max_iters; ++inner) {
      total = st.advance(cov, changed && inner == 1);
      const bool settled = small_relative_change(base, total, inner_tol);
      base = total;
      if (settled) break;
    }
    if (outer > 1 && !changed && small_relative_change(outer_previous, total, st.cfg.tol)) {
      return Termination::Converged;
    }
    outer_previous = total;
  }
  return Termination::MaxIters;
}

}  // namespace

FitResult fit(const SampleSet& s, const SolverConfig& cfg, const FitControl& control) {
  cfg.validate(s.n());
  std::vector<std::string> warnings;
  if (cfg.h < s.p()) {
    warnings.push_back("h=" + std::to_string(cfg.h) + " is below p=" + std::to_string(s.p()) +
                       "; the weighted covariance is rank deficient");
  }

  FitState st{s, cfg, control, starting_point(s, cfg, control), TrimWeights{}, std::nullopt, {},
              cfg.initial_step};

  Termination term = Termination::MaxIters;
  try {
    term = cfg.strategy == Strategy::Composite ? run_composite(st) : run_alternating(st);
  } catch (const LineSearchFailed&) {
    term = Termination::LineSearchFailed;
  }
  if (st.weights.n() == 0) {
    st.weights = update_weights(st.theta, s, cfg.h);
  }
  return FitResult{std::move(st.theta), std::move(st.weights), std::move(st.trace), term,
                   std::move(warnings)};
}

std::vector<FitResult> fit_path(const SampleSet& s, const std::vector<double>& lambdas,
                                const SolverConfig& cfg, const PathOptions& options) {
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] >= 0.0)) throw InvalidParams("path lambdas must be >= 0");
    if (k > 0 && !(lambdas[k] < lambdas[k - 1])) {
      throw InvalidParams("path lambdas must be strictly descending");
    }
  }

  std::vector<std::optional<FitResult>> slots(lambdas.size());
  auto run_one = [&](std::size_t k, const std::optional<SymMatrix>& warm) {
    SolverConfig c = cfg;
    c.lambda = lambdas[k];
    FitControl control;
    control.initial_theta = warm;
    slots[k].emplace(fit(s, c, control));
  };

  if (options.warm_start) {
    std::optional<SymMatrix> warm;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      run_one(k, warm);
      if (slots[k]->termination == Termination::LineSearchFailed) {
        warm.reset();
      } else {
        warm = slots[k]->estimate.matrix();
      }
    }
  } else {
    parallel_for(lambdas.size(), options.jobs,
                 [&](std::size_t k) { run_one(k, std::nullopt); });
  }

  std::vector<FitResult> out;
  out.reserve(slots.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

StationarityReport check_stationarity(const FitResult& r, const SampleSet& s, double lambda) {
  const SymMatrix cov = weighted_empirical_cov(s, r.weights);
  const SymMatrix g = smooth_gradient(r.estimate, cov);
  const SymMatrix& theta = r.estimate.matrix();
  const Index p = theta.dim();

  StationarityReport rep;
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) {
      const double gij = g(i, j);
      if (i == j) {
        rep.max_diag_gradient = std::max(rep.max_diag_gradient, std::abs(gij));
      } else if (theta(i, j) == 0.0) {
        rep.max_zero_violation = std::max(rep.max_zero_violation, std::abs(gij) - lambda);
      } else {
        const double sign = theta(i, j) > 0.0 ? 1.0 : -1.0;
        rep.max_active_violation = std::max(rep.max_active_violation, std::abs(gij + lambda * sign));
      }
    }
  }
  rep.weights_optimal = update_weights(r.estimate, s, r.weights.h()) == r.weights;
  return rep;
}

}  // namespace tglasso
