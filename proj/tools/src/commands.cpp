#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <system_error>

#include "cli.hpp"
#include "tglasso/evaluation.hpp"
#include "tglasso/parallel.hpp"
#include "tglasso/synthetic.hpp"
#include "tglasso/theory.hpp"

namespace tglasso::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
}

// Writes files into one directory and records their digests.
class OutputDir {
public:
  OutputDir(fs::path dir, Manifest& manifest) : dir_(std::move(dir)), manifest_(manifest) {
    make_dir(dir_);
  }

  [[nodiscard]] const fs::path& path() const noexcept { return dir_; }

  void write(const std::string& name, std::string_view content) {
    const fs::path target = dir_ / name;
    atomic_write(target, content);
    manifest_.set("output." + name, digest_hex(digest_bytes(content)));
  }

  void finish(Clock::time_point start) {
    manifest_.set("duration_s", seconds_since(start));
    manifest_.write(dir_ / "manifest.txt");
  }

private:
  fs::path dir_;
  Manifest& manifest_;
};

std::string join(const Vector& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ';';
    out += format_double(v(i));
  }
  return out;
}

SampleSet load_samples(const fs::path& path, bool standardize, Manifest& manifest) {
  DenseMatrix m = read_matrix_csv(path);
  manifest.set("input." + path.filename().string(), digest_hex(digest_file(path)));
  if (m.rows() == 0 || m.cols() == 0) throw InvalidParams("no samples in '" + path.string() + "'");
  SampleSet s(std::move(m));
  if (standardize) {
    Standardization t;
    s = standardize_columns(s, &t);
    manifest.set("standardize.means", join(t.means));
    manifest.set("standardize.scales", join(t.scales));
  }
  return s;
}

SymMatrix load_symmetric(const fs::path& path, Manifest& manifest, const std::string& role) {
  DenseMatrix m = read_matrix_csv(path);
  manifest.set(role + "." + path.filename().string(), digest_hex(digest_file(path)));
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvalidParams("'" + path.string() + "' is not a square matrix");
  }
  return SymMatrix::symmetrize(m);
}

Strategy parse_strategy(const std::string& text) {
  if (text == "composite") return Strategy::Composite;
  if (text == "alternating") return Strategy::Alternating;
  throw InvalidParams("unknown strategy '" + text + "'");
}

Index resolve_h(std::optional<long long> h, std::optional<double> h_frac, Index n) {
  if (h) return static_cast<Index>(*h);
  if (h_frac) {
    if (!(*h_frac > 0.0 && *h_frac <= 1.0)) throw InvalidParams("--h-frac must lie in (0, 1]");
    return trimmed_count(*h_frac, n);
  }
  return n;
}

SolverConfig solver_config(const SolverFlags& f, Index n, Manifest& manifest) {
  SolverConfig cfg;
  cfg.h = resolve_h(f.h, f.h_frac, n);
  cfg.strategy = parse_strategy(f.strategy);
  cfg.radius = f.radius;
  cfg.tol = f.tol;
  cfg.max_iters = f.max_iters;
  manifest.set_int("n", n);
  manifest.set_int("h", cfg.h);
  return cfg;
}

double max_offdiag_cov(const SampleSet& s) {
  const SymMatrix cov = empirical_cov(s);
  double best = 0.0;
  for (Index i = 0; i < cov.dim(); ++i) {
    for (Index j = i + 1; j < cov.dim(); ++j) best = std::max(best, std::abs(cov(i, j)));
  }
  return best;
}

std::string trace_csv(const std::vector<TraceEntry>& trace) {
  std::string out = "iteration,objective,step,weights_changed\n";
  for (const auto& t : trace) {
    out += std::to_string(t.iteration) + ',' + format_double(t.objective) + ',' +
           format_double(t.step) + ',' + (t.weights_changed ? "1" : "0") + '\n';
  }
  return out;
}

std::string roc_csv(const RocCurve& curve) {
  std::string out = "fpr,tpr,lambda\n";
  for (const auto& pt : curve.points) {
    out += format_double(pt.fpr) + ',' + format_double(pt.tpr) + ',' + format_double(pt.lambda) +
           '\n';
  }
  return out;
}

void write_fit_files(OutputDir& out, const FitResult& r, const SampleSet& s, double lambda) {
  const SymMatrix& theta = r.estimate.matrix();
  out.write("precision.csv", matrix_csv(theta.dense()));
  out.write("weights.csv", vector_csv(r.weights.values()));
  out.write("edges.csv", edges_csv(edges_of(theta), theta));
  out.write("trace.csv", trace_csv(r.trace));

  const StationarityReport rep = check_stationarity(r, s, lambda);
  Manifest st;
  st.set("termination", std::string(to_string(r.termination)));
  st.set("max_zero_violation", rep.max_zero_violation);
  st.set("max_active_violation", rep.max_active_violation);
  st.set("max_diag_gradient", rep.max_diag_gradient);
  st.set("weights_optimal", std::string(rep.weights_optimal ? "true" : "false"));
  out.write("stationarity.txt", st.render());
}

std::string rep_name(int rep) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "rep_%04d", rep);
  return buf;
}

std::string estimate_name(std::size_t k) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "precision_%03zu.csv", k);
  return buf;
}

}  // namespace

int cmd_simulate(const SimulateOptions& o, RunContext& ctx) {
  const auto start = Clock::now();
  if (o.reps < 1) throw InvalidParams("--reps must be positive");
  if (o.p < 2) throw InvalidParams("--p must be at least 2");
  if (o.n < 1) throw InvalidParams("--n must be positive");
  const Scenario scenario = parse_scenario(o.scenario);
  HubNetworkParams hp;
  hp.edge_prob = o.edge_prob;
  hp.hub_count = static_cast<Index>(o.hub_count);
  hp.hub_prob = o.hub_prob;
  if (o.coef_draw == "union") {
    hp.draw = CoefficientDraw::UnionUniform;
  } else if (o.coef_draw == "coin") {
    hp.draw = CoefficientDraw::FairCoin;
  } else {
    throw InvalidParams("--coef-draw must be 'union' or 'coin'");
  }

  Manifest top = ctx.manifest;
  OutputDir root(o.out_dir, top);
  std::vector<Index> outliers(static_cast<std::size_t>(o.reps));

  parallel_for(static_cast<std::size_t>(o.reps), o.jobs, [&](std::size_t r) {
    const auto rep_start = Clock::now();
    Manifest m = ctx.manifest;
    m.set_int("rep", static_cast<long long>(r));
    m.set("stream", std::to_string(r));
    OutputDir out(root.path() / rep_name(static_cast<int>(r)), m);

    RngStream rng(o.seed, r);
    const GroundTruth gt = gen_hub_precision(static_cast<Index>(o.p), rng, hp);
    const ContaminatedSample cs =
        gen_contaminated(gt, scenario, static_cast<Index>(o.n), o.p0, rng);
    outliers[r] = cs.outlier_count();
    m.set_int("outliers", cs.outlier_count());

    out.write("samples.csv", matrix_csv(cs.data.rows()));
    out.write("labels.csv", labels_csv(cs.labels));
    out.write("precision.csv", matrix_csv(gt.theta_star.dense()));
    out.write("support.csv", edges_csv(gt.support, gt.theta_star));
    if (cs.outlier_theta) {
      out.write("outlier_precision.csv", matrix_csv(cs.outlier_theta->dense()));
    }
    out.finish(rep_start);
  });

  for (int r = 0; r < o.reps; ++r) {
    const std::string name = rep_name(r);
    top.set("output." + name + "/manifest.txt",
            digest_hex(digest_file(root.path() / name / "manifest.txt")));
    *ctx.log << name << ": " << outliers[static_cast<std::size_t>(r)] << " outliers of " << o.n
             << " samples\n";
  }
  root.finish(start);
  return 0;
}

int cmd_fit(const FitOptions& o, RunContext& ctx) {
  const auto start = Clock::now();
  Manifest& m = ctx.manifest;
  const SampleSet s = load_samples(o.data, o.solver.standardize, m);
  SolverConfig cfg = solver_config(o.solver, s.n(), m);
  cfg.lambda = o.lambda;
  OutputDir out(o.out_dir, m);

  const FitResult r = fit(s, cfg);
  for (const auto& w : r.warnings) *ctx.log << "warning: " << w << '\n';
  m.set("termination", std::string(to_string(r.termination)));
  m.set_int("iterations", static_cast<long long>(r.trace.size()));
  if (!r.trace.empty()) m.set("objective", r.trace.back().objective);
  write_fit_files(out, r, s, cfg.lambda);
  out.finish(start);

  *ctx.log << "fit: " << to_string(r.termination) << " after " << r.trace.size()
           << " iterations, " << edges_of(r.estimate.matrix()).size() << " edges\n";
  return r.termination == Termination::LineSearchFailed ? kExitSolver : kExitOk;
}

int cmd_path(const PathCmdOptions& o, RunContext& ctx) {
  const auto start = Clock::now();
  Manifest& m = ctx.manifest;
  const SampleSet s = load_samples(o.data, o.solver.standardize, m);
  const std::vector<double> lambdas = parse_lambda_grid(o.lambdas, max_offdiag_cov(s));
  const SolverConfig cfg = solver_config(o.solver, s.n(), m);

  std::optional<EdgeSet> truth;
  if (o.truth) {
    truth = edges_of(load_symmetric(*o.truth, m, "input"));
  } else if (o.reference_graph) {
    m.set("input." + o.reference_graph->filename().string(),
          digest_hex(digest_file(*o.reference_graph)));
    truth = read_edges_csv(*o.reference_graph, s.p());
  }
  if (truth && truth->p() != s.p()) throw DimensionMismatch("truth and data differ in p");

  OutputDir out(o.out_dir, m);
  make_dir(out.path() / "estimates");
  PathOptions popts;
  popts.warm_start = !o.cold_start;
  popts.jobs = o.jobs;
  const std::vector<FitResult> results = fit_path(s, lambdas, cfg, popts);

  std::string table = "index,lambda,status,iterations,objective,edges\n";
  RocCurve curve;
  std::size_t failed = 0;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const FitResult& r = results[k];
    const SymMatrix& theta = r.estimate.matrix();
    const EdgeSet est = edges_of(theta);
    if (r.termination == Termination::LineSearchFailed) ++failed;
    const double obj = r.trace.empty() ? std::nan("") : r.trace.back().objective;
    table += std::to_string(k) + ',' + format_double(lambdas[k]) + ',' + to_string(r.termination) +
             ',' + std::to_string(r.trace.size()) + ',' + format_double(obj) + ',' +
             std::to_string(est.size()) + '\n';
    out.write("estimates/" + estimate_name(k), matrix_csv(theta.dense()));
    if (truth) {
      const RocPoint pt = roc_point(est, *truth);
      curve.points.push_back({pt.fpr, pt.tpr, lambdas[k]});
    }
  }
  out.write("path.csv", table);
  if (truth) {
    out.write("roc.csv", roc_csv(curve));
    if (curve.points.size() >= 2) {
      const double area = auc(curve);
      out.write("auc.csv", "auc\n" + format_double(area) + '\n');
      m.set("auc", area);
      *ctx.log << "auc: " << format_double(area) << '\n';
    }
  }
  m.set_int("failed_fits", static_cast<long long>(failed));
  out.finish(start);
  *ctx.log << "path: " << results.size() - failed << " of " << results.size()
           << " fits succeeded\n";
  return failed == results.size() ? kExitSolver : kExitOk;
}

int cmd_cv(const CvCmdOptions& o, RunContext& ctx) {
  const auto start = Clock::now();
  Manifest& m = ctx.manifest;
  const SampleSet s = load_samples(o.data, o.solver.standardize, m);
  const std::vector<double> lambdas = parse_lambda_grid(o.lambdas, max_offdiag_cov(s));
  const std::vector<double> h_fracs = parse_list(o.h_grid);
  SolverConfig cfg = solver_config(o.solver, s.n(), m);
  OutputDir out(o.out_dir, m);

  RngStream rng(o.seed, 0);
  CvOptions cv;
  cv.folds = o.folds;
  cv.jobs = o.jobs;
  const CvResult res = trimmed_cv(s, lambdas, h_fracs, cfg, rng, cv);

  std::string table = "lambda,h,fold,score,status\n";
  std::size_t ok_cells = 0;
  for (const CvCell& c : res.table) {
    if (c.ok) ++ok_cells;
    table += format_double(c.lambda) + ',' + format_double(c.h_frac) + ',' +
             std::to_string(c.fold) + ',' + (c.ok ? format_double(c.score) : "nan") + ',' +
             (c.ok ? std::string("ok") : c.status) + '\n';
  }
  std::string summary = "lambda,h,mean_score,status\n";
  for (const CvSummary& c : res.summary) {
    summary += format_double(c.lambda) + ',' + format_double(c.h_frac) + ',' +
               format_double(c.mean_score) + ',' + (c.ok ? "ok" : "failed") + '\n';
  }
  out.write("cv_table.csv", table);
  out.write("cv_summary.csv", summary);

  if (res.any_ok) {
    m.set("best_lambda", res.best_lambda);
    m.set("best_h_frac", res.best_h_frac);
    m.set_int("best_h", res.best_h);
    *ctx.log << "cv: best lambda " << format_double(res.best_lambda) << ", h/n "
             << format_double(res.best_h_frac) << " (h=" << res.best_h << ")\n";
    if (o.refit) {
      cfg.lambda = res.best_lambda;
      cfg.h = res.best_h;
      const FitResult r = fit(s, cfg);
      m.set("refit.termination", std::string(to_string(r.termination)));
      write_fit_files(out, r, s, cfg.lambda);
    }
  } else {
    m.set("best_lambda", std::string("none"));
    *ctx.log << "cv: no grid point succeeded on every fold\n";
  }
  out.finish(start);
  return ok_cells == 0 ? kExitSolver : kExitOk;
}

int cmd_eval(const EvalOptions& o, RunContext& ctx) {
  const auto start = Clock::now();
  Manifest& m = ctx.manifest;
  if (o.estimates.empty()) throw InvalidParams("eval needs at least one --est");
  if (!o.truth && !o.reference_graph) throw InvalidParams("eval needs --truth or --reference-graph");
  if (!(o.threshold >= 0.0)) throw InvalidParams("--threshold must be >= 0");

  std::vector<SymMatrix> ests;
  for (const auto& path : o.estimates) ests.push_back(load_symmetric(path, m, "input"));
  const Index p = ests.front().dim();
  for (const auto& e : ests) {
    if (e.dim() != p) throw DimensionMismatch("estimates differ in dimension");
  }

  std::optional<SymMatrix> truth_matrix;
  EdgeSet truth;
  if (o.truth) {
    truth_matrix = load_symmetric(*o.truth, m, "input");
    if (truth_matrix->dim() != p) throw DimensionMismatch("truth and estimates differ in p");
    truth = edges_of(*truth_matrix, o.threshold);
  } else {
    m.set("input." + o.reference_graph->filename().string(),
          digest_hex(digest_file(*o.reference_graph)));
    truth = read_edges_csv(*o.reference_graph, p);
  }

  std::vector<double> labels;
  if (!o.lambdas.empty()) {
    labels = parse_list(o.lambdas);
    if (labels.size() != ests.size()) throw InvalidParams("--lambdas must match the --est count");
  } else {
    for (std::size_t k = 0; k < ests.size(); ++k) labels.push_back(static_cast<double>(k));
  }

  OutputDir out(o.out_dir, m);
  std::string metrics = "estimate,lambda,edges,fpr,tpr,precision,recall,f1,frobenius,offdiag_l1\n";
  RocCurve curve;
  for (std::size_t k = 0; k < ests.size(); ++k) {
    const EdgeSet est = edges_of(ests[k], o.threshold);
    const RocPoint pt = roc_point(est, truth);
    const EdgeScores sc = edge_scores(est, truth);
    EstimationErrors err{std::nan(""), std::nan("")};
    if (truth_matrix) err = estimation_errors(ests[k], *truth_matrix);
    curve.points.push_back({pt.fpr, pt.tpr, labels[k]});
    metrics += o.estimates[k].filename().string() + ',' + format_double(labels[k]) + ',' +
               std::to_string(est.size()) + ',' + format_double(pt.fpr) + ',' +
               format_double(pt.tpr) + ',' + format_double(sc.precision) + ',' +
               format_double(sc.recall) + ',' + format_double(sc.f1) + ',' +
               format_double(err.frobenius) + ',' + format_double(err.offdiag_l1) + '\n';
    *ctx.log << o.estimates[k].filename().string() << ": f1 " << format_double(sc.f1) << '\n';
  }
  out.write("metrics.csv", metrics);
  out.write("roc.csv", roc_csv(curve));
  if (curve.points.size() >= 2) {
    const double area = auc(curve);
    out.write("auc.csv", "auc\n" + format_double(area) + '\n');
    m.set("auc", area);
    *ctx.log << "auc: " << format_double(area) << '\n';
  }
  out.finish(start);
  return kExitOk;
}

int cmd_diagnose(const DiagnoseOptions& o, RunContext& ctx) {
  const auto start = Clock::now();
  Manifest& m = ctx.manifest;
  SymMatrix theta = load_symmetric(o.truth, m, "input");
  GroundTruth gt{theta, edges_of(theta, 0.0), {}, {}};

  TheoryInputs in;
  in.n = static_cast<Index>(o.n);
  in.h = resolve_h(o.h, o.h_frac, in.n);
  in.b_count = static_cast<Index>(o.b);
  in.tau = o.tau;
  in.radius = o.radius;
  in.f_xb = o.f_xb;
  if (o.sigma_b) in.sigma_b = load_symmetric(*o.sigma_b, m, "input");

  const TheoryDiagnostics d = theory_diagnostics(gt, in);
  Manifest t;
  t.set("kappa_l", d.kappa_l);
  t.set("lambda_theory", d.lambda_theory);
  t.set("lambda_upper", d.lambda_upper);
  t.set("bound_vacuous", std::string(d.bound_vacuous ? "true" : "false"));
  t.set("frobenius_bound", d.frobenius_bound);
  t.set("offdiag_l1_bound", d.offdiag_l1_bound);
  t.set("tau1", d.tau1);
  t.set("tau2", d.tau2);
  t.set("f_xb", d.f_xb);
  t.set("a", d.a);
  t.set("radius", d.radius);
  t.set_int("k", d.k);
  t.set("sqrt_n_rate_constant", d.sqrt_n_rate_constant);
  t.set("min_sample_size", d.min_sample_size);

  OutputDir out(o.out_dir, m);
  out.write("theory.txt", t.render());
  out.finish(start);
  *ctx.log << t.render();
  return kExitOk;
}

}  // namespace tglasso::cli
