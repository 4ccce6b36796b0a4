#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "commands.hpp"

#ifndef TGLASSO_VERSION
#define TGLASSO_VERSION "unknown"
#endif

namespace tglasso::cli {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string item =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_double(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

std::vector<double> geometric(double hi, double lo, long count) {
  if (!(hi > 0.0 && lo > 0.0 && hi >= lo) || !std::isfinite(hi)) {
    throw InvalidParams("geometric grid needs hi >= lo > 0");
  }
  if (count < 1) throw InvalidParams("grid needs at least one point");
  if (count > 1 && !(hi > lo)) throw InvalidParams("geometric grid needs hi > lo");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) {
    const double t = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
    out[static_cast<std::size_t>(k)] = hi * std::pow(lo / hi, t);
  }
  out.back() = count == 1 ? hi : lo;
  return out;
}

long parse_count(const std::string& text) {
  const double v = parse_double(text);
  if (v != std::floor(v) || v < 1 || v > 1e6) throw InvalidParams("bad grid size '" + text + "'");
  return static_cast<long>(v);
}

std::vector<std::string> split_colon(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  return parts;
}

}  // namespace

std::vector<double> parse_lambda_grid(const std::string& text, double auto_max) {
  if (text.empty()) throw InvalidParams("empty lambda grid");
  if (text.find(':') == std::string::npos) {
    std::vector<double> values = parse_list(text);
    std::sort(values.begin(), values.end(), std::greater<>());
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (!(values[k] >= 0.0) || !std::isfinite(values[k])) {
        throw InvalidParams("lambdas must be finite and >= 0");
      }
      if (k > 0 && values[k] == values[k - 1]) throw InvalidParams("duplicate lambda in grid");
    }
    return values;
  }
  const auto parts = split_colon(text);
  if (parts.size() >= 2 && parts.size() <= 3 && parts[0] == "auto") {
    const double ratio = parts.size() == 3 ? parse_double(parts[2]) : 0.01;
    if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidParams("auto grid ratio must lie in (0, 1)");
    if (!(auto_max > 0.0)) throw InvalidParams("auto grid: data has no off-diagonal covariance");
    return geometric(auto_max, auto_max * ratio, parse_count(parts[1]));
  }
  if (parts.size() == 3) {
    return geometric(parse_double(parts[0]), parse_double(parts[1]), parse_count(parts[2]));
  }
  throw InvalidParams("bad lambda grid '" + text + "'");
}

namespace {

void add_solver_flags(CLI::App* app, SolverFlags& f) {
  auto* h = app->add_option("--h", f.h, "Number of samples kept (default: all)");
  auto* frac = app->add_option("--h-frac", f.h_frac, "Share of samples kept, in (0, 1]");
  h->excludes(frac);
  app->add_option("--strategy", f.strategy, "composite or alternating")
      ->check(CLI::IsMember({"composite", "alternating"}))
      ->capture_default_str();
  app->add_option("--radius", f.radius, "l1 radius R (default: unbounded)");
  app->add_option("--tol", f.tol, "Relative objective tolerance")->capture_default_str();
  app->add_option("--max-iters", f.max_iters, "Iteration cap")->capture_default_str();
  app->add_flag("--standardize", f.standardize, "Center and scale columns before fitting");
}

CLI::Option* add_out_dir(CLI::App* app, fs::path& dir) {
  dir = ".";
  return app->add_option("--out-dir", dir, "Output directory")
      ->envname("TGLASSO_OUT_DIR")
      ->capture_default_str();
}

// "param.<name>" for every option of the selected subcommand.
void record_params(const CLI::App* sub, Manifest& m) {
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name.empty()) continue;
    std::string value;
    if (opt->get_expected_min() == 0) {
      value = opt->count() > 0 ? "true" : "false";
    } else if (!opt->results().empty()) {
      const auto& res = opt->results();
      for (std::size_t k = 0; k < res.size(); ++k) {
        if (k > 0) value += ';';
        value += res[k];
      }
    } else {
      value = opt->get_default_str();
    }
    m.set("param." + name, value);
  }
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const IoError*>(&e) != nullptr) return kExitIo;
  if (dynamic_cast<const InvalidParams*>(&e) != nullptr ||
      dynamic_cast<const InvalidConfig*>(&e) != nullptr ||
      dynamic_cast<const DimensionMismatch*>(&e) != nullptr ||
      dynamic_cast<const TooFewPoints*>(&e) != nullptr) {
    return kExitUsage;
  }
  return kExitSolver;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trimmed graphical lasso: simulate, fit, tune and evaluate sparse precision matrices"};
  app.name(args.empty() ? "tglasso" : fs::path(args.front()).filename().string());
  // "--h" is the trim count, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", TGLASSO_VERSION);
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* s = app.add_subcommand("simulate", "Generate hub-network ground truths and contaminated samples");
  s->add_option("--p", sim.p, "Number of variables")->capture_default_str();
  s->add_option("--n", sim.n, "Samples per replicate")->capture_default_str();
  s->add_option("--p0", sim.p0, "Outlier probability, in [0, 0.5)")->capture_default_str();
  s->add_option("--scenario", sim.scenario, "Outlier model m1..m5")->capture_default_str();
  s->add_option("--seed", sim.seed, "Base seed")->capture_default_str();
  s->add_option("--reps", sim.reps, "Number of replicates")->capture_default_str();
  s->add_option("--edge-prob", sim.edge_prob, "Background edge probability")->capture_default_str();
  s->add_option("--hub-count", sim.hub_count, "Number of hubs")->capture_default_str();
  s->add_option("--hub-prob", sim.hub_prob, "Hub edge probability")->capture_default_str();
  s->add_option("--coef-draw", sim.coef_draw, "union or coin")
      ->check(CLI::IsMember({"union", "coin"}))
      ->capture_default_str();
  s->add_option("--jobs", sim.jobs, "Worker threads across replicates")->capture_default_str();
  add_out_dir(s, sim.out_dir);

  FitOptions fo;
  auto* f = app.add_subcommand("fit", "Fit one trimmed graphical lasso");
  f->add_option("--data", fo.data, "Sample matrix CSV")->required();
  f->add_option("--lambda", fo.lambda, "Penalty level")->required();
  add_solver_flags(f, fo.solver);
  add_out_dir(f, fo.out_dir);

  PathCmdOptions po;
  auto* pa = app.add_subcommand("path", "Fit a regularization path");
  pa->add_option("--data", po.data, "Sample matrix CSV")->required();
  auto* pl = pa->add_option("--lambdas", po.lambdas, "Comma-separated lambdas");
  auto* pg = pa->add_option("--lambda-grid", po.lambdas, "hi:lo:count or auto:count[:ratio]");
  pl->excludes(pg);
  add_solver_flags(pa, po.solver);
  pa->add_flag("--cold-start", po.cold_start, "Fit every lambda from scratch");
  auto* pt = pa->add_option("--truth", po.truth, "True precision matrix CSV for ROC output");
  auto* pr = pa->add_option("--reference-graph", po.reference_graph, "True edge list for ROC output");
  pt->excludes(pr);
  pa->add_option("--jobs", po.jobs, "Worker threads (cold start only)")->capture_default_str();
  add_out_dir(pa, po.out_dir);

  CvCmdOptions co;
  auto* c = app.add_subcommand("cv", "Cross-validate lambda and h/n with trimmed held-out scores");
  c->add_option("--data", co.data, "Sample matrix CSV")->required();
  c->add_option("--lambda-grid,--lambdas", co.lambdas, "Lambda grid")->required();
  c->add_option("--h-grid", co.h_grid, "Comma-separated h/n values")->capture_default_str();
  c->add_option("--folds", co.folds, "Number of folds")->capture_default_str();
  c->add_option("--seed", co.seed, "Fold assignment seed")->capture_default_str();
  c->add_flag("--refit", co.refit, "Refit on all samples at the selected grid point");
  add_solver_flags(c, co.solver);
  c->add_option("--jobs", co.jobs, "Worker threads across grid cells")->capture_default_str();
  add_out_dir(c, co.out_dir);

  EvalOptions eo;
  auto* e = app.add_subcommand("eval", "Score estimates against a true graph");
  e->add_option("--est", eo.estimates, "Estimated precision CSV (repeatable)")->required();
  auto* et = e->add_option("--truth", eo.truth, "True precision matrix CSV");
  auto* er = e->add_option("--reference-graph", eo.reference_graph, "Reference edge list CSV");
  et->excludes(er);
  e->add_option("--lambdas", eo.lambdas, "Lambda of each estimate, for roc.csv");
  e->add_option("--threshold", eo.threshold, "Edge threshold on |theta_ij|")->capture_default_str();
  add_out_dir(e, eo.out_dir);

  DiagnoseOptions dio;
  auto* d = app.add_subcommand("diagnose", "Plug-in values of the error bounds for a ground truth");
  d->add_option("--truth", dio.truth, "True precision matrix CSV")->required();
  d->add_option("--n", dio.n, "Sample count")->required();
  auto* dh = d->add_option("--h", dio.h, "Samples kept (default: n)");
  auto* df = d->add_option("--h-frac", dio.h_frac, "Share of samples kept");
  dh->excludes(df);
  d->add_option("--b", dio.b, "Number of corrupted samples")->capture_default_str();
  auto* dsb = d->add_option("--sigma-b", dio.sigma_b, "Outlier covariance CSV");
  auto* dfx = d->add_option("--f-xb", dio.f_xb, "Outlier term f(X^B)");
  dsb->excludes(dfx);
  d->add_option("--tau", dio.tau, "Concentration constant (> 2)")->capture_default_str();
  d->add_option("--radius", dio.radius, "l1 radius R (default: ||Theta*||_1)");
  add_out_dir(d, dio.out_dir);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("tglasso");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  RunContext ctx;
  ctx.command = sub->get_name();
  ctx.log = &out;
  ctx.manifest.set("command", ctx.command);
  ctx.manifest.set("tool_version", std::string(TGLASSO_VERSION));
  record_params(sub, ctx.manifest);

  try {
    if (sub == s) return cmd_simulate(sim, ctx);
    if (sub == f) return cmd_fit(fo, ctx);
    if (sub == pa) {
      if (po.lambdas.empty()) throw InvalidParams("path needs --lambdas or --lambda-grid");
      return cmd_path(po, ctx);
    }
    if (sub == c) return cmd_cv(co, ctx);
    if (sub == e) return cmd_eval(eo, ctx);
    return cmd_diagnose(dio, ctx);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_code_for(ex);
  } catch (const fs::filesystem_error& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitIo;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitSolver;
  }
}

}  // namespace tglasso::cli
