#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tglasso/io.hpp"

namespace tglasso::cli {

namespace fs = std::filesystem;

/// Parameter map and output bookkeeping shared by all commands.
struct RunContext {
  std::string command;
  Manifest manifest;
  std::ostream* log = nullptr;
};

struct SolverFlags {
  std::optional<long long> h;
  std::optional<double> h_frac;
  std::string strategy = "composite";
  double radius = std::numeric_limits<double>::infinity();
  double tol = 1e-6;
  int max_iters = 500;
  bool standardize = false;
};

struct SimulateOptions {
  long long p = 150;
  long long n = 100;
  double p0 = 0.1;
  std::string scenario = "m1";
  std::uint64_t seed = 1;
  int reps = 1;
  double edge_prob = 0.03;
  long long hub_count = 9;
  double hub_prob = 0.4;
  std::string coef_draw = "union";
  unsigned jobs = 1;
  fs::path out_dir;
};

struct FitOptions {
  fs::path data;
  double lambda = 0.0;
  SolverFlags solver;
  fs::path out_dir;
};

struct PathCmdOptions {
  fs::path data;
  std::string lambdas;
  SolverFlags solver;
  bool cold_start = false;
  std::optional<fs::path> truth;
  std::optional<fs::path> reference_graph;
  unsigned jobs = 1;
  fs::path out_dir;
};

struct CvCmdOptions {
  fs::path data;
  std::string lambdas;
  std::string h_grid = "0.9,0.85,0.8";
  int folds = 5;
  std::uint64_t seed = 1;
  SolverFlags solver;
  bool refit = false;
  unsigned jobs = 1;
  fs::path out_dir;
};

struct EvalOptions {
  std::vector<fs::path> estimates;
  std::optional<fs::path> truth;
  std::optional<fs::path> reference_graph;
  std::string lambdas;
  double threshold = 1e-8;
  fs::path out_dir;
};

struct DiagnoseOptions {
  fs::path truth;
  long long n = 0;
  std::optional<long long> h;
  std::optional<double> h_frac;
  long long b = 0;
  std::optional<fs::path> sigma_b;
  std::optional<double> f_xb;
  double tau = 2.5;
  std::optional<double> radius;
  fs::path out_dir;
};

int cmd_simulate(const SimulateOptions& o, RunContext& ctx);
int cmd_fit(const FitOptions& o, RunContext& ctx);
int cmd_path(const PathCmdOptions& o, RunContext& ctx);
int cmd_cv(const CvCmdOptions& o, RunContext& ctx);
int cmd_eval(const EvalOptions& o, RunContext& ctx);
int cmd_diagnose(const DiagnoseOptions& o, RunContext& ctx);

}  // namespace tglasso::cli
