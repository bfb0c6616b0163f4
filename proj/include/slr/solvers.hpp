#pragma once

#include "core.hpp"
#include "metrics.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace slr {

enum class SolverKind
{
  Ista,   // sparse-only ISTA with data consistency
  Slr,    // sparse + low-rank four-step iteration (R, X, T, M)
  IstaLr  // ISTA with a plugged-in low-rank step at placement L1/L2/L3
};

std::string to_string(SolverKind k);
SolverKind parse_solver(std::string const &s);

/// Augmented Lagrangian with scaled multiplier beta:
///   1/2 ||Ax - y||^2 + lambda1 ||Dx||_1 + lambda2 ||t||_* - rho <beta, t - x> + rho/2 ||t - x||^2
struct ObjectiveTerms
{
  double data_fidelity = 0.0;
  double sparse = 0.0;
  double nuclear = 0.0;
  double multiplier = 0.0; // -rho * Re<beta, t - x>
  double penalty = 0.0;    // rho/2 ||t - x||^2
  double total = 0.0;
};

ObjectiveTerms objective_slr(
  Volume const &x, Volume const &t, Volume const &beta, KSpaceData const &y, SolverConfig const &cfg);

/// 1/2 ||Ax - y||^2
double data_fidelity(Volume const &x, KSpaceData const &y);
/// Sampled-line residual ||P(F x) - P y||, zero when the data are matched exactly.
double sampled_residual(Volume const &x, KSpaceData const &y);

struct IterationRecord
{
  long iteration = 0;
  ObjectiveTerms objective;
  double relative_change = 0.0;          // ||x^n - x^{n-1}|| / ||x^{n-1}||
  std::optional<double> primal_residual; // ||x^n - t^n||, SLR only
};

using IterationTrace = std::vector<IterationRecord>;

struct ReconReport
{
  Volume image;
  IterationTrace trace;
  double seconds = 0.0;
  SolverConfig config;
  SolverKind solver = SolverKind::Slr;
  std::optional<QualityMetrics> metrics;
};

struct SolveOptions
{
  /// Starting image; the zero-filled reconstruction when empty.
  std::optional<Volume> initial;
  /// Metrics are filled in when a reference is supplied.
  std::optional<Volume> reference;
  /// Called after every completed iteration with the iterate x^n.
  std::function<void(long, Volume const &)> observer;
  /// Called with the low-rank iterate t^n (SLR and ISTA-LR).
  std::function<void(long, Volume const &)> low_rank_observer;
};

ReconReport solve_ista_sparse(KSpaceData const &y, SolverConfig const &cfg, SolveOptions const &opts = {});
ReconReport solve_slr(KSpaceData const &y, SolverConfig const &cfg, SolveOptions const &opts = {});
ReconReport solve_ista_lr(KSpaceData const &y, SolverConfig const &cfg, SolveOptions const &opts = {});
ReconReport solve(SolverKind kind, KSpaceData const &y, SolverConfig const &cfg, SolveOptions const &opts = {});

/// Defaults with lambda1 and lambda2 scaled to 1e-3 of the peak zero-filled magnitude.
SolverConfig default_config(KSpaceData const &y);

struct SearchAxis
{
  std::string name; // any numeric SolverConfig field: lambda1, lambda2, rho, eta1, eta2, rank_k, p, iterations
  std::vector<double> values;
};

struct SearchSpace
{
  SolverConfig base;
  std::vector<SearchAxis> axes;
};

/// Cartesian product of the axes applied to base, first axis varying slowest.
std::vector<SolverConfig> expand(SearchSpace const &space);
void set_field(SolverConfig &cfg, std::string const &name, double value);

struct TuneResult
{
  SolverConfig best;
  double best_psnr = 0.0;
  std::vector<std::pair<SolverConfig, double>> evaluated;
};

/// Exhaustive search maximising PSNR against the reference. Ties keep the earliest candidate.
TuneResult tune_hyperparams(
  KSpaceData const &y, Volume const &reference, SearchSpace const &space, SolverKind solver);

} // namespace slr
