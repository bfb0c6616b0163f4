#include "slr/solvers.hpp"

#include "slr/operators.hpp"
#include "slr/prox.hpp"

#include <chrono>
#include <cmath>
#include <fmt/format.h>

namespace slr {

std::string to_string(SolverKind k)
{
  switch (k) {
  case SolverKind::Ista: return "ista";
  case SolverKind::Slr: return "slr";
  case SolverKind::IstaLr: return "ista-lr";
  }
  return "?";
}

SolverKind parse_solver(std::string const &s)
{
  if (s == "ista") return SolverKind::Ista;
  if (s == "slr") return SolverKind::Slr;
  if (s == "ista-lr") return SolverKind::IstaLr;
  throw ConfigError(fmt::format("unknown solver '{}' (expected ista, slr or ista-lr)", s));
}

namespace {

// A^H (A x - y), with y already masked.
Volume gradient(Volume const &x, KSpaceData const &y)
{
  Volume k = fft2c(x);
  apply_mask(k, y.mask);
  k -= y.data;
  return ifft2c(k);
}

KSpaceData masked_copy(KSpaceData const &y)
{
  KSpaceData out = y;
  apply_mask(out.data, out.mask);
  return out;
}

Volume sparse_step(Volume const &r, SolverConfig const &cfg)
{
  if (cfg.lambda1 == 0.0) {
    return transform_adjoint(transform_forward(r, cfg.transform), cfg.transform);
  }
  return transform_adjoint(soft_threshold(transform_forward(r, cfg.transform), cfg.lambda1 * cfg.eta2), cfg.transform);
}

class Guard
{
public:
  Guard(char const *solver)
    : solver_(solver)
  {
  }
  void operator()(Volume const &v, char const *step, long n) const
  {
    if (!v.all_finite()) {
      throw NumericError(fmt::format("{}: non-finite values after {} at iteration {}", solver_, step, n));
    }
  }

private:
  char const *solver_;
};

double relative_change(Volume const &x, Volume const &prev)
{
  double const diff = (x.vec() - prev.vec()).norm();
  double const base = prev.norm();
  return base > 0.0 ? diff / base : diff;
}

Volume starting_point(KSpaceData const &y, SolveOptions const &opts)
{
  if (opts.initial) {
    require_same_shape(*opts.initial, y.data, "initial image");
    return *opts.initial;
  }
  return encode_adjoint(y);
}

void check_inputs(KSpaceData const &y, SolverConfig const &cfg)
{
  cfg.validate(y.shape().nt);
  if (!y.mask.matches(y.shape())) {
    throw DimensionError(fmt::format(
      "k-space {} does not match mask {}x{}", y.shape().str(), y.mask.ny(), y.mask.nt()));
  }
  if (cfg.transform == TransformKind::TemporalHaar) {
    long const nt = y.shape().nt;
    if ((nt & (nt - 1)) != 0) {
      throw ConfigError(fmt::format("temporal Haar transform needs Nt to be a power of two, got {}", nt));
    }
  }
}

void finish(ReconReport &report, SolveOptions const &opts, std::chrono::steady_clock::time_point start)
{
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (opts.reference) {
    report.metrics = evaluate(*opts.reference, report.image);
  }
}

// Shared loop for the sparse-only and plug-in low-rank ISTA variants.
ReconReport run_ista(KSpaceData const &y_in, SolverConfig const &cfg, SolveOptions const &opts, bool low_rank)
{
  check_inputs(y_in, cfg);
  auto const start = std::chrono::steady_clock::now();
  char const *name = low_rank ? "solve_ista_lr" : "solve_ista_sparse";
  Guard const guard(name);
  KSpaceData const y = masked_copy(y_in);

  SolverConfig objective_cfg = cfg;
  if (!low_rank) {
    objective_cfg.lambda2 = 0.0;
  }
  Volume const zero(y.shape());

  ReconReport report;
  report.config = cfg;
  report.solver = low_rank ? SolverKind::IstaLr : SolverKind::Ista;
  Volume x = starting_point(y, opts);
  guard(x, "initialisation", 0);

  auto lr = [&](Volume const &v, long n) {
    Volume t = learned_svt(v, cfg.rank_k);
    guard(t, "T-step", n);
    if (opts.low_rank_observer) {
      opts.low_rank_observer(n, t);
    }
    return t;
  };

  for (long n = 1; n <= cfg.iterations; n++) {
    Volume const prev = x;
    Volume r = x - cfg.eta2 * gradient(x, y);
    guard(r, "R-step", n);
    if (low_rank && cfg.placement == Placement::L1) {
      r = lr(r, n);
    }
    x = sparse_step(r, cfg);
    guard(x, "X-step", n);
    if (low_rank && cfg.placement == Placement::L2) {
      x = lr(x, n);
    }
    x = data_consistency(x, y, cfg.dc);
    guard(x, "DC-step", n);
    if (low_rank && cfg.placement == Placement::L3) {
      x = lr(x, n);
    }

    IterationRecord rec;
    rec.iteration = n;
    rec.objective = objective_slr(x, x, zero, y, objective_cfg);
    rec.relative_change = relative_change(x, prev);
    report.trace.push_back(rec);
    if (opts.observer) {
      opts.observer(n, x);
    }
  }
  report.image = std::move(x);
  finish(report, opts, start);
  return report;
}

} // namespace

double data_fidelity(Volume const &x, KSpaceData const &y)
{
  require_same_shape(x, y.data, "data_fidelity");
  Volume k = fft2c(x);
  apply_mask(k, y.mask);
  Volume acq = y.data;
  apply_mask(acq, y.mask);
  return 0.5 * (k.vec() - acq.vec()).squaredNorm();
}

double sampled_residual(Volume const &x, KSpaceData const &y)
{
  return std::sqrt(2.0 * data_fidelity(x, y));
}

ObjectiveTerms objective_slr(
  Volume const &x, Volume const &t, Volume const &beta, KSpaceData const &y, SolverConfig const &cfg)
{
  require_same_shape(x, t, "objective_slr");
  require_same_shape(x, beta, "objective_slr");
  ObjectiveTerms o;
  o.data_fidelity = data_fidelity(x, y);
  if (cfg.lambda1 != 0.0) {
    o.sparse = cfg.lambda1 * transform_forward(x, cfg.transform).vec().cwiseAbs().sum();
  }
  if (cfg.lambda2 != 0.0) {
    o.nuclear = cfg.lambda2 * nuclear_norm(t);
  }
  if (cfg.rho != 0.0) {
    CxVector const gap = t.vec() - x.vec();
    o.multiplier = -cfg.rho * beta.vec().dot(gap).real();
    o.penalty = 0.5 * cfg.rho * gap.squaredNorm();
  }
  o.total = o.data_fidelity + o.sparse + o.nuclear + o.multiplier + o.penalty;
  return o;
}

ReconReport solve_ista_sparse(KSpaceData const &y, SolverConfig const &cfg, SolveOptions const &opts)
{
  return run_ista(y, cfg, opts, false);
}

ReconReport solve_ista_lr(KSpaceData const &y, SolverConfig const &cfg, SolveOptions const &opts)
{
  return run_ista(y, cfg, opts, true);
}

ReconReport solve_slr(KSpaceData const &y_in, SolverConfig const &cfg, SolveOptions const &opts)
{
  check_inputs(y_in, cfg);
  if (cfg.lr_mode == LowRankMode::Soft && !(cfg.rho > 0.0)) {
    throw ConfigError("soft low-rank mode needs rho > 0");
  }
  auto const start = std::chrono::steady_clock::now();
  Guard const guard("solve_slr");
  KSpaceData const y = masked_copy(y_in);

  ReconReport report;
  report.config = cfg;
  report.solver = SolverKind::Slr;
  Volume x = starting_point(y, opts);
  guard(x, "initialisation", 0);
  Volume t(y.shape());
  Volume beta(y.shape());

  for (long n = 1; n <= cfg.iterations; n++) {
    Volume const prev = x;

    // R: gradient step on 1/2||Ax - y||^2 + rho/2 ||x + beta - t||^2
    Volume step = gradient(x, y);
    if (cfg.rho != 0.0) {
      step += cfg.rho * (x + beta - t);
    }
    Volume const r = x - cfg.eta2 * step;
    guard(r, "R-step", n);

    // X
    x = sparse_step(r, cfg);
    guard(x, "X-step", n);

    // T
    Volume const svt_in = cfg.svt_input == SvtInput::XPlusBeta ? x + beta : x;
    t = cfg.lr_mode == LowRankMode::Hard ? learned_svt(svt_in, cfg.rank_k)
                                         : ist_svt(svt_in, cfg.lambda2, cfg.rho, cfg.p);
    guard(t, "T-step", n);
    if (opts.low_rank_observer) {
      opts.low_rank_observer(n, t);
    }

    // M
    if (cfg.eta1 != 0.0) {
      beta += cfg.eta1 * (x - t);
    }
    guard(beta, "M-step", n);

    IterationRecord rec;
    rec.iteration = n;
    rec.objective = objective_slr(x, t, beta, y, cfg);
    rec.relative_change = relative_change(x, prev);
    rec.primal_residual = (x.vec() - t.vec()).norm();
    report.trace.push_back(rec);
    if (opts.observer) {
      opts.observer(n, x);
    }
  }
  report.image = std::move(x);
  finish(report, opts, start);
  return report;
}

ReconReport solve(SolverKind kind, KSpaceData const &y, SolverConfig const &cfg, SolveOptions const &opts)
{
  switch (kind) {
  case SolverKind::Ista: return solve_ista_sparse(y, cfg, opts);
  case SolverKind::Slr: return solve_slr(y, cfg, opts);
  case SolverKind::IstaLr: return solve_ista_lr(y, cfg, opts);
  }
  throw ConfigError("unknown solver");
}

SolverConfig default_config(KSpaceData const &y)
{
  SolverConfig cfg;
  double const peak = encode_adjoint(y).vec().cwiseAbs().maxCoeff();
  cfg.lambda1 = 1e-3 * peak;
  cfg.lambda2 = 1e-3 * peak;
  cfg.rank_k = std::min<long>(cfg.rank_k, y.shape().nt);
  return cfg;
}

void set_field(SolverConfig &cfg, std::string const &name, double value)
{
  auto integer = [&](long &field) {
    if (value != std::floor(value)) {
      throw ConfigError(fmt::format("{} must be an integer, got {}", name, value));
    }
    field = static_cast<long>(value);
  };
  if (name == "lambda1") cfg.lambda1 = value;
  else if (name == "lambda2") cfg.lambda2 = value;
  else if (name == "rho") cfg.rho = value;
  else if (name == "eta1") cfg.eta1 = value;
  else if (name == "eta2") cfg.eta2 = value;
  else if (name == "p") cfg.p = value;
  else if (name == "rank_k") integer(cfg.rank_k);
  else if (name == "iterations") integer(cfg.iterations);
  else throw ConfigError(fmt::format("unknown numeric config field '{}'", name));
}

std::vector<SolverConfig> expand(SearchSpace const &space)
{
  std::vector<SolverConfig> out{space.base};
  for (auto const &axis : space.axes) {
    if (axis.values.empty()) {
      throw ConfigError(fmt::format("search axis '{}' has no values", axis.name));
    }
    std::vector<SolverConfig> next;
    next.reserve(out.size() * axis.values.size());
    for (auto const &cfg : out) {
      for (double v : axis.values) {
        SolverConfig c = cfg;
        set_field(c, axis.name, v);
        next.push_back(c);
      }
    }
    out = std::move(next);
  }
  return out;
}

TuneResult tune_hyperparams(
  KSpaceData const &y, Volume const &reference, SearchSpace const &space, SolverKind solver)
{
  require_same_shape(reference, y.data, "tune_hyperparams");
  auto const candidates = expand(space);
  if (candidates.empty()) {
    throw ConfigError("empty search space");
  }
  TuneResult result;
  bool have_best = false;
  for (auto const &cfg : candidates) {
    double score = -std::numeric_limits<double>::infinity();
    try {
      score = psnr(reference, solve(solver, y, cfg).image);
    } catch (NumericError const &) {
      // A diverging candidate simply loses.
    }
    result.evaluated.emplace_back(cfg, score);
    if (!have_best || score > result.best_psnr) {
      result.best = cfg;
      result.best_psnr = score;
      have_best = true;
    }
  }
  return result;
}

} // namespace slr
