#include "slr/cli.hpp"

#include "slr/io.hpp"
#include "slr/metrics.hpp"
#include "slr/operators.hpp"
#include "slr/sim.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace slr::cli {

namespace {

std::string trim(std::string const &s)
{
  auto const b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  auto const e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string const &token, std::string const &context)
{
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (std::exception const &) {
    used = 0;
  }
  if (used == 0 || used != token.size()) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", context, token));
  }
  return v;
}

std::string read_text(std::string const &path)
{
  std::ifstream in(path);
  if (!in) {
    throw FormatError(fmt::format("cannot read {}", path));
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_db(double v)
{
  return std::isinf(v) ? std::string(v > 0 ? "inf" : "-inf") : fmt::format("{:.4f}", v);
}

nlohmann::json db_json(double v)
{
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  return v;
}

nlohmann::json metrics_json(QualityMetrics const &m)
{
  nlohmann::json j;
  j["mse"] = m.mse;
  j["mse_e5"] = m.mse_e5;
  j["psnr"] = db_json(m.psnr);
  j["ssim"] = m.ssim ? nlohmann::json(*m.ssim) : nlohmann::json(nullptr);
  return j;
}

void print_metrics(std::ostream &out, QualityMetrics const &m, std::string const &label)
{
  std::string const prefix = label.empty() ? "" : label + " ";
  fmt::print(out, "{}MSE       {:.4e}\n", prefix, m.mse);
  fmt::print(out, "{}MSE(e-5)  {:.4f}\n", prefix, m.mse_e5);
  fmt::print(out, "{}PSNR      {}\n", prefix, format_db(m.psnr));
  fmt::print(out, "{}SSIM      {}\n", prefix, m.ssim ? fmt::format("{:.4f}", *m.ssim) : std::string("n/a"));
}

void write_trace(std::string const &path, IterationTrace const &trace)
{
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw FormatError(fmt::format("cannot open {} for writing", path));
  }
  for (auto const &rec : trace) {
    nlohmann::json j;
    j["iteration"] = rec.iteration;
    j["objective"] = rec.objective.total;
    j["data_fidelity"] = rec.objective.data_fidelity;
    j["sparse"] = rec.objective.sparse;
    j["nuclear"] = rec.objective.nuclear;
    j["multiplier"] = rec.objective.multiplier;
    j["penalty"] = rec.objective.penalty;
    j["relative_change"] = rec.relative_change;
    if (rec.primal_residual) {
      j["primal_residual"] = *rec.primal_residual;
    }
    out << j.dump() << "\n";
  }
}

KSpaceData load_kspace(std::string const &ksp_path, std::string const &mask_path)
{
  KSpaceData y{read_cplx(ksp_path), read_mask(mask_path)};
  if (!y.mask.matches(y.shape())) {
    throw DimensionError(fmt::format(
      "mask {}x{} does not match k-space {}", y.mask.ny(), y.mask.nt(), y.shape().str()));
  }
  return y;
}

// Solver flags shared by recon and tune. Values are applied only when given.
struct SolverFlags
{
  std::string config_path;
  std::string solver;
  std::string placement;
  std::string lr_mode;
  std::string svt_input;
  std::string transform;
  std::string dc;
  long iterations = 0;
  double lambda1 = 0, lambda2 = 0, rho = 0, eta1 = 0, eta2 = 0, p = 0;
  long rank_k = 0;

  void attach(CLI::App *app)
  {
    app->add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);
    app->add_option("--solver", solver, "ista | slr | ista-lr");
    app->add_option("--placement", placement, "low-rank placement for ista-lr: l1 | l2 | l3");
    app->add_option("--iters", iterations, "iteration count");
    app->add_option("--lambda1", lambda1, "sparse weight");
    app->add_option("--lambda2", lambda2, "low-rank weight (soft mode)");
    app->add_option("--rho", rho, "penalty parameter");
    app->add_option("--eta1", eta1, "multiplier update rate");
    app->add_option("--eta2", eta2, "gradient step");
    app->add_option("--rank-k", rank_k, "rank kept by the hard low-rank step");
    app->add_option("--p", p, "Schatten exponent for the soft low-rank step");
    app->add_option("--lr-mode", lr_mode, "hard | soft");
    app->add_option("--svt-input", svt_input, "x+beta | x");
    app->add_option("--transform", transform, "temporal sparsifying transform: fourier | haar");
    app->add_option("--dc", dc, "replace | off | weighted:<nu>");
  }

  SolverKind resolve(CLI::App const *app, KSpaceData const &y, SolverConfig &cfg) const
  {
    cfg = default_config(y);
    cfg.iterations = 50;
    SolverKind kind = SolverKind::Slr;
    if (!config_path.empty()) {
      auto const file = parse_config(read_text(config_path), cfg);
      cfg = file.config;
      if (file.solver) {
        kind = *file.solver;
      }
    }
    auto given = [&](char const *flag) { return app->count(flag) > 0; };
    if (given("--solver")) kind = parse_solver(solver);
    if (given("--placement")) cfg.placement = parse_placement(placement);
    if (given("--iters")) cfg.iterations = iterations;
    if (given("--lambda1")) cfg.lambda1 = lambda1;
    if (given("--lambda2")) cfg.lambda2 = lambda2;
    if (given("--rho")) cfg.rho = rho;
    if (given("--eta1")) cfg.eta1 = eta1;
    if (given("--eta2")) cfg.eta2 = eta2;
    if (given("--rank-k")) cfg.rank_k = rank_k;
    if (given("--p")) cfg.p = p;
    if (given("--lr-mode")) cfg.lr_mode = parse_lr_mode(lr_mode);
    if (given("--svt-input")) cfg.svt_input = parse_svt_input(svt_input);
    if (given("--transform")) cfg.transform = parse_transform(transform);
    if (given("--dc")) cfg.dc = parse_dc(dc);
    cfg.validate(y.shape().nt);
    return kind;
  }
};

} // namespace

std::string format_config(SolverConfig const &cfg, std::optional<SolverKind> solver)
{
  std::string s;
  if (solver) {
    s += fmt::format("solver={}\n", to_string(*solver));
  }
  s += fmt::format("lambda1={:.17g}\n", cfg.lambda1);
  s += fmt::format("lambda2={:.17g}\n", cfg.lambda2);
  s += fmt::format("rho={:.17g}\n", cfg.rho);
  s += fmt::format("eta1={:.17g}\n", cfg.eta1);
  s += fmt::format("eta2={:.17g}\n", cfg.eta2);
  s += fmt::format("rank_k={}\n", cfg.rank_k);
  s += fmt::format("p={:.17g}\n", cfg.p);
  s += fmt::format("iterations={}\n", cfg.iterations);
  s += fmt::format("placement={}\n", to_string(cfg.placement));
  s += fmt::format("lr_mode={}\n", to_string(cfg.lr_mode));
  s += fmt::format("svt_input={}\n", to_string(cfg.svt_input));
  s += fmt::format("transform={}\n", to_string(cfg.transform));
  s += fmt::format("dc={}\n", to_string(cfg.dc));
  return s;
}

ConfigFile parse_config(std::string const &text, SolverConfig const &base)
{
  ConfigFile file{base, std::nullopt};
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    auto const hash = line.find('#');
    if (hash != std::string::npos) {
      line.resize(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    auto const eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("config line {}: expected key=value, got '{}'", lineno, line));
    }
    auto const key = trim(line.substr(0, eq));
    auto const value = trim(line.substr(eq + 1));
    auto const ctx = fmt::format("config line {}", lineno);
    if (key == "solver") file.solver = parse_solver(value);
    else if (key == "placement") file.config.placement = parse_placement(value);
    else if (key == "lr_mode") file.config.lr_mode = parse_lr_mode(value);
    else if (key == "svt_input") file.config.svt_input = parse_svt_input(value);
    else if (key == "transform") file.config.transform = parse_transform(value);
    else if (key == "dc") file.config.dc = parse_dc(value);
    else set_field(file.config, key, parse_number(value, ctx));
  }
  return file;
}

std::vector<SearchAxis> parse_grid(std::string const &grid)
{
  std::vector<SearchAxis> axes;
  std::istringstream in(grid);
  std::string entry;
  SolverConfig probe;
  while (std::getline(in, entry, ';')) {
    entry = trim(entry);
    if (entry.empty()) {
      continue;
    }
    auto const eq = entry.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("grid: bad token '{}' (expected name=v1,v2,...)", entry));
    }
    SearchAxis axis{trim(entry.substr(0, eq)), {}};
    try {
      set_field(probe, axis.name, 1.0);
    } catch (ConfigError const &) {
      throw ConfigError(fmt::format("grid: bad token '{}' (unknown parameter)", axis.name));
    }
    std::istringstream values(entry.substr(eq + 1));
    std::string v;
    while (std::getline(values, v, ',')) {
      v = trim(v);
      axis.values.push_back(parse_number(v, fmt::format("grid: bad token '{}' in {}", v, axis.name)));
    }
    if (axis.values.empty()) {
      throw ConfigError(fmt::format("grid: bad token '{}' (no values)", entry));
    }
    axes.push_back(std::move(axis));
  }
  if (axes.empty()) {
    throw ConfigError("grid: empty search space");
  }
  return axes;
}

int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Sparse and low-rank dynamic MRI reconstruction"};
  app.require_subcommand(1);

  // mask
  auto *mask_cmd = app.add_subcommand("mask", "Gaussian variable-density Cartesian mask");
  long m_ny = 0, m_nt = 0;
  double m_accel = 0, m_sigma = kDefaultSigmaFrac;
  std::uint64_t m_seed = 0;
  std::string m_out;
  bool m_frozen = false;
  mask_cmd->add_option("--ny", m_ny, "phase-encode lines")->required();
  mask_cmd->add_option("--nt", m_nt, "frames")->required();
  mask_cmd->add_option("--accel", m_accel, "nominal acceleration (>= 1)")->required();
  mask_cmd->add_option("--sigma-frac", m_sigma, "Gaussian width as a fraction of ny");
  mask_cmd->add_option("--seed", m_seed, "random seed");
  mask_cmd->add_option("--out", m_out, "output base path")->required();
  mask_cmd->add_flag("--frozen", m_frozen, "use one line pattern for every frame");

  // phantom
  auto *ph_cmd = app.add_subcommand("phantom", "synthetic dynamic phantom");
  long p_nx = 0, p_ny = 0, p_nt = 0, p_rank = 1, p_sparsity = 1;
  std::string p_kind, p_out;
  std::uint64_t p_seed = 0;
  ph_cmd->add_option("--nx", p_nx)->required();
  ph_cmd->add_option("--ny", p_ny)->required();
  ph_cmd->add_option("--nt", p_nt)->required();
  ph_cmd->add_option("--kind", p_kind, "beating_rings | rank_r_sparse")->required();
  ph_cmd->add_option("--rank", p_rank, "rank for rank_r_sparse");
  ph_cmd->add_option("--sparsity", p_sparsity, "temporal Fourier bins per profile for rank_r_sparse");
  ph_cmd->add_option("--seed", p_seed);
  ph_cmd->add_option("--out", p_out)->required();

  // encode
  auto *enc_cmd = app.add_subcommand("encode", "undersampled k-space of an image volume");
  std::string e_img, e_mask, e_out;
  enc_cmd->add_option("--img", e_img)->required();
  enc_cmd->add_option("--mask", e_mask)->required();
  enc_cmd->add_option("--out", e_out)->required();

  // recon
  auto *rec_cmd = app.add_subcommand("recon", "reconstruct from undersampled k-space");
  std::string r_ksp, r_mask, r_ref, r_out, r_trace;
  bool r_json = false;
  SolverFlags r_flags;
  rec_cmd->add_option("--ksp", r_ksp)->required();
  rec_cmd->add_option("--mask", r_mask)->required();
  rec_cmd->add_option("--ref", r_ref, "reference volume for metrics");
  rec_cmd->add_option("--out", r_out)->required();
  rec_cmd->add_option("--trace", r_trace, "line-delimited JSON trace file");
  rec_cmd->add_flag("--json", r_json, "print the summary as one JSON line");
  r_flags.attach(rec_cmd);

  // eval
  auto *ev_cmd = app.add_subcommand("eval", "MSE, PSNR and SSIM of a reconstruction");
  std::string v_ref, v_rec;
  bool v_json = false;
  ev_cmd->add_option("--ref", v_ref)->required();
  ev_cmd->add_option("--rec", v_rec)->required();
  ev_cmd->add_flag("--json", v_json, "print one JSON line");

  // tune
  auto *tune_cmd = app.add_subcommand("tune", "grid search of solver hyper-parameters");
  std::string t_ksp, t_mask, t_ref, t_grid, t_out;
  SolverFlags t_flags;
  tune_cmd->add_option("--ksp", t_ksp)->required();
  tune_cmd->add_option("--mask", t_mask)->required();
  tune_cmd->add_option("--ref", t_ref)->required();
  tune_cmd->add_option("--grid", t_grid, "e.g. 'lambda1=0,1e-3;rank_k=1,2'")->required();
  tune_cmd->add_option("--out", t_out, "output config file")->required();
  t_flags.attach(tune_cmd);

  std::vector<char const *> argv{"slrmri"};
  for (auto const &a : args) {
    argv.push_back(a.c_str());
  }

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::ParseError const &e) {
      int const code = app.exit(e, out, err);
      return code == 0 ? kOk : kUsage;
    }

    if (*mask_cmd) {
      auto const mask = make_vd_mask(m_ny, m_nt, m_accel, m_sigma, m_seed, m_frozen);
      write_mask(m_out, mask);
      fmt::print(out, "lines per frame {}\n", mask.lines_in_frame(0));
      fmt::print(out, "achieved acceleration {:.1f}\n", mask.achieved_acceleration());
    } else if (*ph_cmd) {
      auto const img = make_phantom(p_nx, p_ny, p_nt, parse_phantom_kind(p_kind, p_rank, p_sparsity), p_seed);
      write_cplx(p_out, img);
      fmt::print(out, "phantom {} {}\n", p_kind, img.shape().str());
    } else if (*enc_cmd) {
      auto const img = read_cplx(e_img);
      auto const mask = read_mask(e_mask);
      auto const ksp = encode(img, mask);
      write_cplx(e_out, ksp.data);
      fmt::print(out, "k-space {} acceleration {:.2f}\n", img.shape().str(), mask.achieved_acceleration());
    } else if (*rec_cmd) {
      auto const y = load_kspace(r_ksp, r_mask);
      SolverConfig cfg;
      SolverKind const kind = r_flags.resolve(rec_cmd, y, cfg);
      SolveOptions opts;
      if (!r_ref.empty()) {
        opts.reference = read_cplx(r_ref);
        require_same_shape(*opts.reference, y.data, "reference");
      }
      auto const report = solve(kind, y, cfg, opts);
      write_cplx(r_out, report.image);
      if (!r_trace.empty()) {
        write_trace(r_trace, report.trace);
      }
      std::optional<QualityMetrics> zero_filled;
      if (opts.reference) {
        zero_filled = evaluate(*opts.reference, encode_adjoint(y));
      }
      if (r_json) {
        nlohmann::json j;
        j["solver"] = to_string(kind);
        j["iterations"] = cfg.iterations;
        j["seconds"] = report.seconds;
        if (report.metrics) {
          j["metrics"] = metrics_json(*report.metrics);
          j["zero_filled"] = metrics_json(*zero_filled);
        }
        out << j.dump() << "\n";
      } else {
        fmt::print(out, "solver {} iterations {} time {:.3f} s\n", to_string(kind), cfg.iterations, report.seconds);
        if (report.metrics) {
          print_metrics(out, *report.metrics, "");
          fmt::print(out, "zero-filled PSNR {}\n", format_db(zero_filled->psnr));
        }
      }
    } else if (*ev_cmd) {
      auto const ref = read_cplx(v_ref);
      auto const rec = read_cplx(v_rec);
      require_same_shape(ref, rec, "eval");
      auto const m = evaluate(ref, rec);
      if (v_json) {
        out << metrics_json(m).dump() << "\n";
      } else {
        print_metrics(out, m, "");
      }
    } else if (*tune_cmd) {
      auto const axes = parse_grid(t_grid);
      auto const y = load_kspace(t_ksp, t_mask);
      auto const ref = read_cplx(t_ref);
      require_same_shape(ref, y.data, "reference");
      SearchSpace space;
      SolverKind const kind = t_flags.resolve(tune_cmd, y, space.base);
      space.axes = axes;
      auto const result = tune_hyperparams(y, ref, space, kind);
      std::ofstream cfg_out(t_out, std::ios::trunc);
      if (!cfg_out) {
        throw FormatError(fmt::format("cannot open {} for writing", t_out));
      }
      cfg_out << format_config(result.best, kind);
      fmt::print(out, "evaluated {} configurations, best PSNR {}\n", result.evaluated.size(), format_db(result.best_psnr));
    }
  } catch (ConfigError const &e) {
    fmt::print(err, "config error: {}\n", e.what());
    return kUsage;
  } catch (DimensionError const &e) {
    fmt::print(err, "dimension error: {}\n", e.what());
    return kData;
  } catch (FormatError const &e) {
    fmt::print(err, "data error: {}\n", e.what());
    return kData;
  } catch (NumericError const &e) {
    fmt::print(err, "numeric error: {}\n", e.what());
    return kNumeric;
  }
  return kOk;
}

} // namespace slr::cli
