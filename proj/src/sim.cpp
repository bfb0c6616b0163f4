#include "slr/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <numeric>
#include <random>

namespace slr {

namespace {

// Bit-exact across standard libraries: mt19937_64 is fully specified, the
// distributions are not, so uniforms are built from raw output.
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
    : gen_(seed)
  {
  }
  /// Uniform in (0, 1).
  double uniform() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double gumbel() { return -std::log(-std::log(uniform())); }
  long index(long n) { return std::min(n - 1, static_cast<long>(uniform() * static_cast<double>(n))); }

private:
  std::mt19937_64 gen_;
};

double smooth_inside(double signed_distance, double width)
{
  return 1.0 / (1.0 + std::exp(signed_distance / width));
}

void normalise_peak(Volume &v)
{
  double const peak = v.vec().cwiseAbs().maxCoeff();
  if (peak > 0.0) {
    v *= 1.0 / peak;
  }
}

struct PhaseRamp
{
  double ax;
  double ay;
  double offset;

  PhaseRamp(Rng &rng, long nx, long ny)
    : ax(rng.uniform(-1.0, 1.0) * std::numbers::pi / static_cast<double>(nx))
    , ay(rng.uniform(-1.0, 1.0) * std::numbers::pi / static_cast<double>(ny))
    , offset(rng.uniform(-std::numbers::pi, std::numbers::pi))
  {
  }
  Cx operator()(long x, long y) const { return std::polar(1.0, ax * x + ay * y + offset); }
};

Volume beating_rings(long nx, long ny, long nt, Rng &rng)
{
  double const n = static_cast<double>(std::min(nx, ny));
  double const cx = 0.5 * nx + rng.uniform(-0.02, 0.02) * n;
  double const cy = 0.48 * ny + rng.uniform(-0.02, 0.02) * n;
  double const r0 = 0.16 * n * rng.uniform(0.95, 1.05);
  double const thick = 0.05 * n;
  double const swing = 0.25;
  double const phase0 = rng.uniform(0.0, 2.0 * std::numbers::pi);
  double const edge = 0.7;
  PhaseRamp const ramp(rng, nx, ny);

  Volume img(Shape{nx, ny, nt});
  for (long t = 0; t < nt; t++) {
    double const theta = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(nt);
    double const radius = r0 * (1.0 + swing * std::sin(theta + phase0));
    // A small structure circling the ring makes every frame distinct.
    double const bx = cx + 0.3 * n * std::cos(theta);
    double const by = cy + 0.3 * n * std::sin(theta);
    for (long y = 0; y < ny; y++) {
      for (long x = 0; x < nx; x++) {
        double const ex = (x - 0.5 * nx) / (0.42 * nx);
        double const ey = (y - 0.5 * ny) / (0.36 * ny);
        double const body = smooth_inside((std::sqrt(ex * ex + ey * ey) - 1.0) * 0.36 * n, edge);
        double const d = std::hypot(x - cx, y - cy);
        double const wall = smooth_inside(std::abs(d - radius) - 0.5 * thick, edge);
        double const pool = smooth_inside(d - (radius - 0.5 * thick), edge);
        double const blob = std::exp(-(std::pow(x - bx, 2) + std::pow(y - by, 2)) / (2.0 * std::pow(0.03 * n, 2)));
        double const mag = 0.25 * body + 0.65 * wall + 0.45 * pool + 0.4 * blob;
        img(x, y, t) = mag * ramp(x, y);
      }
    }
  }
  normalise_peak(img);
  return img;
}

// Spatial mode: a few smooth blobs under a phase ramp.
CxVector smooth_mode(long nx, long ny, Rng &rng)
{
  struct Blob
  {
    double x, y, sx, sy, amp;
  };
  std::vector<Blob> blobs(3);
  for (auto &b : blobs) {
    b = {rng.uniform(0.25, 0.75) * nx,
         rng.uniform(0.25, 0.75) * ny,
         rng.uniform(0.06, 0.16) * nx,
         rng.uniform(0.06, 0.16) * ny,
         rng.uniform(0.5, 1.0)};
  }
  PhaseRamp const ramp(rng, nx, ny);
  CxVector mode(nx * ny);
  for (long y = 0; y < ny; y++) {
    for (long x = 0; x < nx; x++) {
      double mag = 0.0;
      for (auto const &b : blobs) {
        mag += b.amp * std::exp(-0.5 * (std::pow((x - b.x) / b.sx, 2) + std::pow((y - b.y) / b.sy, 2)));
      }
      mode[x + nx * y] = mag * ramp(x, y);
    }
  }
  return mode;
}

// Temporal profile whose unitary DFT (exp(-2 pi i f t / nt) / sqrt(nt)) is supported on `bins`.
Eigen::VectorXcd sparse_profile(long nt, std::vector<long> const &bins, Rng &rng)
{
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(nt);
  double const scale = 1.0 / std::sqrt(static_cast<double>(nt));
  for (long f : bins) {
    Cx const c = std::polar(rng.uniform(0.5, 1.0), rng.uniform(-std::numbers::pi, std::numbers::pi));
    for (long t = 0; t < nt; t++) {
      double const arg = 2.0 * std::numbers::pi * static_cast<double>((f * t) % nt) / static_cast<double>(nt);
      v[t] += scale * c * std::polar(1.0, arg);
    }
  }
  return v;
}

Volume rank_sparse(long nx, long ny, long nt, long rank, long sparsity, Rng &rng)
{
  Eigen::MatrixXcd modes(nx * ny, rank);
  for (long j = 0; j < rank; j++) {
    modes.col(j) = smooth_mode(nx, ny, rng);
  }
  Eigen::MatrixXcd profiles(nt, rank);
  // Redraw until the profiles are independent so the rank is exactly `rank`.
  for (;;) {
    for (long j = 0; j < rank; j++) {
      std::vector<long> bins;
      if (j == 0) {
        bins.push_back(0); // static component
      }
      while (static_cast<long>(bins.size()) < sparsity) {
        long const f = rng.index(nt);
        if (std::find(bins.begin(), bins.end(), f) == bins.end()) {
          bins.push_back(f);
        }
      }
      profiles.col(j) = sparse_profile(nt, bins, rng);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(profiles);
    auto const s = svd.singularValues();
    if (s[rank - 1] > 1e-3 * s[0]) {
      break;
    }
  }
  Volume img(Shape{nx, ny, nt});
  img.frames() = modes * profiles.transpose();
  normalise_peak(img);
  return img;
}

} // namespace

long lines_per_frame(long ny, double acceleration)
{
  if (!(acceleration >= 1.0) || !std::isfinite(acceleration)) {
    throw ConfigError(fmt::format("acceleration must be >= 1, got {}", acceleration));
  }
  double const exact = static_cast<double>(ny) / acceleration;
  long n = static_cast<long>(std::ceil(exact));
  if (static_cast<double>(ny) / static_cast<double>(n) < 0.9 * acceleration) {
    n = static_cast<long>(std::floor(exact));
  }
  return std::min(n, ny);
}

SamplingMask make_vd_mask(long ny, long nt, double acceleration, double sigma_frac, std::uint64_t seed, bool frozen)
{
  if (ny < 8 || nt < 1) {
    throw ConfigError(fmt::format("mask needs ny >= 8 and nt >= 1, got ny={} nt={}", ny, nt));
  }
  if (!(sigma_frac > 0.0) || !std::isfinite(sigma_frac)) {
    throw ConfigError(fmt::format("sigma_frac must be positive, got {}", sigma_frac));
  }
  long const budget = lines_per_frame(ny, acceleration);
  if (budget < 4) {
    throw ConfigError(fmt::format(
      "acceleration {} leaves {} lines per frame, fewer than the 4 central lines", acceleration, budget));
  }

  long const centre = ny / 2;
  long const first = central_first_line(ny);
  double const sigma = sigma_frac * static_cast<double>(ny);
  std::vector<long> candidates;
  for (long y = 0; y < ny; y++) {
    if (y < first || y >= first + 4) {
      candidates.push_back(y);
    }
  }

  Rng rng(seed);
  SamplingMask mask(ny, nt, acceleration);
  std::vector<std::pair<double, long>> keys(candidates.size());
  for (long t = 0; t < nt; t++) {
    for (long y = first; y < first + 4; y++) {
      mask.set(y, t, true);
    }
    if (frozen && t > 0) {
      for (long y : candidates) {
        mask.set(y, t, mask.sampled(y, 0));
      }
      continue;
    }
    // Gumbel-top-k: sampling without replacement proportional to the Gaussian weights.
    for (std::size_t i = 0; i < candidates.size(); i++) {
      double const d = static_cast<double>(candidates[i] - centre);
      keys[i] = {-d * d / (2.0 * sigma * sigma) + rng.gumbel(), candidates[i]};
    }
    long const extra = budget - 4;
    std::partial_sort(keys.begin(), keys.begin() + extra, keys.end(), [](auto const &a, auto const &b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (long i = 0; i < extra; i++) {
      mask.set(keys[i].second, t, true);
    }
  }
  return mask;
}

Volume make_phantom(long nx, long ny, long nt, PhantomKind kind, std::uint64_t seed)
{
  if (nx < 8 || ny < 8 || nt < 8) {
    throw DimensionError(fmt::format("phantom dimensions must be at least 8, got {}x{}x{}", nx, ny, nt));
  }
  Rng rng(seed);
  if (kind.type == PhantomKind::Type::BeatingRings) {
    return beating_rings(nx, ny, nt, rng);
  }
  if (kind.rank < 1 || kind.rank > nt) {
    throw ConfigError(fmt::format("phantom rank must lie in [1, {}], got {}", nt, kind.rank));
  }
  if (kind.sparsity < 1 || kind.sparsity > nt) {
    throw ConfigError(fmt::format("phantom sparsity must lie in [1, {}], got {}", nt, kind.sparsity));
  }
  return rank_sparse(nx, ny, nt, kind.rank, kind.sparsity, rng);
}

PhantomKind parse_phantom_kind(std::string const &name, long rank, long sparsity)
{
  if (name == "beating_rings") {
    return PhantomKind::beating_rings();
  }
  if (name == "rank_r_sparse") {
    return PhantomKind::rank_sparse(rank, sparsity);
  }
  throw ConfigError(fmt::format("unknown phantom kind '{}' (valid kinds: beating_rings, rank_r_sparse)", name));
}

} // namespace slr
