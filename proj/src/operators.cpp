#include "slr/operators.hpp"

#include "fftw_plans.hpp"

#include <cmath>
#include <fmt/format.h>
#include <map>
#include <mutex>
#include <tuple>

namespace slr {

namespace detail {

namespace {
std::mutex plan_mutex;
std::map<std::tuple<int, long, long, int>, fftw_plan> plan_cache;

template <typename Make>
fftw_plan cached(std::tuple<int, long, long, int> key, long elements, Make make)
{
  std::lock_guard lock(plan_mutex);
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) {
    return it->second;
  }
  auto *scratch = fftw_alloc_complex(elements);
  fftw_plan plan = make(scratch);
  fftw_free(scratch);
  plan_cache.emplace(key, plan);
  return plan;
}
} // namespace

fftw_plan plan_2d(long nx, long ny, int sign)
{
  return cached({2, nx, ny, sign}, nx * ny, [&](fftw_complex *buf) {
    return fftw_plan_dft_2d(
      static_cast<int>(ny), static_cast<int>(nx), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  });
}

fftw_plan plan_strided_1d(long n, long howmany, int sign)
{
  return cached({1, n, howmany, sign}, n * howmany, [&](fftw_complex *buf) {
    int const len = static_cast<int>(n);
    int const h = static_cast<int>(howmany);
    return fftw_plan_many_dft(
      1, &len, h, buf, nullptr, h, 1, buf, nullptr, h, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  });
}

} // namespace detail

namespace {

// Centered transform: ifftshift -> DFT -> fftshift, each frame independently.
Volume centered_2d(Volume const &in, int sign)
{
  long const nx = in.nx();
  long const ny = in.ny();
  long const sx = nx / 2;
  long const sy = ny / 2;
  double const scale = 1.0 / std::sqrt(static_cast<double>(nx * ny));
  fftw_plan plan = detail::plan_2d(nx, ny, sign);

  Volume out(in.shape());
  CxVector frame(nx * ny);
  for (long t = 0; t < in.nt(); t++) {
    for (long y = 0; y < ny; y++) {
      long const ys = (y + sy) % ny;
      for (long x = 0; x < nx; x++) {
        frame[x + nx * y] = in((x + sx) % nx, ys, t);
      }
    }
    fftw_execute_dft(plan, detail::as_fftw(frame.data()), detail::as_fftw(frame.data()));
    for (long y = 0; y < ny; y++) {
      long const yd = (y + sy) % ny;
      for (long x = 0; x < nx; x++) {
        out((x + sx) % nx, yd, t) = scale * frame[x + nx * y];
      }
    }
  }
  return out;
}

void require_mask_fits(Shape const &shape, SamplingMask const &mask, char const *what)
{
  if (!mask.matches(shape)) {
    throw DimensionError(fmt::format(
      "{}: mask {}x{} does not match volume {}", what, mask.ny(), mask.nt(), shape.str()));
  }
}

} // namespace

Volume fft2c(Volume const &img) { return centered_2d(img, FFTW_FORWARD); }
Volume ifft2c(Volume const &ksp) { return centered_2d(ksp, FFTW_BACKWARD); }

void apply_mask(Volume &ksp, SamplingMask const &mask)
{
  require_mask_fits(ksp.shape(), mask, "apply_mask");
  long const nx = ksp.nx();
  for (long t = 0; t < ksp.nt(); t++) {
    for (long y = 0; y < ksp.ny(); y++) {
      if (!mask.sampled(y, t)) {
        ksp.vec().segment(ksp.index(0, y, t), nx).setZero();
      }
    }
  }
}

KSpaceData encode(Volume const &img, SamplingMask const &mask)
{
  require_mask_fits(img.shape(), mask, "encode");
  Volume k = fft2c(img);
  apply_mask(k, mask);
  return {std::move(k), mask};
}

Volume encode_adjoint(KSpaceData const &ksp)
{
  Volume k = ksp.data;
  apply_mask(k, ksp.mask);
  return ifft2c(k);
}

Volume data_consistency(Volume const &pred, KSpaceData const &acquired, DcMode mode)
{
  require_same_shape(pred, acquired.data, "data_consistency");
  require_mask_fits(pred.shape(), acquired.mask, "data_consistency");
  if (mode.kind == DcMode::Kind::Off) {
    return pred;
  }
  Volume k = fft2c(pred);
  long const nx = k.nx();
  double const nu = mode.nu;
  for (long t = 0; t < k.nt(); t++) {
    for (long y = 0; y < k.ny(); y++) {
      if (!acquired.mask.sampled(y, t)) {
        continue;
      }
      auto line = k.vec().segment(k.index(0, y, t), nx);
      auto const acq = acquired.data.vec().segment(k.index(0, y, t), nx);
      if (mode.kind == DcMode::Kind::Replace) {
        line = acq;
      } else {
        line = (line + nu * acq) / (1.0 + nu);
      }
    }
  }
  return ifft2c(k);
}

} // namespace slr
