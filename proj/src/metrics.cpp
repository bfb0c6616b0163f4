#include "slr/metrics.hpp"

#include <array>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace slr {

namespace {

double max_magnitude(Volume const &v)
{
  return v.vec().cwiseAbs().maxCoeff();
}

std::array<double, kSsimWindow> gaussian_window()
{
  std::array<double, kSsimWindow> w{};
  double const sigma = 1.5;
  double sum = 0.0;
  for (long i = 0; i < kSsimWindow; i++) {
    double const d = static_cast<double>(i - kSsimWindow / 2);
    w[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    sum += w[i];
  }
  for (auto &v : w) {
    v /= sum;
  }
  return w;
}

// Separable valid-region filtering of an nx x ny image (x fastest).
Eigen::MatrixXd filter_valid(Eigen::MatrixXd const &img, std::array<double, kSsimWindow> const &w)
{
  long const ox = img.rows() - kSsimWindow + 1;
  long const oy = img.cols() - kSsimWindow + 1;
  Eigen::MatrixXd pass(ox, img.cols());
  for (long y = 0; y < img.cols(); y++) {
    for (long x = 0; x < ox; x++) {
      double acc = 0.0;
      for (long i = 0; i < kSsimWindow; i++) {
        acc += w[i] * img(x + i, y);
      }
      pass(x, y) = acc;
    }
  }
  Eigen::MatrixXd out(ox, oy);
  for (long y = 0; y < oy; y++) {
    for (long x = 0; x < ox; x++) {
      double acc = 0.0;
      for (long i = 0; i < kSsimWindow; i++) {
        acc += w[i] * pass(x, y + i);
      }
      out(x, y) = acc;
    }
  }
  return out;
}

} // namespace

double mse(Volume const &ref, Volume const &rec)
{
  require_same_shape(ref, rec, "mse");
  return (ref.vec() - rec.vec()).squaredNorm();
}

double psnr(Volume const &ref, Volume const &rec)
{
  require_same_shape(ref, rec, "psnr");
  double const peak = max_magnitude(ref);
  if (peak == 0.0) {
    throw DimensionError("psnr: reference is all zero");
  }
  double const err = (ref.vec() - rec.vec()).norm();
  if (err == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return 20.0 * std::log10(peak * std::sqrt(static_cast<double>(ref.size())) / err);
}

double ssim(Volume const &ref, Volume const &rec)
{
  require_same_shape(ref, rec, "ssim");
  if (ref.nx() < kSsimWindow || ref.ny() < kSsimWindow) {
    throw DimensionError(
      fmt::format("ssim: frames {}x{} are smaller than the {}x{} window", ref.nx(), ref.ny(), kSsimWindow, kSsimWindow));
  }
  double range = max_magnitude(ref);
  if (range == 0.0) {
    range = 1.0;
  }
  double const c1 = (0.01 * range) * (0.01 * range);
  double const c2 = (0.03 * range) * (0.03 * range);
  auto const w = gaussian_window();

  double total = 0.0;
  for (long t = 0; t < ref.nt(); t++) {
    Eigen::MatrixXd a = ref.frames().col(t).cwiseAbs().reshaped(ref.nx(), ref.ny());
    Eigen::MatrixXd b = rec.frames().col(t).cwiseAbs().reshaped(ref.nx(), ref.ny());
    Eigen::MatrixXd const mu_a = filter_valid(a, w);
    Eigen::MatrixXd const mu_b = filter_valid(b, w);
    Eigen::MatrixXd const aa = filter_valid(a.cwiseProduct(a), w) - mu_a.cwiseProduct(mu_a);
    Eigen::MatrixXd const bb = filter_valid(b.cwiseProduct(b), w) - mu_b.cwiseProduct(mu_b);
    Eigen::MatrixXd const ab = filter_valid(a.cwiseProduct(b), w) - mu_a.cwiseProduct(mu_b);
    auto const num = (2.0 * mu_a.array() * mu_b.array() + c1) * (2.0 * ab.array() + c2);
    auto const den =
      (mu_a.array().square() + mu_b.array().square() + c1) * (aa.array() + bb.array() + c2);
    total += (num / den).mean();
  }
  return total / static_cast<double>(ref.nt());
}

QualityMetrics evaluate(Volume const &ref, Volume const &rec)
{
  QualityMetrics m;
  m.mse = mse(ref, rec);
  m.mse_e5 = m.mse / static_cast<double>(ref.size()) * 1e5;
  m.psnr = psnr(ref, rec);
  if (ref.nx() >= kSsimWindow && ref.ny() >= kSsimWindow) {
    m.ssim = ssim(ref, rec);
  }
  return m;
}

} // namespace slr
