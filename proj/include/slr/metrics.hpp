#pragma once

#include "core.hpp"

#include <optional>

namespace slr {

/// ||ref - rec||^2 over all elements, not divided by the element count.
double mse(Volume const &ref, Volume const &rec);

/// 20 log10(max|ref| sqrt(N) / ||ref - rec||). +infinity when rec == ref.
double psnr(Volume const &ref, Volume const &rec);

/// Mean SSIM over frames of the magnitude images: 11x11 Gaussian window (sigma 1.5),
/// K1 = 0.01, K2 = 0.03, dynamic range = max|ref| over the volume, valid region only.
double ssim(Volume const &ref, Volume const &rec);
inline constexpr long kSsimWindow = 11;

struct QualityMetrics
{
  double mse = 0.0;
  double mse_e5 = 0.0; // per-element MSE scaled by 1e5, the table convention
  double psnr = 0.0;
  std::optional<double> ssim; // absent when frames are smaller than the SSIM window
};

QualityMetrics evaluate(Volume const &ref, Volume const &rec);

} // namespace slr
