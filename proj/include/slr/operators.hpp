#pragma once

#include "core.hpp"

namespace slr {

/// Per-frame centered 2D DFT with unitary scaling 1/sqrt(Nx*Ny). DC sits at (Nx/2, Ny/2).
Volume fft2c(Volume const &img);
Volume ifft2c(Volume const &ksp);

/// A = P F: centered unitary FFT followed by zeroing of unsampled (y, t) lines.
KSpaceData encode(Volume const &img, SamplingMask const &mask);
/// A^H y = F^H P y.
Volume encode_adjoint(KSpaceData const &ksp);
/// Zeroes every unsampled line of a k-space volume in place.
void apply_mask(Volume &ksp, SamplingMask const &mask);

/// Replaces (or blends, for the weighted mode) the sampled k-space lines of pred with
/// the acquired data; unsampled coefficients keep their predicted values. Off returns pred.
Volume data_consistency(Volume const &pred, KSpaceData const &acquired, DcMode mode);

} // namespace slr
