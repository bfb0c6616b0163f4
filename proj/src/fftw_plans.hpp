#pragma once

#include <fftw3.h>

#include <complex>

namespace slr::detail {

// Plans are created once per geometry under a lock and reused through the
// new-array execute interface, which is safe to call concurrently.
// All plans are FFTW_ESTIMATE | FFTW_UNALIGNED so results do not depend on timing.

/// In-place 2D transform of one ny x nx frame (x fastest).
fftw_plan plan_2d(long nx, long ny, int sign);
/// In-place 1D transforms of length n, `howmany` interleaved signals with stride `howmany`.
fftw_plan plan_strided_1d(long n, long howmany, int sign);

inline fftw_complex *as_fftw(std::complex<double> *p) { return reinterpret_cast<fftw_complex *>(p); }

} // namespace slr::detail
