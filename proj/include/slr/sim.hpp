#pragma once

#include "core.hpp"

#include <cstdint>
#include <string>

namespace slr {

inline constexpr double kDefaultSigmaFrac = 0.15;

/// Lines per frame for a nominal acceleration: ceil(ny / R), dropping to floor(ny / R)
/// when the ceiling would put the achieved acceleration more than 10% below nominal.
long lines_per_frame(long ny, double acceleration);

/// Gaussian variable-density Cartesian mask. Every frame draws its own lines
/// (unless `frozen`) without replacement with weights exp(-d^2 / (2 (sigma_frac ny)^2)),
/// d the offset from line ny/2; the four central lines are always on and count
/// toward the budget.
SamplingMask make_vd_mask(
  long ny, long nt, double acceleration, double sigma_frac, std::uint64_t seed, bool frozen = false);

struct PhantomKind
{
  enum class Type
  {
    BeatingRings,
    RankSparse
  };
  Type type = Type::BeatingRings;
  long rank = 1;     // RankSparse only
  long sparsity = 1; // nonzero temporal Fourier bins per temporal profile

  static PhantomKind beating_rings() { return {Type::BeatingRings, 0, 0}; }
  static PhantomKind rank_sparse(long r, long s) { return {Type::RankSparse, r, s}; }
};

/// beating_rings: cardiac-like frames, peak magnitude 1. rank_sparse(r, s): Casorati
/// product of r smooth spatial modes with r temporal profiles, each supported on s
/// temporal Fourier bins. Both carry a smooth spatial phase ramp.
Volume make_phantom(long nx, long ny, long nt, PhantomKind kind, std::uint64_t seed);

PhantomKind parse_phantom_kind(std::string const &name, long rank, long sparsity);

} // namespace slr
