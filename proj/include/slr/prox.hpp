#pragma once

#include "core.hpp"

namespace slr {

/// Unitary sparsifying transform along t. Spatial dimensions are untouched.
/// Haar is the full-depth orthonormal decomposition and needs Nt to be a power of two.
Volume transform_forward(Volume const &x, TransformKind kind);
Volume transform_adjoint(Volume const &z, TransformKind kind);

/// Elementwise complex shrinkage z/|z| * max(|z| - tau, 0).
Volume soft_threshold(Volume const &z, double tau);

/// Singular values of the Casorati matrix, descending.
Eigen::VectorXd casorati_singular_values(Volume const &x);

/// Each singular value s becomes (s - (lambda2 / rho) * s^(p-1))_+ . For p = 1 this is the
/// proximal map of (lambda2 / rho) * ||.||_*.
Volume ist_svt(Volume const &x, double lambda2, double rho, double p = 1.0);

/// Keeps the top-k singular values of the Casorati matrix and removes the rest.
Volume learned_svt(Volume const &x, long k);

double nuclear_norm(Volume const &x);

/// Singular values below this fraction of the largest are treated as zero when counting rank.
inline constexpr double kRankTolerance = 1e-12;
long casorati_rank(Volume const &x);

} // namespace slr
