#include "slr/prox.hpp"

#include "fftw_plans.hpp"

#include <cmath>
#include <fmt/format.h>
#include <functional>

namespace slr {

namespace {

bool power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

void check_transform(Shape const &shape, TransformKind kind)
{
  if (kind == TransformKind::TemporalHaar && !power_of_two(shape.nt)) {
    throw DimensionError(fmt::format("temporal Haar transform needs Nt to be a power of two, got {}", shape.nt));
  }
}

Volume temporal_fourier(Volume const &in, int sign)
{
  Volume out = in;
  long const howmany = in.shape().frame_size();
  fftw_plan plan = detail::plan_strided_1d(in.nt(), howmany, sign);
  fftw_execute_dft(plan, detail::as_fftw(out.data()), detail::as_fftw(out.data()));
  out *= 1.0 / std::sqrt(static_cast<double>(in.nt()));
  return out;
}

// Columns of the Casorati view are frames, so a temporal transform acts on rows.
Volume haar_forward(Volume const &in)
{
  Volume out = in;
  auto m = out.frames();
  long const nt = in.nt();
  double const r = std::sqrt(0.5);
  Eigen::MatrixXcd tmp(m.rows(), nt);
  for (long len = nt; len >= 2; len /= 2) {
    long const half = len / 2;
    for (long i = 0; i < half; i++) {
      tmp.col(i) = r * (m.col(2 * i) + m.col(2 * i + 1));
      tmp.col(half + i) = r * (m.col(2 * i) - m.col(2 * i + 1));
    }
    m.leftCols(len) = tmp.leftCols(len);
  }
  return out;
}

Volume haar_adjoint(Volume const &in)
{
  Volume out = in;
  auto m = out.frames();
  long const nt = in.nt();
  double const r = std::sqrt(0.5);
  Eigen::MatrixXcd tmp(m.rows(), nt);
  for (long len = 2; len <= nt; len *= 2) {
    long const half = len / 2;
    for (long i = 0; i < half; i++) {
      tmp.col(2 * i) = r * (m.col(i) + m.col(half + i));
      tmp.col(2 * i + 1) = r * (m.col(i) - m.col(half + i));
    }
    m.leftCols(len) = tmp.leftCols(len);
  }
  return out;
}

struct ThinSvd
{
  Eigen::VectorXd sigma; // descending
  Eigen::MatrixXcd v;    // Nt x r right singular vectors
};

// For tall Casorati matrices, QR first so the SVD only sees the small Nt x Nt factor.
ThinSvd thin_svd(Casorati const &c)
{
  ThinSvd out;
  if (c.rows() >= c.cols()) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(c);
    Eigen::MatrixXcd r = qr.matrixQR().topRows(c.cols()).triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r, Eigen::ComputeFullV);
    out.sigma = svd.singularValues();
    out.v = svd.matrixV();
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c, Eigen::ComputeThinV);
    out.sigma = svd.singularValues();
    out.v = svd.matrixV();
  }
  return out;
}

// C V diag(g) V^H with g_i = f(s_i) / s_i, which equals U diag(f(s)) V^H.
Volume shrink_singular_values(Volume const &x, std::function<double(long, double)> const &f)
{
  auto const c = x.frames();
  ThinSvd const svd = thin_svd(c);
  long const r = svd.sigma.size();
  Eigen::VectorXd gain = Eigen::VectorXd::Zero(r);
  for (long i = 0; i < r; i++) {
    double const s = svd.sigma[i];
    if (s > 0.0) {
      gain[i] = f(i, s) / s;
    }
  }
  Volume out(x.shape());
  out.frames() = c * (svd.v * gain.asDiagonal() * svd.v.adjoint());
  return out;
}

} // namespace

Volume transform_forward(Volume const &x, TransformKind kind)
{
  check_transform(x.shape(), kind);
  return kind == TransformKind::TemporalFourier ? temporal_fourier(x, FFTW_FORWARD) : haar_forward(x);
}

Volume transform_adjoint(Volume const &z, TransformKind kind)
{
  check_transform(z.shape(), kind);
  return kind == TransformKind::TemporalFourier ? temporal_fourier(z, FFTW_BACKWARD) : haar_adjoint(z);
}

Volume soft_threshold(Volume const &z, double tau)
{
  if (!(tau >= 0.0)) {
    throw ConfigError(fmt::format("soft threshold must be nonnegative, got {}", tau));
  }
  if (tau == 0.0) {
    return z;
  }
  Volume out(z.shape());
  for (long i = 0; i < z.size(); i++) {
    Cx const v = z.vec()[i];
    double const mag = std::abs(v);
    if (mag > tau) {
      out.vec()[i] = v * ((mag - tau) / mag);
    }
  }
  return out;
}

Eigen::VectorXd casorati_singular_values(Volume const &x)
{
  return thin_svd(x.frames()).sigma;
}

Volume ist_svt(Volume const &x, double lambda2, double rho, double p)
{
  if (!(rho > 0.0)) {
    throw ConfigError(fmt::format("ist_svt needs rho > 0, got {}", rho));
  }
  if (!(p > 0.0 && p <= 1.0)) {
    throw ConfigError(fmt::format("ist_svt needs p in (0, 1], got {}", p));
  }
  if (!(lambda2 >= 0.0)) {
    throw ConfigError(fmt::format("ist_svt needs lambda2 >= 0, got {}", lambda2));
  }
  double const tau = lambda2 / rho;
  return shrink_singular_values(x, [tau, p](long, double s) {
    double const shrunk = s - tau * (p == 1.0 ? 1.0 : std::pow(s, p - 1.0));
    return shrunk >= 0.0 ? shrunk : 0.0;
  });
}

Volume learned_svt(Volume const &x, long k)
{
  if (k < 1 || k > x.nt()) {
    throw ConfigError(fmt::format("learned_svt rank k = {} outside [1, {}]", k, x.nt()));
  }
  return shrink_singular_values(x, [k](long i, double s) { return i < k ? s : 0.0; });
}

double nuclear_norm(Volume const &x)
{
  return casorati_singular_values(x).sum();
}

long casorati_rank(Volume const &x)
{
  auto const s = casorati_singular_values(x);
  if (s.size() == 0 || s[0] == 0.0) {
    return 0;
  }
  return (s.array() > kRankTolerance * s[0]).count();
}

} // namespace slr
