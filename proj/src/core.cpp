#include "slr/core.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <fmt/format.h>

namespace slr {

std::string Shape::str() const
{
  return fmt::format("{}x{}x{}", nx, ny, nt);
}

Volume::Volume(Shape shape)
  : shape_(shape)
{
  if (shape.nx < 1 || shape.ny < 1 || shape.nt < 1) {
    throw DimensionError(fmt::format("volume dimensions must be positive, got {}", shape.str()));
  }
  data_ = CxVector::Zero(shape.size());
}

Volume::Volume(Shape shape, CxVector data)
  : Volume(shape)
{
  if (data.size() != shape.size()) {
    throw DimensionError(
      fmt::format("volume {} needs {} elements, got {}", shape.str(), shape.size(), data.size()));
  }
  data_ = std::move(data);
}

bool Volume::all_finite() const
{
  return std::all_of(data_.data(), data_.data() + data_.size(), [](Cx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

void require_same_shape(Volume const &a, Volume const &b, char const *what)
{
  if (a.shape() != b.shape()) {
    throw DimensionError(fmt::format("{}: shape {} does not match {}", what, a.shape().str(), b.shape().str()));
  }
}

Volume &Volume::operator+=(Volume const &other)
{
  require_same_shape(*this, other, "operator+=");
  data_ += other.data_;
  return *this;
}

Volume &Volume::operator-=(Volume const &other)
{
  require_same_shape(*this, other, "operator-=");
  data_ -= other.data_;
  return *this;
}

Volume &Volume::operator*=(Cx s)
{
  data_ *= s;
  return *this;
}

Volume operator+(Volume a, Volume const &b) { return a += b; }
Volume operator-(Volume a, Volume const &b) { return a -= b; }
Volume operator*(Cx s, Volume a) { return a *= s; }

double inner(Volume const &a, Volume const &b)
{
  require_same_shape(a, b, "inner");
  return a.vec().dot(b.vec()).real();
}

SamplingMask::SamplingMask(long ny, long nt, double nominal_acceleration)
  : SamplingMask(ny, nt, std::vector<std::uint8_t>(ny > 0 && nt > 0 ? ny * nt : 0, 0), nominal_acceleration)
{
}

SamplingMask::SamplingMask(long ny, long nt, std::vector<std::uint8_t> entries, double nominal_acceleration)
  : ny_(ny)
  , nt_(nt)
  , nominal_(nominal_acceleration)
  , entries_(std::move(entries))
{
  if (ny < 1 || nt < 1) {
    throw DimensionError(fmt::format("mask dimensions must be positive, got {}x{}", ny, nt));
  }
  if (static_cast<long>(entries_.size()) != ny * nt) {
    throw DimensionError(fmt::format("mask {}x{} needs {} entries, got {}", ny, nt, ny * nt, entries_.size()));
  }
  if (std::any_of(entries_.begin(), entries_.end(), [](std::uint8_t v) { return v > 1; })) {
    throw DimensionError("mask entries must be 0 or 1");
  }
  if (!(nominal_acceleration > 0.0)) {
    throw ConfigError("nominal acceleration must be positive");
  }
}

long SamplingMask::count() const
{
  return std::count(entries_.begin(), entries_.end(), std::uint8_t{1});
}

long SamplingMask::lines_in_frame(long t) const
{
  auto const first = entries_.begin() + t * ny_;
  return std::count(first, first + ny_, std::uint8_t{1});
}

double SamplingMask::achieved_acceleration() const
{
  long const n = count();
  return n == 0 ? std::numeric_limits<double>::infinity() : static_cast<double>(ny_ * nt_) / n;
}

bool SamplingMask::has_central_lines() const
{
  if (ny_ < 4) {
    return false;
  }
  long const first = central_first_line(ny_);
  for (long t = 0; t < nt_; t++) {
    for (long y = first; y < first + 4; y++) {
      if (!sampled(y, t)) {
        return false;
      }
    }
  }
  return true;
}

Casorati to_casorati(Volume const &img)
{
  return img.frames();
}

Volume from_casorati(Casorati const &m, Shape shape)
{
  if (m.rows() != shape.frame_size() || m.cols() != shape.nt) {
    throw DimensionError(fmt::format(
      "Casorati matrix {}x{} does not fit shape {} (needs {}x{})",
      m.rows(),
      m.cols(),
      shape.str(),
      shape.frame_size(),
      shape.nt));
  }
  Volume out(shape);
  out.frames() = m;
  return out;
}

void SolverConfig::validate(long nt) const
{
  auto fail = [](std::string const &msg) { throw ConfigError(msg); };
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!finite_nonneg(lambda1)) fail("lambda1 must be a finite nonnegative number");
  if (!finite_nonneg(lambda2)) fail("lambda2 must be a finite nonnegative number");
  if (!finite_nonneg(rho)) fail("rho must be a finite nonnegative number");
  if (!finite_nonneg(eta1)) fail("eta1 must be a finite nonnegative number");
  if (!(std::isfinite(eta2) && eta2 > 0.0)) fail("eta2 must be positive");
  if (rank_k < 1) fail("rank_k must be a positive integer");
  if (nt > 0 && rank_k > nt) fail(fmt::format("rank_k = {} exceeds the number of frames {}", rank_k, nt));
  if (!(p > 0.0 && p <= 1.0)) fail("p must lie in (0, 1]");
  if (iterations < 1) fail("iterations must be a positive integer");
  if (dc.kind == DcMode::Kind::Weighted && !(std::isfinite(dc.nu) && dc.nu >= 0.0)) {
    fail("weighted data consistency needs a finite nonnegative nu");
  }
}

std::string to_string(Placement p)
{
  switch (p) {
  case Placement::L1: return "l1";
  case Placement::L2: return "l2";
  case Placement::L3: return "l3";
  }
  return "?";
}

std::string to_string(LowRankMode m) { return m == LowRankMode::Hard ? "hard" : "soft"; }
std::string to_string(SvtInput s) { return s == SvtInput::XPlusBeta ? "x+beta" : "x"; }
std::string to_string(TransformKind k) { return k == TransformKind::TemporalFourier ? "fourier" : "haar"; }

std::string to_string(DcMode const &dc)
{
  switch (dc.kind) {
  case DcMode::Kind::Replace: return "replace";
  case DcMode::Kind::Off: return "off";
  case DcMode::Kind::Weighted: return fmt::format("weighted:{}", dc.nu);
  }
  return "?";
}

namespace {
std::string lower(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}
} // namespace

Placement parse_placement(std::string const &s)
{
  auto const v = lower(s);
  if (v == "l1") return Placement::L1;
  if (v == "l2") return Placement::L2;
  if (v == "l3") return Placement::L3;
  throw ConfigError(fmt::format("unknown placement '{}' (expected l1, l2 or l3)", s));
}

LowRankMode parse_lr_mode(std::string const &s)
{
  auto const v = lower(s);
  if (v == "hard") return LowRankMode::Hard;
  if (v == "soft") return LowRankMode::Soft;
  throw ConfigError(fmt::format("unknown low-rank mode '{}' (expected hard or soft)", s));
}

SvtInput parse_svt_input(std::string const &s)
{
  auto const v = lower(s);
  if (v == "x+beta") return SvtInput::XPlusBeta;
  if (v == "x") return SvtInput::XOnly;
  throw ConfigError(fmt::format("unknown svt input '{}' (expected x+beta or x)", s));
}

TransformKind parse_transform(std::string const &s)
{
  auto const v = lower(s);
  if (v == "fourier") return TransformKind::TemporalFourier;
  if (v == "haar") return TransformKind::TemporalHaar;
  throw ConfigError(fmt::format("unknown transform '{}' (expected fourier or haar)", s));
}

DcMode parse_dc(std::string const &s)
{
  auto const v = lower(s);
  if (v == "replace") return DcMode::replace();
  if (v == "off") return DcMode::off();
  if (v.rfind("weighted:", 0) == 0) {
    auto const num = v.substr(9);
    std::size_t used = 0;
    double nu = 0.0;
    try {
      nu = std::stod(num, &used);
    } catch (std::exception const &) {
      used = 0;
    }
    if (used == 0 || used != num.size() || !std::isfinite(nu) || nu < 0.0) {
      throw ConfigError(fmt::format("bad weighted nu in '{}'", s));
    }
    return DcMode::weighted(nu);
  }
  throw ConfigError(fmt::format("unknown dc mode '{}' (expected replace, off or weighted:<nu>)", s));
}

} // namespace slr
