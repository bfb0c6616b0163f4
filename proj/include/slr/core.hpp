#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slr {

using Cx = std::complex<double>;
using CxVector = Eigen::VectorXcd;
/// (Nx*Ny) x Nt matrix whose column j is frame j flattened with x fastest.
using Casorati = Eigen::MatrixXcd;

struct DimensionError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

struct FormatError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct Shape
{
  long nx = 1;
  long ny = 1;
  long nt = 1;

  long frame_size() const { return nx * ny; }
  long size() const { return nx * ny * nt; }
  bool operator==(Shape const &) const = default;
  std::string str() const;
};

/// Complex space-time volume, dimension order [x, y, t], x fastest in memory.
/// Used both for images and for (centered) k-space.
class Volume
{
public:
  Volume() = default;
  explicit Volume(Shape shape);
  Volume(Shape shape, CxVector data);

  static Volume zeros(Shape shape) { return Volume(shape); }

  Shape const &shape() const { return shape_; }
  long nx() const { return shape_.nx; }
  long ny() const { return shape_.ny; }
  long nt() const { return shape_.nt; }
  long size() const { return shape_.size(); }

  long index(long x, long y, long t) const { return x + shape_.nx * (y + shape_.ny * t); }
  Cx &operator()(long x, long y, long t) { return data_[index(x, y, t)]; }
  Cx operator()(long x, long y, long t) const { return data_[index(x, y, t)]; }

  CxVector &vec() { return data_; }
  CxVector const &vec() const { return data_; }
  Cx *data() { return data_.data(); }
  Cx const *data() const { return data_.data(); }

  Eigen::Map<Eigen::MatrixXcd> frames()
  {
    return {data_.data(), shape_.frame_size(), shape_.nt};
  }
  Eigen::Map<Eigen::MatrixXcd const> frames() const
  {
    return {data_.data(), shape_.frame_size(), shape_.nt};
  }

  double norm() const { return data_.norm(); }
  bool all_finite() const;

  Volume &operator+=(Volume const &other);
  Volume &operator-=(Volume const &other);
  Volume &operator*=(Cx s);

private:
  Shape shape_;
  CxVector data_;
};

Volume operator+(Volume a, Volume const &b);
Volume operator-(Volume a, Volume const &b);
Volume operator*(Cx s, Volume a);

/// Real part of sum(conj(a) * b).
double inner(Volume const &a, Volume const &b);
void require_same_shape(Volume const &a, Volume const &b, char const *what);

/// Binary phase-encode mask over (y, t). Frequency encodes are fully sampled,
/// so the mask is constant along x.
class SamplingMask
{
public:
  SamplingMask() = default;
  SamplingMask(long ny, long nt, double nominal_acceleration = 1.0);
  SamplingMask(long ny, long nt, std::vector<std::uint8_t> entries, double nominal_acceleration);

  static SamplingMask full(long ny, long nt) { return SamplingMask(ny, nt, std::vector<std::uint8_t>(ny * nt, 1), 1.0); }

  long ny() const { return ny_; }
  long nt() const { return nt_; }
  double nominal_acceleration() const { return nominal_; }

  bool sampled(long y, long t) const { return entries_[y + ny_ * t] != 0; }
  void set(long y, long t, bool on) { entries_[y + ny_ * t] = on ? 1 : 0; }
  std::vector<std::uint8_t> const &entries() const { return entries_; }

  long count() const;
  long lines_in_frame(long t) const;
  double achieved_acceleration() const;
  /// Lines ny/2-2 .. ny/2+1 (the DC line of a centered transform and its neighbours).
  bool has_central_lines() const;
  bool matches(Shape const &shape) const { return shape.ny == ny_ && shape.nt == nt_; }

private:
  long ny_ = 0;
  long nt_ = 0;
  double nominal_ = 1.0;
  std::vector<std::uint8_t> entries_;
};

/// Index of the first of the four always-sampled central lines.
inline long central_first_line(long ny) { return ny / 2 - 2; }

struct KSpaceData
{
  Volume data;
  SamplingMask mask;

  Shape const &shape() const { return data.shape(); }
};

Casorati to_casorati(Volume const &img);
Volume from_casorati(Casorati const &m, Shape shape);

enum class Placement
{
  L1,
  L2,
  L3
};

enum class LowRankMode
{
  Hard, // top-k truncation
  Soft  // iterative singular value thresholding with lambda2 / rho
};

enum class SvtInput
{
  XPlusBeta, // t-subproblem argument x^n + beta^{n-1}
  XOnly
};

enum class TransformKind
{
  TemporalFourier,
  TemporalHaar
};

struct DcMode
{
  enum class Kind
  {
    Replace,
    Weighted,
    Off
  };
  Kind kind = Kind::Replace;
  double nu = 0.0;

  static DcMode replace() { return {Kind::Replace, 0.0}; }
  static DcMode weighted(double nu) { return {Kind::Weighted, nu}; }
  static DcMode off() { return {Kind::Off, 0.0}; }
};

struct SolverConfig
{
  double lambda1 = 1e-3;
  double lambda2 = 1e-3;
  double rho = 0.1;
  double eta1 = 1.0;
  double eta2 = 1.0;
  long rank_k = 4;
  double p = 1.0;
  long iterations = 8;
  Placement placement = Placement::L2;
  LowRankMode lr_mode = LowRankMode::Hard;
  SvtInput svt_input = SvtInput::XPlusBeta;
  TransformKind transform = TransformKind::TemporalFourier;
  DcMode dc = DcMode::replace();

  /// Throws ConfigError if any field is out of range; nt > 0 also checks rank_k <= nt.
  void validate(long nt = 0) const;
};

std::string to_string(Placement p);
std::string to_string(LowRankMode m);
std::string to_string(SvtInput s);
std::string to_string(TransformKind k);
std::string to_string(DcMode const &dc);
Placement parse_placement(std::string const &s);
LowRankMode parse_lr_mode(std::string const &s);
SvtInput parse_svt_input(std::string const &s);
TransformKind parse_transform(std::string const &s);
/// "replace", "off", or "weighted:<nu>".
DcMode parse_dc(std::string const &s);

} // namespace slr
