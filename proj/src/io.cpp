#include "slr/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

namespace slr {

namespace {

constexpr char const *kMagic = "DYNLR1";
constexpr char const *kDtype = "c64le";

std::filesystem::path strip(std::filesystem::path const &base)
{
  auto const ext = base.extension();
  if (ext == ".hdr" || ext == ".dat") {
    auto p = base;
    p.replace_extension();
    return p;
  }
  return base;
}

std::uint32_t to_le(std::uint32_t v)
{
  if constexpr (std::endian::native == std::endian::big) {
    return ((v & 0xFFu) << 24) | ((v & 0xFF00u) << 8) | ((v >> 8) & 0xFF00u) | (v >> 24);
  }
  return v;
}

void put_float(std::string &buf, float f)
{
  std::uint32_t const bits = to_le(std::bit_cast<std::uint32_t>(f));
  char bytes[4];
  std::memcpy(bytes, &bits, 4);
  buf.append(bytes, 4);
}

float get_float(char const *p)
{
  std::uint32_t bits;
  std::memcpy(&bits, p, 4);
  return std::bit_cast<float>(to_le(bits));
}

void write_pair(std::filesystem::path const &base, Shape shape, CxVector const &values)
{
  auto const hdr = header_path(base);
  {
    std::ofstream out(hdr, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw FormatError(fmt::format("cannot open {} for writing", hdr.string()));
    }
    out << kMagic << "\n" << fmt::format("dims {} {} {}\n", shape.nx, shape.ny, shape.nt) << "dtype " << kDtype << "\n";
    if (!out) {
      throw FormatError(fmt::format("failed writing {}", hdr.string()));
    }
  }
  std::string buf;
  buf.reserve(values.size() * 8);
  for (long i = 0; i < values.size(); i++) {
    put_float(buf, static_cast<float>(values[i].real()));
    put_float(buf, static_cast<float>(values[i].imag()));
  }
  auto const dat = data_path(base);
  std::ofstream out(dat, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw FormatError(fmt::format("cannot open {} for writing", dat.string()));
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) {
    throw FormatError(fmt::format("failed writing {}", dat.string()));
  }
}

Shape read_header(std::filesystem::path const &hdr)
{
  std::ifstream in(hdr);
  if (!in) {
    throw FormatError(fmt::format("missing header {}", hdr.string()));
  }
  std::string magic, dims_line, dtype_line;
  if (!std::getline(in, magic) || magic != kMagic) {
    throw FormatError(fmt::format("{}: unknown magic '{}' (expected {})", hdr.string(), magic, kMagic));
  }
  if (!std::getline(in, dims_line)) {
    throw FormatError(fmt::format("{}: missing dims line", hdr.string()));
  }
  std::istringstream dims(dims_line);
  std::string key, extra;
  Shape shape;
  if (!(dims >> key >> shape.nx >> shape.ny >> shape.nt) || key != "dims" || (dims >> extra)) {
    throw FormatError(fmt::format("{}: malformed dims line '{}'", hdr.string(), dims_line));
  }
  if (shape.nx < 1 || shape.ny < 1 || shape.nt < 1) {
    throw FormatError(fmt::format("{}: dims must be positive, got {}", hdr.string(), shape.str()));
  }
  if (!std::getline(in, dtype_line) || dtype_line != fmt::format("dtype {}", kDtype)) {
    throw FormatError(fmt::format("{}: unsupported dtype line '{}'", hdr.string(), dtype_line));
  }
  return shape;
}

CxVector read_data(std::filesystem::path const &dat, Shape shape)
{
  std::ifstream in(dat, std::ios::binary);
  if (!in) {
    throw FormatError(fmt::format("missing data file {}", dat.string()));
  }
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto const expected = static_cast<std::size_t>(shape.size()) * 8;
  if (buf.size() != expected) {
    throw FormatError(fmt::format(
      "{}: size mismatch, dims {} need {} bytes but file has {}", dat.string(), shape.str(), expected, buf.size()));
  }
  CxVector values(shape.size());
  for (long i = 0; i < shape.size(); i++) {
    values[i] = Cx(get_float(buf.data() + 8 * i), get_float(buf.data() + 8 * i + 4));
  }
  return values;
}

} // namespace

std::filesystem::path header_path(std::filesystem::path const &base)
{
  auto p = strip(base);
  p += ".hdr";
  return p;
}

std::filesystem::path data_path(std::filesystem::path const &base)
{
  auto p = strip(base);
  p += ".dat";
  return p;
}

void write_cplx(std::filesystem::path const &base, Volume const &v)
{
  write_pair(base, v.shape(), v.vec());
}

Volume read_cplx(std::filesystem::path const &base)
{
  Shape const shape = read_header(header_path(base));
  return Volume(shape, read_data(data_path(base), shape));
}

void write_mask(std::filesystem::path const &base, SamplingMask const &mask)
{
  CxVector values(mask.ny() * mask.nt());
  for (long i = 0; i < values.size(); i++) {
    values[i] = mask.entries()[i] ? 1.0 : 0.0;
  }
  write_pair(base, Shape{1, mask.ny(), mask.nt()}, values);
}

SamplingMask read_mask(std::filesystem::path const &base)
{
  Shape const shape = read_header(header_path(base));
  if (shape.nx != 1) {
    throw FormatError(fmt::format("{}: mask files need Nx = 1, got {}", header_path(base).string(), shape.nx));
  }
  CxVector const values = read_data(data_path(base), shape);
  std::vector<std::uint8_t> entries(values.size());
  for (long i = 0; i < values.size(); i++) {
    if (values[i] == Cx(1.0, 0.0)) {
      entries[i] = 1;
    } else if (values[i] == Cx(0.0, 0.0)) {
      entries[i] = 0;
    } else {
      throw FormatError(fmt::format("{}: mask value at {} is not 0 or 1", data_path(base).string(), i));
    }
  }
  double const ones = static_cast<double>(std::count(entries.begin(), entries.end(), std::uint8_t{1}));
  double const nominal = ones > 0 ? static_cast<double>(entries.size()) / ones : 1.0;
  return SamplingMask(shape.ny, shape.nt, std::move(entries), nominal);
}

} // namespace slr
