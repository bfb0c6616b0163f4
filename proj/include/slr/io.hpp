#pragma once

#include "core.hpp"

#include <filesystem>

namespace slr {

// Volume files come in pairs sharing a base path:
//   <base>.hdr  text: "DYNLR1\n" "dims Nx Ny Nt\n" "dtype c64le\n"
//   <base>.dat  little-endian float32 (real, imag) pairs, x fastest, then y, then t.
// Masks use the same pair with Nx = 1 and values 0 or 1 in the real part.

std::filesystem::path header_path(std::filesystem::path const &base);
std::filesystem::path data_path(std::filesystem::path const &base);

void write_cplx(std::filesystem::path const &base, Volume const &v);
Volume read_cplx(std::filesystem::path const &base);

void write_mask(std::filesystem::path const &base, SamplingMask const &mask);
SamplingMask read_mask(std::filesystem::path const &base);

} // namespace slr
