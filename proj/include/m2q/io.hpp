#pragma once

// Matrix file formats.
//
// CSV:    one row per line, comma-separated decimal floats. An optional first
//         line "# n=<n> d=<d>" declares the shape and is checked if present.
// Binary: magic "M2QB", u32 version (= 1), u64 n, u64 d, then n*d
//         little-endian IEEE-754 doubles in row-major order.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "m2q/matrix.hpp"

namespace m2q::io {

enum class Format { csv, binary };

/// ".m2qb" and ".bin" are binary, anything else CSV.
Format format_from_path(const std::filesystem::path& path);

DataMatrix read_csv(std::istream& in);
void write_csv(std::ostream& out, const DataMatrix& x);

DataMatrix read_binary(std::istream& in);
void write_binary(std::ostream& out, const DataMatrix& x);

/// Dispatches on the extension, or sniffs the magic bytes when reading.
DataMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const DataMatrix& x);

/// FNV-1a 64 over the binary encoding; used as a printable checksum.
std::uint64_t checksum(const DataMatrix& x);

}  // namespace m2q::io
