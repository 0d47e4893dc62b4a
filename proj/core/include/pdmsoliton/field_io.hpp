#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pdmsoliton/numgrid.hpp"

namespace pdmsoliton {

// CSV with header "x,value", one row per sample, 17 significant digits.
void write_csv(std::ostream& os, const SampledField& f);
std::string to_csv(const SampledField& f);

// Reads a CSV written by write_csv. The abscissae must be uniformly spaced
// (relative tolerance 1e-9). For a periodic grid the file holds the n
// samples of [xmin, xmax) and xmax is reconstructed as last + h.
// Throws IoError when the file cannot be read or parsed.
SampledField read_csv(const std::filesystem::path& path, GridKind kind);
SampledField parse_csv(std::string_view text, GridKind kind);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

} // namespace pdmsoliton
