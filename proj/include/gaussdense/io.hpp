#ifndef GAUSSDENSE_IO_HPP
#define GAUSSDENSE_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gaussdense/atoms.hpp"
#include "gaussdense/grid.hpp"
#include "gaussdense/weights.hpp"

namespace gaussdense::io {

/// %.17g, so every double round-trips and output is byte-stable.
std::string format_double(double v);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_text(const std::filesystem::path& path);

/// Header "xi,re,im", one row per grid point.
std::string signal_csv(const Grid& grid, const std::vector<cplx>& values);
/// {"halfwidth", "step", "count"} sidecar for a signal CSV.
std::string grid_json(const Grid& grid);

/// Reads "xi,re,im" (imaginary column optional). The grid is recovered from the first two
/// abscissae and must have a power-of-two count.
Signal read_signal_csv(const std::filesystem::path& path);

/// Reads "xi,w" into a table weight.
WeightSpec read_weight_csv(const std::filesystem::path& path);

/// Reads "alpha,tau".
std::vector<GaussianAtom> read_atoms_csv(const std::filesystem::path& path);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace gaussdense::io

#endif  // GAUSSDENSE_IO_HPP
