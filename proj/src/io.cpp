#include "gaussdense/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gaussdense/error.hpp"

namespace gaussdense::io {
namespace {

std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path, std::size_t min_cols) {
  std::istringstream in(read_text(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ls, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (rows.empty()) continue;  // header
      fail(ErrorCode::IoError, path.string() + ":" + std::to_string(lineno) + ": non-numeric cell");
    }
    if (row.size() < min_cols)
      fail(ErrorCode::IoError, path.string() + ":" + std::to_string(lineno) + ": expected " + std::to_string(min_cols) + " columns");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) fail(ErrorCode::IoError, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::IoError, "cannot rename " + tmp.string() + ": " + ec.message());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string signal_csv(const Grid& grid, const std::vector<cplx>& values) {
  if (values.size() != grid.count()) fail(ErrorCode::GridMismatch, "sample count does not match grid");
  std::string out = "xi,re,im\n";
  for (std::size_t k = 0; k < values.size(); ++k) {
    out += format_double(grid.point(k));
    out += ',';
    out += format_double(values[k].real());
    out += ',';
    out += format_double(values[k].imag());
    out += '\n';
  }
  return out;
}

std::string grid_json(const Grid& grid) {
  return "{\"halfwidth\": " + format_double(grid.halfwidth()) + ", \"step\": " + format_double(grid.step()) +
         ", \"count\": " + std::to_string(grid.count()) + "}\n";
}

Signal read_signal_csv(const std::filesystem::path& path) {
  const auto rows = read_numeric_csv(path, 2);
  if (rows.size() < 4) fail(ErrorCode::IoError, path.string() + ": need at least 4 samples");
  const double step = rows[1][0] - rows[0][0];
  const Grid grid = Grid::with_count(-rows[0][0], rows.size());
  if (std::abs(grid.step() - step) > 1e-9 * step)
    fail(ErrorCode::IoError, path.string() + ": abscissae do not form a centered grid [-L, L)");
  std::vector<cplx> v(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (std::abs(rows[k][0] - grid.point(k)) > 1e-9 * std::max(1.0, std::abs(grid.point(k))))
      fail(ErrorCode::IoError, path.string() + ": non-uniform abscissa at row " + std::to_string(k));
    v[k] = cplx(rows[k][1], rows[k].size() > 2 ? rows[k][2] : 0.0);
  }
  return Signal(grid, std::move(v));
}

WeightSpec read_weight_csv(const std::filesystem::path& path) {
  const auto rows = read_numeric_csv(path, 2);
  std::vector<double> xi, w;
  for (const auto& r : rows) {
    xi.push_back(r[0]);
    w.push_back(r[1]);
  }
  return WeightSpec::table(xi, w);
}

std::vector<GaussianAtom> read_atoms_csv(const std::filesystem::path& path) {
  std::vector<GaussianAtom> atoms;
  for (const auto& r : read_numeric_csv(path, 2)) atoms.push_back({r[0], r[1]});
  return atoms;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gaussdense::io
