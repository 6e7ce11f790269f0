#ifndef GAUSSDENSE_EXPERIMENT_HPP
#define GAUSSDENSE_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaussdense/atoms.hpp"
#include "gaussdense/weights.hpp"

namespace gaussdense {

/// Where a signal comes from: a preset, a combination of atoms, or a CSV file.
struct SignalSource {
  enum class Kind { Gaussian, Bump, Zero, Atoms, Csv };
  Kind kind = Kind::Gaussian;
  GaussianAtom atom;                   // Gaussian
  double center = 0.0, radius = 1.0;   // Bump: (1 - u^2)^2 on |u| < 1, u = (t - center) / radius
  std::vector<GaussianAtom> atoms;     // Atoms
  std::vector<cplx> coefficients;      // Atoms
  std::filesystem::path csv;           // Csv
};

struct DictionaryConfig {
  std::vector<double> alpha_grid;
  std::vector<double> tau_grid;
  std::filesystem::path atoms_csv;
  std::filesystem::path window_csv;
  std::string method = "least-squares";  // or "greedy"
  std::size_t n_atoms = 10;
  std::optional<double> ridge;
};

struct ExperimentConfig {
  double halfwidth = 16.0;
  double step = 1.0 / 64.0;
  WeightSpec w_t;
  WeightSpec w_omega;
  double epsilon_t = 0.5;
  double epsilon_omega = 0.5;
  double scan_step = kDefaultWeightStep;
  SignalSource target;
  std::optional<SignalSource> window;
  double window_delta = 0.5;
  DictionaryConfig dictionary;
  std::vector<double> alphas{1, 4, 16, 64, 256};
  bool fubini = false;
  std::filesystem::path outputs = "out";
};

/// Parses a JSON config. Relative paths are resolved against `base_dir`.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

Signal make_signal(const SignalSource& src, const Grid& grid);

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;
  bool force = false;
  unsigned threads = 1;
  std::uint64_t seed = 0;
};

struct RunResult {
  int exit_code = 0;  // 0 success, 2 validation failure, 1 other error
  std::string message;
  std::vector<std::string> artifacts;
};

inline constexpr const char* kVersion = "1.0.0";

bool is_subcommand(std::string_view name) noexcept;

/// Runs one subcommand and writes its reports plus manifest.json into the output directory.
/// Never throws.
RunResult run_experiment(const std::filesystem::path& config_path, std::string_view subcommand, const RunOptions& options);

}  // namespace gaussdense

#endif  // GAUSSDENSE_EXPERIMENT_HPP
