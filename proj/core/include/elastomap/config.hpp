#pragma once

// Run configuration: UTF-8 lines `key = value`, `#` starts a comment.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace elastomap {

enum class GeneratorKind { Voronoi, Smooth, Inclusion, Homogeneous };
enum class SolverKind { Spectral, Fem };
enum class LoadSet { All, Bulk, Shear };

struct RunConfig {
  int dimension = 2;
  std::vector<int> grid;
  double contrast = 0.0;
  std::uint64_t seed = 0;
  GeneratorKind generator = GeneratorKind::Voronoi;
  SolverKind solver = SolverKind::Spectral;
  std::filesystem::path output;

  int n_cells = 64;
  std::vector<double> corr_lengths;  // empty: generator default
  bool wrap = true;
  double inclusion_radius = 0.1;
  double inclusion_kappa = 1.01;
  double inclusion_mu = 1.01;
  double tol = 1e-10;
  int max_iter = 10000;
  LoadSet loads = LoadSet::All;
  double kappa0 = 1.0;
  double mu0 = 1.0;
  /// True when kappa0/mu0 were given explicitly.
  bool reference_given = false;
  bool diagnostics = false;
  bool anchoring_mean = true;
  bool pgm = true;
};

/// Raw key/value pairs with their source line numbers.
struct ConfigEntries {
  std::map<std::string, std::pair<std::string, int>> values;
};

/// Parses text; unknown keys and malformed lines throw ConfigError naming the
/// line number.
ConfigEntries parse_config_text(const std::string& text, const std::string& source = "config");
ConfigEntries read_config_file(const std::filesystem::path& path);

/// Applies `overrides` over `file`, checks required keys and validates values.
RunConfig build_config(const ConfigEntries& file, const ConfigEntries& overrides = {});

/// Canonical key=value rendering, stored in output metadata.
std::string render_config(const RunConfig& cfg);

const std::vector<std::string>& config_keys();

}  // namespace elastomap
