#pragma once

// Stage drivers behind the command-line tool. Every stage reads and writes
// field files in the configured output directory.

#include <filesystem>
#include <string>
#include <vector>

#include "elastomap/config.hpp"
#include "elastomap/microstructure.hpp"
#include "elastomap/reconstruction.hpp"

namespace elastomap {

struct Manifest {
  std::vector<std::filesystem::path> files;
};

struct ValidationLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Periodic grid for the spectral solver, bounded node grid for FEM.
Grid make_grid(const RunConfig& cfg);
ModulusMaps generate_maps(const RunConfig& cfg);

/// Load basis entries requested by cfg.loads, numbered from 1 with the
/// spherical load first.
struct NumberedLoad {
  int number = 1;
  Projector projector = Projector::J;
  SymTensor2 eps_bar;
};
std::vector<NumberedLoad> requested_loads(const RunConfig& cfg);

Manifest stage_generate(const RunConfig& cfg);
Manifest stage_solve(const RunConfig& cfg);
Manifest stage_reconstruct(const RunConfig& cfg);
Manifest stage_report(const RunConfig& cfg);
/// generate, solve, reconstruct, report.
Manifest run_pipeline(const RunConfig& cfg);

/// Summary text built from the files already in the output directory.
std::string build_report(const RunConfig& cfg);

/// Oracle self-checks (Green coefficients, inclusion and two-phase closed
/// forms, first-order inversion on a small periodic grid).
std::vector<ValidationLine> stage_validate();

}  // namespace elastomap
