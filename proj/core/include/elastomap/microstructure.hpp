#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "elastomap/grid.hpp"

namespace elastomap {

struct Moduli {
  double kappa = 1.0;
  double mu = 1.0;
};

struct ModulusMaps {
  ScalarField kappa;
  ScalarField mu;
  double c = 0.0;
  std::uint64_t seed = 0;
  /// Voronoi only: cell index per grid point and the raw per-cell draws
  /// before mean re-centering.
  std::vector<int> phase;
  std::vector<double> cell_kappa;
  std::vector<double> cell_mu;
};

/// Gaussian-filtered white noise, kernel exp(-2 pi^2 sum l_i^2 xi_i^2) with
/// xi in cycles per unit length. Values lie in [eta0(1-c/2), eta0(1+c/2)],
/// one bound attained, mean exactly eta0.
ModulusMaps gen_smooth_aniso(const Grid& grid, double c, std::uint64_t seed,
                             std::vector<double> corr_lengths = {0.2, 0.05},
                             Moduli nominal = {});

/// Nearest-seed tessellation; per-cell values uniform on
/// [eta0(1-c/2), eta0(1+c/2)], then shifted so the spatial mean is eta0.
/// `wrap` uses the minimum-image distance on the unit cell.
ModulusMaps gen_voronoi(const Grid& grid, int n_cells, double c, std::uint64_t seed,
                        bool wrap = true, Moduli nominal = {});

/// Ball (disk) |x - center| < radius of inclusion moduli in a matrix.
ModulusMaps gen_inclusion(const Grid& grid, double radius, std::array<double, 3> center,
                          Moduli matrix, Moduli inclusion);

ModulusMaps gen_homogeneous(const Grid& grid, Moduli value);

/// (eta1, eta2) with f1 eta1 + f2 eta2 = eta0 and eta2 - eta1 = delta_eta.
std::pair<double, double> hs_phase_moduli(double eta0, double delta_eta, double f1);

}  // namespace elastomap
