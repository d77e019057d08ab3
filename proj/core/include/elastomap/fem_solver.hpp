#pragma once

// Bounded-domain plane solver: bilinear quadrilaterals on a structured node
// grid over [0,1]^2 with affine Dirichlet data u = eps_bar . x on the boundary.

#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "elastomap/grid.hpp"

namespace elastomap {

struct DisplacementField {
  Grid grid;
  /// Two components per node, interleaved.
  std::vector<double> values;
};

struct FemSolution {
  DisplacementField displacement;
  /// Nodal strain map (mean of adjacent element strains).
  TensorField strain;
  /// Centroid strain per element, 3 Mandel components each, element (i, j)
  /// at index i * (ny - 1) + j.
  std::vector<double> element_strain;
  int iterations = 0;
  double residual = 0.0;
};

/// Number of elements per axis for a bounded node grid.
std::array<int, 2> element_shape(const Grid& nodes);

/// Element moduli as the mean of the four corner nodal values.
std::vector<double> element_average(const ScalarField& nodal);

/// Full (unconstrained) stiffness matrix, two DOFs per node.
Eigen::SparseMatrix<double> assemble_stiffness(const Grid& nodes, std::span<const double> kappa_e,
                                               std::span<const double> mu_e);

/// Nodal moduli; elements take the average of their corners.
FemSolution solve_dirichlet(const ScalarField& kappa, const ScalarField& mu,
                            const SymTensor2& eps_bar, double tol = 1e-10);

/// Element moduli given directly on the element grid of `nodes`.
FemSolution solve_dirichlet(const Grid& nodes, std::span<const double> kappa_e,
                            std::span<const double> mu_e, const SymTensor2& eps_bar,
                            double tol = 1e-10);

/// Arithmetic mean of the strains of elements touching each node.
TensorField nodal_strains(const Grid& nodes, std::span<const double> element_strains);

}  // namespace elastomap
