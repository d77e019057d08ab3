#include "elastomap/fem_solver.hpp"

#include <array>
#include <cmath>
#include <string>

#include <Eigen/IterativeLinearSolvers>

#include "elastomap/error.hpp"

namespace elastomap {

namespace {

using Mat8 = Eigen::Matrix<double, 8, 8>;
using Mat38 = Eigen::Matrix<double, 3, 8>;

// Corner offsets (di, dj) in counter-clockwise order.
constexpr std::array<std::array<int, 2>, 4> kCorners{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};

void check_nodes(const Grid& nodes) {
  if (nodes.dim() != 2) {
    throw Error(ErrorCode::UnsupportedDimension, "finite element solver is 2D only");
  }
  if (nodes.is_periodic()) {
    throw Error(ErrorCode::GridMismatch, "finite element solver needs a bounded grid");
  }
}

// Strain-displacement matrix at local point (s, t) in [-1,1]^2 for a square
// element of sides hx, hy, Mandel rows (11, 22, sqrt2 12).
Mat38 strain_matrix(double s, double t, double hx, double hy) {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  Mat38 b = Mat38::Zero();
  for (int a = 0; a < 4; ++a) {
    const double sa = 2.0 * kCorners[a][0] - 1.0;
    const double ta = 2.0 * kCorners[a][1] - 1.0;
    const double dx = 0.25 * sa * (1.0 + ta * t) * 2.0 / hx;
    const double dy = 0.25 * ta * (1.0 + sa * s) * 2.0 / hy;
    b(0, 2 * a) = dx;
    b(1, 2 * a + 1) = dy;
    b(2, 2 * a) = kInvSqrt2 * dy;
    b(2, 2 * a + 1) = kInvSqrt2 * dx;
  }
  return b;
}

struct ElementMatrices {
  Mat8 bulk;   // D = 2J
  Mat8 shear;  // D = 2K
  Mat38 centroid;
};

ElementMatrices element_matrices(double hx, double hy) {
  const MandelMatrix J = projector_J(2);
  const MandelMatrix K = projector_K(2);
  const Eigen::Matrix3d dj = 2.0 * J;
  const Eigen::Matrix3d dk = 2.0 * K;
  const double g = 1.0 / std::sqrt(3.0);
  const double w = 0.25 * hx * hy;  // unit weights times Jacobian
  ElementMatrices em{Mat8::Zero(), Mat8::Zero(), strain_matrix(0.0, 0.0, hx, hy)};
  for (double s : {-g, g}) {
    for (double t : {-g, g}) {
      const Mat38 b = strain_matrix(s, t, hx, hy);
      em.bulk += w * b.transpose() * dj * b;
      em.shear += w * b.transpose() * dk * b;
    }
  }
  return em;
}

std::array<std::size_t, 4> element_nodes(const Grid& nodes, int i, int j) {
  std::array<std::size_t, 4> out{};
  for (int a = 0; a < 4; ++a) {
    out[a] = nodes.ravel({i + kCorners[a][0], j + kCorners[a][1], 0});
  }
  return out;
}

bool on_boundary(const Grid& nodes, std::size_t idx) {
  const auto ijk = nodes.unravel(idx);
  return ijk[0] == 0 || ijk[1] == 0 || ijk[0] == nodes.extent(0) - 1 ||
         ijk[1] == nodes.extent(1) - 1;
}

void check_element_values(const Grid& nodes, std::span<const double> v, const char* name) {
  const auto es = element_shape(nodes);
  if (v.size() != static_cast<std::size_t>(es[0]) * es[1]) {
    throw Error(ErrorCode::GridMismatch, std::string(name) + " does not match the element grid");
  }
  for (double x : v) {
    if (!(x > 0.0)) {
      throw Error(ErrorCode::NonPositiveModulus, std::string(name) + " must be positive");
    }
  }
}

}  // namespace

std::array<int, 2> element_shape(const Grid& nodes) {
  check_nodes(nodes);
  return {nodes.extent(0) - 1, nodes.extent(1) - 1};
}

std::vector<double> element_average(const ScalarField& nodal) {
  const Grid& nodes = nodal.grid();
  const auto es = element_shape(nodes);
  std::vector<double> out(static_cast<std::size_t>(es[0]) * es[1]);
  for (int i = 0; i < es[0]; ++i) {
    for (int j = 0; j < es[1]; ++j) {
      double acc = 0.0;
      for (std::size_t n : element_nodes(nodes, i, j)) acc += nodal[n];
      out[static_cast<std::size_t>(i) * es[1] + j] = 0.25 * acc;
    }
  }
  return out;
}

Eigen::SparseMatrix<double> assemble_stiffness(const Grid& nodes, std::span<const double> kappa_e,
                                               std::span<const double> mu_e) {
  check_element_values(nodes, kappa_e, "kappa");
  check_element_values(nodes, mu_e, "mu");
  const auto es = element_shape(nodes);
  const ElementMatrices em = element_matrices(nodes.spacing(0), nodes.spacing(1));
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(kappa_e.size() * 64);
  for (int i = 0; i < es[0]; ++i) {
    for (int j = 0; j < es[1]; ++j) {
      const std::size_t e = static_cast<std::size_t>(i) * es[1] + j;
      const Mat8 ke = kappa_e[e] * em.bulk + mu_e[e] * em.shear;
      const auto en = element_nodes(nodes, i, j);
      for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
          trip.emplace_back(static_cast<int>(2 * en[a / 2] + a % 2),
                            static_cast<int>(2 * en[b / 2] + b % 2), ke(a, b));
        }
      }
    }
  }
  const int n = static_cast<int>(2 * nodes.size());
  Eigen::SparseMatrix<double> k(n, n);
  k.setFromTriplets(trip.begin(), trip.end());
  return k;
}

FemSolution solve_dirichlet(const ScalarField& kappa, const ScalarField& mu,
                            const SymTensor2& eps_bar, double tol) {
  require_same_grid(kappa.grid(), mu.grid());
  check_nodes(kappa.grid());
  require_positive(kappa, "kappa");
  require_positive(mu, "mu");
  const auto ke = element_average(kappa);
  const auto me = element_average(mu);
  return solve_dirichlet(kappa.grid(), ke, me, eps_bar, tol);
}

FemSolution solve_dirichlet(const Grid& nodes, std::span<const double> kappa_e,
                            std::span<const double> mu_e, const SymTensor2& eps_bar, double tol) {
  check_nodes(nodes);
  check_element_values(nodes, kappa_e, "kappa");
  check_element_values(nodes, mu_e, "mu");
  if (eps_bar.dim() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "macroscopic strain must be 2D");
  }
  const std::size_t nn = nodes.size();
  const Matrix3 ebar = eps_bar.to_matrix();

  // Boundary values and free-DOF numbering.
  std::vector<double> u(2 * nn, 0.0);
  std::vector<int> free_id(2 * nn, -1);
  int nfree = 0;
  for (std::size_t idx = 0; idx < nn; ++idx) {
    if (on_boundary(nodes, idx)) {
      const auto x = nodes.coord(idx);
      u[2 * idx] = ebar(0, 0) * x[0] + ebar(0, 1) * x[1];
      u[2 * idx + 1] = ebar(1, 0) * x[0] + ebar(1, 1) * x[1];
    } else {
      free_id[2 * idx] = nfree++;
      free_id[2 * idx + 1] = nfree++;
    }
  }

  FemSolution sol;
  sol.displacement.grid = nodes;
  const auto es = element_shape(nodes);
  const ElementMatrices em = element_matrices(nodes.spacing(0), nodes.spacing(1));

  if (eps_bar.norm() > 0.0 && nfree > 0) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(kappa_e.size() * 64);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nfree);
    for (int i = 0; i < es[0]; ++i) {
      for (int j = 0; j < es[1]; ++j) {
        const std::size_t e = static_cast<std::size_t>(i) * es[1] + j;
        const Mat8 ke = kappa_e[e] * em.bulk + mu_e[e] * em.shear;
        const auto en = element_nodes(nodes, i, j);
        for (int a = 0; a < 8; ++a) {
          const int ra = free_id[2 * en[a / 2] + a % 2];
          if (ra < 0) continue;
          for (int b = 0; b < 8; ++b) {
            const std::size_t gb = 2 * en[b / 2] + b % 2;
            const int cb = free_id[gb];
            if (cb < 0) {
              rhs[ra] -= ke(a, b) * u[gb];
            } else {
              trip.emplace_back(ra, cb, ke(a, b));
            }
          }
        }
      }
    }
    Eigen::SparseMatrix<double> k(nfree, nfree);
    k.setFromTriplets(trip.begin(), trip.end());
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    cg.setTolerance(tol);
    cg.setMaxIterations(std::max(1000, 20 * nfree));
    cg.compute(k);
    const Eigen::VectorXd x = cg.solve(rhs);
    sol.iterations = static_cast<int>(cg.iterations());
    sol.residual = cg.error();
    if (cg.info() != Eigen::Success) {
      throw Error(ErrorCode::NotConverged,
                  "conjugate gradient stopped after " + std::to_string(sol.iterations) +
                      " iterations, relative residual " + std::to_string(sol.residual));
    }
    for (std::size_t g = 0; g < 2 * nn; ++g) {
      if (free_id[g] >= 0) u[g] = x[free_id[g]];
    }
  }

  sol.element_strain.assign(kappa_e.size() * 3, 0.0);
  for (int i = 0; i < es[0]; ++i) {
    for (int j = 0; j < es[1]; ++j) {
      const std::size_t e = static_cast<std::size_t>(i) * es[1] + j;
      const auto en = element_nodes(nodes, i, j);
      Eigen::Matrix<double, 8, 1> ue;
      for (int a = 0; a < 4; ++a) {
        ue[2 * a] = u[2 * en[a]];
        ue[2 * a + 1] = u[2 * en[a] + 1];
      }
      const Eigen::Vector3d eps = em.centroid * ue;
      for (int c = 0; c < 3; ++c) sol.element_strain[3 * e + c] = eps[c];
    }
  }
  sol.displacement.values = std::move(u);
  sol.strain = nodal_strains(nodes, sol.element_strain);
  return sol;
}

TensorField nodal_strains(const Grid& nodes, std::span<const double> element_strains) {
  const auto es = element_shape(nodes);
  const std::size_t ne = static_cast<std::size_t>(es[0]) * es[1];
  if (element_strains.size() != 3 * ne) {
    throw Error(ErrorCode::GridMismatch, "element strains do not match the element grid");
  }
  TensorField out(nodes);
  std::vector<int> count(nodes.size(), 0);
  for (int i = 0; i < es[0]; ++i) {
    for (int j = 0; j < es[1]; ++j) {
      const std::size_t e = static_cast<std::size_t>(i) * es[1] + j;
      for (std::size_t n : element_nodes(nodes, i, j)) {
        double* p = out.point(n);
        for (int c = 0; c < 3; ++c) p[c] += element_strains[3 * e + c];
        ++count[n];
      }
    }
  }
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    double* p = out.point(n);
    for (int c = 0; c < 3; ++c) p[c] /= count[n];
  }
  return out;
}

}  // namespace elastomap
