#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "elastomap/error.hpp"
#include "elastomap/fem_solver.hpp"
#include "elastomap/microstructure.hpp"
#include "elastomap/spectral_solver.hpp"

using namespace elastomap;

namespace {

SymTensor2 load(double a, double b, double s12) {
  SymTensor2 t(2);
  t[0] = a;
  t[1] = b;
  t[2] = std::sqrt(2.0) * s12;
  return t;
}

}  // namespace

TEST(Fem, PatchTestHomogeneous) {
  const Grid nodes = Grid::bounded({9, 7});
  const ScalarField k(nodes, 1.4);
  const ScalarField mu(nodes, 0.6);
  const SymTensor2 bar = load(0.3, -0.2, 0.15);
  const FemSolution sol = solve_dirichlet(k, mu, bar);
  const Matrix3 e = bar.to_matrix();
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const auto x = nodes.coord(n);
    EXPECT_NEAR(sol.displacement.values[2 * n], e(0, 0) * x[0] + e(0, 1) * x[1], 1e-9);
    EXPECT_NEAR(sol.displacement.values[2 * n + 1], e(1, 0) * x[0] + e(1, 1) * x[1], 1e-9);
    EXPECT_LT((sol.strain.at(n) - bar).norm(), 1e-8);
  }
}

TEST(Fem, ZeroLoadGivesZeroDisplacement) {
  const Grid nodes = Grid::bounded({6, 6});
  const ModulusMaps m = gen_voronoi(nodes, 5, 0.3, 1, false);
  const FemSolution sol = solve_dirichlet(m.kappa, m.mu, SymTensor2(2));
  for (double v : sol.displacement.values) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(sol.strain.rms(), 0.0);
}

TEST(Fem, StiffnessSymmetricPositiveSemidefinite) {
  const Grid nodes = Grid::bounded({5, 6});
  const ModulusMaps m = gen_voronoi(nodes, 4, 0.5, 3, false);
  const auto ke = element_average(m.kappa);
  const auto me = element_average(m.mu);
  const Eigen::SparseMatrix<double> k = assemble_stiffness(nodes, ke, me);
  const Eigen::MatrixXd dense(k);
  EXPECT_LT((dense - dense.transpose()).cwiseAbs().maxCoeff(), 1e-13);
  std::mt19937 rng(7);
  std::normal_distribution<double> n;
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXd x(dense.rows());
    for (int i = 0; i < x.size(); ++i) x[i] = n(rng);
    EXPECT_GT(x.dot(dense * x), 0.0);
  }
  // rigid translation has zero energy
  Eigen::VectorXd tr = Eigen::VectorXd::Zero(dense.rows());
  for (int i = 0; i < tr.size(); i += 2) tr[i] = 1.0;
  EXPECT_NEAR(tr.dot(dense * tr), 0.0, 1e-12);
}

TEST(Fem, MeanStrainEqualsMacroStrain) {
  const Grid nodes = Grid::bounded({33, 33});
  const ModulusMaps m = gen_voronoi(nodes, 10, 0.1, 4, false);
  const SymTensor2 bar = load(0.0, 0.0, 0.5);
  const FemSolution sol = solve_dirichlet(m.kappa, m.mu, bar);
  // element-centroid mean is exact by the divergence theorem
  const auto es = element_shape(nodes);
  SymTensor2 acc(2);
  for (int e = 0; e < es[0] * es[1]; ++e) {
    for (int c = 0; c < 3; ++c) acc[c] += sol.element_strain[3 * e + c];
  }
  acc *= 1.0 / (es[0] * es[1]);
  EXPECT_LT((acc - bar).norm(), 1e-9);
  // nodal averaging weights boundary nodes differently: O(1/N)
  EXPECT_LT((sol.strain.mean() - bar).norm(), 2.0 * 0.1 / 32);
  EXPECT_LE(sol.residual, 1e-10);
}

TEST(Fem, ElementModuliOverload) {
  const Grid nodes = Grid::bounded({4, 4});
  std::vector<double> k(9, 1.0), mu(9, 1.0);
  const FemSolution sol = solve_dirichlet(nodes, k, mu, load(1.0, 1.0, 0.0));
  EXPECT_LT((sol.strain.mean() - SymTensor2::identity(2)).norm(), 1e-9);
  std::vector<double> short_k(8, 1.0);
  try {
    solve_dirichlet(nodes, short_k, mu, load(1.0, 1.0, 0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
  }
}

TEST(Fem, Errors) {
  const Grid g3 = Grid::bounded({3, 3, 3});
  try {
    solve_dirichlet(ScalarField(g3, 1.0), ScalarField(g3, 1.0), SymTensor2::identity(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedDimension);
  }
  const Grid g = Grid::bounded({4, 4});
  ScalarField bad(g, 1.0);
  bad[0] = 0.0;
  try {
    solve_dirichlet(bad, ScalarField(g, 1.0), SymTensor2::identity(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveModulus);
  }
}

TEST(NodalStrains, UniformCheckerboardAndLinear) {
  const Grid nodes = Grid::bounded({4, 3});
  const auto es = element_shape(nodes);
  const int ne = es[0] * es[1];
  std::vector<double> uni(3 * ne);
  for (int e = 0; e < ne; ++e) {
    uni[3 * e] = 0.1;
    uni[3 * e + 1] = 0.2;
    uni[3 * e + 2] = 0.3;
  }
  const TensorField u = nodal_strains(nodes, uni);
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    EXPECT_DOUBLE_EQ(u.point(n)[0], 0.1);
    EXPECT_DOUBLE_EQ(u.point(n)[2], 0.3);
  }

  std::vector<double> checker(3 * ne, 0.0);
  std::vector<double> linear(3 * ne, 0.0);
  for (int i = 0; i < es[0]; ++i) {
    for (int j = 0; j < es[1]; ++j) {
      const int e = i * es[1] + j;
      checker[3 * e] = (i + j) % 2 == 0 ? 1.0 : -1.0;
      linear[3 * e] = i;  // centroid x in element units minus 1/2
    }
  }
  const TensorField cb = nodal_strains(nodes, checker);
  const TensorField ln = nodal_strains(nodes, linear);
  // interior node (1, 1)
  EXPECT_DOUBLE_EQ(cb.point(nodes.ravel({1, 1, 0}))[0], 0.0);
  EXPECT_DOUBLE_EQ(ln.point(nodes.ravel({1, 1, 0}))[0], 0.5);
  EXPECT_DOUBLE_EQ(ln.point(nodes.ravel({2, 1, 0}))[0], 1.5);
  // corner keeps its single element value
  EXPECT_DOUBLE_EQ(cb.point(nodes.ravel({0, 0, 0}))[0], 1.0);
}

TEST(Fem, InteriorMatchesPeriodicAwayFromBoundary) {
  const int n = 48;
  const Grid nodes = Grid::bounded({n + 1, n + 1});
  const Grid cells = Grid::periodic({n, n});
  // Same smooth map sampled at element centres for both solvers.
  const ModulusMaps per = gen_smooth_aniso(cells, 1e-2, 5, {0.1, 0.1});
  std::vector<double> ke(n * n), me(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ke[i * n + j] = per.kappa[cells.ravel({i, j, 0})];
      me[i * n + j] = per.mu[cells.ravel({i, j, 0})];
    }
  }
  const SymTensor2 bar = SymTensor2::identity(2);
  const FemSolution fem = solve_dirichlet(nodes, ke, me, bar);
  auto [eps, report] = solve_ls(per.kappa, per.mu, bar, mean_reference(per.kappa, per.mu));
  double diff = 0.0, pert = 0.0;
  int count = 0;
  for (int i = n / 4; i < 3 * n / 4; ++i) {
    for (int j = n / 4; j < 3 * n / 4; ++j) {
      const int e = i * n + j;
      SymTensor2 fe(2);
      for (int c = 0; c < 3; ++c) fe[c] = fem.element_strain[3 * e + c];
      const SymTensor2 pe = eps.at(cells.ravel({i, j, 0}));
      diff += (fe - pe).norm();
      pert += (pe - bar).norm();
      ++count;
    }
  }
  // periodic and Dirichlet fields share the local response in the interior
  EXPECT_LT(diff / count, 0.5 * pert / count);
}
