#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "elastomap/error.hpp"
#include "elastomap/tensor.hpp"

using namespace elastomap;

namespace {

SymTensor2 random_sym(int d, std::mt19937& rng) {
  std::normal_distribution<double> n;
  SymTensor2 t(d);
  for (int p = 0; p < mandel_size(d); ++p) t[p] = n(rng);
  return t;
}

}  // namespace

TEST(Mandel, SizesAndProjectorTraces) {
  EXPECT_EQ(mandel_size(2), 3);
  EXPECT_EQ(mandel_size(3), 6);
  const auto p2 = projector_dims(2);
  EXPECT_EQ(p2.n_J, 1);
  EXPECT_EQ(p2.n_K, 2);
  EXPECT_EQ(p2.n_I, 3);
  const auto p3 = projector_dims(3);
  EXPECT_EQ(p3.n_J, 1);
  EXPECT_EQ(p3.n_K, 5);
  EXPECT_THROW(projector_dims(4), Error);
}

TEST(Mandel, DoubleContractionMatchesIndexForm) {
  std::mt19937 rng(3);
  for (int d : {2, 3}) {
    for (int k = 0; k < 20; ++k) {
      const SymTensor2 a = random_sym(d, rng);
      const SymTensor2 b = random_sym(d, rng);
      const Matrix3 ma = a.to_matrix();
      const Matrix3 mb = b.to_matrix();
      EXPECT_NEAR(ddot(a, b), (ma.array() * mb.array()).sum(), 1e-13);
      EXPECT_NEAR((SymTensor2::from_matrix(ma) - a).norm(), 0.0, 1e-15);
    }
  }
}

TEST(Mandel, ShearSlotOrdering) {
  Matrix3 m = Matrix3::Zero(3, 3);
  m(1, 2) = m(2, 1) = 1.0;
  const SymTensor2 t = SymTensor2::from_matrix(m);
  EXPECT_NEAR(t[3], std::sqrt(2.0), 1e-15);
  EXPECT_EQ(mandel_indices(3, 3), std::make_pair(1, 2));
  EXPECT_EQ(mandel_indices(3, 4), std::make_pair(0, 2));
  EXPECT_EQ(mandel_indices(3, 5), std::make_pair(0, 1));
  EXPECT_EQ(mandel_indices(2, 2), std::make_pair(0, 1));
}

TEST(Projectors, IdempotentOrthogonalAndComplete) {
  for (int d : {2, 3}) {
    const MandelMatrix J = projector_J(d);
    const MandelMatrix K = projector_K(d);
    const MandelMatrix I = projector_I(d);
    EXPECT_LT((J * J - J).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((K * K - K).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((J * K).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((J + K - I).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(qdot(FullTensor4(d, J), FullTensor4(d, J)), 1.0, 1e-14);
    EXPECT_NEAR(qdot(FullTensor4(d, K), FullTensor4(d, K)), projector_dims(d).n_K, 1e-14);
  }
}

TEST(Projectors, IndexFormRoundTrip) {
  for (int d : {2, 3}) {
    const MandelMatrix J = projector_J(d);
    const auto idx = index_from_mandel(d, J);
    // J_ijkl = delta_ij delta_kl / d
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) {
        EXPECT_NEAR(idx[((i * d + i) * d + k) * d + k], 1.0 / d, 1e-15);
      }
    }
    EXPECT_LT((mandel_from_index(d, idx) - J).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(IsoTensor, ModuliAndComposition) {
  const IsoTensor4 l = IsoTensor4::from_moduli(2, 1.5, 0.7);
  EXPECT_DOUBLE_EQ(l.a, 3.0);
  EXPECT_DOUBLE_EQ(l.b, 1.4);
  EXPECT_DOUBLE_EQ(l.bulk(), 1.5);
  EXPECT_DOUBLE_EQ(l.shear(), 0.7);
  const IsoTensor4 c = l.compose(IsoTensor4{2, 0.5, 2.0});
  EXPECT_DOUBLE_EQ(c.a, 1.5);
  EXPECT_DOUBLE_EQ(c.b, 2.8);
  const MandelMatrix dense = l.to_mandel() * IsoTensor4{2, 0.5, 2.0}.to_mandel();
  EXPECT_LT((dense - c.to_mandel()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(IsoTensor, ApplyMatchesDense) {
  std::mt19937 rng(11);
  for (int d : {2, 3}) {
    const IsoTensor4 l{d, 2.3, 0.9};
    const SymTensor2 t = random_sym(d, rng);
    const SymTensor2 a = iso_apply(l, t);
    const SymTensor2 b = FullTensor4(l).apply(t);
    EXPECT_LT((a - b).norm(), 1e-14);
  }
}

TEST(IsoProject, IsotropicInputHasZeroRemainder) {
  const FullTensor4 a(IsoTensor4{3, 2.0, 5.0});
  const IsoProjection p = iso_project(a);
  EXPECT_NEAR(p.iso.a, 2.0, 1e-14);
  EXPECT_NEAR(p.iso.b, 5.0, 1e-14);
  EXPECT_LT(p.orth.mandel().cwiseAbs().maxCoeff(), 1e-14);
}

TEST(IsoProject, RemainderOrthogonalToProjectors) {
  std::mt19937 rng(5);
  std::normal_distribution<double> n;
  for (int d : {2, 3}) {
    const int m = mandel_size(d);
    MandelMatrix r(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) r(i, j) = n(rng);
    r = 0.5 * (r + r.transpose()).eval();
    const IsoProjection p = iso_project(FullTensor4(d, r));
    EXPECT_NEAR(qdot(p.orth, FullTensor4(d, projector_J(d))), 0.0, 1e-13);
    EXPECT_NEAR(qdot(p.orth, FullTensor4(d, projector_K(d))), 0.0, 1e-13);
  }
}

TEST(Invariants, HydrostaticAndEquivalent) {
  const SymTensor2 i2 = SymTensor2::identity(2);
  const auto inv = strain_invariants(i2);
  EXPECT_DOUBLE_EQ(inv.hydrostatic, 1.0);
  EXPECT_NEAR(inv.equivalent, 0.0, 1e-16);
  SymTensor2 s(2);
  s[0] = 1.0;
  s[1] = -1.0;
  // dev:dev = 2, (d-1)/d = 1/2
  EXPECT_NEAR(strain_invariants(s).equivalent, 1.0, 1e-15);
  EXPECT_NEAR(strain_invariants(s).hydrostatic, 0.0, 1e-16);
}

TEST(Invariants, SquaresMatchProjectorForm) {
  std::mt19937 rng(8);
  for (int d : {2, 3}) {
    const SymTensor2 e = random_sym(d, rng);
    const auto inv = strain_invariants(e);
    const double jj = e.comps().dot(projector_J(d) * e.comps());
    const double kk = e.comps().dot(projector_K(d) * e.comps());
    EXPECT_NEAR(inv.hydrostatic * inv.hydrostatic, jj / d, 1e-13);
    EXPECT_NEAR(inv.equivalent * inv.equivalent, (d - 1.0) / d * kk, 1e-13);
  }
}

TEST(ParallelDecompose, PythagorasAndZeroLoad) {
  std::mt19937 rng(2);
  const SymTensor2 bar = random_sym(3, rng);
  const SymTensor2 e = random_sym(3, rng);
  const ParallelParts p = parallel_decompose(e, bar);
  EXPECT_NEAR(p.parallel * p.parallel + p.perpendicular * p.perpendicular, ddot(e, e), 1e-13);
  const ParallelParts q = parallel_decompose(2.0 * bar, bar);
  EXPECT_NEAR(q.perpendicular, 0.0, 1e-14);
  EXPECT_NEAR(q.parallel, 2.0 * bar.norm(), 1e-14);
  try {
    parallel_decompose(e, SymTensor2(3));
    FAIL() << "expected ZeroMacroStrain";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::ZeroMacroStrain);
  }
}

TEST(SymDyad, SymmetrizesOuterProduct) {
  Eigen::VectorXd a(2), b(2);
  a << 1.0, 0.0;
  b << 0.0, 1.0;
  const SymTensor2 t = SymTensor2::sym_dyad(a, b);
  EXPECT_NEAR(t[0], 0.0, 1e-16);
  EXPECT_NEAR(t[2], 0.5 * std::sqrt(2.0), 1e-15);
}

TEST(FullTensor, MajorSymmetry) {
  FullTensor4 a(IsoTensor4{2, 1.0, 1.0});
  EXPECT_TRUE(a.has_major_symmetry(1e-15));
  a.mandel()(0, 1) += 1e-3;
  EXPECT_FALSE(a.has_major_symmetry(1e-6));
}

TEST(Errors, DimensionMismatchOnMixedOperands) {
  try {
    ddot(SymTensor2(2), SymTensor2(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}
