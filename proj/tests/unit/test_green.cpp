#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <complex>
#include <random>

#include "elastomap/error.hpp"
#include "elastomap/green.hpp"

using namespace elastomap;

namespace {

FullTensor4 gamma_at(std::initializer_list<int> xi, const ReferenceMedium& ref) {
  std::vector<int> v(xi);
  return green_hat(std::span<const int>(v), ref);
}

}  // namespace

TEST(GreenCoeffs, UnitReferenceTwoD) {
  const GreenCoefficients g = green_coeffs({2, 1.0, 1.0});
  EXPECT_NEAR(g.alpha0, 0.25, 1e-15);
  EXPECT_NEAR(g.beta0, -0.5, 1e-15);
  EXPECT_NEAR(g.lambdaJ, 0.25, 1e-15);
  EXPECT_NEAR(g.lambdaK, 0.75, 1e-15);
  EXPECT_NEAR(inverse_lambda_J({2, 1.0, 1.0}), 4.0, 1e-14);
  EXPECT_NEAR(inverse_lambda_K({2, 1.0, 1.0}), 4.0 / 3.0, 1e-14);
}

TEST(GreenCoeffs, UnitReferenceThreeD) {
  const GreenCoefficients g = green_coeffs({3, 1.0, 1.0});
  EXPECT_NEAR(g.beta0, -4.0 / 7.0, 1e-15);
  EXPECT_NEAR(g.lambdaJ, 1.0 / 7.0, 1e-15);
  EXPECT_NEAR(g.lambdaK, 9.0 / 7.0, 1e-15);
}

TEST(GreenCoeffs, ClosedFormInversesAgree) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.2, 5.0);
  for (int d : {2, 3}) {
    for (int k = 0; k < 50; ++k) {
      const ReferenceMedium ref{d, u(rng), u(rng)};
      const GreenCoefficients g = green_coeffs(ref);
      EXPECT_NEAR(g.lambdaJ * inverse_lambda_J(ref), 1.0, 1e-13);
      EXPECT_NEAR(g.lambdaK * inverse_lambda_K(ref), 1.0, 1e-13);
    }
  }
}

TEST(GreenCoeffs, RejectsBadReference) {
  try {
    green_coeffs({2, 1.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveModulus);
  }
  EXPECT_THROW(green_coeffs({4, 1.0, 1.0}), Error);
}

TEST(GreenHat, ZeroFrequencyIsZero) {
  const FullTensor4 g = gamma_at({0, 0}, {2, 1.0, 1.0});
  EXPECT_EQ(g.mandel().cwiseAbs().maxCoeff(), 0.0);
  const std::array<int, 2> z{0, 0};
  try {
    green_orthogonal(z, {2, 1.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroFrequency);
  }
}

TEST(GreenHat, ProjectionsOnJAndKAtUnitReference) {
  // Gamma::J = 0.25 and Gamma::K = 0.75, so the isotropic coefficients are
  // (0.25 / n_J, 0.75 / n_K) = (0.25, 0.375).
  const ReferenceMedium ref{2, 1.0, 1.0};
  const FullTensor4 g = gamma_at({1, 0}, ref);
  EXPECT_NEAR(qdot(g, FullTensor4(2, projector_J(2))), 0.25, 1e-15);
  EXPECT_NEAR(qdot(g, FullTensor4(2, projector_K(2))), 0.75, 1e-15);
  const IsoProjection p = iso_project(g);
  EXPECT_NEAR(p.iso.a, 0.25, 1e-15);
  EXPECT_NEAR(p.iso.b, 0.375, 1e-15);
  const IsoTensor4 iso = green_iso(ref);
  EXPECT_NEAR(iso.a, 0.25, 1e-15);
  EXPECT_NEAR(iso.b, 0.375, 1e-15);
}

TEST(GreenHat, DegreeZeroHomogeneousAndSymmetric) {
  const ReferenceMedium ref{3, 1.3, 0.6};
  const FullTensor4 a = gamma_at({1, -2, 3}, ref);
  const FullTensor4 b = gamma_at({3, -6, 9}, ref);
  const FullTensor4 c = gamma_at({-1, 2, -3}, ref);
  EXPECT_LT((a.mandel() - b.mandel()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((a.mandel() - c.mandel()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_TRUE(a.has_major_symmetry(1e-15));
}

TEST(GreenHat, ProjectorIdentity) {
  // Gamma L0 Gamma = Gamma for every nonzero frequency.
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> u(-9, 9);
  for (int d : {2, 3}) {
    const ReferenceMedium ref{d, 1.7, 0.8};
    const MandelMatrix l0 = ref.stiffness().to_mandel();
    for (int k = 0; k < 30; ++k) {
      std::vector<int> xi(d);
      for (auto& v : xi) v = u(rng);
      if (std::all_of(xi.begin(), xi.end(), [](int v) { return v == 0; })) xi[0] = 1;
      const MandelMatrix g = green_hat(std::span<const int>(xi), ref).mandel();
      EXPECT_LT((g * l0 * g - g).cwiseAbs().maxCoeff(), 1e-13);
    }
  }
}

TEST(GreenHat, OrthogonalPartHasNoIsotropicComponent) {
  const ReferenceMedium ref{3, 1.0, 2.0};
  const std::array<int, 3> xi{2, 1, -1};
  const FullTensor4 o = green_orthogonal(xi, ref);
  EXPECT_NEAR(qdot(o, FullTensor4(3, projector_J(3))), 0.0, 1e-14);
  EXPECT_NEAR(qdot(o, FullTensor4(3, projector_K(3))), 0.0, 1e-14);
}

TEST(GreenContract, MatchesDenseAssemblyRealAndComplex) {
  std::mt19937 rng(9);
  std::normal_distribution<double> n;
  for (int d : {2, 3}) {
    const ReferenceMedium ref{d, 0.9, 1.4};
    const GreenCoefficients gc = green_coeffs(ref);
    const int m = mandel_size(d);
    for (int k = 0; k < 20; ++k) {
      double xi[3] = {n(rng), n(rng), n(rng)};
      const MandelMatrix g = green_hat(std::span<const double>(xi, d), ref).mandel();
      std::complex<double> tau[6], out[6];
      Eigen::VectorXcd tv(m);
      for (int p = 0; p < m; ++p) tv[p] = tau[p] = {n(rng), n(rng)};
      green_contract(d, xi, gc, tau, out);
      const Eigen::VectorXcd want = g.cast<std::complex<double>>() * tv;
      for (int p = 0; p < m; ++p) EXPECT_LT(std::abs(out[p] - want[p]), 1e-13);
    }
  }
}
