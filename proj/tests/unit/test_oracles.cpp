#include <gtest/gtest.h>

#include <cmath>

#include "elastomap/error.hpp"
#include "elastomap/oracles.hpp"

using namespace elastomap;

namespace {

SymTensor2 dev_load(int d) { return make_load_basis(Projector::K, d).strains.back(); }

}  // namespace

TEST(Eshelby, CoefficientsAndInteriorStrain) {
  const ReferenceMedium r3{3, 1.0, 1.0};
  const EshelbyCoeffs c = eshelby_coeffs(r3, {1.1, 1.0});
  EXPECT_NEAR(c.kappa_s, 0.1 / (1.1 + 4.0 / 3.0), 1e-15);
  EXPECT_NEAR(c.kappa_s, 0.0410958904109589, 1e-15);
  EXPECT_EQ(c.mu_s, 0.0);
  const SymTensor2 e = eshelby_interior(r3, {1.1, 1.0}, SymTensor2::identity(3));
  EXPECT_NEAR(e[0], 0.958904109589041, 1e-15);
  EXPECT_NEAR(dev(e).norm(), 0.0, 1e-15);
  EXPECT_NEAR(eshelby_coeffs({2, 1.0, 1.0}, {1.0, 1.0}).theta0, 1.0 / 3.0, 1e-15);
}

TEST(Eshelby, ZeroContrastIdentity) {
  const ReferenceMedium r{2, 1.3, 0.4};
  const SymTensor2 bar = dev_load(2) + SymTensor2::identity(2);
  const SymTensor2 e = eshelby_interior(r, {1.3, 0.4}, bar);
  EXPECT_LT((e - bar).norm(), 1e-16);
  const EshelbyCoeffs c = eshelby_coeffs(r, {1.3, 0.5});
  EXPECT_EQ(c.kappa_s, 0.0);
  EXPECT_GT(c.mu_s, 0.0);
}

TEST(Eshelby, FirstOrderCheckValuesAndScaling) {
  const ReferenceMedium r3{3, 1.0, 1.0};
  const SymTensor2 i3 = SymTensor2::identity(3);
  const RecoveredModulus k =
      eshelby_first_order_check(eshelby_interior(r3, {1.1, 1.0}, i3), i3, r3);
  EXPECT_EQ(k.kind, ModulusKind::Bulk);
  EXPECT_NEAR(k.value, 1.0 + 7.0 / 3.0 * 0.0410958904109589, 1e-14);
  EXPECT_NEAR(std::abs(k.value - 1.1), 4.1e-3, 1e-4);

  for (int d : {2, 3}) {
    const ReferenceMedium r{d, 1.0, 1.0};
    for (Projector p : {Projector::J, Projector::K}) {
      const SymTensor2 bar = p == Projector::J ? SymTensor2::identity(d) : dev_load(d);
      double err[2];
      int i = 0;
      for (double delta : {1e-2, 1e-3}) {
        const Moduli inc = p == Projector::J ? Moduli{1.0 + delta, 1.0} : Moduli{1.0, 1.0 + delta};
        const double truth = p == Projector::J ? inc.kappa : inc.mu;
        const RecoveredModulus rec =
            eshelby_first_order_check(eshelby_interior(r, inc, bar), bar, r);
        err[i++] = std::abs(rec.value - truth);
      }
      EXPECT_NEAR(err[0] / err[1], 100.0, 2.0);
    }
  }
}

TEST(Eshelby, MixedLoadRejected) {
  const ReferenceMedium r{2, 1.0, 1.0};
  const SymTensor2 mixed = SymTensor2::identity(2) + dev_load(2);
  try {
    eshelby_first_order_check(mixed, mixed, r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MixedMacroStrain);
  }
}

TEST(Eshelby, PrefactorsMatchGreenCoefficients) {
  for (int d : {2, 3}) {
    for (double k0 : {0.5, 1.0, 2.7}) {
      for (double m0 : {0.3, 1.0, 1.9}) {
        const ReferenceMedium r{d, k0, m0};
        const auto n = projector_dims(d);
        EXPECT_NEAR(eshelby_bulk_prefactor(r), n.n_J * inverse_lambda_J(r) / d, 1e-13);
        EXPECT_NEAR(eshelby_shear_prefactor(r), n.n_K * inverse_lambda_K(r) / 2.0, 1e-13);
        EXPECT_NEAR(hs_bulk_prefactor(r), n.n_J * inverse_lambda_J(r) / (2.0 * d), 1e-13);
        EXPECT_NEAR(hs_shear_prefactor(r), n.n_K * inverse_lambda_K(r) / 4.0, 1e-13);
      }
    }
  }
}

TEST(HashinShtrikman, EffectiveModuli) {
  const HSResult r = hs_effective({0.5, 0.95, 1.05, 1.0, 1.0, 3});
  EXPECT_NEAR(r.kappa_eff, 1.0 - 0.25 * 0.01 / (1.0 + 4.0 / 3.0), 1e-15);
  EXPECT_NEAR(r.kappa_eff, 0.99892857142857143, 1e-15);
  EXPECT_NEAR(r.mu_eff, 1.0, 1e-15);
  const HSResult same = hs_effective({0.3, 1.2, 1.2, 0.7, 0.7, 2});
  EXPECT_NEAR(same.kappa_eff, 1.2, 1e-15);
  const HSResult dilute = hs_effective({1e-9, 0.5, 2.0, 1.0, 1.5, 2});
  EXPECT_NEAR(dilute.kappa_eff, 2.0, 1e-8);
  // bounded by the phases
  const HSResult mid = hs_effective({0.4, 0.8, 1.3, 0.6, 1.4, 3});
  EXPECT_GT(mid.kappa_eff, 0.8);
  EXPECT_LT(mid.kappa_eff, 1.3);
  EXPECT_GT(mid.mu_eff, 0.6);
  EXPECT_LT(mid.mu_eff, 1.4);
}

TEST(HashinShtrikman, DerivativesMatchCentralDifferences) {
  for (int d : {2, 3}) {
    for (double f1 : {0.3, 0.5, 0.8}) {
      for (double delta : {0.1, 0.3}) {
        const auto [k1, k2] = hs_phase_moduli(1.0, delta, f1);
        const auto [m1, m2] = hs_phase_moduli(1.2, 0.7 * delta, f1);
        const HSDerivatives g = hs_derivatives({f1, k1, k2, m1, m2, d});
        using L = long double;
        auto fd = [&](int which, bool kappa_out) {
          const L base = which == 0 ? L(k1) : L(m1);
          const L h = L(1e-6) * base;
          auto eval = [&](L t) {
            const auto [k, m] = which == 0 ? hs_moduli<L>(f1, t, k2, m1, m2, d)
                                           : hs_moduli<L>(f1, k1, k2, t, m2, d);
            return kappa_out ? k : m;
          };
          return static_cast<double>((eval(base + h) - eval(base - h)) / (L(2) * h));
        };
        EXPECT_NEAR(g.dk_dk1, fd(0, true), 1e-8 * std::abs(g.dk_dk1));
        EXPECT_NEAR(g.dk_dm1, fd(1, true), 1e-8 * std::abs(g.dk_dm1));
        EXPECT_NEAR(g.dm_dk1, fd(0, false), 1e-8 * std::abs(g.dm_dk1));
        EXPECT_NEAR(g.dm_dm1, fd(1, false), 1e-8 * std::abs(g.dm_dm1));
      }
    }
  }
}

TEST(HashinShtrikman, SecondMomentsHomogeneous) {
  const SymTensor2 bar = SymTensor2::identity(3) + dev_load(3);
  const HSResult r = hs_second_moments({0.4, 1.1, 1.1, 0.8, 0.8, 3}, bar);
  const auto inv = strain_invariants(bar);
  EXPECT_NEAR(r.eps0_sq, inv.hydrostatic * inv.hydrostatic, 1e-14);
  EXPECT_NEAR(r.eqv_sq, inv.equivalent * inv.equivalent, 1e-14);
}

TEST(HashinShtrikman, SphericalLoadSuppressesEquivalentMoment) {
  for (double delta : {1e-2, 1e-3}) {
    const auto [k1, k2] = hs_phase_moduli(1.0, delta, 0.5);
    const HSResult r = hs_second_moments({0.5, k1, k2, 1.0, 1.0, 2}, SymTensor2::identity(2));
    EXPECT_LT(r.eqv_sq, delta * delta);
  }
}

TEST(HashinShtrikman, RecoveryChain) {
  const ReferenceMedium r3{3, 1.0, 1.0};
  const auto [k1, k2] = hs_phase_moduli(1.0, 0.01, 0.5);
  const HSResult m = hs_second_moments({0.5, k1, k2, 1.0, 1.0, 3}, SymTensor2::identity(3));
  const RecoveredModulus rec = hs_recover_moduli(m, SymTensor2::identity(3), r3);
  EXPECT_EQ(rec.kind, ModulusKind::Bulk);
  EXPECT_LE(std::abs(rec.value - k1), 1e-4);

  for (int d : {2, 3}) {
    const ReferenceMedium r{d, 1.0, 1.0};
    for (double f1 : {0.3, 0.5}) {
      double ek[2], em[2];
      int i = 0;
      for (double delta : {1e-2, 1e-3}) {
        const auto [a1, a2] = hs_phase_moduli(1.0, delta, f1);
        const HSResult bulk = hs_second_moments({f1, a1, a2, 1.0, 1.0, d}, SymTensor2::identity(d));
        ek[i] = std::abs(hs_recover_moduli(bulk, SymTensor2::identity(d), r).value - a1);
        const HSResult shear = hs_second_moments({f1, 1.0, 1.0, a1, a2, d}, dev_load(d));
        const RecoveredModulus rs = hs_recover_moduli(shear, dev_load(d), r);
        EXPECT_EQ(rs.kind, ModulusKind::Shear);
        em[i] = std::abs(rs.value - a1);
        ++i;
      }
      EXPECT_GE(ek[0] / ek[1], 50.0);
      EXPECT_LE(ek[0] / ek[1], 200.0);
      EXPECT_GE(em[0] / em[1], 50.0);
      EXPECT_LE(em[0] / em[1], 200.0);
    }
  }
}

TEST(HashinShtrikman, ZeroContrastRecoveryIsExact) {
  const ReferenceMedium r{2, 1.0, 1.0};
  const HSResult m = hs_second_moments({0.5, 1.0, 1.0, 1.0, 1.0, 2}, SymTensor2::identity(2));
  EXPECT_NEAR(hs_recover_moduli(m, SymTensor2::identity(2), r).value, 1.0, 1e-15);
}

TEST(HashinShtrikman, InvalidInputs) {
  EXPECT_THROW(hs_effective({0.0, 1.0, 1.0, 1.0, 1.0, 2}), Error);
  try {
    hs_effective({0.5, -1.0, 1.0, 1.0, 1.0, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveModulus);
  }
  const SymTensor2 mixed = SymTensor2::identity(2) + dev_load(2);
  try {
    hs_recover_moduli({}, mixed, {2, 1.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MixedMacroStrain);
  }
}
