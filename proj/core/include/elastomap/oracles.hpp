#pragma once

// Closed-form reference solutions: uniform interior strain of a ball
// inclusion in an infinite matrix, and two-phase Hashin-Shtrikman moduli with
// the phase-1 strain second moments obtained from their derivatives.

#include <utility>

#include "elastomap/green.hpp"
#include "elastomap/microstructure.hpp"
#include "elastomap/reconstruction.hpp"

namespace elastomap {

/// theta(kappa, mu) = mu (d^2 kappa + 2(d+1)(d-2) mu) / (2d (kappa + 2 mu)).
template <class T>
T theta(int dim, T kappa, T mu) {
  const T d = dim;
  return mu * (d * d * kappa + T(2) * (d + T(1)) * (d - T(2)) * mu) /
         (T(2) * d * (kappa + T(2) * mu));
}

struct EshelbyCoeffs {
  double kappa_s = 0.0;
  double mu_s = 0.0;
  double theta0 = 0.0;
};

EshelbyCoeffs eshelby_coeffs(const ReferenceMedium& ref, Moduli inclusion);

/// [(1 - kappa_s) J + (1 - mu_s) K] : eps_bar.
SymTensor2 eshelby_interior(const ReferenceMedium& ref, Moduli inclusion,
                            const SymTensor2& eps_bar);

struct RecoveredModulus {
  ModulusKind kind = ModulusKind::Bulk;
  double value = 0.0;
};

/// Load-type classification with relative tolerance on the other part.
bool is_spherical(const SymTensor2& t, double tol = 1e-12);
bool is_deviatoric(const SymTensor2& t, double tol = 1e-12);

/// First-order inversion of a uniform inclusion strain. Bulk branch for a
/// spherical load, shear branch for a deviatoric one; MixedMacroStrain
/// otherwise.
RecoveredModulus eshelby_first_order_check(const SymTensor2& interior, const SymTensor2& eps_bar,
                                           const ReferenceMedium& ref);

/// (d kappa0 + 2(d-1) mu0)/d.
double eshelby_bulk_prefactor(const ReferenceMedium& ref);
/// (d+2) mu0 (d kappa0 + 2(d-1) mu0) / (2d (kappa0 + 2 mu0)).
double eshelby_shear_prefactor(const ReferenceMedium& ref);
/// Halves of the two above, used with squared strain ratios.
double hs_bulk_prefactor(const ReferenceMedium& ref);
double hs_shear_prefactor(const ReferenceMedium& ref);

struct HSPhases {
  double f1 = 0.5;
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double mu1 = 1.0;
  double mu2 = 1.0;
  int dim = 2;
};

struct HSDerivatives {
  double dk_dk1 = 0.0;  // d kappa~ / d kappa1
  double dk_dm1 = 0.0;  // d kappa~ / d mu1
  double dm_dk1 = 0.0;  // d mu~ / d kappa1
  double dm_dm1 = 0.0;  // d mu~ / d mu1
};

struct HSResult {
  double kappa_eff = 0.0;
  double mu_eff = 0.0;
  /// <eps0^2>_1 and <eps_eq^2>_1, zero unless filled by hs_second_moments.
  double eps0_sq = 0.0;
  double eqv_sq = 0.0;
};

/// (kappa~, mu~) from the two-phase bounds; any floating type so derivative
/// checks can run in extended precision.
template <class T>
std::pair<T, T> hs_moduli(T f1, T kappa1, T kappa2, T mu1, T mu2, int dim) {
  const T d = dim;
  const T f2 = T(1) - f1;
  const T dk = kappa1 - kappa2;
  const T dm = mu1 - mu2;
  const T dkap = f2 * kappa1 + f1 * kappa2 + T(2) * (d - T(1)) / d * mu1;
  const T dmu = f2 * mu1 + f1 * mu2 + theta<T>(dim, kappa1, mu1);
  return {f1 * kappa1 + f2 * kappa2 - f1 * f2 * dk * dk / dkap,
          f1 * mu1 + f2 * mu2 - f1 * f2 * dm * dm / dmu};
}

HSResult hs_effective(const HSPhases& p);
HSDerivatives hs_derivatives(const HSPhases& p);
/// Effective moduli plus the phase-1 second moments under eps_bar.
HSResult hs_second_moments(const HSPhases& p, const SymTensor2& eps_bar);

/// Phase-1 modulus from its second moment: bulk for a spherical load, shear
/// for a deviatoric one.
RecoveredModulus hs_recover_moduli(const HSResult& moments, const SymTensor2& eps_bar,
                                   const ReferenceMedium& ref);

}  // namespace elastomap
