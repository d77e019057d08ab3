#include "elastomap/oracles.hpp"

#include <cmath>

#include "elastomap/error.hpp"

namespace elastomap {

namespace {

void check_phases(const HSPhases& p) {
  check_dim(p.dim);
  if (!(p.f1 > 0.0 && p.f1 < 1.0)) throw Error(ErrorCode::ConfigError, "f1 must lie in (0, 1)");
  for (double v : {p.kappa1, p.kappa2, p.mu1, p.mu2}) {
    if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveModulus, "phase moduli must be positive");
  }
}

ModulusKind load_kind(const SymTensor2& eps_bar) {
  if (!(eps_bar.norm() > 0.0)) {
    throw Error(ErrorCode::ZeroMacroStrain, "macroscopic strain has zero norm");
  }
  if (is_spherical(eps_bar)) return ModulusKind::Bulk;
  if (is_deviatoric(eps_bar)) return ModulusKind::Shear;
  throw Error(ErrorCode::MixedMacroStrain,
              "macroscopic strain is neither purely spherical nor purely deviatoric");
}

}  // namespace

EshelbyCoeffs eshelby_coeffs(const ReferenceMedium& ref, Moduli inclusion) {
  ref.validate();
  if (!(inclusion.kappa > 0.0) || !(inclusion.mu > 0.0)) {
    throw Error(ErrorCode::NonPositiveModulus, "inclusion moduli must be positive");
  }
  const double d = ref.dim;
  EshelbyCoeffs c;
  c.theta0 = theta<double>(ref.dim, ref.kappa0, ref.mu0);
  c.kappa_s = (inclusion.kappa - ref.kappa0) / (inclusion.kappa + 2.0 * (d - 1.0) / d * ref.mu0);
  c.mu_s = (inclusion.mu - ref.mu0) / (inclusion.mu + c.theta0);
  return c;
}

SymTensor2 eshelby_interior(const ReferenceMedium& ref, Moduli inclusion,
                            const SymTensor2& eps_bar) {
  if (eps_bar.dim() != ref.dim) {
    throw Error(ErrorCode::DimensionMismatch, "strain dimension differs from the reference");
  }
  const EshelbyCoeffs c = eshelby_coeffs(ref, inclusion);
  const auto [sph, dv] = sph_dev_split(eps_bar);
  return (1.0 - c.kappa_s) * sph + (1.0 - c.mu_s) * dv;
}

bool is_spherical(const SymTensor2& t, double tol) {
  return dev(t).norm() <= tol * t.norm();
}

bool is_deviatoric(const SymTensor2& t, double tol) {
  return std::abs(t.trace()) <= tol * t.norm();
}

double eshelby_bulk_prefactor(const ReferenceMedium& ref) {
  const double d = ref.dim;
  return (d * ref.kappa0 + 2.0 * (d - 1.0) * ref.mu0) / d;
}

double eshelby_shear_prefactor(const ReferenceMedium& ref) {
  const double d = ref.dim;
  return (d + 2.0) * ref.mu0 * (d * ref.kappa0 + 2.0 * (d - 1.0) * ref.mu0) /
         (2.0 * d * (ref.kappa0 + 2.0 * ref.mu0));
}

double hs_bulk_prefactor(const ReferenceMedium& ref) { return 0.5 * eshelby_bulk_prefactor(ref); }

double hs_shear_prefactor(const ReferenceMedium& ref) {
  return 0.5 * eshelby_shear_prefactor(ref);
}

RecoveredModulus eshelby_first_order_check(const SymTensor2& interior, const SymTensor2& eps_bar,
                                           const ReferenceMedium& ref) {
  ref.validate();
  const ModulusKind kind = load_kind(eps_bar);
  const double n2 = ddot(eps_bar, eps_bar);
  if (kind == ModulusKind::Bulk) {
    const double ratio = interior.trace() * eps_bar.trace() / (ref.dim * n2);
    return {kind, ref.kappa0 + eshelby_bulk_prefactor(ref) * (1.0 - ratio)};
  }
  const double ratio = ddot(dev(interior), dev(eps_bar)) / n2;
  return {kind, ref.mu0 + eshelby_shear_prefactor(ref) * (1.0 - ratio)};
}

HSResult hs_effective(const HSPhases& p) {
  check_phases(p);
  const auto [k, m] = hs_moduli(p.f1, p.kappa1, p.kappa2, p.mu1, p.mu2, p.dim);
  HSResult r;
  r.kappa_eff = k;
  r.mu_eff = m;
  return r;
}

HSDerivatives hs_derivatives(const HSPhases& p) {
  check_phases(p);
  const double d = p.dim;
  const double f1 = p.f1;
  const double f2 = 1.0 - f1;
  const double k1 = p.kappa1;
  const double m1 = p.mu1;
  const double dk = p.kappa1 - p.kappa2;
  const double dm = p.mu1 - p.mu2;
  const double dkap = f2 * k1 + f1 * p.kappa2 + 2.0 * (d - 1.0) / d * m1;
  const double th = theta<double>(p.dim, k1, m1);
  const double dmu = f2 * m1 + f1 * p.mu2 + th;

  // theta1 = m1 N / (2d S) with N = d^2 k1 + 2(d+1)(d-2) m1, S = k1 + 2 m1.
  const double c = 2.0 * (d + 1.0) * (d - 2.0);
  const double n = d * d * k1 + c * m1;
  const double s = k1 + 2.0 * m1;
  const double dth_dk = m1 / (2.0 * d) * (d * d * s - n) / (s * s);
  const double dth_dm = (n + m1 * c) / (2.0 * d * s) - 2.0 * m1 * n / (2.0 * d * s * s);

  HSDerivatives g;
  g.dk_dk1 = f1 - f1 * f2 * (2.0 * dk / dkap - dk * dk * f2 / (dkap * dkap));
  g.dk_dm1 = f1 * f2 * dk * dk * (2.0 * (d - 1.0) / d) / (dkap * dkap);
  g.dm_dm1 = f1 - f1 * f2 * (2.0 * dm / dmu - dm * dm * (f2 + dth_dm) / (dmu * dmu));
  g.dm_dk1 = f1 * f2 * dm * dm * dth_dk / (dmu * dmu);
  return g;
}

HSResult hs_second_moments(const HSPhases& p, const SymTensor2& eps_bar) {
  if (eps_bar.dim() != p.dim) {
    throw Error(ErrorCode::DimensionMismatch, "strain dimension differs from the phases");
  }
  HSResult r = hs_effective(p);
  const HSDerivatives g = hs_derivatives(p);
  const double d = p.dim;
  const auto inv = strain_invariants(eps_bar);
  const double e0 = inv.hydrostatic * inv.hydrostatic;
  const double eq = inv.equivalent * inv.equivalent;
  r.eps0_sq = (e0 * g.dk_dk1 + 2.0 / (d * (d - 1.0)) * eq * g.dm_dk1) / p.f1;
  r.eqv_sq = (d * (d - 1.0) / 2.0 * e0 * g.dk_dm1 + eq * g.dm_dm1) / p.f1;
  return r;
}

RecoveredModulus hs_recover_moduli(const HSResult& moments, const SymTensor2& eps_bar,
                                   const ReferenceMedium& ref) {
  ref.validate();
  const ModulusKind kind = load_kind(eps_bar);
  const auto inv = strain_invariants(eps_bar);
  if (kind == ModulusKind::Bulk) {
    const double ratio = moments.eps0_sq / (inv.hydrostatic * inv.hydrostatic);
    return {kind, ref.kappa0 + hs_bulk_prefactor(ref) * (1.0 - ratio)};
  }
  const double ratio = moments.eqv_sq / (inv.equivalent * inv.equivalent);
  return {kind, ref.mu0 + hs_shear_prefactor(ref) * (1.0 - ratio)};
}

}  // namespace elastomap
