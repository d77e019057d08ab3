#pragma once

// Periodic Green tensor of an isotropic reference medium in Fourier space and
// its split into a frequency-independent isotropic part plus a remainder
// orthogonal to J and K.

#include <span>

#include "elastomap/tensor.hpp"

namespace elastomap {

struct ReferenceMedium {
  int dim = 2;
  double kappa0 = 1.0;
  double mu0 = 1.0;

  /// Throws NonPositiveModulus / UnsupportedDimension.
  void validate() const;
  /// L0 = d kappa0 J + 2 mu0 K.
  IsoTensor4 stiffness() const { return IsoTensor4::from_moduli(dim, kappa0, mu0); }
};

struct GreenCoefficients {
  double alpha0;
  double beta0;
  double lambdaJ;  // Gamma^(xi) :: J, any xi != 0
  double lambdaK;  // Gamma^(xi) :: K, any xi != 0
};

GreenCoefficients green_coeffs(const ReferenceMedium& ref);

/// 1/lambda_J = d kappa0 + 2(d-1) mu0.
double inverse_lambda_J(const ReferenceMedium& ref);
/// 1/lambda_K = 2 mu0 (d kappa0 + 2(d-1) mu0) / (d (d-1) (kappa0 + 2 mu0)).
double inverse_lambda_K(const ReferenceMedium& ref);

/// Gamma0_iso = lambda_J/n_J J + lambda_K/n_K K.
IsoTensor4 green_iso(const ReferenceMedium& ref);

/// Dense Mandel assembly of Gamma^0(xi) at an integer reciprocal-lattice
/// point. Returns the zero tensor for xi = 0.
FullTensor4 green_hat(std::span<const int> xi, const ReferenceMedium& ref);
FullTensor4 green_hat(std::span<const double> xi, const ReferenceMedium& ref);

/// Gamma^0(xi) - Gamma0_iso. Throws ZeroFrequency for xi = 0.
FullTensor4 green_orthogonal(std::span<const int> xi, const ReferenceMedium& ref);

/// Direct contraction out = Gamma^0(xi) : tau on Mandel components, without
/// forming the matrix. Scalar may be real or complex. xi must be nonzero.
template <class Scalar>
void green_contract(int dim, const double* xi, const GreenCoefficients& g, const Scalar* tau,
                    Scalar* out) {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  constexpr double kSqrt2 = 1.41421356237309504880;
  double xi2 = 0.0;
  for (int a = 0; a < dim; ++a) xi2 += xi[a] * xi[a];
  // v = tau . xi with tau in index form.
  Scalar v[3];
  if (dim == 2) {
    const Scalar t12 = tau[2] * kInvSqrt2;
    v[0] = tau[0] * xi[0] + t12 * xi[1];
    v[1] = t12 * xi[0] + tau[1] * xi[1];
  } else {
    const Scalar t23 = tau[3] * kInvSqrt2, t13 = tau[4] * kInvSqrt2, t12 = tau[5] * kInvSqrt2;
    v[0] = tau[0] * xi[0] + t12 * xi[1] + t13 * xi[2];
    v[1] = t12 * xi[0] + tau[1] * xi[1] + t23 * xi[2];
    v[2] = t13 * xi[0] + t23 * xi[1] + tau[2] * xi[2];
  }
  Scalar xv = Scalar(0);
  for (int a = 0; a < dim; ++a) xv += xi[a] * v[a];
  const double c1 = 2.0 * g.alpha0 / xi2;
  const Scalar c2 = (g.beta0 / (xi2 * xi2)) * xv;
  // out_ij = c1 (xi_i v_j + v_i xi_j) + c2 xi_i xi_j
  auto entry = [&](int i, int j) { return c1 * (xi[i] * v[j] + v[i] * xi[j]) + c2 * (xi[i] * xi[j]); };
  if (dim == 2) {
    out[0] = entry(0, 0);
    out[1] = entry(1, 1);
    out[2] = kSqrt2 * entry(0, 1);
  } else {
    out[0] = entry(0, 0);
    out[1] = entry(1, 1);
    out[2] = entry(2, 2);
    out[3] = kSqrt2 * entry(1, 2);
    out[4] = kSqrt2 * entry(0, 2);
    out[5] = kSqrt2 * entry(0, 1);
  }
}

}  // namespace elastomap
