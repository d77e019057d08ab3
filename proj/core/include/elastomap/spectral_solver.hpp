#pragma once

// Periodic forward solver: basic fixed-point iteration on the
// Lippmann-Schwinger equation eps = eps_bar - Gamma0 (dL : eps), with
// Gamma0 applied frequency-wise through discrete Fourier transforms.

#include <optional>
#include <utility>
#include <vector>

#include "elastomap/fft.hpp"
#include "elastomap/green.hpp"
#include "elastomap/grid.hpp"

namespace elastomap {

struct SolveReport {
  int iterations = 0;
  std::vector<double> residual_history;
  bool converged = false;
  double equilibrium_residual = 0.0;
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 10000;
  /// Defaults to the spatial means of the moduli when empty.
  std::optional<ReferenceMedium> ref;
};

/// Reference medium built from the spatial means of the moduli fields.
ReferenceMedium mean_reference(const ScalarField& kappa, const ScalarField& mu);

// Reusable Gamma0 application on a fixed grid (owns the FFT plans).
class GreenOperator {
 public:
  GreenOperator(const Grid& grid, const ReferenceMedium& ref);

  const ReferenceMedium& reference() const noexcept { return ref_; }
  void apply(const TensorField& tau, TensorField& out);
  TensorField apply(const TensorField& tau);

 private:
  Grid grid_;
  ReferenceMedium ref_;
  GreenCoefficients coeffs_;
  FourierTransform fft_;
};

/// Gamma0 tau: zero-mean compatible strain field.
TensorField apply_green(const TensorField& tau, const ReferenceMedium& ref);

/// Polarization dL(x) : eps(x) with dL = d dkappa J + 2 dmu K.
TensorField polarization(const ScalarField& kappa, const ScalarField& mu, const TensorField& eps,
                         const ReferenceMedium& ref);

/// Stress sigma(x) = L(x) : eps(x).
TensorField stress(const ScalarField& kappa, const ScalarField& mu, const TensorField& eps);

/// Relative equilibrium defect of the stress of eps:
/// sqrt(sum_xi |sigma^(xi) . xi/|xi||^2) / rms(sigma), skipping xi = 0 and
/// Nyquist planes.
double equilibrium_residual(const ScalarField& kappa, const ScalarField& mu, const TensorField& eps);

/// Throws NotConverged when max_iter is hit, NonPositiveModulus on bad input.
std::pair<TensorField, SolveReport> solve_ls(const ScalarField& kappa, const ScalarField& mu,
                                             const SymTensor2& eps_bar, const ReferenceMedium& ref,
                                             double tol = 1e-10, int max_iter = 10000);

/// eps_bar - Gamma0 (dL : eps_bar).
TensorField first_order_strain(const ScalarField& kappa, const ScalarField& mu,
                               const SymTensor2& eps_bar, const ReferenceMedium& ref);

/// Effective tensor from n_I independent unit loads, <sigma> = L~ : eps_bar.
FullTensor4 homogenize(const ScalarField& kappa, const ScalarField& mu,
                       const SolverOptions& opts = {});

/// L0 + <dL> - <dL : Gamma0 dL>, the quadratic term summed in Fourier space.
FullTensor4 second_order_homogenize(const ScalarField& kappa, const ScalarField& mu,
                                    const ReferenceMedium& ref);

}  // namespace elastomap
