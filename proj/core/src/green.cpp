#include "elastomap/green.hpp"

#include <array>
#include <vector>

#include "elastomap/error.hpp"

namespace elastomap {

void ReferenceMedium::validate() const {
  check_dim(dim);
  if (!(kappa0 > 0.0) || !(mu0 > 0.0)) {
    throw Error(ErrorCode::NonPositiveModulus, "reference moduli must be positive");
  }
}

GreenCoefficients green_coeffs(const ReferenceMedium& ref) {
  ref.validate();
  const double d = ref.dim;
  const double k0 = ref.kappa0;
  const double m0 = ref.mu0;
  GreenCoefficients g{};
  g.alpha0 = 1.0 / (4.0 * m0);
  g.beta0 = -(d * k0 + (d - 2.0) * m0) / (m0 * (d * k0 + 2.0 * (d - 1.0) * m0));
  g.lambdaJ = (4.0 * g.alpha0 + g.beta0) / d;
  g.lambdaK = ((2.0 * d * (d + 1.0) - 4.0) * g.alpha0 + (d - 1.0) * g.beta0) / d;
  return g;
}

double inverse_lambda_J(const ReferenceMedium& ref) {
  ref.validate();
  return ref.dim * ref.kappa0 + 2.0 * (ref.dim - 1) * ref.mu0;
}

double inverse_lambda_K(const ReferenceMedium& ref) {
  ref.validate();
  const double d = ref.dim;
  return 2.0 * ref.mu0 * (d * ref.kappa0 + 2.0 * (d - 1.0) * ref.mu0) /
         (d * (d - 1.0) * (ref.kappa0 + 2.0 * ref.mu0));
}

IsoTensor4 green_iso(const ReferenceMedium& ref) {
  const GreenCoefficients g = green_coeffs(ref);
  const ProjectorDims n = projector_dims(ref.dim);
  return {ref.dim, g.lambdaJ / n.n_J, g.lambdaK / n.n_K};
}

FullTensor4 green_hat(std::span<const double> xi, const ReferenceMedium& ref) {
  const int d = ref.dim;
  if (static_cast<int>(xi.size()) != d) {
    throw Error(ErrorCode::DimensionMismatch, "frequency vector length does not match dimension");
  }
  const GreenCoefficients g = green_coeffs(ref);
  Eigen::VectorXd x(d);
  for (int a = 0; a < d; ++a) x[a] = xi[a];
  const double xi2 = x.squaredNorm();
  FullTensor4 out(d);
  if (xi2 == 0.0) return out;

  // psi = xi (x) xi, psi_i = xi (x) e_i + e_i (x) xi, all as Mandel vectors.
  const MandelVector psi = SymTensor2::sym_dyad(x, x).comps();
  MandelMatrix& m = out.mandel();
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
    e[i] = 1.0;
    const MandelVector psi_i = 2.0 * SymTensor2::sym_dyad(x, e).comps();
    m += (g.alpha0 / xi2) * psi_i * psi_i.transpose();
  }
  m += (g.beta0 / (xi2 * xi2)) * psi * psi.transpose();
  return out;
}

FullTensor4 green_hat(std::span<const int> xi, const ReferenceMedium& ref) {
  std::vector<double> x(xi.begin(), xi.end());
  return green_hat(std::span<const double>(x), ref);
}

FullTensor4 green_orthogonal(std::span<const int> xi, const ReferenceMedium& ref) {
  bool zero = true;
  for (int v : xi) zero = zero && v == 0;
  if (zero) throw Error(ErrorCode::ZeroFrequency, "orthogonal part undefined at xi = 0");
  FullTensor4 full = green_hat(xi, ref);
  return FullTensor4(ref.dim, full.mandel() - green_iso(ref).to_mandel());
}

}  // namespace elastomap
