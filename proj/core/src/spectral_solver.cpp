#include "elastomap/spectral_solver.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "elastomap/error.hpp"

namespace elastomap {

namespace {

void check_moduli(const ScalarField& kappa, const ScalarField& mu) {
  require_same_grid(kappa.grid(), mu.grid());
  require_positive(kappa, "kappa");
  require_positive(mu, "mu");
}

void check_ref_dim(const Grid& grid, const ReferenceMedium& ref) {
  ref.validate();
  if (grid.dim() != ref.dim) {
    throw Error(ErrorCode::DimensionMismatch, "reference medium dimension does not match grid");
  }
}

// Integer frequency of flat mode index idx.
std::array<double, 3> frequency(const Grid& grid, std::size_t idx, bool& nyquist) {
  const auto ijk = grid.unravel(idx);
  std::array<double, 3> xi{0.0, 0.0, 0.0};
  nyquist = false;
  for (int a = 0; a < grid.dim(); ++a) {
    xi[a] = signed_frequency(ijk[a], grid.extent(a));
    nyquist = nyquist || is_nyquist(ijk[a], grid.extent(a));
  }
  return xi;
}

}  // namespace

ReferenceMedium mean_reference(const ScalarField& kappa, const ScalarField& mu) {
  require_same_grid(kappa.grid(), mu.grid());
  return {kappa.grid().dim(), kappa.mean(), mu.mean()};
}

GreenOperator::GreenOperator(const Grid& grid, const ReferenceMedium& ref)
    : grid_(grid), ref_(ref), coeffs_(green_coeffs(ref)), fft_(grid, mandel_size(grid.dim())) {
  check_ref_dim(grid, ref);
}

void GreenOperator::apply(const TensorField& tau, TensorField& out) {
  require_same_grid(tau.grid(), grid_);
  const int m = tau.ncomp();
  fft_.load(tau.data());
  fft_.forward();
  std::complex<double> in[kMaxMandel];
  bool nyq = false;
  for (std::size_t idx = 0; idx < grid_.size(); ++idx) {
    std::complex<double>* mode = fft_.mode(idx);
    if (idx == 0) {
      for (int c = 0; c < m; ++c) mode[c] = 0.0;
      continue;
    }
    const auto xi = frequency(grid_, idx, nyq);
    for (int c = 0; c < m; ++c) in[c] = mode[c];
    green_contract(grid_.dim(), xi.data(), coeffs_, in, mode);
  }
  fft_.backward();
  if (!(out.grid() == grid_)) out = TensorField(grid_);
  fft_.store_real(out.data());
}

TensorField GreenOperator::apply(const TensorField& tau) {
  TensorField out(grid_);
  apply(tau, out);
  return out;
}

TensorField apply_green(const TensorField& tau, const ReferenceMedium& ref) {
  GreenOperator op(tau.grid(), ref);
  return op.apply(tau);
}

TensorField polarization(const ScalarField& kappa, const ScalarField& mu, const TensorField& eps,
                         const ReferenceMedium& ref) {
  require_same_grid(kappa.grid(), eps.grid());
  require_same_grid(mu.grid(), eps.grid());
  const int d = eps.dim();
  const int m = eps.ncomp();
  TensorField tau(eps.grid());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double a = d * (kappa[i] - ref.kappa0);
    const double b = 2.0 * (mu[i] - ref.mu0);
    const double* e = eps.point(i);
    double* t = tau.point(i);
    double tr = 0.0;
    for (int c = 0; c < d; ++c) tr += e[c];
    const double sph = tr / d;
    for (int c = 0; c < m; ++c) {
      const double s = c < d ? sph : 0.0;
      t[c] = a * s + b * (e[c] - s);
    }
  }
  return tau;
}

TensorField stress(const ScalarField& kappa, const ScalarField& mu, const TensorField& eps) {
  return polarization(kappa, mu, eps, ReferenceMedium{eps.dim(), 0.0, 0.0});
}

double equilibrium_residual(const ScalarField& kappa, const ScalarField& mu,
                            const TensorField& eps) {
  const TensorField sigma = stress(kappa, mu, eps);
  const Grid& grid = eps.grid();
  const int d = grid.dim();
  const int m = sigma.ncomp();
  FourierTransform fft(grid, m);
  fft.load(sigma.data());
  fft.forward();
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  double acc = 0.0;
  bool nyq = false;
  for (std::size_t idx = 1; idx < grid.size(); ++idx) {
    const auto xi = frequency(grid, idx, nyq);
    if (nyq) continue;
    double xn = 0.0;
    for (int a = 0; a < d; ++a) xn += xi[a] * xi[a];
    xn = std::sqrt(xn);
    const std::complex<double>* s = fft.mode(idx);
    for (int i = 0; i < d; ++i) {
      std::complex<double> row = 0.0;
      for (int j = 0; j < d; ++j) {
        if (i == j) {
          row += s[i] * xi[j];
        } else {
          // locate Mandel slot of (i, j)
          int p = 0;
          for (int q = d; q < m; ++q) {
            const auto [a, b] = mandel_indices(d, q);
            if ((a == i && b == j) || (a == j && b == i)) p = q;
          }
          row += s[p] * kInvSqrt2 * xi[j];
        }
      }
      acc += std::norm(row) / (xn * xn);
    }
  }
  const double scale = sigma.rms();
  return scale > 0.0 ? std::sqrt(acc) / scale : std::sqrt(acc);
}

std::pair<TensorField, SolveReport> solve_ls(const ScalarField& kappa, const ScalarField& mu,
                                             const SymTensor2& eps_bar, const ReferenceMedium& ref,
                                             double tol, int max_iter) {
  check_moduli(kappa, mu);
  const Grid& grid = kappa.grid();
  check_ref_dim(grid, ref);
  if (eps_bar.dim() != grid.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "macroscopic strain dimension does not match grid");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::ConfigError, "tolerance must be positive");

  SolveReport report;
  TensorField eps(grid, eps_bar);
  const double nbar = eps_bar.norm();
  if (nbar == 0.0) {
    report.converged = true;
    return {eps, report};
  }

  GreenOperator gamma(grid, ref);
  TensorField next(grid);
  const std::vector<double> bar(eps_bar.comps().data(), eps_bar.comps().data() + eps.ncomp());
  const int m = eps.ncomp();
  for (int k = 1; k <= max_iter; ++k) {
    gamma.apply(polarization(kappa, mu, eps, ref), next);
    double diff = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double* n = next.point(i);
      const double* e = eps.point(i);
      for (int c = 0; c < m; ++c) {
        n[c] = bar[c] - n[c];
        const double dc = n[c] - e[c];
        diff += dc * dc;
      }
    }
    const double res = std::sqrt(diff / static_cast<double>(grid.size())) / nbar;
    std::swap(eps, next);
    report.iterations = k;
    report.residual_history.push_back(res);
    if (res <= tol) {
      report.converged = true;
      break;
    }
    if (!std::isfinite(res) || res > 1e6) break;
  }
  if (!report.converged) {
    throw Error(ErrorCode::NotConverged,
                "fixed point stalled after " + std::to_string(report.iterations) +
                    " iterations, residual " + std::to_string(report.residual_history.back()));
  }
  report.equilibrium_residual = equilibrium_residual(kappa, mu, eps);
  return {std::move(eps), std::move(report)};
}

TensorField first_order_strain(const ScalarField& kappa, const ScalarField& mu,
                               const SymTensor2& eps_bar, const ReferenceMedium& ref) {
  require_same_grid(kappa.grid(), mu.grid());
  check_ref_dim(kappa.grid(), ref);
  if (eps_bar.dim() != kappa.grid().dim()) {
    throw Error(ErrorCode::DimensionMismatch, "macroscopic strain dimension does not match grid");
  }
  const TensorField bar(kappa.grid(), eps_bar);
  TensorField out = apply_green(polarization(kappa, mu, bar, ref), ref);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double* p = out.point(i);
    for (int c = 0; c < out.ncomp(); ++c) p[c] = eps_bar[c] - p[c];
  }
  return out;
}

FullTensor4 homogenize(const ScalarField& kappa, const ScalarField& mu, const SolverOptions& opts) {
  check_moduli(kappa, mu);
  const ReferenceMedium ref = opts.ref.value_or(mean_reference(kappa, mu));
  const int d = kappa.grid().dim();
  const int m = mandel_size(d);
  const MandelMatrix l0 = ref.stiffness().to_mandel();
  FullTensor4 eff(d);
  for (int p = 0; p < m; ++p) {
    SymTensor2 load(d);
    load[p] = 1.0;
    auto [eps, report] = solve_ls(kappa, mu, load, ref, opts.tol, opts.max_iter);
    // <sigma> = L0 : eps_bar + <dL : eps>; summing only the perturbation keeps
    // round-off proportional to the contrast.
    const SymTensor2 extra = polarization(kappa, mu, eps, ref).mean();
    eff.mandel().col(p) = l0.col(p) + extra.comps();
  }
  return eff;
}

FullTensor4 second_order_homogenize(const ScalarField& kappa, const ScalarField& mu,
                                    const ReferenceMedium& ref) {
  require_same_grid(kappa.grid(), mu.grid());
  const Grid& grid = kappa.grid();
  check_ref_dim(grid, ref);
  const int d = grid.dim();
  const MandelMatrix J = projector_J(d);
  const MandelMatrix K = projector_K(d);

  FourierTransform fft(grid, 2);
  std::vector<double> moduli(grid.size() * 2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    moduli[2 * i] = d * (kappa[i] - ref.kappa0);
    moduli[2 * i + 1] = 2.0 * (mu[i] - ref.mu0);
  }
  fft.load(moduli);
  fft.forward();

  const std::complex<double>* zero = fft.mode(0);
  MandelMatrix result = ref.stiffness().to_mandel() + zero[0].real() * J + zero[1].real() * K;

  // Accumulate |a|^2 J G J + Re(a b*) (J G K + K G J) + |b|^2 K G K.
  const int m = mandel_size(d);
  MandelMatrix quad = MandelMatrix::Zero(m, m);
  bool nyq = false;
  for (std::size_t idx = 1; idx < grid.size(); ++idx) {
    const auto xi = frequency(grid, idx, nyq);
    const FullTensor4 g = green_hat(std::span<const double>(xi.data(), d), ref);
    const std::complex<double>* mode = fft.mode(idx);
    const double aa = std::norm(mode[0]);
    const double bb = std::norm(mode[1]);
    const double ab = (mode[0] * std::conj(mode[1])).real();
    const MandelMatrix& G = g.mandel();
    quad += aa * (J * G * J) + ab * (J * G * K + K * G * J) + bb * (K * G * K);
  }
  result -= quad;
  return FullTensor4(d, result);
}

}  // namespace elastomap
