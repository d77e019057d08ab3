#include "elastomap/microstructure.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "elastomap/error.hpp"
#include "elastomap/fft.hpp"
#include "elastomap/random.hpp"

namespace elastomap {

namespace {

void check_contrast(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::InvalidContrast, "contrast must be positive, got " + std::to_string(c));
  }
}

void check_result(const ScalarField& f, const char* name) {
  if (!(f.min() > 0.0)) {
    throw Error(ErrorCode::InvalidContrast,
                std::string("contrast yields a non-positive ") + name);
  }
}

void recenter(ScalarField& f, double target) {
  const double shift = target - f.mean();
  for (double& v : f.values()) v += shift;
}

ScalarField smooth_field(const Grid& grid, double c, double eta0, const CounterRng& rng,
                         const std::vector<double>& corr) {
  const int d = grid.dim();
  FourierTransform fft(grid, 1);
  std::vector<double> noise(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) noise[i] = rng.normal(i);
  fft.load(noise);
  fft.forward();
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const auto ijk = grid.unravel(idx);
    double e = 0.0;
    for (int a = 0; a < d; ++a) {
      const double xi = signed_frequency(ijk[a], grid.extent(a)) / grid.period(a);
      e += corr[a] * corr[a] * xi * xi;
    }
    *fft.mode(idx) *= std::exp(-2.0 * pi2 * e);
  }
  *fft.mode(0) = 0.0;
  fft.backward();
  fft.store_real(noise);

  double mean = 0.0;
  for (double v : noise) mean += v;
  mean /= static_cast<double>(noise.size());
  double amp = 0.0;
  for (double& v : noise) {
    v -= mean;
    amp = std::max(amp, std::abs(v));
  }
  ScalarField out(grid, eta0);
  if (amp > 0.0) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out[i] = eta0 * (1.0 + 0.5 * c * noise[i] / amp);
    }
  }
  return out;
}

}  // namespace

ModulusMaps gen_smooth_aniso(const Grid& grid, double c, std::uint64_t seed,
                             std::vector<double> corr_lengths, Moduli nominal) {
  check_contrast(c);
  if (static_cast<int>(corr_lengths.size()) != grid.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "one correlation length per axis is required");
  }
  for (double l : corr_lengths) {
    if (!(l >= 0.0)) throw Error(ErrorCode::ConfigError, "correlation lengths must be >= 0");
  }
  ModulusMaps maps;
  maps.c = c;
  maps.seed = seed;
  maps.kappa = smooth_field(grid, c, nominal.kappa, CounterRng(seed, Stream::Kappa), corr_lengths);
  maps.mu = smooth_field(grid, c, nominal.mu, CounterRng(seed, Stream::Mu), corr_lengths);
  check_result(maps.kappa, "bulk modulus");
  check_result(maps.mu, "shear modulus");
  return maps;
}

ModulusMaps gen_voronoi(const Grid& grid, int n_cells, double c, std::uint64_t seed, bool wrap,
                        Moduli nominal) {
  check_contrast(c);
  if (n_cells < 1) throw Error(ErrorCode::ConfigError, "n_cells must be >= 1");
  const int d = grid.dim();
  const CounterRng geo(seed, Stream::Geometry);
  const CounterRng rk(seed, Stream::Kappa);
  const CounterRng rm(seed, Stream::Mu);

  const std::size_t n = static_cast<std::size_t>(n_cells);
  std::vector<double> sites(n * d);
  for (std::size_t s = 0; s < sites.size(); ++s) sites[s] = geo.uniform(s);

  ModulusMaps maps;
  maps.c = c;
  maps.seed = seed;
  maps.cell_kappa.resize(n);
  maps.cell_mu.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    maps.cell_kappa[s] = nominal.kappa * (1.0 + c * (rk.uniform(s) - 0.5));
    maps.cell_mu[s] = nominal.mu * (1.0 + c * (rm.uniform(s) - 0.5));
  }

  // Sites live on [0,1)^d; bounded grids cover [0,1]^d so a unit period works
  // for both.
  maps.phase.resize(grid.size());
  maps.kappa = ScalarField(grid);
  maps.mu = ScalarField(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid.coord(i);
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (std::size_t s = 0; s < n; ++s) {
      double r2 = 0.0;
      for (int a = 0; a < d; ++a) {
        double dx = std::abs(x[a] - sites[s * d + a]);
        if (wrap) dx = std::min(dx, 1.0 - dx);
        r2 += dx * dx;
      }
      if (r2 < best) {
        best = r2;
        arg = static_cast<int>(s);
      }
    }
    maps.phase[i] = arg;
    maps.kappa[i] = maps.cell_kappa[arg];
    maps.mu[i] = maps.cell_mu[arg];
  }
  recenter(maps.kappa, nominal.kappa);
  recenter(maps.mu, nominal.mu);
  check_result(maps.kappa, "bulk modulus");
  check_result(maps.mu, "shear modulus");
  return maps;
}

ModulusMaps gen_inclusion(const Grid& grid, double radius, std::array<double, 3> center,
                          Moduli matrix, Moduli inclusion) {
  for (double v : {matrix.kappa, matrix.mu, inclusion.kappa, inclusion.mu}) {
    if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveModulus, "inclusion moduli must be positive");
  }
  ModulusMaps maps;
  maps.kappa = ScalarField(grid, matrix.kappa);
  maps.mu = ScalarField(grid, matrix.mu);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid.coord(i);
    double r2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) r2 += (x[a] - center[a]) * (x[a] - center[a]);
    if (std::sqrt(r2) < radius) {
      maps.kappa[i] = inclusion.kappa;
      maps.mu[i] = inclusion.mu;
    }
  }
  return maps;
}

ModulusMaps gen_homogeneous(const Grid& grid, Moduli value) {
  return gen_inclusion(grid, 0.0, {0.5, 0.5, 0.5}, value, value);
}

std::pair<double, double> hs_phase_moduli(double eta0, double delta_eta, double f1) {
  if (!(f1 > 0.0 && f1 < 1.0)) throw Error(ErrorCode::ConfigError, "f1 must lie in (0, 1)");
  const double f2 = 1.0 - f1;
  const double eta1 = eta0 - f2 * delta_eta;
  const double eta2 = eta0 + f1 * delta_eta;
  if (!(eta1 > 0.0) || !(eta2 > 0.0)) {
    throw Error(ErrorCode::NonPositiveModulus, "phase moduli must be positive");
  }
  return {eta1, eta2};
}

}  // namespace elastomap
