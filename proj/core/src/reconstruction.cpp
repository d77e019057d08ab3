#include "elastomap/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastomap/error.hpp"

namespace elastomap {

namespace {


SymTensor2 diag(int dim, std::initializer_list<double> v) {
  SymTensor2 t(dim);
  int i = 0;
  for (double x : v) t[i++] = x;
  return t;
}

SymTensor2 shear_load(int dim, int slot) {
  // e_a e_b + e_b e_a has Mandel component sqrt(2) in its shear slot.
  SymTensor2 t(dim);
  t[slot] = 1.41421356237309504880;
  return t;
}

const std::vector<SymTensor2>& loads_of(const ExperimentSet& exp, Projector p) {
  if (exp.basis.projector != p) {
    throw Error(ErrorCode::IncompleteBasis,
                p == Projector::J ? "bulk reconstruction needs the spherical load"
                                  : "shear reconstruction needs deviatoric loads");
  }
  exp.validate();
  return exp.basis.strains;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lo + hi);
}

double sup_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

ReconResult shear_sum(const ExperimentSet& exp, const std::vector<std::size_t>& which,
                      double scale, bool equivalent) {
  const auto& loads = exp.basis.strains;
  const Grid& grid = exp.grid();
  const double coef = scale * inverse_lambda_K(exp.ref) / 2.0;
  ReconResult r{ScalarField(grid, exp.ref.mu0), ModulusKind::Shear, Method::Generic, {}};
  for (std::size_t i : which) {
    const SymTensor2& bar = loads[i];
    const TensorField& f = exp.strain_fields[i];
    const SymTensor2 dbar = dev(bar);
    const double n2 = ddot(bar, bar);
    const double eqbar = strain_invariants(bar).equivalent;
    if (!(n2 > 0.0) || !(eqbar > 0.0)) {
      throw Error(ErrorCode::ZeroMacroStrain, "deviatoric load has zero norm");
    }
    for (std::size_t x = 0; x < grid.size(); ++x) {
      const SymTensor2 e = f.at(x);
      const double ratio = equivalent ? strain_invariants(e).equivalent / eqbar
                                      : ddot(dev(e), dbar) / n2;
      r.modulus_map[x] += coef * (1.0 - ratio);
    }
  }
  return r;
}

}  // namespace

MandelMatrix LoadBasis::assembly() const {
  const int m = mandel_size(dim);
  MandelMatrix a = MandelMatrix::Zero(m, m);
  for (const auto& e : strains) a += e.comps() * e.comps().transpose() / e.comps().squaredNorm();
  return a;
}

LoadBasis make_load_basis(Projector p, int dim) {
  check_dim(dim);
  LoadBasis b{p, dim, {}};
  if (p == Projector::J) {
    b.strains.push_back(SymTensor2::identity(dim));
  } else if (dim == 2) {
    b.strains.push_back(shear_load(2, 2));
    b.strains.push_back(diag(2, {1.0, -1.0}));
  } else {
    b.strains.push_back(shear_load(3, 3));
    b.strains.push_back(shear_load(3, 4));
    b.strains.push_back(shear_load(3, 5));
    b.strains.push_back(diag(3, {1.0, -1.0, 0.0}));
    const double s = 1.0 / std::sqrt(3.0);
    b.strains.push_back(diag(3, {s, s, -2.0 * s}));
  }
  return b;
}

const Grid& ExperimentSet::grid() const {
  if (strain_fields.empty()) throw Error(ErrorCode::IncompleteBasis, "experiment has no fields");
  return strain_fields.front().grid();
}

void ExperimentSet::validate() const {
  ref.validate();
  if (basis.dim != ref.dim) {
    throw Error(ErrorCode::DimensionMismatch, "load basis and reference differ in dimension");
  }
  if (strain_fields.size() != basis.strains.size()) {
    throw Error(ErrorCode::IncompleteBasis,
                "expected " + std::to_string(basis.strains.size()) + " strain fields, got " +
                    std::to_string(strain_fields.size()));
  }
  for (const auto& f : strain_fields) {
    require_same_grid(f.grid(), strain_fields.front().grid());
    if (f.dim() != basis.dim) {
      throw Error(ErrorCode::DimensionMismatch, "strain field dimension differs from the basis");
    }
  }
}

ReconResult reconstruct_bulk(const ExperimentSet& exp) {
  const auto& loads = loads_of(exp, Projector::J);
  const SymTensor2& bar = loads.front();
  const double e0bar = strain_invariants(bar).hydrostatic;
  if (e0bar == 0.0) throw Error(ErrorCode::ZeroMacroStrain, "spherical load has zero trace");
  const TensorField& f = exp.strain_fields.front();
  const int d = exp.ref.dim;
  const double coef = inverse_lambda_J(exp.ref) / d;
  ReconResult r{ScalarField(f.grid()), ModulusKind::Bulk, Method::Generic, {}};
  for (std::size_t x = 0; x < f.size(); ++x) {
    const double* p = f.point(x);
    double tr = 0.0;
    for (int c = 0; c < d; ++c) tr += p[c];
    r.modulus_map[x] = exp.ref.kappa0 + coef * (1.0 - (tr / d) / e0bar);
  }
  return r;
}

ReconResult reconstruct_bulk_trace(const ExperimentSet& exp) {
  const auto& loads = loads_of(exp, Projector::J);
  const SymTensor2& bar = loads.front();
  const double n2 = ddot(bar, bar);
  if (!(n2 > 0.0)) throw Error(ErrorCode::ZeroMacroStrain, "spherical load has zero norm");
  const TensorField& f = exp.strain_fields.front();
  const int d = exp.ref.dim;
  const double coef = inverse_lambda_J(exp.ref) / d;
  const double trbar = bar.trace();
  ReconResult r{ScalarField(f.grid()), ModulusKind::Bulk, Method::Generic, {}};
  for (std::size_t x = 0; x < f.size(); ++x) {
    const double tr = f.at(x).trace();
    r.modulus_map[x] = exp.ref.kappa0 + coef * (1.0 - tr * trbar / (d * n2));
  }
  return r;
}

ReconResult reconstruct_shear(const ExperimentSet& exp) {
  const auto& loads = loads_of(exp, Projector::K);
  std::vector<std::size_t> all(loads.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return shear_sum(exp, all, 1.0, false);
}

ReconResult reconstruct_shear_equivalent(const ExperimentSet& exp) {
  const auto& loads = loads_of(exp, Projector::K);
  std::vector<std::size_t> all(loads.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return shear_sum(exp, all, 1.0, true);
}

ReconResult reconstruct_shear_single(const ExperimentSet& exp, std::size_t index) {
  if (exp.basis.projector != Projector::K) {
    throw Error(ErrorCode::IncompleteBasis, "shear reconstruction needs deviatoric loads");
  }
  if (index >= exp.strain_fields.size() || index >= exp.basis.strains.size()) {
    throw Error(ErrorCode::IncompleteBasis, "no strain field for load " + std::to_string(index));
  }
  exp.ref.validate();
  const double nk = projector_dims(exp.ref.dim).n_K;
  ReconResult r = shear_sum(exp, {index}, nk, false);
  r.note = "single deviatoric field " + std::to_string(index) + " (diagnostic)";
  return r;
}

ReconResult reconstruct_bulk_iso(const TensorField& field, const SymTensor2& eps_bar,
                                 const ReferenceMedium& ref) {
  ref.validate();
  const int d = ref.dim;
  if (field.dim() != d || eps_bar.dim() != d) {
    throw Error(ErrorCode::DimensionMismatch, "strain dimension differs from the reference");
  }
  const double e0bar = strain_invariants(eps_bar).hydrostatic;
  if (e0bar == 0.0) throw Error(ErrorCode::ZeroMacroStrain, "spherical load has zero trace");
  const double coef = projector_dims(d).n_J * inverse_lambda_J(ref) / (2.0 * d);
  ReconResult r{ScalarField(field.grid()), ModulusKind::Bulk, Method::Isotropic, {}};
  for (std::size_t x = 0; x < field.size(); ++x) {
    const double e0 = field.at(x).trace() / d;
    r.modulus_map[x] = ref.kappa0 + coef * (1.0 - (e0 * e0) / (e0bar * e0bar));
  }
  return r;
}

ReconResult reconstruct_shear_iso(const TensorField& field, const SymTensor2& eps_bar,
                                  const ReferenceMedium& ref) {
  ref.validate();
  const int d = ref.dim;
  if (field.dim() != d || eps_bar.dim() != d) {
    throw Error(ErrorCode::DimensionMismatch, "strain dimension differs from the reference");
  }
  const double eqbar = strain_invariants(eps_bar).equivalent;
  if (!(eqbar > 0.0)) throw Error(ErrorCode::ZeroMacroStrain, "deviatoric load has zero norm");
  const double coef = projector_dims(d).n_K * inverse_lambda_K(ref) / 4.0;
  ReconResult r{ScalarField(field.grid()), ModulusKind::Shear, Method::Isotropic, {}};
  for (std::size_t x = 0; x < field.size(); ++x) {
    const double eq = strain_invariants(field.at(x)).equivalent;
    r.modulus_map[x] = ref.mu0 + coef * (1.0 - (eq * eq) / (eqbar * eqbar));
  }
  return r;
}

ReconResult reconstruct_bounded(const ExperimentSet& exp, Anchoring anchoring) {
  exp.validate();
  const bool bulk = exp.basis.projector == Projector::J;
  const double coef = bulk ? inverse_lambda_J(exp.ref) / exp.ref.dim : inverse_lambda_K(exp.ref) / 2.0;
  const double base = bulk ? exp.ref.kappa0 : exp.ref.mu0;
  const Grid& grid = exp.grid();
  ReconResult r{ScalarField(grid, base), bulk ? ModulusKind::Bulk : ModulusKind::Shear,
                Method::Bounded, {}};
  for (std::size_t i = 0; i < exp.basis.strains.size(); ++i) {
    const SymTensor2& bar = exp.basis.strains[i];
    const double n2 = ddot(bar, bar);
    if (!(n2 > 0.0)) throw Error(ErrorCode::ZeroMacroStrain, "load has zero norm");
    const TensorField& f = exp.strain_fields[i];
    for (std::size_t x = 0; x < grid.size(); ++x) {
      // -coef * (eps - eps_bar) : eps_bar / |eps_bar|^2
      r.modulus_map[x] -= coef * (ddot(f.at(x), bar) / n2 - 1.0);
    }
  }
  if (anchoring == Anchoring::Mean) {
    const double shift = base - r.modulus_map.mean();
    for (double& v : r.modulus_map.values()) v += shift;
    r.note = "particular solution shifted to mean " + std::to_string(base) +
             "; defined up to a biharmonic field";
  } else {
    r.note = "raw particular solution; defined up to a biharmonic field";
  }
  return r;
}

ScalarField error_map(const ScalarField& ref_map, const ScalarField& recon, double c) {
  require_same_grid(ref_map.grid(), recon.grid());
  if (!(c > 0.0)) throw Error(ErrorCode::InvalidContrast, "contrast must be positive");
  ScalarField out(ref_map.grid());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(ref_map[i] - recon[i]) / c;
  return out;
}

ErrorStats error_stats(const ScalarField& err, double band) {
  const Grid& grid = err.grid();
  std::vector<double> interior;
  std::vector<double> edge;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid.coord(i);
    bool inside = true;
    bool near = false;
    for (int a = 0; a < grid.dim(); ++a) {
      inside = inside && x[a] >= 0.25 && x[a] <= 0.75;
      near = near || x[a] <= band || x[a] >= 1.0 - band;
    }
    if (inside) interior.push_back(err[i]);
    if (near) edge.push_back(err[i]);
  }
  ErrorStats s;
  s.sup = sup_of(err.values());
  s.median = median_of(err.values());
  s.interior_sup = sup_of(interior);
  s.interior_median = median_of(interior);
  s.band_sup = sup_of(edge);
  s.band_median = median_of(edge);
  return s;
}

std::string_view to_string(ModulusKind k) { return k == ModulusKind::Bulk ? "bulk" : "shear"; }

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Generic: return "generic";
    case Method::Isotropic: return "isotropic";
    case Method::Bounded: return "bounded";
  }
  return "unknown";
}

std::string_view to_string(Anchoring a) { return a == Anchoring::Mean ? "mean" : "none"; }

}  // namespace elastomap
