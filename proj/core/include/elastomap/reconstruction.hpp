#pragma once

// Pointwise first-order inversion of strain maps into modulus maps.

#include <string>
#include <vector>

#include "elastomap/green.hpp"
#include "elastomap/grid.hpp"

namespace elastomap {

enum class Projector { J, K };

struct LoadBasis {
  Projector projector = Projector::J;
  int dim = 2;
  std::vector<SymTensor2> strains;

  /// sum_i e_i (x) e_i / |e_i|^2 in Mandel form.
  MandelMatrix assembly() const;
};

/// J: [I]. K, 2D: [e1e2 + e2e1, e1e1 - e2e2]. K, 3D: three symmetric shears,
/// diag(1,-1,0) and diag(1,1,-2)/sqrt(3).
LoadBasis make_load_basis(Projector p, int dim);

struct ExperimentSet {
  LoadBasis basis;
  std::vector<TensorField> strain_fields;
  ReferenceMedium ref;

  const Grid& grid() const;
  /// Throws IncompleteBasis / GridMismatch / DimensionMismatch.
  void validate() const;
};

enum class ModulusKind { Bulk, Shear };
enum class Method { Generic, Isotropic, Bounded };
enum class Anchoring { Mean, None };

struct ReconResult {
  ScalarField modulus_map;
  ModulusKind kind = ModulusKind::Bulk;
  Method method = Method::Generic;
  std::string note;
};

/// kappa0 + (1/lambda_J)/d [1 - eps0(x)/eps0_bar].
ReconResult reconstruct_bulk(const ExperimentSet& exp);
/// Same identity written with traces against eps_bar / |eps_bar|^2.
ReconResult reconstruct_bulk_trace(const ExperimentSet& exp);

/// mu0 + (1/lambda_K)/2 sum_i [1 - dev eps_i : dev eps_bar_i / |eps_bar_i|^2].
ReconResult reconstruct_shear(const ExperimentSet& exp);
/// Equivalent-strain form, sum_i [1 - eps_eq_i / eps_eq_bar_i].
ReconResult reconstruct_shear_equivalent(const ExperimentSet& exp);
/// Diagnostic map from the single deviatoric field `index`, scaled by n_K so
/// it is unbiased when all loads respond alike.
ReconResult reconstruct_shear_single(const ExperimentSet& exp, std::size_t index);

/// kappa0 + n_J (1/lambda_J)/(2d) [1 - eps0^2/eps0_bar^2].
ReconResult reconstruct_bulk_iso(const TensorField& field, const SymTensor2& eps_bar,
                                 const ReferenceMedium& ref);
/// mu0 + n_K (1/lambda_K)/4 [1 - eps_eq^2/eps_eq_bar^2].
ReconResult reconstruct_shear_iso(const TensorField& field, const SymTensor2& eps_bar,
                                  const ReferenceMedium& ref);

/// Particular solution of the bounded-domain identities; the map is defined
/// up to a biharmonic field, fixed here by a constant shift under mean
/// anchoring so the spatial mean equals the reference modulus.
ReconResult reconstruct_bounded(const ExperimentSet& exp, Anchoring anchoring = Anchoring::Mean);

struct ErrorStats {
  double sup = 0.0;
  double median = 0.0;
  double interior_sup = 0.0;
  double interior_median = 0.0;
  double band_sup = 0.0;
  double band_median = 0.0;
};

/// |ref(x) - recon(x)| / c.
ScalarField error_map(const ScalarField& ref_map, const ScalarField& recon, double c);

/// Interior window is the central quarter [0.25, 0.75]^d; the band holds
/// points within `band` of the boundary of the unit cell.
ErrorStats error_stats(const ScalarField& err, double band = 0.05);

std::string_view to_string(ModulusKind k);
std::string_view to_string(Method m);
std::string_view to_string(Anchoring a);

}  // namespace elastomap
