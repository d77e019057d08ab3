#pragma once

// Dimension-generic symmetric tensor algebra in Mandel (orthonormal) notation.
//
// Component ordering is fixed:
//   d = 2: (11, 22, sqrt2*12)
//   d = 3: (11, 22, 33, sqrt2*23, sqrt2*13, sqrt2*12)
// so that double contraction of symmetric tensors is the Euclidean dot
// product of their component vectors, and a fourth-order tensor with minor
// symmetries acts as an ordinary m x m matrix, m = d(d+1)/2.

#include <array>
#include <utility>

#include <Eigen/Core>

namespace elastomap {

inline constexpr int kMaxMandel = 6;

using MandelVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxMandel, 1>;
using MandelMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxMandel, kMaxMandel>;
using Matrix3 = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

/// Number of independent components of a symmetric second-order tensor.
constexpr int mandel_size(int dim) noexcept { return dim * (dim + 1) / 2; }

/// Throws UnsupportedDimension unless dim is 2 or 3.
void check_dim(int dim);

/// Index pair (i, j) addressed by Mandel slot p.
std::pair<int, int> mandel_indices(int dim, int p);

/// Index-form weight of slot p: 1 on the diagonal, sqrt(2) off it.
double mandel_weight(int dim, int p);

struct ProjectorDims {
  int n_I;
  int n_J;
  int n_K;
};

/// Traces J::J, K::K and I::I.
ProjectorDims projector_dims(int dim);

class SymTensor2 {
 public:
  SymTensor2() = default;
  /// Zero tensor in dimension dim.
  explicit SymTensor2(int dim);
  SymTensor2(int dim, const MandelVector& comps);

  static SymTensor2 identity(int dim);
  /// Builds from a full (possibly symmetric) index-form matrix.
  static SymTensor2 from_matrix(const Matrix3& m);
  /// Symmetrized dyad sym(a (x) b) = (a (x) b + b (x) a) / 2.
  static SymTensor2 sym_dyad(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

  int dim() const noexcept { return dim_; }
  const MandelVector& comps() const noexcept { return comps_; }
  MandelVector& comps() noexcept { return comps_; }
  double operator[](int p) const { return comps_[p]; }
  double& operator[](int p) { return comps_[p]; }

  Matrix3 to_matrix() const;
  double trace() const;
  double norm() const { return comps_.norm(); }

  SymTensor2& operator+=(const SymTensor2& o);
  SymTensor2& operator-=(const SymTensor2& o);
  SymTensor2& operator*=(double s);

 private:
  int dim_ = 0;
  MandelVector comps_;
};

SymTensor2 operator+(SymTensor2 a, const SymTensor2& b);
SymTensor2 operator-(SymTensor2 a, const SymTensor2& b);
SymTensor2 operator*(double s, SymTensor2 a);
SymTensor2 operator*(SymTensor2 a, double s);

/// Double contraction a : b.
double ddot(const SymTensor2& a, const SymTensor2& b);

/// Isotropic fourth-order tensor a*J + b*K.
struct IsoTensor4 {
  int dim = 0;
  double a = 0.0;
  double b = 0.0;

  /// L = d*kappa*J + 2*mu*K.
  static IsoTensor4 from_moduli(int dim, double kappa, double mu);
  double bulk() const { return a / dim; }
  double shear() const { return b / 2.0; }
  IsoTensor4 compose(const IsoTensor4& o) const;
  MandelMatrix to_mandel() const;
};

class FullTensor4 {
 public:
  FullTensor4() = default;
  explicit FullTensor4(int dim);
  FullTensor4(int dim, const MandelMatrix& m);
  explicit FullTensor4(const IsoTensor4& iso);

  int dim() const noexcept { return dim_; }
  const MandelMatrix& mandel() const noexcept { return m_; }
  MandelMatrix& mandel() noexcept { return m_; }

  SymTensor2 apply(const SymTensor2& t) const;
  bool has_major_symmetry(double tol) const;

 private:
  int dim_ = 0;
  MandelMatrix m_;
};

/// Quadruple contraction A :: B.
double qdot(const FullTensor4& a, const FullTensor4& b);

MandelMatrix projector_J(int dim);
MandelMatrix projector_K(int dim);
MandelMatrix projector_I(int dim);

/// Spherical part (tr t / d) I and deviatoric remainder.
std::pair<SymTensor2, SymTensor2> sph_dev_split(const SymTensor2& t);
SymTensor2 dev(const SymTensor2& t);

struct StrainInvariants {
  double hydrostatic;  // tr(eps) / d
  double equivalent;   // sqrt((d-1)/d dev:dev)
};
StrainInvariants strain_invariants(const SymTensor2& eps);

struct ParallelParts {
  double parallel;
  double perpendicular;
};
/// Components of eps parallel and orthogonal to the macroscopic direction.
ParallelParts parallel_decompose(const SymTensor2& eps, const SymTensor2& eps_bar);

struct IsoProjection {
  IsoTensor4 iso;
  FullTensor4 orth;
};
/// Splits A into its isotropic part a*J + b*K and the remainder orthogonal to
/// both projectors.
IsoProjection iso_project(const FullTensor4& a);

/// a * sph(t) + b * dev(t).
SymTensor2 iso_apply(const IsoTensor4& l, const SymTensor2& t);

/// Full 4-index tensor (flattened d^4, row-major ijkl) to Mandel and back.
MandelMatrix mandel_from_index(int dim, const std::array<double, 81>& c);
std::array<double, 81> index_from_mandel(int dim, const MandelMatrix& m);

}  // namespace elastomap
