#include "elastomap/tensor.hpp"

#include <cmath>
#include <string>

#include "elastomap/error.hpp"

namespace elastomap {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::ZeroMacroStrain: return "ZeroMacroStrain";
    case ErrorCode::MixedMacroStrain: return "MixedMacroStrain";
    case ErrorCode::ZeroFrequency: return "ZeroFrequency";
    case ErrorCode::NonPositiveModulus: return "NonPositiveModulus";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::InvalidContrast: return "InvalidContrast";
    case ErrorCode::IncompleteBasis: return "IncompleteBasis";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

constexpr std::pair<int, int> kSlots2[3] = {{0, 0}, {1, 1}, {0, 1}};
constexpr std::pair<int, int> kSlots3[6] = {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};

void require_same_dim(int a, int b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimension " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

void check_dim(int dim) {
  if (dim != 2 && dim != 3) {
    throw Error(ErrorCode::UnsupportedDimension, "dimension " + std::to_string(dim));
  }
}

std::pair<int, int> mandel_indices(int dim, int p) {
  return dim == 2 ? kSlots2[p] : kSlots3[p];
}

double mandel_weight(int dim, int p) { return p < dim ? 1.0 : kSqrt2; }

ProjectorDims projector_dims(int dim) {
  check_dim(dim);
  const int n = mandel_size(dim);
  return {n, 1, n - 1};
}

SymTensor2::SymTensor2(int dim) : dim_(dim), comps_(MandelVector::Zero(mandel_size(dim))) {
  check_dim(dim);
}

SymTensor2::SymTensor2(int dim, const MandelVector& comps) : dim_(dim), comps_(comps) {
  check_dim(dim);
  if (comps.size() != mandel_size(dim)) {
    throw Error(ErrorCode::DimensionMismatch, "Mandel vector length does not match dimension");
  }
}

SymTensor2 SymTensor2::identity(int dim) {
  SymTensor2 t(dim);
  for (int i = 0; i < dim; ++i) t.comps_[i] = 1.0;
  return t;
}

SymTensor2 SymTensor2::from_matrix(const Matrix3& m) {
  const int dim = static_cast<int>(m.rows());
  SymTensor2 t(dim);
  for (int p = 0; p < mandel_size(dim); ++p) {
    const auto [i, j] = mandel_indices(dim, p);
    t.comps_[p] = p < dim ? m(i, i) : 0.5 * (m(i, j) + m(j, i)) * kSqrt2;
  }
  return t;
}

SymTensor2 SymTensor2::sym_dyad(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const int dim = static_cast<int>(a.size());
  require_same_dim(dim, static_cast<int>(b.size()));
  Matrix3 m = 0.5 * (a * b.transpose() + b * a.transpose());
  return from_matrix(m);
}

Matrix3 SymTensor2::to_matrix() const {
  Matrix3 m = Matrix3::Zero(dim_, dim_);
  for (int p = 0; p < comps_.size(); ++p) {
    const auto [i, j] = mandel_indices(dim_, p);
    const double v = comps_[p] / mandel_weight(dim_, p);
    m(i, j) = v;
    m(j, i) = v;
  }
  return m;
}

double SymTensor2::trace() const { return comps_.head(dim_).sum(); }

SymTensor2& SymTensor2::operator+=(const SymTensor2& o) {
  require_same_dim(dim_, o.dim_);
  comps_ += o.comps_;
  return *this;
}

SymTensor2& SymTensor2::operator-=(const SymTensor2& o) {
  require_same_dim(dim_, o.dim_);
  comps_ -= o.comps_;
  return *this;
}

SymTensor2& SymTensor2::operator*=(double s) {
  comps_ *= s;
  return *this;
}

SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) { return a += b; }
SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { return a -= b; }
SymTensor2 operator*(double s, SymTensor2 a) { return a *= s; }
SymTensor2 operator*(SymTensor2 a, double s) { return a *= s; }

double ddot(const SymTensor2& a, const SymTensor2& b) {
  require_same_dim(a.dim(), b.dim());
  return a.comps().dot(b.comps());
}

IsoTensor4 IsoTensor4::from_moduli(int dim, double kappa, double mu) {
  check_dim(dim);
  return {dim, dim * kappa, 2.0 * mu};
}

IsoTensor4 IsoTensor4::compose(const IsoTensor4& o) const {
  require_same_dim(dim, o.dim);
  return {dim, a * o.a, b * o.b};
}

MandelMatrix IsoTensor4::to_mandel() const { return a * projector_J(dim) + b * projector_K(dim); }

FullTensor4::FullTensor4(int dim) : dim_(dim) {
  check_dim(dim);
  m_ = MandelMatrix::Zero(mandel_size(dim), mandel_size(dim));
}

FullTensor4::FullTensor4(int dim, const MandelMatrix& m) : dim_(dim), m_(m) {
  check_dim(dim);
  if (m.rows() != mandel_size(dim) || m.cols() != mandel_size(dim)) {
    throw Error(ErrorCode::DimensionMismatch, "Mandel matrix size does not match dimension");
  }
}

FullTensor4::FullTensor4(const IsoTensor4& iso) : FullTensor4(iso.dim, iso.to_mandel()) {}

SymTensor2 FullTensor4::apply(const SymTensor2& t) const {
  require_same_dim(dim_, t.dim());
  return SymTensor2(dim_, m_ * t.comps());
}

bool FullTensor4::has_major_symmetry(double tol) const {
  return (m_ - m_.transpose()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m_.cwiseAbs().maxCoeff());
}

double qdot(const FullTensor4& a, const FullTensor4& b) {
  require_same_dim(a.dim(), b.dim());
  return a.mandel().cwiseProduct(b.mandel()).sum();
}

MandelMatrix projector_J(int dim) {
  check_dim(dim);
  const int m = mandel_size(dim);
  MandelMatrix j = MandelMatrix::Zero(m, m);
  j.topLeftCorner(dim, dim).setConstant(1.0 / dim);
  return j;
}

MandelMatrix projector_I(int dim) {
  check_dim(dim);
  const int m = mandel_size(dim);
  return MandelMatrix::Identity(m, m);
}

MandelMatrix projector_K(int dim) { return projector_I(dim) - projector_J(dim); }

std::pair<SymTensor2, SymTensor2> sph_dev_split(const SymTensor2& t) {
  SymTensor2 sph = (t.trace() / t.dim()) * SymTensor2::identity(t.dim());
  SymTensor2 dv = t - sph;
  return {sph, dv};
}

SymTensor2 dev(const SymTensor2& t) { return sph_dev_split(t).second; }

StrainInvariants strain_invariants(const SymTensor2& eps) {
  const int d = eps.dim();
  const SymTensor2 dv = dev(eps);
  return {eps.trace() / d, std::sqrt((d - 1.0) / d * ddot(dv, dv))};
}

ParallelParts parallel_decompose(const SymTensor2& eps, const SymTensor2& eps_bar) {
  const double nbar = eps_bar.norm();
  if (!(nbar > 0.0)) throw Error(ErrorCode::ZeroMacroStrain, "macroscopic strain has zero norm");
  const double par = ddot(eps, eps_bar) / nbar;
  const SymTensor2 perp = eps - (par / nbar) * eps_bar;
  return {par, perp.norm()};
}

IsoProjection iso_project(const FullTensor4& a) {
  const int d = a.dim();
  const ProjectorDims n = projector_dims(d);
  const FullTensor4 j(d, projector_J(d));
  const FullTensor4 k(d, projector_K(d));
  IsoTensor4 iso{d, qdot(a, j) / n.n_J, qdot(a, k) / n.n_K};
  FullTensor4 orth(d, a.mandel() - iso.to_mandel());
  return {iso, orth};
}

SymTensor2 iso_apply(const IsoTensor4& l, const SymTensor2& t) {
  require_same_dim(l.dim, t.dim());
  const auto [sph, dv] = sph_dev_split(t);
  return l.a * sph + l.b * dv;
}

MandelMatrix mandel_from_index(int dim, const std::array<double, 81>& c) {
  check_dim(dim);
  const int m = mandel_size(dim);
  auto at = [&](int i, int j, int k, int l) { return c[((i * dim + j) * dim + k) * dim + l]; };
  MandelMatrix out(m, m);
  for (int p = 0; p < m; ++p) {
    const auto [i, j] = mandel_indices(dim, p);
    for (int q = 0; q < m; ++q) {
      const auto [k, l] = mandel_indices(dim, q);
      out(p, q) = mandel_weight(dim, p) * mandel_weight(dim, q) * at(i, j, k, l);
    }
  }
  return out;
}

std::array<double, 81> index_from_mandel(int dim, const MandelMatrix& m) {
  check_dim(dim);
  std::array<double, 81> c{};
  auto slot = [dim](int i, int j) {
    for (int p = 0; p < mandel_size(dim); ++p) {
      const auto [a, b] = mandel_indices(dim, p);
      if ((a == i && b == j) || (a == j && b == i)) return p;
    }
    return -1;
  };
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          const int p = slot(i, j);
          const int q = slot(k, l);
          c[((i * dim + j) * dim + k) * dim + l] =
              m(p, q) / (mandel_weight(dim, p) * mandel_weight(dim, q));
        }
  return c;
}

}  // namespace elastomap
