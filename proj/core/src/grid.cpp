#include "elastomap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "elastomap/error.hpp"

namespace elastomap {

Grid::Grid(std::vector<int> shape, bool periodic) : periodic_(periodic) {
  dim_ = static_cast<int>(shape.size());
  check_dim(dim_);
  size_ = 1;
  for (int a = 0; a < dim_; ++a) {
    if (shape[a] < 2) {
      throw Error(ErrorCode::DimensionMismatch, "grid extent must be >= 2 on every axis");
    }
    shape_[a] = shape[a];
    size_ *= static_cast<std::size_t>(shape[a]);
  }
}

Grid Grid::periodic(std::vector<int> shape) { return Grid(std::move(shape), true); }
Grid Grid::bounded(std::vector<int> shape) { return Grid(std::move(shape), false); }

double Grid::spacing(int axis) const {
  return periodic_ ? 1.0 / shape_[axis] : 1.0 / (shape_[axis] - 1);
}

std::array<int, 3> Grid::unravel(std::size_t idx) const {
  std::array<int, 3> ijk{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    ijk[a] = static_cast<int>(idx % shape_[a]);
    idx /= shape_[a];
  }
  return ijk;
}

std::size_t Grid::ravel(const std::array<int, 3>& ijk) const {
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a) idx = idx * shape_[a] + ijk[a];
  return idx;
}

std::array<double, 3> Grid::coord(std::size_t idx) const {
  const auto ijk = unravel(idx);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) x[a] = ijk[a] * spacing(a);
  return x;
}

ScalarField::ScalarField(const Grid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorCode::GridMismatch, "scalar value count does not match grid size");
  }
}

double ScalarField::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

TensorField::TensorField(const Grid& grid)
    : grid_(grid), ncomp_(mandel_size(grid.dim())), data_(grid.size() * ncomp_, 0.0) {}

TensorField::TensorField(const Grid& grid, const SymTensor2& fill) : TensorField(grid) {
  if (fill.dim() != grid.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "tensor dimension does not match grid");
  }
  for (std::size_t i = 0; i < size(); ++i) set(i, fill);
}

TensorField::TensorField(const Grid& grid, std::vector<double> data)
    : grid_(grid), ncomp_(mandel_size(grid.dim())), data_(std::move(data)) {
  if (data_.size() != grid_.size() * ncomp_) {
    throw Error(ErrorCode::GridMismatch, "tensor value count does not match grid size");
  }
}

SymTensor2 TensorField::at(std::size_t i) const {
  MandelVector v(ncomp_);
  const double* p = point(i);
  for (int c = 0; c < ncomp_; ++c) v[c] = p[c];
  return SymTensor2(dim(), v);
}

void TensorField::set(std::size_t i, const SymTensor2& t) {
  if (t.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "tensor dimension does not match field");
  double* p = point(i);
  for (int c = 0; c < ncomp_; ++c) p[c] = t[c];
}

SymTensor2 TensorField::mean() const {
  MandelVector acc = MandelVector::Zero(ncomp_);
  for (std::size_t i = 0; i < size(); ++i) {
    const double* p = point(i);
    for (int c = 0; c < ncomp_; ++c) acc[c] += p[c];
  }
  return SymTensor2(dim(), acc / static_cast<double>(size()));
}

double TensorField::rms() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s / static_cast<double>(size()));
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw Error(ErrorCode::GridMismatch, "fields live on different grids");
}

void require_positive(const ScalarField& f, const char* name) {
  for (double v : f.values()) {
    if (!(v > 0.0)) {
      throw Error(ErrorCode::NonPositiveModulus, std::string(name) + " has a non-positive value");
    }
  }
}

}  // namespace elastomap
