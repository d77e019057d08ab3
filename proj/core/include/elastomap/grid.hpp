#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "elastomap/tensor.hpp"

namespace elastomap {

// Regular grid on the unit cell. Periodic grids sample [0,1)^d with spacing
// 1/N_i; bounded grids place nodes on [0,1]^d with spacing 1/(N_i - 1).
// Point storage is row-major with axis 0 slowest.
class Grid {
 public:
  Grid() = default;
  static Grid periodic(std::vector<int> shape);
  static Grid bounded(std::vector<int> shape);

  int dim() const noexcept { return dim_; }
  int extent(int axis) const { return shape_[axis]; }
  const std::array<int, 3>& shape() const noexcept { return shape_; }
  bool is_periodic() const noexcept { return periodic_; }
  std::size_t size() const noexcept { return size_; }
  double spacing(int axis) const;
  /// Physical period of the sampled signal along an axis (N_i * spacing).
  double period(int axis) const { return shape_[axis] * spacing(axis); }

  std::array<int, 3> unravel(std::size_t idx) const;
  std::size_t ravel(const std::array<int, 3>& ijk) const;
  std::array<double, 3> coord(std::size_t idx) const;

  bool operator==(const Grid& o) const = default;

 private:
  Grid(std::vector<int> shape, bool periodic);
  int dim_ = 0;
  std::array<int, 3> shape_{1, 1, 1};
  bool periodic_ = true;
  std::size_t size_ = 0;
};

/// Signed integer frequency for DFT index k on an axis with n points.
/// Index n/2 on even axes maps to -n/2.
constexpr int signed_frequency(int k, int n) noexcept { return 2 * k < n ? k : k - n; }
constexpr bool is_nyquist(int k, int n) noexcept { return n % 2 == 0 && 2 * k == n; }

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const Grid& grid, double fill = 0.0);
  ScalarField(const Grid& grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  double mean() const;
  double min() const;
  double max() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Symmetric tensors stored per point in interleaved Mandel order.
class TensorField {
 public:
  TensorField() = default;
  explicit TensorField(const Grid& grid);
  TensorField(const Grid& grid, const SymTensor2& fill);
  TensorField(const Grid& grid, std::vector<double> data);

  const Grid& grid() const noexcept { return grid_; }
  int dim() const noexcept { return grid_.dim(); }
  int ncomp() const noexcept { return ncomp_; }
  std::size_t size() const noexcept { return grid_.size(); }
  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  SymTensor2 at(std::size_t i) const;
  void set(std::size_t i, const SymTensor2& t);
  double* point(std::size_t i) { return data_.data() + i * ncomp_; }
  const double* point(std::size_t i) const { return data_.data() + i * ncomp_; }

  SymTensor2 mean() const;
  /// sqrt(<t : t>) over the grid.
  double rms() const;

 private:
  Grid grid_;
  int ncomp_ = 0;
  std::vector<double> data_;
};

void require_same_grid(const Grid& a, const Grid& b);
void require_positive(const ScalarField& f, const char* name);

}  // namespace elastomap
