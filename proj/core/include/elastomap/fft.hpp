#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "elastomap/grid.hpp"

namespace elastomap {

// In-place complex DFT over a grid with `ncomp` interleaved components per
// point. forward() applies the mean-normalized transform
//   f^(xi) = 1/N sum_x f(x) exp(-2 pi i x.xi),
// backward() the plain synthesis sum, so backward(forward(f)) == f.
class FourierTransform {
 public:
  FourierTransform(const Grid& grid, int ncomp);
  ~FourierTransform();
  FourierTransform(FourierTransform&&) noexcept;
  FourierTransform& operator=(FourierTransform&&) noexcept;
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  const Grid& grid() const noexcept { return grid_; }
  int ncomp() const noexcept { return ncomp_; }
  std::complex<double>* data() noexcept { return buffer_.data(); }
  const std::complex<double>* data() const noexcept { return buffer_.data(); }
  std::complex<double>* mode(std::size_t idx) noexcept { return buffer_.data() + idx * ncomp_; }

  /// Loads real data (size N * ncomp, interleaved) into the buffer.
  void load(const std::vector<double>& real);
  /// Extracts the real part of the buffer.
  void store_real(std::vector<double>& real) const;

  void forward();
  void backward();

 private:
  struct Plans;
  Grid grid_;
  int ncomp_;
  std::vector<std::complex<double>> buffer_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace elastomap
