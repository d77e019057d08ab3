#include "elastomap/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace elastomap {

namespace {
// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct FourierTransform::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

FourierTransform::FourierTransform(const Grid& grid, int ncomp)
    : grid_(grid), ncomp_(ncomp), buffer_(grid.size() * ncomp), plans_(std::make_unique<Plans>()) {
  int n[3];
  for (int a = 0; a < grid.dim(); ++a) n[a] = grid.extent(a);
  auto* buf = reinterpret_cast<fftw_complex*>(buffer_.data());
  std::lock_guard lock(planner_mutex());
  // Component c of point x lives at buf[x * ncomp + c]: stride ncomp, distance 1.
  plans_->forward = fftw_plan_many_dft(grid.dim(), n, ncomp, buf, nullptr, ncomp, 1, buf, nullptr,
                                       ncomp, 1, FFTW_FORWARD, FFTW_ESTIMATE);
  plans_->backward = fftw_plan_many_dft(grid.dim(), n, ncomp, buf, nullptr, ncomp, 1, buf, nullptr,
                                        ncomp, 1, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FourierTransform::~FourierTransform() = default;
FourierTransform::FourierTransform(FourierTransform&&) noexcept = default;
FourierTransform& FourierTransform::operator=(FourierTransform&&) noexcept = default;

void FourierTransform::load(const std::vector<double>& real) {
  for (std::size_t i = 0; i < buffer_.size(); ++i) buffer_[i] = {real[i], 0.0};
}

void FourierTransform::store_real(std::vector<double>& real) const {
  real.resize(buffer_.size());
  for (std::size_t i = 0; i < buffer_.size(); ++i) real[i] = buffer_[i].real();
}

void FourierTransform::forward() {
  fftw_execute(plans_->forward);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (auto& z : buffer_) z *= scale;
}

void FourierTransform::backward() { fftw_execute(plans_->backward); }

}  // namespace elastomap
