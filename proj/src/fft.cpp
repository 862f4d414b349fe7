#include "dkg/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dkg::fft {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int fftw_sign(Direction dir) { return dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD; }

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Plan1D::Plan1D(std::size_t n, Direction dir) : n_(n) {
  if (n == 0) throw std::invalid_argument("fft: zero-length plan");
  // Planning with FFTW_ESTIMATE does not touch the scratch buffer.
  std::vector<std::complex<double>> scratch(n);
  std::lock_guard lock(planner_mutex());
  plan_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(scratch.data()), as_fftw(scratch.data()), fftw_sign(dir),
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan_ == nullptr) throw std::runtime_error("fft: planner failed");
}

Plan1D::~Plan1D() {
  if (plan_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
}

Plan1D::Plan1D(Plan1D&& other) noexcept : n_(other.n_), plan_(std::exchange(other.plan_, nullptr)) {}

Plan1D& Plan1D::operator=(Plan1D&& other) noexcept {
  if (this != &other) {
    std::swap(n_, other.n_);
    std::swap(plan_, other.plan_);
  }
  return *this;
}

void Plan1D::execute(std::span<std::complex<double>> data) const {
  if (data.size() != n_) throw std::invalid_argument("fft: plan/array length mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(plan_), as_fftw(data.data()), as_fftw(data.data()));
}

void dft_2d(std::span<std::complex<double>> data, std::size_t rows, std::size_t cols, Direction dir) {
  if (rows * cols != data.size() || data.empty()) throw std::invalid_argument("fft: 2d shape mismatch");
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), as_fftw(data.data()),
                            as_fftw(data.data()), fftw_sign(dir), FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("fft: planner failed");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

void dft_1d(std::span<std::complex<double>> data, Direction dir) { Plan1D(data.size(), dir).execute(data); }

std::size_t good_size(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t m = n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u, 7u})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

}  // namespace dkg::fft
