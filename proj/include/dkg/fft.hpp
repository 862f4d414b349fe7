#ifndef DKG_FFT_HPP
#define DKG_FFT_HPP

#include <complex>
#include <cstddef>
#include <span>

namespace dkg::fft {

// Thin RAII layer over FFTW. All transforms are unnormalized; forward uses the
// e^{-i} kernel. Plan creation and destruction are serialized internally since
// the FFTW planner is not thread-safe; execution is not.

enum class Direction { forward, backward };

/// Reusable 1D plan executable on any array of length n.
class Plan1D {
 public:
  Plan1D(std::size_t n, Direction dir);
  ~Plan1D();
  Plan1D(const Plan1D&) = delete;
  Plan1D& operator=(const Plan1D&) = delete;
  Plan1D(Plan1D&& other) noexcept;
  Plan1D& operator=(Plan1D&& other) noexcept;

  std::size_t size() const { return n_; }
  void execute(std::span<std::complex<double>> data) const;

 private:
  std::size_t n_ = 0;
  void* plan_ = nullptr;
};

/// In-place 2D transform of a row-major rows x cols array.
void dft_2d(std::span<std::complex<double>> data, std::size_t rows, std::size_t cols, Direction dir);

/// In-place 1D transform.
void dft_1d(std::span<std::complex<double>> data, Direction dir);

/// Smallest n' >= n of the form 2^a 3^b 5^c 7^d.
std::size_t good_size(std::size_t n);

}  // namespace dkg::fft

#endif  // DKG_FFT_HPP
