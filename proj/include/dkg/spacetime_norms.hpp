#ifndef DKG_SPACETIME_NORMS_HPP
#define DKG_SPACETIME_NORMS_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace dkg {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Transform conventions (all 2*pi factors live here):
//
//   forward   u~(tau, xi) = sum_{j,m} exp(-i (t_j tau + x_m xi)) u(t_j, x_m) dt dx
//   inverse   u(t, x)     = (2 pi)^-2 sum_{k,l} exp(+i (t tau_k + x xi_l)) u~(tau_k, xi_l) dtau dxi
//
// Plancherel:  sum |u~|^2 dtau dxi = (2 pi)^2 sum |u|^2 dt dx.
// Products:    (u conj(v))~(tau, xi) = (2 pi)^-2 int u~(l, e) conj(v~(l - tau, e - xi)) dl de
//              (u v)~(tau, xi)       = (2 pi)^-2 int u~(l, e) v~(tau - l, xi - e) dl de
// The 1D spatial transform f^(xi) = sum_m exp(-i x_m xi) f(x_m) dx follows the same pattern.

/// Uniform space-time grid and its dual frequency lattice.
///
/// Physical samples sit at t_j = (j - n_t/2) dt with dt = t_extent / n_t (same
/// for x). Frequencies are tau_k = (tau_first + k) dtau with dtau = 2 pi / t_extent;
/// the centered lattice has tau_first = -n_t/2. Frequency windows (used for
/// strip-supported functions) carry an arbitrary integer tau_first / xi_first.
struct Grid2D {
  std::size_t n_t = 0;
  std::size_t n_x = 0;
  double t_extent = 0.0;
  double x_extent = 0.0;
  std::int64_t tau_first = 0;
  std::int64_t xi_first = 0;

  /// Centered grid; n_t and n_x must be powers of two.
  static Grid2D centered(std::size_t n_t, std::size_t n_x, double t_extent, double x_extent);
  /// Frequency window of arbitrary size with spacings (dtau, dxi) starting at
  /// tau = tau_first * dtau, xi = xi_first * dxi.
  static Grid2D window(std::size_t n_t, std::size_t n_x, double dtau, double dxi, std::int64_t tau_first,
                       std::int64_t xi_first);

  double dt() const { return t_extent / static_cast<double>(n_t); }
  double dx() const { return x_extent / static_cast<double>(n_x); }
  double dtau() const { return kTwoPi / t_extent; }
  double dxi() const { return kTwoPi / x_extent; }
  std::size_t size() const { return n_t * n_x; }

  double t(std::size_t j) const { return (static_cast<double>(j) - static_cast<double>(n_t / 2)) * dt(); }
  double x(std::size_t m) const { return (static_cast<double>(m) - static_cast<double>(n_x / 2)) * dx(); }
  double tau(std::size_t k) const { return static_cast<double>(tau_first + static_cast<std::int64_t>(k)) * dtau(); }
  double xi(std::size_t l) const { return static_cast<double>(xi_first + static_cast<std::int64_t>(l)) * dxi(); }

  bool is_centered() const;
  bool same_spacing(const Grid2D& other) const;
  friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

enum class Side { physical, fourier };

/// Complex samples on a Grid2D, row-major in t. Values are fixed at construction.
class GridFunction2D {
 public:
  GridFunction2D(Grid2D grid, Side side, std::vector<cplx> values);

  /// Samples f(t, x) (physical side) or f(tau, xi) (Fourier side) on the grid.
  static GridFunction2D sample(const Grid2D& grid, Side side, const std::function<cplx(double, double)>& f);
  static GridFunction2D zeros(const Grid2D& grid, Side side);

  const Grid2D& grid() const { return grid_; }
  Side side() const { return side_; }
  std::span<const cplx> values() const { return values_; }
  const cplx& operator()(std::size_t row, std::size_t col) const { return values_[row * grid_.n_x + col]; }

 private:
  Grid2D grid_;
  Side side_;
  std::vector<cplx> values_;
};

enum class Flavor { x_plus, x_minus, h };

/// Exponents of a space-time norm: <xi>^a <tau +- xi>^alpha (X+-) or
/// <xi>^a <|tau| - |xi|>^alpha (H).
struct NormIndex {
  double a = 0.0;
  double alpha = 0.0;
  Flavor flavor = Flavor::h;
};

/// <x> = 1 + |x|.
inline double bracket(double x) { return 1.0 + (x < 0.0 ? -x : x); }

double norm_weight(const NormIndex& idx, double tau, double xi);

GridFunction2D transform(const GridFunction2D& u);
GridFunction2D inverse_transform(const GridFunction2D& u_hat);

/// Discrete L^2(dtau dxi) norm of the weighted Fourier samples. With a = alpha = 0
/// this is 2 pi times the physical L^2 norm.
double weighted_norm(const GridFunction2D& u_hat, const NormIndex& idx);

/// sqrt(sum |u|^2 * cell area); physical side gives the L^2(dt dx) norm.
double l2_norm(const GridFunction2D& u);

/// Kernel  K(tau, xi) = sum F(l, e) G(l - tau, e - xi) dtau dxi  with G = 0 off its
/// window. Output covers every (tau, xi) where K can be nonzero. F and G may sit on
/// different windows of a common lattice. FFT-based.
GridFunction2D bilinear_convolution_full(const GridFunction2D& f_hat, const GridFunction2D& g_hat);

/// The same kernel restricted to the shared grid of F and G.
GridFunction2D bilinear_convolution(const GridFunction2D& f_hat, const GridFunction2D& g_hat);

/// Pointwise u*v or u*conj(v) on the physical side.
GridFunction2D pointwise_product(const GridFunction2D& u, const GridFunction2D& v, bool conjugate_second);

/// || u v ||  or  || u conj(v) ||  in the indexed norm, via product then transform.
double product_norm(const GridFunction2D& u, const GridFunction2D& v, const NormIndex& idx, bool conjugate_second);

/// Pointwise complex conjugate (either side; on the Fourier side this conjugates
/// the stored samples, it does not transform the conjugated function).
GridFunction2D conjugate(const GridFunction2D& u);
/// Physical-side reflection x -> -x (periodic index map m -> -m).
GridFunction2D reflect_x(const GridFunction2D& u);

/// Largest |u| on the outermost rows and columns divided by max |u| (0 for u == 0).
double boundary_ratio(const GridFunction2D& u);
/// Throws std::domain_error if boundary_ratio(u) > tol.
void require_boundary_decay(const GridFunction2D& u, double tol = 1e-12);

// 1D spatial transform on the x-axis of a grid (centered physical samples,
// frequencies xi_l = (xi_first + l) dxi).
std::vector<cplx> spatial_transform(const Grid2D& grid, std::span<const cplx> f);
std::vector<cplx> inverse_spatial_transform(const Grid2D& grid, std::span<const cplx> f_hat);

// Binary layout: n_t, n_x (uint64), t_extent, x_extent (float64), side (uint64,
// 0 physical / 1 fourier), all little-endian, then interleaved re/im float64
// samples row-major in t. Only centered grids are representable.
void write_grid_function(std::ostream& out, const GridFunction2D& u);
GridFunction2D read_grid_function(std::istream& in);
void save_grid_function(const std::string_view path, const GridFunction2D& u);
GridFunction2D load_grid_function(const std::string_view path);

std::string_view to_string(Flavor f);
Flavor parse_flavor(std::string_view s);

}  // namespace dkg

#endif  // DKG_SPACETIME_NORMS_HPP
