#include "dkg/spacetime_norms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dkg/fft.hpp"

namespace dkg {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && std::has_single_bit(n); }

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

/// exp(sign * 2 pi i * (q * mult + offset) / n) for q = 0..n-1, reduced exactly mod n.
std::vector<cplx> phase_ramp(std::size_t n, std::int64_t mult, std::int64_t offset, double sign) {
  const auto nn = static_cast<std::int64_t>(n);
  std::vector<cplx> out(n);
  for (std::size_t q = 0; q < n; ++q) {
    const std::int64_t r = mod(mod(static_cast<std::int64_t>(q), nn) * mod(mult, nn) + mod(offset, nn), nn);
    const double angle = sign * kTwoPi * static_cast<double>(r) / static_cast<double>(n);
    out[q] = {std::cos(angle), std::sin(angle)};
  }
  return out;
}

// Phase factors that turn an FFT along one axis into the centered transform.
//   forward:  pre[j] = e^{-2 pi i j f / n},  post[k] = e^{+2 pi i c (k + f) / n}
//   inverse:  pre[k] = e^{-2 pi i c (k + f) / n}, post[j] = e^{+2 pi i j f / n}
struct AxisPhases {
  std::vector<cplx> pre;
  std::vector<cplx> post;
};

AxisPhases forward_phases(std::size_t n, std::int64_t first) {
  const auto c = static_cast<std::int64_t>(n / 2);
  return {phase_ramp(n, first, 0, -1.0), phase_ramp(n, c, c * first, +1.0)};
}

AxisPhases inverse_phases(std::size_t n, std::int64_t first) {
  const auto c = static_cast<std::int64_t>(n / 2);
  return {phase_ramp(n, c, c * first, -1.0), phase_ramp(n, first, 0, +1.0)};
}

void require_finite(std::span<const cplx> v) {
  for (const cplx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::domain_error("non-finite value in grid function");
}

}  // namespace

Grid2D Grid2D::centered(std::size_t n_t, std::size_t n_x, double t_extent, double x_extent) {
  if (!is_pow2(n_t) || !is_pow2(n_x)) throw std::invalid_argument("Grid2D: n_t and n_x must be powers of two");
  if (!(t_extent > 0.0) || !(x_extent > 0.0) || !std::isfinite(t_extent) || !std::isfinite(x_extent))
    throw std::invalid_argument("Grid2D: extents must be positive and finite");
  return Grid2D{n_t, n_x, t_extent, x_extent, -static_cast<std::int64_t>(n_t / 2),
                -static_cast<std::int64_t>(n_x / 2)};
}

Grid2D Grid2D::window(std::size_t n_t, std::size_t n_x, double dtau, double dxi, std::int64_t tau_first,
                      std::int64_t xi_first) {
  if (n_t == 0 || n_x == 0) throw std::invalid_argument("Grid2D: empty window");
  if (!(dtau > 0.0) || !(dxi > 0.0)) throw std::invalid_argument("Grid2D: spacings must be positive");
  return Grid2D{n_t, n_x, kTwoPi / dtau, kTwoPi / dxi, tau_first, xi_first};
}

bool Grid2D::is_centered() const {
  return tau_first == -static_cast<std::int64_t>(n_t / 2) && xi_first == -static_cast<std::int64_t>(n_x / 2);
}

bool Grid2D::same_spacing(const Grid2D& other) const {
  return t_extent == other.t_extent && x_extent == other.x_extent;
}

GridFunction2D::GridFunction2D(Grid2D grid, Side side, std::vector<cplx> values)
    : grid_(grid), side_(side), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("GridFunction2D: size mismatch between declared grid and value array");
}

GridFunction2D GridFunction2D::sample(const Grid2D& grid, Side side, const std::function<cplx(double, double)>& f) {
  std::vector<cplx> v(grid.size());
  for (std::size_t r = 0; r < grid.n_t; ++r) {
    const double a = side == Side::physical ? grid.t(r) : grid.tau(r);
    for (std::size_t c = 0; c < grid.n_x; ++c) {
      const double b = side == Side::physical ? grid.x(c) : grid.xi(c);
      v[r * grid.n_x + c] = f(a, b);
    }
  }
  return GridFunction2D(grid, side, std::move(v));
}

GridFunction2D GridFunction2D::zeros(const Grid2D& grid, Side side) {
  return GridFunction2D(grid, side, std::vector<cplx>(grid.size()));
}

double norm_weight(const NormIndex& idx, double tau, double xi) {
  double hyper = 0.0;
  switch (idx.flavor) {
    case Flavor::x_plus: hyper = tau + xi; break;
    case Flavor::x_minus: hyper = tau - xi; break;
    case Flavor::h: hyper = std::abs(tau) - std::abs(xi); break;
  }
  double w = 1.0;
  if (idx.a != 0.0) w *= std::pow(bracket(xi), idx.a);
  if (idx.alpha != 0.0) w *= std::pow(bracket(hyper), idx.alpha);
  return w;
}

GridFunction2D transform(const GridFunction2D& u) {
  if (u.side() != Side::physical) throw std::invalid_argument("transform: input must be on the physical side");
  const Grid2D& g = u.grid();
  const AxisPhases pt = forward_phases(g.n_t, g.tau_first);
  const AxisPhases px = forward_phases(g.n_x, g.xi_first);

  std::vector<cplx> buf(u.values().begin(), u.values().end());
  for (std::size_t j = 0; j < g.n_t; ++j)
    for (std::size_t m = 0; m < g.n_x; ++m) buf[j * g.n_x + m] *= pt.pre[j] * px.pre[m];
  fft::dft_2d(buf, g.n_t, g.n_x, fft::Direction::forward);
  const double cell = g.dt() * g.dx();
  for (std::size_t k = 0; k < g.n_t; ++k)
    for (std::size_t l = 0; l < g.n_x; ++l) buf[k * g.n_x + l] *= cell * pt.post[k] * px.post[l];
  return GridFunction2D(g, Side::fourier, std::move(buf));
}

GridFunction2D inverse_transform(const GridFunction2D& u_hat) {
  if (u_hat.side() != Side::fourier) throw std::invalid_argument("inverse_transform: input must be on the Fourier side");
  const Grid2D& g = u_hat.grid();
  const AxisPhases pt = inverse_phases(g.n_t, g.tau_first);
  const AxisPhases px = inverse_phases(g.n_x, g.xi_first);

  std::vector<cplx> buf(u_hat.values().begin(), u_hat.values().end());
  for (std::size_t k = 0; k < g.n_t; ++k)
    for (std::size_t l = 0; l < g.n_x; ++l) buf[k * g.n_x + l] *= pt.pre[k] * px.pre[l];
  fft::dft_2d(buf, g.n_t, g.n_x, fft::Direction::backward);
  const double scale = 1.0 / (g.t_extent * g.x_extent);
  for (std::size_t j = 0; j < g.n_t; ++j)
    for (std::size_t m = 0; m < g.n_x; ++m) buf[j * g.n_x + m] *= scale * pt.post[j] * px.post[m];
  return GridFunction2D(g, Side::physical, std::move(buf));
}

double weighted_norm(const GridFunction2D& u_hat, const NormIndex& idx) {
  if (u_hat.side() != Side::fourier) throw std::invalid_argument("weighted_norm: input must be on the Fourier side");
  require_finite(u_hat.values());
  const Grid2D& g = u_hat.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < g.n_t; ++k) {
    const double tau = g.tau(k);
    for (std::size_t l = 0; l < g.n_x; ++l) {
      const double mag2 = std::norm(u_hat(k, l));
      if (mag2 == 0.0) continue;
      const double w = norm_weight(idx, tau, g.xi(l));
      sum += w * w * mag2;
    }
  }
  return std::sqrt(sum * g.dtau() * g.dxi());
}

double l2_norm(const GridFunction2D& u) {
  const Grid2D& g = u.grid();
  const double cell = u.side() == Side::physical ? g.dt() * g.dx() : g.dtau() * g.dxi();
  double sum = 0.0;
  for (const cplx& z : u.values()) sum += std::norm(z);
  return std::sqrt(sum * cell);
}

GridFunction2D bilinear_convolution_full(const GridFunction2D& f_hat, const GridFunction2D& g_hat) {
  if (f_hat.side() != Side::fourier || g_hat.side() != Side::fourier)
    throw std::invalid_argument("bilinear_convolution: inputs must be on the Fourier side");
  const Grid2D& fg = f_hat.grid();
  const Grid2D& gg = g_hat.grid();
  if (!fg.same_spacing(gg)) throw std::invalid_argument("bilinear_convolution: grid mismatch");

  // K[k] = sum_p F[p] G[p - k + nG - 1] is a linear convolution of F with reversed G.
  const std::size_t out_t = fg.n_t + gg.n_t - 1;
  const std::size_t out_x = fg.n_x + gg.n_x - 1;
  const std::size_t pad_t = fft::good_size(out_t);
  const std::size_t pad_x = fft::good_size(out_x);

  std::vector<cplx> a(pad_t * pad_x);
  std::vector<cplx> b(pad_t * pad_x);
  for (std::size_t k = 0; k < fg.n_t; ++k)
    for (std::size_t l = 0; l < fg.n_x; ++l) a[k * pad_x + l] = f_hat(k, l);
  for (std::size_t k = 0; k < gg.n_t; ++k)
    for (std::size_t l = 0; l < gg.n_x; ++l) b[(gg.n_t - 1 - k) * pad_x + (gg.n_x - 1 - l)] = g_hat(k, l);

  fft::dft_2d(a, pad_t, pad_x, fft::Direction::forward);
  fft::dft_2d(b, pad_t, pad_x, fft::Direction::forward);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  b.clear();
  b.shrink_to_fit();
  fft::dft_2d(a, pad_t, pad_x, fft::Direction::backward);

  const double scale = fg.dtau() * fg.dxi() / static_cast<double>(pad_t * pad_x);
  std::vector<cplx> out(out_t * out_x);
  for (std::size_t k = 0; k < out_t; ++k)
    for (std::size_t l = 0; l < out_x; ++l) out[k * out_x + l] = scale * a[k * pad_x + l];

  const Grid2D og{out_t,
                  out_x,
                  fg.t_extent,
                  fg.x_extent,
                  fg.tau_first - (gg.tau_first + static_cast<std::int64_t>(gg.n_t) - 1),
                  fg.xi_first - (gg.xi_first + static_cast<std::int64_t>(gg.n_x) - 1)};
  return GridFunction2D(og, Side::fourier, std::move(out));
}

GridFunction2D bilinear_convolution(const GridFunction2D& f_hat, const GridFunction2D& g_hat) {
  if (!(f_hat.grid() == g_hat.grid())) throw std::invalid_argument("bilinear_convolution: grid mismatch");
  const GridFunction2D full = bilinear_convolution_full(f_hat, g_hat);
  const Grid2D& g = f_hat.grid();
  const Grid2D& fo = full.grid();
  std::vector<cplx> out(g.size());
  for (std::size_t k = 0; k < g.n_t; ++k) {
    const std::int64_t kk = g.tau_first + static_cast<std::int64_t>(k) - fo.tau_first;
    if (kk < 0 || kk >= static_cast<std::int64_t>(fo.n_t)) continue;
    for (std::size_t l = 0; l < g.n_x; ++l) {
      const std::int64_t ll = g.xi_first + static_cast<std::int64_t>(l) - fo.xi_first;
      if (ll < 0 || ll >= static_cast<std::int64_t>(fo.n_x)) continue;
      out[k * g.n_x + l] = full(static_cast<std::size_t>(kk), static_cast<std::size_t>(ll));
    }
  }
  return GridFunction2D(g, Side::fourier, std::move(out));
}

GridFunction2D pointwise_product(const GridFunction2D& u, const GridFunction2D& v, bool conjugate_second) {
  if (u.side() != Side::physical || v.side() != Side::physical)
    throw std::invalid_argument("pointwise_product: inputs must be on the physical side");
  if (!(u.grid() == v.grid())) throw std::invalid_argument("pointwise_product: grid mismatch");
  std::vector<cplx> w(u.values().size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = u.values()[i] * (conjugate_second ? std::conj(v.values()[i]) : v.values()[i]);
  return GridFunction2D(u.grid(), Side::physical, std::move(w));
}

double product_norm(const GridFunction2D& u, const GridFunction2D& v, const NormIndex& idx, bool conjugate_second) {
  return weighted_norm(transform(pointwise_product(u, v, conjugate_second)), idx);
}

GridFunction2D conjugate(const GridFunction2D& u) {
  std::vector<cplx> w(u.values().begin(), u.values().end());
  for (cplx& z : w) z = std::conj(z);
  return GridFunction2D(u.grid(), u.side(), std::move(w));
}

GridFunction2D reflect_x(const GridFunction2D& u) {
  if (u.side() != Side::physical) throw std::invalid_argument("reflect_x: input must be on the physical side");
  const Grid2D& g = u.grid();
  const auto n = static_cast<std::int64_t>(g.n_x);
  const auto c = static_cast<std::int64_t>(g.n_x / 2);
  std::vector<cplx> w(g.size());
  for (std::size_t j = 0; j < g.n_t; ++j)
    for (std::size_t m = 0; m < g.n_x; ++m)
      w[j * g.n_x + m] = u(j, static_cast<std::size_t>(mod(2 * c - static_cast<std::int64_t>(m), n)));
  return GridFunction2D(g, Side::physical, std::move(w));
}

double boundary_ratio(const GridFunction2D& u) {
  const Grid2D& g = u.grid();
  double peak = 0.0;
  for (const cplx& z : u.values()) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return 0.0;
  double edge = 0.0;
  for (std::size_t m = 0; m < g.n_x; ++m) edge = std::max({edge, std::abs(u(0, m)), std::abs(u(g.n_t - 1, m))});
  for (std::size_t j = 0; j < g.n_t; ++j) edge = std::max({edge, std::abs(u(j, 0)), std::abs(u(j, g.n_x - 1))});
  return edge / peak;
}

void require_boundary_decay(const GridFunction2D& u, double tol) {
  const double r = boundary_ratio(u);
  if (r > tol)
    throw std::domain_error("grid function does not decay at the domain boundary (ratio " + std::to_string(r) + ")");
}

std::vector<cplx> spatial_transform(const Grid2D& grid, std::span<const cplx> f) {
  if (f.size() != grid.n_x) throw std::invalid_argument("spatial_transform: size mismatch");
  const AxisPhases p = forward_phases(grid.n_x, grid.xi_first);
  std::vector<cplx> buf(f.begin(), f.end());
  for (std::size_t m = 0; m < buf.size(); ++m) buf[m] *= p.pre[m];
  fft::dft_1d(buf, fft::Direction::forward);
  for (std::size_t l = 0; l < buf.size(); ++l) buf[l] *= grid.dx() * p.post[l];
  return buf;
}

std::vector<cplx> inverse_spatial_transform(const Grid2D& grid, std::span<const cplx> f_hat) {
  if (f_hat.size() != grid.n_x) throw std::invalid_argument("inverse_spatial_transform: size mismatch");
  const AxisPhases p = inverse_phases(grid.n_x, grid.xi_first);
  std::vector<cplx> buf(f_hat.begin(), f_hat.end());
  for (std::size_t l = 0; l < buf.size(); ++l) buf[l] *= p.pre[l];
  fft::dft_1d(buf, fft::Direction::backward);
  for (std::size_t m = 0; m < buf.size(); ++m) buf[m] *= p.post[m] / grid.x_extent;
  return buf;
}

std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::x_plus: return "X_plus";
    case Flavor::x_minus: return "X_minus";
    case Flavor::h: return "H";
  }
  return "?";
}

Flavor parse_flavor(std::string_view s) {
  if (s == "X_plus" || s == "x_plus" || s == "X+" || s == "plus") return Flavor::x_plus;
  if (s == "X_minus" || s == "x_minus" || s == "X-" || s == "minus") return Flavor::x_minus;
  if (s == "H" || s == "h") return Flavor::h;
  throw std::invalid_argument("unknown norm flavor '" + std::string(s) + "'");
}

}  // namespace dkg
