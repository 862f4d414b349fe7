#include "dkg/solver.hpp"

#include <cmath>
#include <map>
#include <random>
#include <string>

#include "dkg/fft.hpp"
#include "dkg/spacetime_norms.hpp"

namespace dkg {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct PlanPair {
  fft::Plan1D forward;
  fft::Plan1D backward;
};

// Plans are reused across steps; one cache per thread since execution of a
// shared plan on different arrays is fine but the map itself is not.
const PlanPair& plans(std::size_t n) {
  thread_local std::map<std::size_t, PlanPair> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, PlanPair{fft::Plan1D(n, fft::Direction::forward), fft::Plan1D(n, fft::Direction::backward)})
             .first;
  return it->second;
}

void forward(std::vector<cplx>& a) { plans(a.size()).forward.execute(a); }

void backward(std::vector<cplx>& a) {
  plans(a.size()).backward.execute(a);
  const double inv = 1.0 / static_cast<double>(a.size());
  for (cplx& z : a) z *= inv;
}

std::vector<cplx> complexify(std::span<const double> f) { return {f.begin(), f.end()}; }

void check_size(std::size_t got, const GridSpec1D& grid, const char* what) {
  if (got != grid.n_x) throw std::invalid_argument(std::string("size mismatch: ") + what + " does not match the grid");
}

double bracket_pow(double xi, double s) { return std::pow(1.0 + xi * xi, 0.5 * s); }

// dx/n sum <xi>^{2s} |F_k|^2 over the FFT F of f.
double spectral_sum(std::vector<cplx> f, const GridSpec1D& grid, double s) {
  forward(f);
  double acc = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double w = bracket_pow(grid.xi(k), s);
    acc += w * w * std::norm(f[k]);
  }
  return acc * grid.dx() / static_cast<double>(grid.n_x);
}

bool all_finite(const DKGState& st) {
  for (std::size_t j = 0; j < st.grid.n_x; ++j) {
    const double sum = st.psi_plus[j].real() + st.psi_plus[j].imag() + st.psi_minus[j].real() +
                       st.psi_minus[j].imag() + st.phi[j] + st.phi_t[j];
    if (!std::isfinite(sum)) return false;
  }
  return true;
}

// Random-phase coefficients <xi>^{-p} e^{i theta} in FFT ordering.
std::vector<cplx> rough_coefficients(double p, std::mt19937_64& rng, const GridSpec1D& grid) {
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::vector<cplx> c(grid.n_x);
  for (std::size_t k = 0; k < grid.n_x; ++k) c[k] = std::polar(bracket_pow(grid.xi(k), -p), phase(rng));
  return c;
}

}  // namespace

double GridSpec1D::x(std::size_t j) const {
  return (static_cast<double>(j) - static_cast<double>(n_x / 2)) * dx();
}

double GridSpec1D::xi(std::size_t k) const {
  const auto n = static_cast<std::int64_t>(n_x);
  auto kk = static_cast<std::int64_t>(k);
  if (kk >= n / 2) kk -= n;
  return static_cast<double>(kk) * kTwoPi / x_extent;
}

void GridSpec1D::validate() const {
  if (n_x < 2 || (n_x & (n_x - 1)) != 0) throw std::invalid_argument("GridSpec1D: n_x must be a power of two >= 2");
  if (!(x_extent > 0.0) || !std::isfinite(x_extent)) throw std::invalid_argument("GridSpec1D: x_extent must be positive");
}

Spinor DKGState::spinor(std::size_t j) const {
  return {kInvSqrt2 * (psi_plus[j] + psi_minus[j]), kInvSqrt2 * (psi_plus[j] - psi_minus[j])};
}

std::vector<Spinor> DKGState::spinor_field() const {
  std::vector<Spinor> out(grid.n_x);
  for (std::size_t j = 0; j < grid.n_x; ++j) out[j] = spinor(j);
  return out;
}

double default_dt(const GridSpec1D& grid) { return 0.5 * grid.dx(); }

DKGState init_state(std::span<const Spinor> psi0, std::span<const double> phi0, std::span<const double> phi1,
                    double M, double m, const GridSpec1D& grid) {
  grid.validate();
  check_size(psi0.size(), grid, "psi0");
  check_size(phi0.size(), grid, "phi0");
  check_size(phi1.size(), grid, "phi1");
  if (!(M >= 0.0) || !(m >= 0.0)) throw std::invalid_argument("init_state: masses must be nonnegative");
  DKGState st;
  st.grid = grid;
  st.M = M;
  st.m = m;
  st.psi_plus.resize(grid.n_x);
  st.psi_minus.resize(grid.n_x);
  for (std::size_t j = 0; j < grid.n_x; ++j) {
    // P+ psi = a (1,1)/sqrt2 with a = (psi1 + psi2)/sqrt2, likewise for P-.
    const auto [plus, minus] = decompose(psi0[j]);
    st.psi_plus[j] = kInvSqrt2 * (plus.c1 + plus.c2);
    st.psi_minus[j] = kInvSqrt2 * (minus.c1 - minus.c2);
  }
  st.phi.assign(phi0.begin(), phi0.end());
  st.phi_t.assign(phi1.begin(), phi1.end());
  return st;
}

DKGState init_state(std::span<const Spinor> psi0, std::span<const cplx> phi0, std::span<const cplx> phi1,
                    double M, double m, const GridSpec1D& grid) {
  auto real_part = [](std::span<const cplx> f, const char* what) {
    std::vector<double> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (f[j].imag() != 0.0) throw std::invalid_argument(std::string(what) + " must be real-valued");
      out[j] = f[j].real();
    }
    return out;
  };
  const auto p0 = real_part(phi0, "phi0");
  const auto p1 = real_part(phi1, "phi1");
  return init_state(psi0, p0, p1, M, m, grid);
}

void half_wave_flow(DKGState& st, double dt) {
  if (dt == 0.0) return;
  forward(st.psi_plus);
  forward(st.psi_minus);
  for (std::size_t k = 0; k < st.grid.n_x; ++k) {
    const double xi = st.grid.xi(k);
    st.psi_plus[k] *= std::polar(1.0, -(xi + st.M) * dt);
    st.psi_minus[k] *= std::polar(1.0, -(-xi + st.M) * dt);
  }
  backward(st.psi_plus);
  backward(st.psi_minus);
}

void kg_flow(DKGState& st, double dt) {
  if (dt == 0.0) return;
  std::vector<cplx> p = complexify(st.phi);
  std::vector<cplx> q = complexify(st.phi_t);
  forward(p);
  forward(q);
  for (std::size_t k = 0; k < st.grid.n_x; ++k) {
    const double xi = st.grid.xi(k);
    const double w = std::sqrt(xi * xi + st.m * st.m);
    const double c = std::cos(w * dt);
    const double wt = w * dt;
    // sin(w dt)/w, with its Taylor series near w = 0.
    const double sinc = std::abs(wt) < 1e-4 ? dt * (1.0 - wt * wt / 6.0) : std::sin(wt) / w;
    const cplx np = c * p[k] + sinc * q[k];
    const cplx nq = -w * w * sinc * p[k] + c * q[k];
    p[k] = np;
    q[k] = nq;
  }
  backward(p);
  backward(q);
  for (std::size_t j = 0; j < st.grid.n_x; ++j) {
    st.phi[j] = p[j].real();
    st.phi_t[j] = q[j].real();
  }
}

void coupling_flow(DKGState& st, double dt) {
  if (dt == 0.0) return;
  for (std::size_t j = 0; j < st.grid.n_x; ++j) {
    Spinor psi = st.spinor(j);
    // exp(i phi dt beta) with beta = diag(1, -1).
    psi.c1 *= std::polar(1.0, st.phi[j] * dt);
    psi.c2 *= std::polar(1.0, -st.phi[j] * dt);
    st.psi_plus[j] = kInvSqrt2 * (psi.c1 + psi.c2);
    st.psi_minus[j] = kInvSqrt2 * (psi.c1 - psi.c2);
    st.phi_t[j] += dt * null_form(psi, psi).real();
  }
}

void step(DKGState& st, double dt, Splitting splitting) {
  if (splitting == Splitting::strang) {
    coupling_flow(st, 0.5 * dt);
    half_wave_flow(st, dt);
    kg_flow(st, dt);
    coupling_flow(st, 0.5 * dt);
  } else {
    coupling_flow(st, dt);
    half_wave_flow(st, dt);
    kg_flow(st, dt);
  }
  st.t += dt;
}

double charge(const DKGState& st) {
  double acc = 0.0;
  for (std::size_t j = 0; j < st.grid.n_x; ++j) acc += std::norm(st.psi_plus[j]) + std::norm(st.psi_minus[j]);
  return std::sqrt(acc * st.grid.dx());
}

double sobolev_norm(std::span<const cplx> f, const GridSpec1D& grid, double s) {
  check_size(f.size(), grid, "field");
  return std::sqrt(spectral_sum({f.begin(), f.end()}, grid, s));
}

double sobolev_norm(std::span<const double> f, const GridSpec1D& grid, double s) {
  check_size(f.size(), grid, "field");
  return std::sqrt(spectral_sum(complexify(f), grid, s));
}

double sobolev_norm(std::span<const Spinor> psi, const GridSpec1D& grid, double s) {
  check_size(psi.size(), grid, "spinor field");
  std::vector<cplx> c1(psi.size()), c2(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) {
    c1[j] = psi[j].c1;
    c2[j] = psi[j].c2;
  }
  return std::sqrt(spectral_sum(std::move(c1), grid, s) + spectral_sum(std::move(c2), grid, s));
}

double kg_energy(const DKGState& st) {
  std::vector<cplx> p = complexify(st.phi);
  std::vector<cplx> q = complexify(st.phi_t);
  forward(p);
  forward(q);
  double acc = 0.0;
  for (std::size_t k = 0; k < st.grid.n_x; ++k) {
    const double xi = st.grid.xi(k);
    acc += std::norm(q[k]) + (xi * xi + st.m * st.m) * std::norm(p[k]);
  }
  return 0.5 * acc * st.grid.dx() / static_cast<double>(st.grid.n_x);
}

std::vector<Spinor> rough_data(double s, std::uint64_t seed, const GridSpec1D& grid) {
  grid.validate();
  std::mt19937_64 rng(seed);
  const double p = s + 0.5 + 0.01;
  std::vector<cplx> c1 = rough_coefficients(p, rng, grid);
  std::vector<cplx> c2 = rough_coefficients(p, rng, grid);
  backward(c1);
  backward(c2);
  std::vector<Spinor> psi(grid.n_x);
  for (std::size_t j = 0; j < grid.n_x; ++j) psi[j] = {c1[j], c2[j]};
  const double nrm = sobolev_norm(psi, grid, s);
  for (Spinor& z : psi) z = (1.0 / nrm) * z;
  return psi;
}

std::vector<double> rough_real_data(double r, std::uint64_t seed, const GridSpec1D& grid) {
  grid.validate();
  std::mt19937_64 rng(seed);
  std::vector<cplx> c = rough_coefficients(r + 0.5 + 0.01, rng, grid);
  const std::size_t n = grid.n_x;
  c[0] = std::abs(c[0]);
  c[n / 2] = std::abs(c[n / 2]);
  for (std::size_t k = 1; k < n / 2; ++k) c[n - k] = std::conj(c[k]);
  backward(c);
  std::vector<double> f(n);
  for (std::size_t j = 0; j < n; ++j) f[j] = c[j].real();
  const double nrm = sobolev_norm(std::span<const double>(f), grid, r);
  for (double& v : f) v /= nrm;
  return f;
}

NonFiniteError::NonFiniteError(long long step_index, double t)
    : std::runtime_error("non-finite value at step " + std::to_string(step_index) + " (t = " + std::to_string(t) + ")"),
      step_(step_index) {}

Diagnostics measure(const DKGState& st, double s, double r) {
  const std::vector<Spinor> psi = st.spinor_field();
  return {st.t, charge(st), sobolev_norm(psi, st.grid, s), sobolev_norm(std::span<const double>(st.phi), st.grid, r),
          kg_energy(st)};
}

std::vector<Diagnostics> run(const SolverConfig& config, DKGState& st) {
  config.grid.validate();
  if (!(config.dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
  if (!(config.t_end >= 0.0)) throw std::invalid_argument("run: t_end must be nonnegative");
  if (config.diagnostics_every < 1) throw std::invalid_argument("run: diagnostics_every must be >= 1");
  if (st.grid.n_x != config.grid.n_x || st.grid.x_extent != config.grid.x_extent)
    throw std::invalid_argument("run: state grid does not match config grid");

  const auto steps = static_cast<long long>(std::ceil(config.t_end / config.dt - 1e-9));
  const double dt = steps > 0 ? config.t_end / static_cast<double>(steps) : 0.0;
  const double t0 = st.t;

  std::vector<Diagnostics> out;
  out.push_back(measure(st, config.s, config.r));
  for (long long n = 1; n <= steps; ++n) {
    step(st, dt, config.splitting);
    st.t = t0 + static_cast<double>(n) * dt;
    if (!all_finite(st)) throw NonFiniteError(n, st.t);
    if (n % config.diagnostics_every == 0 || n == steps) out.push_back(measure(st, config.s, config.r));
  }
  return out;
}

void save_snapshot(const std::string& prefix, const DKGState& st) {
  const Grid2D g = Grid2D::centered(1, st.grid.n_x, 1.0, st.grid.x_extent);
  auto save = [&](const char* name, std::vector<cplx> v) {
    save_grid_function(prefix + "." + name + ".bin", GridFunction2D(g, Side::physical, std::move(v)));
  };
  save("psi_plus", st.psi_plus);
  save("psi_minus", st.psi_minus);
  save("phi", complexify(st.phi));
  save("phi_t", complexify(st.phi_t));
}

}  // namespace dkg
