#include "dkg/bilinear_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace dkg {

namespace {

constexpr double kMembershipEps = 1e-9;

struct IndexRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  std::size_t count() const { return hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0; }
};

IndexRange lattice_range(double lo, double hi, double h) {
  return {static_cast<std::int64_t>(std::ceil(lo / h - kMembershipEps)),
          static_cast<std::int64_t>(std::floor(hi / h + kMembershipEps))};
}

/// (lambda-range, eta-range) of a strip's support on the lattice h*Z.
std::pair<IndexRange, IndexRange> strip_ranges(const StripSpec& s, double h) {
  const double half = s.thickness / 2.0;
  const IndexRange eta = lattice_range(s.interval.lo, s.interval.hi, h);
  const IndexRange lambda = s.line == StripLine::plus
                                ? lattice_range(-s.interval.hi - half, -s.interval.lo + half, h)
                                : lattice_range(s.interval.lo - half, s.interval.hi + half, h);
  return {lambda, eta};
}

bool in_strip(const StripSpec& s, double lambda, double eta) {
  const double line = s.line == StripLine::plus ? lambda + eta : lambda - eta;
  return std::abs(line) <= s.thickness / 2.0 + kMembershipEps && s.interval.contains(eta);
}

GridFunction2D strip_on_grid(const StripSpec& s, const Grid2D& grid) {
  return GridFunction2D::sample(grid, Side::fourier, [&](double lambda, double eta) {
    return in_strip(s, lambda, eta) ? cplx(1.0) : cplx(0.0);
  });
}

GridFunction2D strip_on_window(const StripSpec& s, double h) {
  const auto [lambda, eta] = strip_ranges(s, h);
  if (lambda.count() == 0 || eta.count() == 0) throw std::invalid_argument("strip support is empty on the lattice");
  return strip_on_grid(s, Grid2D::window(lambda.count(), eta.count(), h, h, lambda.lo, eta.lo));
}

void check_family_args(double L) {
  if (!(L > 4.0) || !std::isfinite(L)) throw std::invalid_argument("counterexample scale L must exceed 4");
}

}  // namespace

std::string_view to_string(FamilyId id) {
  switch (id) {
    case FamilyId::cond1_ab: return "cond1_ab";
    case FamilyId::cond2: return "cond2";
    case FamilyId::cond3: return "cond3";
    case FamilyId::cond1_gamma: return "cond1_gamma";
    case FamilyId::cond4: return "cond4";
  }
  return "?";
}

std::optional<FamilyId> parse_family(std::string_view name) {
  for (FamilyId id : kAllFamilies)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

bool Interval::contains(double x) const {
  const double tol = kMembershipEps * (1.0 + std::abs(x));
  return x >= lo - tol && x <= hi + tol;
}

bool Interval::contains(const Interval& other) const { return contains(other.lo) && contains(other.hi); }

double CounterexampleFamily::delta(const ExponentTuple& e) const { return predicted_delta(id, e); }

double predicted_delta(FamilyId id, const ExponentTuple& e) {
  switch (id) {
    case FamilyId::cond1_ab: return e.a + e.b + e.beta;
    case FamilyId::cond2: return e.a + e.b + e.c + e.beta - 0.5;
    case FamilyId::cond3: return e.a + e.c;
    case FamilyId::cond1_gamma: return e.a + e.b + e.gamma;
    case FamilyId::cond4: return e.a + e.b + e.c + e.gamma;
  }
  throw std::logic_error("unknown family");
}

CounterexampleFamily make_family(FamilyId id, double L) {
  check_family_args(L);
  CounterexampleFamily f;
  f.id = id;
  f.L = L;
  StripLine v_line = StripLine::plus;
  switch (id) {
    case FamilyId::cond1_ab:
      f.A = {L - 0.5, L + 0.5};
      f.B = {L - 1.0, L + 1.0};
      f.C = {-0.5, 0.5};
      break;
    case FamilyId::cond2:
      f.A = {L / 4.0, L / 2.0};
      f.B = {L / 2.0, 1.5 * L};
      f.C = {-L, -L / 2.0};
      break;
    case FamilyId::cond3:
      f.A = {L - 0.5, L + 0.5};
      f.B = {-1.0, 1.0};
      f.C = {L - 0.5, L + 0.5};
      break;
    case FamilyId::cond1_gamma:
      f.A = {L - 1.0, L + 1.0};
      f.B = {L - 2.0, L + 2.0};
      f.C = {-1.0, 1.0};
      v_line = StripLine::minus;
      f.restriction = {0.0, 2.0};
      break;
    case FamilyId::cond4:
      f.A = {L - 1.0, L + 1.0};
      f.B = {2.0 * L - 2.0, 2.0 * L + 2.0};
      f.C = {-L - 1.0, -L + 1.0};
      v_line = StripLine::minus;
      f.restriction = {0.0, 3.0};
      break;
  }
  f.u_strip = {f.A, StripLine::plus, 1.0};
  f.v_strip = {f.B, v_line, 1.0};
  return f;
}

bool abc_property_exact(const CounterexampleFamily& fam) {
  return fam.B.contains(Interval{fam.A.lo - fam.C.hi, fam.A.hi - fam.C.lo});
}

std::size_t abc_property_violations(const CounterexampleFamily& fam, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> eta(fam.A.lo, fam.A.hi);
  std::uniform_real_distribution<double> xi(fam.C.lo, fam.C.hi);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < samples; ++i)
    if (!fam.B.contains(eta(rng) - xi(rng))) ++bad;
  return bad;
}

BuiltFamily build_family(FamilyId id, double L, double spacing) {
  CounterexampleFamily fam = make_family(id, L);
  if (!(spacing > 0.0) || spacing > fam.u_strip.thickness / 4.0)
    throw std::invalid_argument("lattice spacing must be positive and at most thickness/4");
  GridFunction2D u = strip_on_window(fam.u_strip, spacing);
  GridFunction2D v = strip_on_window(fam.v_strip, spacing);
  return {std::move(u), std::move(v), std::move(fam)};
}

BuiltFamily build_family(FamilyId id, double L, const Grid2D& grid) {
  CounterexampleFamily fam = make_family(id, L);
  const double h = std::max(grid.dtau(), grid.dxi());
  if (h > fam.u_strip.thickness / 4.0) throw std::invalid_argument("grid too coarse: need spacing <= thickness/4");

  auto fits = [&](const StripSpec& s) {
    const IndexRange lambda = strip_ranges(s, grid.dtau()).first;
    const IndexRange eta_x = lattice_range(s.interval.lo, s.interval.hi, grid.dxi());
    const auto t_hi = grid.tau_first + static_cast<std::int64_t>(grid.n_t) - 1;
    const auto x_hi = grid.xi_first + static_cast<std::int64_t>(grid.n_x) - 1;
    return lambda.lo >= grid.tau_first && lambda.hi <= t_hi && eta_x.lo >= grid.xi_first && eta_x.hi <= x_hi;
  };
  if (!fits(fam.u_strip) || !fits(fam.v_strip))
    throw std::invalid_argument("grid too small to contain the counterexample supports");

  GridFunction2D u = strip_on_grid(fam.u_strip, grid);
  GridFunction2D v = strip_on_grid(fam.v_strip, grid);
  return {std::move(u), std::move(v), std::move(fam)};
}

namespace {

GridFunction2D product_spectrum(const BuiltFamily& b) {
  const GridFunction2D k = bilinear_convolution_full(b.u_hat, conjugate(b.v_hat));
  // Exact kernel values are cell * (integer overlap count); clear FFT noise.
  std::vector<cplx> v(k.values().begin(), k.values().end());
  double peak = 0.0;
  for (const cplx& z : v) peak = std::max(peak, std::abs(z));
  const double floor = 1e-9 * peak;
  const double plancherel = 1.0 / (kTwoPi * kTwoPi);
  for (cplx& z : v) z = std::abs(z) < floor ? cplx(0.0) : plancherel * z;
  return GridFunction2D(k.grid(), Side::fourier, std::move(v));
}

}  // namespace

FamilyExperiment::FamilyExperiment(FamilyId id, double L, double spacing)
    : built_(build_family(id, L, spacing)), product_hat_(product_spectrum(built_)) {}

RatioTerms FamilyExperiment::evaluate(const ExponentTuple& e) const {
  RatioTerms r;
  r.numerator = weighted_norm(product_hat_, {-e.c, -e.gamma, Flavor::h});
  r.denom_u = weighted_norm(built_.u_hat, {e.a, e.alpha, Flavor::x_plus});
  r.denom_v = weighted_norm(built_.v_hat, {e.b, e.beta, Flavor::x_minus});
  if (!(r.denom_u > 0.0) || !(r.denom_v > 0.0))
    throw std::runtime_error("invalid experiment: zero denominator (degenerate grid)");
  return r;
}

double ratio(FamilyId id, double L, const ExponentTuple& e) { return FamilyExperiment(id, L).evaluate(e).ratio(); }

SlopeFit fit_log_log(std::span<const double> scales, std::span<const double> values) {
  if (scales.size() != values.size() || scales.size() < 2) throw std::invalid_argument("fit_log_log: need >= 2 points");
  const auto n = static_cast<double>(scales.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw std::runtime_error("fit_log_log: non-positive ratio (signals a grid bug)");
    const double x = std::log(scales[i]);
    const double y = std::log(values[i]);
    xs.push_back(x);
    ys.push_back(y);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  SlopeFit fit;
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_log_log: scales must not all coincide");
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  const double mean = sy / n;
  double ss_tot = 0, ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
    ss_tot += (ys[i] - mean) * (ys[i] - mean);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

void validate_ladder(std::span<const double> ladder) {
  if (ladder.size() < 4) throw std::invalid_argument("L ladder needs at least 4 points");
  for (double L : ladder)
    if (!(L >= 32.0)) throw std::invalid_argument("every L on the ladder must be >= 32");
  const double q = ladder[1] / ladder[0];
  if (!(q > 1.0)) throw std::invalid_argument("L ladder must be increasing");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (std::abs(ladder[i] / ladder[i - 1] - q) > 1e-9 * q) throw std::invalid_argument("L ladder must be geometric");
}

std::vector<SlopeFit> fit_exponents(FamilyId id, std::span<const ExponentTuple> tuples,
                                    std::span<const double> ladder) {
  validate_ladder(ladder);
  std::vector<std::vector<double>> ratios(tuples.size());
  for (double L : ladder) {
    const FamilyExperiment ex(id, L);
    for (std::size_t i = 0; i < tuples.size(); ++i) ratios[i].push_back(ex.evaluate(tuples[i]).ratio());
  }
  std::vector<SlopeFit> fits;
  for (const auto& r : ratios) fits.push_back(fit_log_log(ladder, r));
  return fits;
}

SlopeFit fit_exponent(FamilyId id, const ExponentTuple& e, std::span<const double> ladder) {
  return fit_exponents(id, std::span<const ExponentTuple>(&e, 1), ladder).front();
}

SupportGeometry restricted_support_geometry(const CounterexampleFamily& fam, std::size_t samples,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> eta_d(fam.A.lo, fam.A.hi);
  std::uniform_real_distribution<double> xi_d(fam.C.lo, fam.C.hi);
  std::uniform_real_distribution<double> half(-0.5, 0.5);

  SupportGeometry g;
  g.samples = samples;
  g.min_sigma = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const double eta = eta_d(rng);
    const double lambda = -eta + half(rng);
    const double xi = xi_d(rng);
    const double tau = -fam.restriction.xi_coeff * xi - fam.restriction.l_coeff * fam.L + half(rng);
    const double dl = lambda - tau;
    const double de = eta - xi;
    const double sigma = std::abs(dl - de);
    g.min_sigma = std::min(g.min_sigma, sigma);
    g.max_sigma = std::max(g.max_sigma, sigma);
    g.max_v_line = std::max(g.max_v_line, std::abs(fam.v_strip.line == StripLine::plus ? dl + de : dl - de));
    if (!fam.B.contains(de)) ++g.abc_violations;
  }
  return g;
}

double wave_product_constant(std::span<const cplx> f_hat, std::span<const cplx> g_hat, const Grid2D& grid) {
  if (f_hat.size() != grid.n_x || g_hat.size() != grid.n_x)
    throw std::invalid_argument("wave_product_constant: spectra must match the spatial lattice");
  if (grid.t_extent > grid.x_extent / 2.0)
    throw std::invalid_argument("wave_product_constant: time window must be at most half the spatial period");

  const std::vector<cplx> f = inverse_spatial_transform(grid, f_hat);
  const std::vector<cplx> g = inverse_spatial_transform(grid, g_hat);
  auto norm_1d = [&](const std::vector<cplx>& h) {
    double s = 0.0;
    for (const cplx& z : h) s += std::norm(z);
    return std::sqrt(s * grid.dx());
  };
  const double nf = norm_1d(f);
  const double ng = norm_1d(g);
  if (nf == 0.0 || ng == 0.0) throw std::invalid_argument("wave_product_constant: zero initial data");
  for (const auto* h : {&f, &g}) {
    double peak = 0.0;
    for (const cplx& z : *h) peak = std::max(peak, std::abs(z));
    if (std::max(std::abs(h->front()), std::abs(h->back())) > 1e-12 * peak)
      throw std::domain_error("wave_product_constant: data must decay at the spatial boundary");
  }

  // u(t, .) and v(t, .) are exact spectral translates of f and g.
  std::vector<cplx> shift_f(grid.n_x), shift_g(grid.n_x);
  double sum = 0.0;
  for (std::size_t j = 0; j < grid.n_t; ++j) {
    const double t = grid.t(j);
    for (std::size_t l = 0; l < grid.n_x; ++l) {
      const double xi = grid.xi(l);
      shift_f[l] = f_hat[l] * std::polar(1.0, -t * xi);
      shift_g[l] = g_hat[l] * std::polar(1.0, t * xi);
    }
    const std::vector<cplx> ut = inverse_spatial_transform(grid, shift_f);
    const std::vector<cplx> vt = inverse_spatial_transform(grid, shift_g);
    for (std::size_t m = 0; m < grid.n_x; ++m) sum += std::norm(ut[m] * vt[m]);
  }
  return std::sqrt(sum * grid.dt() * grid.dx()) / (nf * ng);
}

double corollary_probe(double alpha, int trials, const CorollaryProbeOptions& opts) {
  if (!(alpha > 0.5)) throw std::invalid_argument("corollary_probe: alpha must exceed 1/2");
  if (opts.band < 1 || static_cast<std::size_t>(2 * opts.band) >= opts.n / 2)
    throw std::invalid_argument("corollary_probe: band must fit in a quarter of the grid");
  // Unit frequency spacing.
  const Grid2D grid = Grid2D::centered(opts.n, opts.n, kTwoPi, kTwoPi);
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;

  auto draw = [&] {
    return GridFunction2D::sample(grid, Side::fourier, [&](double tau, double xi) {
      if (std::abs(tau) > opts.band || std::abs(xi) > opts.band) return cplx(0.0);
      return cplx(gauss(rng), gauss(rng));
    });
  };
  auto normalized = [](const GridFunction2D& w, double norm) {
    std::vector<cplx> v(w.values().begin(), w.values().end());
    for (cplx& z : v) z /= norm;
    return GridFunction2D(w.grid(), w.side(), std::move(v));
  };

  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const GridFunction2D u_raw = draw();
    const GridFunction2D v_raw = draw();
    const GridFunction2D u_hat = normalized(u_raw, weighted_norm(u_raw, {0.0, alpha, Flavor::x_plus}));
    const GridFunction2D v_hat = normalized(v_raw, weighted_norm(v_raw, {0.0, alpha, Flavor::x_minus}));
    const double uv = l2_norm(pointwise_product(inverse_transform(u_hat), inverse_transform(v_hat), false));
    worst = std::max(worst, uv);
  }
  return worst;
}

}  // namespace dkg
