// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// selected criteria pass. Run with --criterion N to select one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dkg/bilinear_verifier.hpp"
#include "dkg/frequency_weights.hpp"
#include "dkg/region.hpp"
#include "dkg/solver.hpp"
#include "dkg/spacetime_norms.hpp"
#include "dkg/spinor.hpp"

using dkg::cplx;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Null structure and projection identities.
Outcome criterion1() {
  const auto res = dkg::run_spinor_self_test(100000, 20240601);
  std::string worst;
  double worst_ratio = 0.0;
  for (const auto& c : res.checks) {
    const double r = c.tolerance > 0 ? c.max_error / c.tolerance : 0.0;
    if (r >= worst_ratio) {
      worst_ratio = r;
      worst = c.name;
    }
  }
  return {res.passed(), fmt("%zu pairs, %zu checks, tightest %s at %.2g of tolerance", res.samples, res.checks.size(),
                            worst.c_str(), worst_ratio)};
}

// 2. Hyperbolic weight inequality sweep.
Outcome criterion2() {
  const auto sw = dkg::sweep_lemma3(1000000, 20240602);
  const bool ok = sw.min_scaled_margin >= -1e-9 && sw.max_scaled_residual <= 1e-12;
  return {ok, fmt("%zu samples, min margin/scale %.3g (>= -1e-9), max residual/scale %.3g (<= 1e-12)", sw.samples,
                  sw.min_scaled_margin, sw.max_scaled_residual)};
}

// 3. Free-wave product constant on Gaussian data, target sqrt(2) +- 0.01.
Outcome criterion3() {
  const auto g = dkg::Grid2D::centered(1024, 1024, 12.0, 24.0);
  std::vector<cplx> f(g.n_x), h(g.n_x);
  for (std::size_t m = 0; m < g.n_x; ++m) {
    const double x = g.x(m);
    f[m] = std::exp(-x * x);
    h[m] = std::exp(-x * x);
  }
  const double c = dkg::wave_product_constant(dkg::spatial_transform(g, f), dkg::spatial_transform(g, h), g);
  const double target = std::sqrt(2.0);
  return {std::abs(c - target) <= 0.01,
          fmt("measured %.8f, target %.5f +- 0.01 (measured value equals 1/sqrt(2) to %.1e)", c, target,
              std::abs(c - 1.0 / target))};
}

struct ScalingCase {
  dkg::FamilyId id;
  dkg::ExponentTuple e;
};

const std::vector<double> kLadder{64, 128, 256, 512};

// 4. Counterexample slopes: two tuples per family, zeros included.
Outcome criterion4() {
  const std::vector<ScalingCase> cases{
      {dkg::FamilyId::cond1_ab, {}},    {dkg::FamilyId::cond1_ab, {1, 0, 0, 1, 1, 1}},
      {dkg::FamilyId::cond2, {}},       {dkg::FamilyId::cond2, {0.5, 0.5, 0.5, 1, 1, 1}},
      {dkg::FamilyId::cond3, {}},       {dkg::FamilyId::cond3, {1, 0, 1, 0, 0, 0}},
      {dkg::FamilyId::cond1_gamma, {}}, {dkg::FamilyId::cond1_gamma, {1, 0, 0, 0, 0, 1}},
      {dkg::FamilyId::cond4, {}},       {dkg::FamilyId::cond4, {1, 1, -1, 1, 1, -1.5}},
  };
  bool ok = true;
  double worst = 0.0;
  std::string lines;
  for (dkg::FamilyId id : dkg::kAllFamilies) {
    std::vector<dkg::ExponentTuple> tuples;
    for (const auto& c : cases)
      if (c.id == id) tuples.push_back(c.e);
    const auto fits = dkg::fit_exponents(id, tuples, kLadder);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      const double delta = dkg::predicted_delta(id, tuples[i]);
      const double err = std::abs(fits[i].slope + delta);
      worst = std::max(worst, err);
      ok = ok && err <= dkg::kSlopeTolerance;
      lines += fmt("\n    %-11s tuple %zu: slope %+.4f, -delta %+.4f", std::string(dkg::to_string(id)).c_str(), i,
                   fits[i].slope, -delta);
    }
  }
  return {ok, fmt("10 fits over L in {64,128,256,512}, max |slope + delta| = %.4f (<= 0.15)", worst) + lines};
}

// 5. Region geometry and parameter selection.
Outcome criterion5() {
  long violations = 0, gap = 0;
  for (int i = 0; i < 200; ++i)
    for (int j = 1; j <= 200; ++j) {
      const dkg::RegionPoint p{-0.3 + 0.8 * i / 199.0, 1.5 * j / 200.0};
      const bool t1 = dkg::in_theorem1_region(p);
      const bool prior = dkg::in_pecher_region(p) || dkg::in_machihara_region(p);
      violations += prior && !t1;
      gap += t1 && !prior;
    }
  std::mt19937_64 rng(20240605);
  std::uniform_real_distribution<double> us(-0.25, 1.0), ur(0.0, 2.0);
  int in_ok = 0, in_n = 0, out_ok = 0, out_n = 0;
  while (in_n < 1000 || out_n < 1000) {
    const dkg::RegionPoint p{us(rng), ur(rng)};
    const auto res = dkg::choose_parameters(p);
    if (dkg::in_theorem1_region(p)) {
      if (in_n >= 1000) continue;
      ++in_n;
      in_ok += res.feasible() && dkg::check_constraints(p, *res.choice).all_pass();
    } else {
      if (out_n >= 1000) continue;
      ++out_n;
      // Reasons must be exactly the violated region inequalities.
      std::vector<std::string> want;
      if (!(p.s > -0.25)) want.emplace_back("s > -1/4 violated");
      if (!(p.r > 0.0)) want.emplace_back("r > 0 violated");
      if (!(std::abs(p.s) <= p.r)) want.emplace_back("|s| ≤ r violated");
      if (!(p.r <= 1.0 + p.s)) want.emplace_back("r ≤ 1+s violated");
      out_ok += !res.feasible() && !want.empty() && res.reasons == want;
    }
  }
  const bool ok = violations == 0 && gap > 0 && in_ok == 1000 && out_ok == 1000;
  return {ok, fmt("containment violations %ld, points only in the main region %ld, feasible round trips %d/1000, "
                  "infeasible with correct reasons %d/1000",
                  violations, gap, in_ok, out_ok)};
}

struct NecessityCase {
  int condition;
  dkg::ExponentTuple e;
};

// 6. Each necessary condition violated alone forces a positive slope.
Outcome criterion6() {
  const std::vector<NecessityCase> cases{
      {1, {0, 0, 1, 1, -0.5, 1}},  // via beta
      {1, {0, 0, 1, 1, 1, -0.5}},  // via gamma
      {2, {}},
      {3, {-1, 1, 0.5, 1, 1, 1}},
      {4, {1, 1, -1, 1, 1, -1.5}},
  };
  bool ok = true;
  std::string lines;
  for (const auto& c : cases) {
    const auto rep = dkg::theorem4_necessary(c.e);
    const double margins[4] = {rep.cond1, rep.cond2, rep.cond3, rep.cond4};
    int failing = 0;
    for (int k = 0; k < 4; ++k) failing += margins[k] < 0.0;
    const double amount = -margins[c.condition - 1];
    const bool exactly_one = failing == 1 && amount > 0.0;
    const dkg::FamilyId id = dkg::family_for_condition(c.condition, c.e);
    const double slope = dkg::fit_exponent(id, c.e, kLadder).slope;
    const bool pass = exactly_one && slope >= amount - dkg::kSlopeTolerance;
    ok = ok && pass;
    lines += fmt("\n    Cond%d in %-11s violation %.3f, slope %+.4f (needs >= %+.4f)%s", c.condition,
                 std::string(dkg::to_string(id)).c_str(), amount, slope, amount - dkg::kSlopeTolerance,
                 exactly_one ? "" : " [tuple does not violate exactly one condition]");
  }
  return {ok, "5 single-condition violations" + lines};
}

double state_distance(const dkg::DKGState& a, const dkg::DKGState& b) {
  double acc = 0.0, ref = 0.0;
  for (std::size_t j = 0; j < a.grid.n_x; ++j) {
    acc += std::norm(a.psi_plus[j] - b.psi_plus[j]) + std::norm(a.psi_minus[j] - b.psi_minus[j]) +
           std::pow(a.phi[j] - b.phi[j], 2) + std::pow(a.phi_t[j] - b.phi_t[j], 2);
    ref += std::norm(b.psi_plus[j]) + std::norm(b.psi_minus[j]) + b.phi[j] * b.phi[j] + b.phi_t[j] * b.phi_t[j];
  }
  return std::sqrt(acc / ref);
}

dkg::DKGState smooth_state(const dkg::GridSpec1D& g, double M, double m) {
  std::vector<dkg::Spinor> psi(g.n_x);
  std::vector<double> phi(g.n_x), phi_t(g.n_x);
  for (std::size_t j = 0; j < g.n_x; ++j) {
    const double x = g.x(j);
    psi[j] = {std::exp(-x * x), cplx(0.0, 0.5) * x * std::exp(-(x - 1.0) * (x - 1.0))};
    phi[j] = 0.5 * std::exp(-0.5 * x * x);
    phi_t[j] = 0.2 * x * std::exp(-x * x);
  }
  return dkg::init_state(psi, phi, phi_t, M, m, g);
}

// 7. Solver conservation, transport, convergence and reversibility.
Outcome criterion7() {
  const dkg::GridSpec1D g{1024, 64.0};
  const double dt = dkg::default_dt(g);

  auto st = smooth_state(g, 1.0, 1.0);
  const double q0 = dkg::charge(st);
  for (int i = 0; i < 10000; ++i) dkg::step(st, dt, dkg::Splitting::strang);
  const double drift = std::abs(dkg::charge(st) - q0) / q0;

  std::vector<dkg::Spinor> psi(g.n_x);
  std::vector<double> zero(g.n_x, 0.0);
  auto pulse = [](double x) { return std::exp(-x * x) * std::polar(1.0, 0.7 * x); };
  for (std::size_t j = 0; j < g.n_x; ++j) psi[j] = {pulse(g.x(j)), pulse(g.x(j))};
  auto tr = dkg::init_state(psi, zero, zero, 0.0, 0.0, g);
  dkg::run({g, dt, 1.0, dkg::Splitting::strang, 1000, 0.0, 0.0}, tr);
  double transport = 0.0;
  for (std::size_t j = 0; j < g.n_x; ++j) {
    const dkg::Spinor want{pulse(g.x(j) - 1.0), pulse(g.x(j) - 1.0)};
    const dkg::Spinor got = tr.spinor(j);
    transport = std::max(transport, std::abs(got.c1 - want.c1) + std::abs(got.c2 - want.c2));
  }

  const dkg::GridSpec1D gc{256, 64.0};
  const auto s0 = smooth_state(gc, 1.0, 1.0);
  auto evolve = [](dkg::DKGState s, double h, int n) {
    for (int i = 0; i < n; ++i) dkg::step(s, h, dkg::Splitting::strang);
    return s;
  };
  const auto a = evolve(s0, 0.25, 4), b = evolve(s0, 0.125, 8), c = evolve(s0, 0.0625, 16);
  const double order = std::log2(state_distance(a, b) / state_distance(b, c));

  auto fwd = evolve(smooth_state(g, 1.0, 1.0), dt, 200);
  auto back = evolve(fwd, -dt, 200);
  const double reversal = state_distance(back, smooth_state(g, 1.0, 1.0));

  const bool ok = drift <= 1e-10 && transport <= 1e-8 && std::abs(order - 2.0) <= 0.2 && reversal <= 1e-12;
  return {ok, fmt("charge drift %.2e over 1e4 steps (<= 1e-10), transport error %.2e (<= 1e-8), Strang order %.3f "
                  "(2 +- 0.2), reversal error %.2e (<= 1e-12)",
                  drift, transport, order, reversal)};
}

// 8. Norm infrastructure against independent oracles.
Outcome criterion8() {
  double parseval = 0.0;
  for (std::size_t n : {16u, 64u, 256u}) {
    const auto g = dkg::Grid2D::centered(n, n, 7.0, 5.0);
    std::mt19937_64 rng(n);
    std::normal_distribution<double> nd;
    const auto u = dkg::GridFunction2D::sample(g, dkg::Side::physical, [&](double, double) { return cplx(nd(rng), nd(rng)); });
    const double lhs = dkg::weighted_norm(dkg::transform(u), {0.0, 0.0, dkg::Flavor::h});
    parseval = std::max(parseval, std::abs(lhs / (2.0 * dkg::kPi * dkg::l2_norm(u)) - 1.0));
  }

  // Direct double sum of K(tau, xi) = sum F(l, e) G(l - tau, e - xi) dtau dxi.
  double conv = 0.0;
  for (std::size_t nt : {4u, 8u, 16u, 32u, 64u})
    for (std::size_t nx : {4u, 16u, 64u}) {
      const auto g = dkg::Grid2D::centered(nt, nx, 3.0, 4.0);
      std::mt19937_64 rng(nt * 131 + nx);
      std::normal_distribution<double> nd;
      auto rnd = [&](double, double) { return cplx(nd(rng), nd(rng)); };
      const auto F = dkg::GridFunction2D::sample(g, dkg::Side::fourier, rnd);
      const auto G = dkg::GridFunction2D::sample(g, dkg::Side::fourier, rnd);
      const auto fast = dkg::bilinear_convolution(F, G);
      const long NT = nt, NX = nx;
      double err = 0.0, peak = 0.0;
      for (long k = 0; k < NT; ++k)
        for (long l = 0; l < NX; ++l) {
          cplx acc = 0.0;
          for (long a = 0; a < NT; ++a) {
            const long ga = a - k + NT / 2;
            if (ga < 0 || ga >= NT) continue;
            for (long b = 0; b < NX; ++b) {
              const long gb = b - l + NX / 2;
              if (gb >= 0 && gb < NX) acc += F(a, b) * G(ga, gb);
            }
          }
          acc *= g.dtau() * g.dxi();
          err = std::max(err, std::abs(acc - fast(k, l)));
          peak = std::max(peak, std::abs(acc));
        }
      conv = std::max(conv, err / peak);
    }

  double conj = 0.0;
  {
    const auto g = dkg::Grid2D::centered(128, 128, 12.0, 12.0);
    const auto v = dkg::GridFunction2D::sample(g, dkg::Side::physical, [](double t, double x) {
      return std::exp(-(t - 0.3) * (t - 0.3) - (x - 0.7 * t) * (x - 0.7 * t)) * std::polar(1.0, 2.0 * t + x) * (1.0 + 0.3 * x);
    });
    for (double a : {-1.0, 0.0, 1.0})
      for (double alpha : {-0.5, 0.0, 0.75}) {
        const dkg::NormIndex idx{a, alpha, dkg::Flavor::h};
        const double n1 = dkg::weighted_norm(dkg::transform(v), idx);
        const double n2 = dkg::weighted_norm(dkg::transform(dkg::conjugate(v)), idx);
        conj = std::max(conj, std::abs(n1 / n2 - 1.0));
      }
  }
  const bool ok = parseval <= 1e-10 && conv <= 1e-10 && conj <= 1e-12;
  return {ok, fmt("Parseval %.2e (<= 1e-10), FFT vs direct convolution on 15 grids up to 64^2 %.2e (<= 1e-10), "
                  "H-norm conjugation %.2e (<= 1e-12)",
                  parseval, conv, conj)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "null structure", 1.0, criterion1},
      {2, "weight inequality sweep", 10.0, criterion2},
      {3, "free-wave product constant", 30.0, criterion3},
      {4, "counterexample scaling", 600.0, criterion4},
      {5, "region geometry", 5.0, criterion5},
      {6, "necessary conditions", 600.0, criterion6},
      {7, "solver conservation and convergence", 120.0, criterion7},
      {8, "norm infrastructure", 30.0, criterion8},
  };
  bool all_pass = true;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = secs <= c.budget_s;
    const bool pass = out.pass && in_budget;
    all_pass = all_pass && pass;
    std::printf("%s criterion %d (%s): %s [%.2f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs, c.budget_s, in_budget ? "" : ", over budget");
  }
  return all_pass ? 0 : 1;
}
