#include "dkg/spinor.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dkg {

double norm(const Spinor& psi) { return std::sqrt(std::norm(psi.c1) + std::norm(psi.c2)); }

Spinor apply(const Mat2& m, const Spinor& psi) {
  return {m[0][0] * psi.c1 + m[0][1] * psi.c2, m[1][0] * psi.c1 + m[1][1] * psi.c2};
}

Mat2 multiply(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

Mat2 add(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

Mat2 scale(cplx s, const Mat2& a) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = s * a[i][j];
  return r;
}

Mat2 adjoint(const Mat2& a) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = std::conj(a[j][i]);
  return r;
}

Mat2 identity2() { return Mat2{{{1.0, 0.0}, {0.0, 1.0}}}; }

double max_abs_diff(const Mat2& a, const Mat2& b) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

const Mat2& DiracMatrices::alpha() {
  static const Mat2 a{{{0.0, 1.0}, {1.0, 0.0}}};
  return a;
}

const Mat2& DiracMatrices::beta() {
  static const Mat2 b{{{1.0, 0.0}, {0.0, -1.0}}};
  return b;
}

const Mat2& projection(Sign sign) {
  static const Mat2 plus{{{0.5, 0.5}, {0.5, 0.5}}};
  static const Mat2 minus{{{0.5, -0.5}, {-0.5, 0.5}}};
  return sign == Sign::plus ? plus : minus;
}

std::pair<Spinor, Spinor> decompose(const Spinor& psi) {
  const cplx s = 0.5 * (psi.c1 + psi.c2);
  const cplx d = 0.5 * (psi.c1 - psi.c2);
  return {Spinor{s, s}, Spinor{d, -d}};
}

cplx null_form(const Spinor& psi, const Spinor& psi_prime) {
  return psi.c1 * std::conj(psi_prime.c1) - psi.c2 * std::conj(psi_prime.c2);
}

Mat2 pecher_matrix(double xi, Sign sign) {
  const double sgn = xi < 0.0 ? -1.0 : 1.0;
  const double off = (sign == Sign::plus ? 0.5 : -0.5) * sgn;
  return Mat2{{{0.5, off}, {off, 0.5}}};
}

Spinor pecher_projection(double xi, Sign sign, const Spinor& psi) {
  return dkg::apply(pecher_matrix(xi, sign), psi);
}

bool SpinorSelfTest::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

namespace {

double dist(const Spinor& a, const Spinor& b) { return norm(a - b); }

}  // namespace

SpinorSelfTest run_spinor_self_test(std::size_t samples, std::uint64_t seed) {
  constexpr double kIdentityTol = 1e-14;
  constexpr double kNullTol = 1e-12;

  const Mat2& alpha = DiracMatrices::alpha();
  const Mat2& beta = DiracMatrices::beta();
  const Mat2& pp = projection(Sign::plus);
  const Mat2& pm = projection(Sign::minus);
  const Mat2 id = identity2();

  SpinorSelfTest report;
  report.samples = samples;

  auto matrix_check = [&](std::string name, double err) {
    report.checks.push_back({std::move(name), err, kIdentityTol});
  };
  matrix_check("alpha_hermitian", max_abs_diff(alpha, adjoint(alpha)));
  matrix_check("beta_hermitian", max_abs_diff(beta, adjoint(beta)));
  matrix_check("alpha_squared", max_abs_diff(multiply(alpha, alpha), id));
  matrix_check("beta_squared", max_abs_diff(multiply(beta, beta), id));
  matrix_check("anticommutator", max_abs_diff(add(multiply(alpha, beta), multiply(beta, alpha)), Mat2{}));

  double completeness = 0, idempotency = 0, orthogonality = 0, alpha_eigen = 0, beta_swap = 0;
  double pecher_idem = 0, pecher_eigen = 0, null_same = 0, self_real = 0;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> freq(-50.0, 50.0);
  auto draw = [&] { return Spinor{{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}}; };

  for (std::size_t i = 0; i < samples; ++i) {
    const Spinor psi = draw();
    const Spinor psi2 = draw();
    const double scale = norm(psi);
    const auto [plus, minus] = decompose(psi);

    completeness = std::max(completeness, dist(plus + minus, psi) / scale);
    idempotency = std::max({idempotency, dist(dkg::apply(pp, plus), plus) / scale, dist(dkg::apply(pm, minus), minus) / scale});
    orthogonality = std::max({orthogonality, norm(dkg::apply(pp, minus)) / scale, norm(dkg::apply(pm, plus)) / scale});
    alpha_eigen = std::max({alpha_eigen, dist(dkg::apply(alpha, plus), plus) / scale,
                            dist(dkg::apply(alpha, minus), cplx(-1.0) * minus) / scale});
    const Spinor bpsi = dkg::apply(beta, psi);
    beta_swap = std::max({beta_swap, dist(dkg::apply(pp, bpsi), dkg::apply(beta, minus)) / scale,
                          dist(dkg::apply(pm, bpsi), dkg::apply(beta, plus)) / scale});

    const double xi = i % 7 == 0 ? 0.0 : freq(rng);
    for (Sign s : {Sign::plus, Sign::minus}) {
      const Spinor pi_psi = pecher_projection(xi, s, psi);
      pecher_idem = std::max(pecher_idem, dist(pecher_projection(xi, s, pi_psi), pi_psi) / scale);
      if (xi != 0.0) {
        const double eig = (s == Sign::plus ? 1.0 : -1.0) * std::abs(xi);
        const Spinor lhs = cplx(xi) * dkg::apply(alpha, pi_psi);
        pecher_eigen = std::max(pecher_eigen, dist(lhs, cplx(eig) * pi_psi) / (std::abs(xi) * scale));
      }
    }

    const auto [plus2, minus2] = decompose(psi2);
    const double pair_scale = scale * norm(psi2);
    null_same = std::max({null_same, std::abs(null_form(plus, plus2)) / pair_scale,
                          std::abs(null_form(minus, minus2)) / pair_scale});
    self_real = std::max(self_real, std::abs(null_form(psi, psi).imag()) / (scale * scale));
  }

  report.checks.push_back({"completeness", completeness, kIdentityTol});
  report.checks.push_back({"idempotency", idempotency, kIdentityTol});
  report.checks.push_back({"orthogonality", orthogonality, kIdentityTol});
  report.checks.push_back({"alpha_eigen", alpha_eigen, kIdentityTol});
  report.checks.push_back({"beta_intertwine", beta_swap, kIdentityTol});
  report.checks.push_back({"pecher_idempotent", pecher_idem, kIdentityTol});
  report.checks.push_back({"pecher_eigen", pecher_eigen, kIdentityTol});
  report.checks.push_back({"null_form_same_range", null_same, kNullTol});
  report.checks.push_back({"null_form_self_real", self_real, kIdentityTol});
  return report;
}

}  // namespace dkg
