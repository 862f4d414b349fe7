#include "dkg/frequency_weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace dkg {

WeightTriple weights(const FrequencyPoint& p) {
  return {std::abs(p.tau) - std::abs(p.xi), p.lambda + p.eta, p.lambda - p.tau - (p.eta - p.xi)};
}

double lemma3_margin(const FrequencyPoint& p) {
  const WeightTriple w = weights(p);
  const double hyperbolic = std::max({std::abs(w.gamma_w), std::abs(w.theta_plus), std::abs(w.sigma_minus)});
  return 1.5 * hyperbolic - std::min(std::abs(p.eta), std::abs(p.eta - p.xi));
}

double sign_split_identity_residual(const FrequencyPoint& p) {
  const WeightTriple w = weights(p);
  double r = 0.0;
  if (p.tau >= 0.0) {
    const double rhs = w.theta_plus - w.sigma_minus - (2.0 * p.eta - p.xi + std::abs(p.xi));
    r = std::max(r, std::abs(w.gamma_w - rhs));
  }
  if (p.tau <= 0.0) {
    const double rhs = -w.theta_plus + w.sigma_minus + (2.0 * p.eta - p.xi - std::abs(p.xi));
    r = std::max(r, std::abs(w.gamma_w - rhs));
  }
  return r;
}

double sum_bound_margin(const FrequencyPoint& p) {
  const WeightTriple w = weights(p);
  return std::abs(w.gamma_w) + std::abs(w.theta_plus) + std::abs(w.sigma_minus) -
         2.0 * std::min(std::abs(p.eta), std::abs(p.eta - p.xi));
}

double point_scale(const FrequencyPoint& p) {
  return 1.0 + std::max({std::abs(p.tau), std::abs(p.xi), std::abs(p.lambda), std::abs(p.eta)});
}

Lemma3Sweep sweep_lemma3(std::size_t samples, std::uint64_t seed, double box) {
  Lemma3Sweep out;
  out.min_margin = std::numeric_limits<double>::infinity();
  out.max_margin = -std::numeric_limits<double>::infinity();
  out.min_scaled_margin = std::numeric_limits<double>::infinity();
  out.min_sum_bound_margin = std::numeric_limits<double>::infinity();

  auto record = [&out](const FrequencyPoint& p) {
    const double m = lemma3_margin(p);
    const double scale = point_scale(p);
    out.min_margin = std::min(out.min_margin, m);
    out.max_margin = std::max(out.max_margin, m);
    out.min_scaled_margin = std::min(out.min_scaled_margin, m / scale);
    out.max_scaled_residual = std::max(out.max_scaled_residual, sign_split_identity_residual(p) / scale);
    out.min_sum_bound_margin = std::min(out.min_sum_bound_margin, sum_bound_margin(p) / scale);
    ++out.samples;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-box, box);
  for (std::size_t i = 0; i < samples; ++i) record({coord(rng), coord(rng), coord(rng), coord(rng)});

  // Corner manifolds where the inequality is nearly tight.
  const std::size_t corners = std::max<std::size_t>(samples / 100, 1000);
  for (std::size_t i = 0; i < corners; ++i) {
    const double tau = coord(rng), xi = coord(rng), lambda = coord(rng), eta = coord(rng);
    record({xi, xi, lambda, eta});
    record({-xi, xi, lambda, eta});
    record({tau, xi, lambda, 0.0});
    record({tau, xi, lambda, xi});
    record({tau, 0.0, lambda, eta});
    record({0.0, xi, lambda, eta});
    record({xi, xi, -eta, eta});
    record({-xi, xi, -eta, xi});
  }
  record({0.0, 0.0, 0.0, 0.0});
  return out;
}

}  // namespace dkg
