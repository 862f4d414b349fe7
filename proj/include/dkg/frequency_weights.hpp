#ifndef DKG_FREQUENCY_WEIGHTS_HPP
#define DKG_FREQUENCY_WEIGHTS_HPP

#include <cstddef>
#include <cstdint>

namespace dkg {

/// A frequency 4-tuple: (tau, xi) is the output frequency, (lambda, eta) the
/// integration variable of the bilinear kernel.
struct FrequencyPoint {
  double tau = 0.0;
  double xi = 0.0;
  double lambda = 0.0;
  double eta = 0.0;
};

/// Hyperbolic weights of the mixed-sign product:
///   gamma_w     = |tau| - |xi|
///   theta_plus  = lambda + eta
///   sigma_minus = lambda - tau - (eta - xi)
struct WeightTriple {
  double gamma_w = 0.0;
  double theta_plus = 0.0;
  double sigma_minus = 0.0;
};

WeightTriple weights(const FrequencyPoint& p);

/// (3/2) max(|G|, |T+|, |S-|) - min(|eta|, |eta - xi|); never negative.
double lemma3_margin(const FrequencyPoint& p);

/// Residual of the sign-split identity for gamma_w. At tau == 0 both branches
/// apply and the larger residual is returned.
double sign_split_identity_residual(const FrequencyPoint& p);

/// |G| + |T+| + |S-| - 2 min(|eta|, |eta - xi|); never negative.
double sum_bound_margin(const FrequencyPoint& p);

/// 1 + max of the absolute coordinates; the roundoff scale of the formulas above.
double point_scale(const FrequencyPoint& p);

struct Lemma3Sweep {
  std::size_t samples = 0;
  double min_margin = 0.0;
  double max_margin = 0.0;
  /// min over samples of margin / scale.
  double min_scaled_margin = 0.0;
  /// max over samples of residual / scale.
  double max_scaled_residual = 0.0;
  double min_sum_bound_margin = 0.0;
};

/// Uniform samples in [-box, box]^4 followed by adversarial points on the
/// manifolds tau = +-xi, eta in {0, xi}, xi = 0 and tau = 0.
Lemma3Sweep sweep_lemma3(std::size_t samples, std::uint64_t seed, double box = 1e3);

}  // namespace dkg

#endif  // DKG_FREQUENCY_WEIGHTS_HPP
