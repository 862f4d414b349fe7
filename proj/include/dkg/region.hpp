#ifndef DKG_REGION_HPP
#define DKG_REGION_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dkg/bilinear_verifier.hpp"

namespace dkg {

// All inequalities are evaluated literally in double precision: strict stays
// strict, non-strict stays non-strict, no tolerance.

/// Data regularity: psi_0 in H^s, (phi_0, phi_1) in H^r x H^{r-1}.
struct RegionPoint {
  double s = 0.0;
  double r = 0.0;
};

/// Iteration exponents: psi_+- in X_+-^{s,sigma}, phi in H^{r,rho}, plus the
/// time-localization loss eps.
struct ParameterChoice {
  double sigma = 0.0;
  double rho = 0.0;
  double eps = 0.0;
};

/// s > -1/4, r > 0, |s| <= r <= 1 + s.
bool in_theorem1_region(const RegionPoint& p);
/// s > -1/4, r > 0, |s| <= r, r < 1 + 2s, r <= 1 + s.
bool in_pecher_region(const RegionPoint& p);
/// -1/4 < s <= 0, 2|s| <= r, r <= 1 + 2s.
bool in_machihara_region(const RegionPoint& p);

/// Violated main-region inequalities, e.g. "r ≤ 1+s violated", in the order
/// s > -1/4, r > 0, |s| ≤ r, r ≤ 1+s. Empty iff in the region.
std::vector<std::string> theorem1_violations(const RegionPoint& p);

/// Truth value of each sufficient constraint, keyed
/// r1 r2 sigma1 rho_sigma r6 s2 s3 r7 r3 r4 s1 rho1.
struct ConstraintReport {
  std::map<std::string, bool> checks;
  bool all_pass() const;
  std::vector<std::string> failures() const;
};

ConstraintReport check_constraints(const RegionPoint& p, const ParameterChoice& c);

struct ParameterSearch {
  std::optional<ParameterChoice> choice;
  /// Violated region inequalities, or the reason the eps search failed.
  std::vector<std::string> reasons;
  bool feasible() const { return choice.has_value(); }
};

inline constexpr double kEpsStart = 0.125;
inline constexpr double kEpsFloor = 1.0 / 1048576.0;  // 2^-20

/// rho = 1/2 + eps with eps halved from 1/8 down to 2^-20 until the sigma
/// interval (max(1/2, r - 1/2 - 2s), min(1 - eps, r + 1/2 - eps)) is nonempty and
/// its midpoint passes every constraint.
ParameterSearch choose_parameters(const RegionPoint& p);

enum class Theorem2Class { sufficient, fails_abc1, fails_abc2, fails_weights };

/// Product-law hypotheses. Checked in the order weights, abc2, abc1.
Theorem2Class theorem2_conditions(double a, double b, double c, double alpha, double beta, double gamma);
std::string_view to_string(Theorem2Class c);

/// Necessary conditions for the mixed-sign spinor estimate. Each margin is the
/// left side minus the right side; the condition holds iff margin >= 0.
struct Theorem4Report {
  double cond1 = 0.0;  // a + b + min(alpha, beta, gamma) >= 0
  double cond2 = 0.0;  // a + b + c + min(alpha, beta) >= 1/2
  double cond3 = 0.0;  // min(a, b) + c >= 0
  double cond4 = 0.0;  // a + b + c + gamma >= 0
  bool cond1_holds() const { return cond1 >= 0.0; }
  bool cond2_holds() const { return cond2 >= 0.0; }
  bool cond3_holds() const { return cond3 >= 0.0; }
  bool cond4_holds() const { return cond4 >= 0.0; }
  bool all_hold() const { return cond1_holds() && cond2_holds() && cond3_holds() && cond4_holds(); }
};

Theorem4Report theorem4_necessary(const ExponentTuple& e);

/// Counterexample family that certifies a failed condition (1..4). Condition 1
/// maps to cond1_gamma when gamma is the minimum and to cond1_ab otherwise.
FamilyId family_for_condition(int condition, const ExponentTuple& e);

/// (a,b,c; alpha,beta,gamma) = (s, s, 1-r; sigma, sigma, 1-rho-eps).
ExponentTuple theorem3a_tuple(const RegionPoint& p, const ParameterChoice& c);
/// (a,b,c; alpha,beta,gamma) = (s, -s, r; sigma, 1-sigma-eps, rho).
ExponentTuple theorem3b_tuple(const RegionPoint& p, const ParameterChoice& c);

}  // namespace dkg

#endif  // DKG_REGION_HPP
