#include "dkg/region.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dkg {

bool in_theorem1_region(const RegionPoint& p) {
  return p.s > -0.25 && p.r > 0.0 && std::abs(p.s) <= p.r && p.r <= 1.0 + p.s;
}

bool in_pecher_region(const RegionPoint& p) {
  return p.s > -0.25 && p.r > 0.0 && std::abs(p.s) <= p.r && p.r < 1.0 + 2.0 * p.s && p.r <= 1.0 + p.s;
}

bool in_machihara_region(const RegionPoint& p) {
  return -0.25 < p.s && p.s <= 0.0 && 2.0 * std::abs(p.s) <= p.r && p.r <= 1.0 + 2.0 * p.s;
}

std::vector<std::string> theorem1_violations(const RegionPoint& p) {
  std::vector<std::string> v;
  if (!(p.s > -0.25)) v.emplace_back("s > -1/4 violated");
  if (!(p.r > 0.0)) v.emplace_back("r > 0 violated");
  if (!(std::abs(p.s) <= p.r)) v.emplace_back("|s| ≤ r violated");
  if (!(p.r <= 1.0 + p.s)) v.emplace_back("r ≤ 1+s violated");
  return v;
}

bool ConstraintReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second; });
}

std::vector<std::string> ConstraintReport::failures() const {
  std::vector<std::string> out;
  for (const auto& [name, ok] : checks)
    if (!ok) out.push_back(name);
  return out;
}

ConstraintReport check_constraints(const RegionPoint& p, const ParameterChoice& c) {
  const double s = p.s, r = p.r, sigma = c.sigma, rho = c.rho, eps = c.eps;
  ConstraintReport rep;
  auto& k = rep.checks;
  k["r1"] = r > sigma - 0.5 + eps;
  k["r2"] = r >= std::abs(s);
  k["sigma1"] = sigma <= 1.0 - eps;
  k["rho_sigma"] = 0.5 < rho && rho <= 1.0 && 0.5 < sigma && sigma <= 1.0;
  k["r6"] = r <= 1.0 + s;
  k["s2"] = s >= -0.5 + (rho + eps) / 2.0;
  k["s3"] = s >= -1.0 + rho + eps;
  k["r7"] = r <= 1.0 + 2.0 * s + 1.0 - rho - eps;
  k["r3"] = r < 0.5 + sigma + 2.0 * s;
  k["r4"] = r <= 1.0 + s;
  k["s1"] = s >= -sigma / 2.0;
  k["rho1"] = rho <= 1.0 - eps;
  return rep;
}

ParameterSearch choose_parameters(const RegionPoint& p) {
  ParameterSearch out;
  out.reasons = theorem1_violations(p);
  if (!out.reasons.empty()) return out;

  for (double eps = kEpsStart; eps >= kEpsFloor; eps /= 2.0) {
    const double lo = std::max(0.5, p.r - 0.5 - 2.0 * p.s);
    const double hi = std::min(1.0 - eps, p.r + 0.5 - eps);
    if (!(lo < hi)) continue;
    const ParameterChoice c{0.5 * (lo + hi), 0.5 + eps, eps};
    if (check_constraints(p, c).all_pass()) {
      out.choice = c;
      return out;
    }
  }
  out.reasons.emplace_back("no eps >= 2^-20 satisfies every constraint");
  return out;
}

Theorem2Class theorem2_conditions(double a, double b, double c, double alpha, double beta, double gamma) {
  if (!(alpha >= 0.0 && beta >= 0.0 && gamma >= 0.0 && alpha + beta + gamma > 0.5)) return Theorem2Class::fails_weights;
  if (!(a + b >= 0.0 && a + c >= 0.0 && b + c >= 0.0)) return Theorem2Class::fails_abc2;
  if (!(a + b + c > 0.5)) return Theorem2Class::fails_abc1;
  return Theorem2Class::sufficient;
}

std::string_view to_string(Theorem2Class c) {
  switch (c) {
    case Theorem2Class::sufficient: return "sufficient";
    case Theorem2Class::fails_abc1: return "fails_abc1";
    case Theorem2Class::fails_abc2: return "fails_abc2";
    case Theorem2Class::fails_weights: return "fails_weights";
  }
  return "?";
}

Theorem4Report theorem4_necessary(const ExponentTuple& e) {
  Theorem4Report r;
  r.cond1 = e.a + e.b + std::min({e.alpha, e.beta, e.gamma});
  r.cond2 = e.a + e.b + e.c + std::min(e.alpha, e.beta) - 0.5;
  r.cond3 = std::min(e.a, e.b) + e.c;
  r.cond4 = e.a + e.b + e.c + e.gamma;
  return r;
}

FamilyId family_for_condition(int condition, const ExponentTuple& e) {
  switch (condition) {
    case 1: return e.gamma <= std::min(e.alpha, e.beta) ? FamilyId::cond1_gamma : FamilyId::cond1_ab;
    case 2: return FamilyId::cond2;
    case 3: return FamilyId::cond3;
    case 4: return FamilyId::cond4;
    default: throw std::invalid_argument("condition must be 1..4");
  }
}

ExponentTuple theorem3a_tuple(const RegionPoint& p, const ParameterChoice& c) {
  return {p.s, p.s, 1.0 - p.r, c.sigma, c.sigma, 1.0 - c.rho - c.eps};
}

ExponentTuple theorem3b_tuple(const RegionPoint& p, const ParameterChoice& c) {
  return {p.s, -p.s, p.r, c.sigma, 1.0 - c.sigma - c.eps, c.rho};
}

}  // namespace dkg
