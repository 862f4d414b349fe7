#ifndef DKG_BILINEAR_VERIFIER_HPP
#define DKG_BILINEAR_VERIFIER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dkg/spacetime_norms.hpp"

namespace dkg {

/// Exponents of the mixed-sign estimate
///   || u conj(v) ||_{H^{-c,-gamma}} <~ || u ||_{X+^{a,alpha}} || v ||_{X-^{b,beta}}.
struct ExponentTuple {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

enum class FamilyId { cond1_ab, cond2, cond3, cond1_gamma, cond4 };

inline constexpr FamilyId kAllFamilies[] = {FamilyId::cond1_ab, FamilyId::cond2, FamilyId::cond3,
                                            FamilyId::cond1_gamma, FamilyId::cond4};

std::string_view to_string(FamilyId id);
std::optional<FamilyId> parse_family(std::string_view name);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x) const;
  bool contains(const Interval& other) const;
};

/// plus: lambda + eta = O(1); minus: lambda - eta = O(1).
enum class StripLine { plus, minus };

/// Indicator of { |lambda +- eta| <= thickness/2, eta in interval } on the Fourier side.
struct StripSpec {
  Interval interval;
  StripLine line = StripLine::plus;
  double thickness = 1.0;
};

/// Output region used for the lower bound:  xi in C, |tau + xi_coeff*xi + L_coeff*L| <= 1/2.
struct Restriction {
  double xi_coeff = 1.0;
  double l_coeff = 0.0;
};

struct CounterexampleFamily {
  FamilyId id = FamilyId::cond2;
  double L = 0.0;
  Interval A, B, C;
  StripSpec u_strip;
  StripSpec v_strip;
  Restriction restriction;

  /// Predicted decay exponent: ratio ~ L^{-delta}.
  double delta(const ExponentTuple& e) const;
};

/// Intervals, strips and restriction rule of a family at scale L (> 4).
CounterexampleFamily make_family(FamilyId id, double L);
double predicted_delta(FamilyId id, const ExponentTuple& e);

/// Interval-arithmetic check of  eta in A, xi in C  =>  eta - xi in B.
bool abc_property_exact(const CounterexampleFamily& fam);
/// Number of sampled (eta, xi) in A x C with eta - xi outside B.
std::size_t abc_property_violations(const CounterexampleFamily& fam, std::size_t samples, std::uint64_t seed);

struct BuiltFamily {
  GridFunction2D u_hat;
  GridFunction2D v_hat;
  CounterexampleFamily family;
};

inline constexpr double kDefaultSpacing = 0.25;

/// Builds u~ and v~ on frequency windows fitted to their supports, with lattice
/// spacing `spacing` (<= thickness/4) in both tau and xi.
BuiltFamily build_family(FamilyId id, double L, double spacing = kDefaultSpacing);
/// Builds u~ and v~ on a given centered grid; rejects grids that are too coarse
/// or too small to contain the supports.
BuiltFamily build_family(FamilyId id, double L, const Grid2D& grid);

struct RatioTerms {
  double numerator = 0.0;
  double denom_u = 0.0;
  double denom_v = 0.0;
  double ratio() const { return numerator / (denom_u * denom_v); }
};

/// One (family, L) experiment. The spectrum of u conj(v) is computed once and
/// reused for every exponent tuple.
class FamilyExperiment {
 public:
  FamilyExperiment(FamilyId id, double L, double spacing = kDefaultSpacing);

  RatioTerms evaluate(const ExponentTuple& e) const;
  const BuiltFamily& built() const { return built_; }
  /// (u conj(v))~ on its full support window.
  const GridFunction2D& product_hat() const { return product_hat_; }

 private:
  BuiltFamily built_;
  GridFunction2D product_hat_;
};

/// || u conj(v) ||_{H^{-c,-gamma}} / (|| u ||_{X+^{a,alpha}} || v ||_{X-^{b,beta}}).
double ratio(FamilyId id, double L, const ExponentTuple& e);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit of log(values) against log(scales).
SlopeFit fit_log_log(std::span<const double> scales, std::span<const double> values);

/// Throws std::invalid_argument unless the ladder is geometric with >= 4 rungs, each >= 32.
void validate_ladder(std::span<const double> ladder);

/// Slope of log ratio versus log L; the contract is |slope + delta| <= 0.15.
SlopeFit fit_exponent(FamilyId id, const ExponentTuple& e, std::span<const double> ladder);
/// Same, for several tuples sharing one experiment per rung.
std::vector<SlopeFit> fit_exponents(FamilyId id, std::span<const ExponentTuple> tuples, std::span<const double> ladder);

inline constexpr double kSlopeTolerance = 0.15;

/// Geometry of the restricted lower-bound set, sampled over
/// { eta in A, |lambda + eta| <= 1/2 } x { xi in C, restriction }.
struct SupportGeometry {
  std::size_t samples = 0;
  /// Range of |lambda - tau - (eta - xi)|.
  double min_sigma = 0.0;
  double max_sigma = 0.0;
  /// Largest |(lambda - tau) +- (eta - xi)| for v's strip line; O(1) when the
  /// restricted set lies inside v's support.
  double max_v_line = 0.0;
  /// Samples with eta - xi outside B.
  std::size_t abc_violations = 0;
};

SupportGeometry restricted_support_geometry(const CounterexampleFamily& fam, std::size_t samples, std::uint64_t seed);

/// || u v ||_{L^2} / (||f|| ||g||) for u(t,x) = f(x - t), v(t,x) = g(x + t),
/// synthesized from spatial spectra on the x-lattice of `grid`. Requires
/// t_extent <= x_extent / 2 so periodic images of the two waves never meet inside
/// the time window.
double wave_product_constant(std::span<const cplx> f_hat, std::span<const cplx> g_hat, const Grid2D& grid);

struct CorollaryProbeOptions {
  std::uint64_t seed = 1;
  int band = 32;
  std::size_t n = 256;
};

/// max over random band-limited pairs of || u v ||_{L^2} / (|| u ||_{X+^{0,alpha}} || v ||_{X-^{0,alpha}}).
double corollary_probe(double alpha, int trials, const CorollaryProbeOptions& opts = {});

}  // namespace dkg

#endif  // DKG_BILINEAR_VERIFIER_HPP
