#ifndef DKG_SPINOR_HPP
#define DKG_SPINOR_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dkg {

using cplx = std::complex<double>;

/// Pointwise value of the Dirac field, a column vector in C^2.
struct Spinor {
  cplx c1{};
  cplx c2{};

  friend Spinor operator+(const Spinor& a, const Spinor& b) { return {a.c1 + b.c1, a.c2 + b.c2}; }
  friend Spinor operator-(const Spinor& a, const Spinor& b) { return {a.c1 - b.c1, a.c2 - b.c2}; }
  friend Spinor operator*(cplx s, const Spinor& a) { return {s * a.c1, s * a.c2}; }
  friend bool operator==(const Spinor&, const Spinor&) = default;
};

double norm(const Spinor& psi);

/// Row-major 2x2 complex matrix.
using Mat2 = std::array<std::array<cplx, 2>, 2>;

Spinor apply(const Mat2& m, const Spinor& psi);
Mat2 multiply(const Mat2& a, const Mat2& b);
Mat2 add(const Mat2& a, const Mat2& b);
Mat2 scale(cplx s, const Mat2& a);
Mat2 adjoint(const Mat2& a);
Mat2 identity2();
/// Largest entry modulus of a - b.
double max_abs_diff(const Mat2& a, const Mat2& b);

/// The fixed representation alpha = [[0,1],[1,0]], beta = diag(1,-1).
struct DiracMatrices {
  static const Mat2& alpha();
  static const Mat2& beta();
};

enum class Sign { plus, minus };

/// Constant eigenprojections of the Dirac symbol: P+ = (I + alpha)/2, P- = (I - alpha)/2.
const Mat2& projection(Sign sign);

/// Returns (P+ psi, P- psi).
std::pair<Spinor, Spinor> decompose(const Spinor& psi);

/// <beta psi, psi'>, linear in the first slot and conjugate-linear in the second:
/// psi_1 conj(psi'_1) - psi_2 conj(psi'_2).
cplx null_form(const Spinor& psi, const Spinor& psi_prime);

/// Frequency-dependent projection 1/2 [[1, +-sgn xi], [+-sgn xi, 1]] onto the
/// eigenspaces of alpha*xi ordered by +-|xi|. sgn(0) is taken as +1.
Mat2 pecher_matrix(double xi, Sign sign);
Spinor pecher_projection(double xi, Sign sign, const Spinor& psi);

/// Outcome of the randomized spinor self-test.
struct SpinorSelfTest {
  struct Check {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed() const { return max_error <= tolerance; }
  };
  std::vector<Check> checks;
  std::size_t samples = 0;
  bool passed() const;
};

/// Runs the matrix identities and the null-form vanishing over `samples`
/// pseudo-random spinor pairs. Null-form errors are relative to |psi||psi'|.
SpinorSelfTest run_spinor_self_test(std::size_t samples, std::uint64_t seed);

}  // namespace dkg

#endif  // DKG_SPINOR_HPP
