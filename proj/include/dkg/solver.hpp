#ifndef DKG_SOLVER_HPP
#define DKG_SOLVER_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dkg/spinor.hpp"

namespace dkg {

/// Periodic spatial grid x_j = (j - n/2) dx on a box of length x_extent.
struct GridSpec1D {
  std::size_t n_x = 0;
  double x_extent = 0.0;

  double dx() const { return x_extent / static_cast<double>(n_x); }
  double x(std::size_t j) const;
  /// Frequency of FFT bin k (standard ordering, negative half above n/2).
  double xi(std::size_t k) const;
  /// Throws std::invalid_argument unless n_x is a power of two >= 2 and x_extent > 0.
  void validate() const;
};

/// The spinor is stored by its scalar amplitudes on the two (one-dimensional)
/// ranges of P+ and P-:  psi = psi_plus (1,1)/sqrt2 + psi_minus (1,-1)/sqrt2.
struct DKGState {
  GridSpec1D grid;
  std::vector<cplx> psi_plus;
  std::vector<cplx> psi_minus;
  std::vector<double> phi;
  std::vector<double> phi_t;
  double t = 0.0;
  double M = 0.0;
  double m = 0.0;

  Spinor spinor(std::size_t j) const;
  std::vector<Spinor> spinor_field() const;
};

enum class Splitting { lie, strang };

struct SolverConfig {
  GridSpec1D grid;
  double dt = 0.0;
  double t_end = 0.0;
  Splitting splitting = Splitting::strang;
  int diagnostics_every = 1;
  /// Sobolev indices used for the hs_psi and hr_phi diagnostics.
  double s = 0.0;
  double r = 0.0;
};

/// Default step dx/2.
double default_dt(const GridSpec1D& grid);

DKGState init_state(std::span<const Spinor> psi0, std::span<const double> phi0, std::span<const double> phi1,
                    double M, double m, const GridSpec1D& grid);
/// Complex-typed field data; throws std::invalid_argument if any sample has a
/// nonzero imaginary part.
DKGState init_state(std::span<const Spinor> psi0, std::span<const cplx> phi0, std::span<const cplx> phi1,
                    double M, double m, const GridSpec1D& grid);

/// Exact flow of (D_t +- D_x + M) psi_+- = 0.
void half_wave_flow(DKGState& st, double dt);
/// Exact flow of phi_tt - phi_xx + m^2 phi = 0.
void kg_flow(DKGState& st, double dt);
/// Exact flow of psi_t = i phi beta psi with phi frozen, together with
/// phi_t += dt <beta psi, psi> with psi frozen. The source is invariant under
/// the rotation, so the order of the two parts does not matter.
void coupling_flow(DKGState& st, double dt);

/// One step of size dt (negative dt steps backwards); advances st.t.
void step(DKGState& st, double dt, Splitting splitting);

/// L^2 norm of the reconstructed spinor field.
double charge(const DKGState& st);

/// Discrete H^s norm with weight (1 + xi^2)^{s/2}, normalized so that H^0 is the
/// L^2 norm sqrt(dx sum |f|^2).
double sobolev_norm(std::span<const cplx> f, const GridSpec1D& grid, double s);
double sobolev_norm(std::span<const double> f, const GridSpec1D& grid, double s);
double sobolev_norm(std::span<const Spinor> psi, const GridSpec1D& grid, double s);

/// 1/2 int (phi_t^2 + phi_x^2 + m^2 phi^2) dx, spectrally.
double kg_energy(const DKGState& st);

/// Spinor data with Fourier coefficients <xi>^{-s-1/2-0.01} times random unit
/// phases in each component, normalized to unit H^s norm.
std::vector<Spinor> rough_data(double s, std::uint64_t seed, const GridSpec1D& grid);
/// Real-valued analogue (Hermitian-symmetric coefficients), unit H^r norm.
std::vector<double> rough_real_data(double r, std::uint64_t seed, const GridSpec1D& grid);

struct Diagnostics {
  double t = 0.0;
  double charge = 0.0;
  double hs_psi = 0.0;
  double hr_phi = 0.0;
  double kg_energy = 0.0;
};

class NonFiniteError : public std::runtime_error {
 public:
  NonFiniteError(long long step_index, double t);
  long long step_index() const { return step_; }

 private:
  long long step_;
};

Diagnostics measure(const DKGState& st, double s, double r);

/// Advances st to config.t_end in ceil(t_end/dt) equal steps (dt shrunk to fit),
/// recording diagnostics at t = 0, every diagnostics_every steps and at the end.
std::vector<Diagnostics> run(const SolverConfig& config, DKGState& st);

/// Writes psi_plus, psi_minus, phi, phi_t to <prefix>.<field>.bin using the
/// grid-function binary layout with a single time row.
void save_snapshot(const std::string& prefix, const DKGState& st);

}  // namespace dkg

#endif  // DKG_SOLVER_HPP
