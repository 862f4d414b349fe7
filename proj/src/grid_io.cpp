#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "dkg/spacetime_norms.hpp"

namespace dkg {

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(b.data(), b.size());
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> b{};
  in.read(reinterpret_cast<char*>(b.data()), b.size());
  if (!in) throw std::runtime_error("grid function file truncated");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void write_grid_function(std::ostream& out, const GridFunction2D& u) {
  const Grid2D& g = u.grid();
  if (!g.is_centered()) throw std::invalid_argument("write_grid_function: only centered grids are serializable");
  put_u64(out, g.n_t);
  put_u64(out, g.n_x);
  put_f64(out, g.t_extent);
  put_f64(out, g.x_extent);
  put_u64(out, u.side() == Side::physical ? 0 : 1);
  for (const cplx& z : u.values()) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
  if (!out) throw std::runtime_error("write_grid_function: stream error");
}

GridFunction2D read_grid_function(std::istream& in) {
  const std::uint64_t n_t = get_u64(in);
  const std::uint64_t n_x = get_u64(in);
  const double t_extent = get_f64(in);
  const double x_extent = get_f64(in);
  const std::uint64_t side = get_u64(in);
  if (side > 1) throw std::runtime_error("grid function file: bad side flag");
  if (n_t == 0 || n_x == 0 || n_t > (1u << 24) || n_x > (1u << 24) || n_t * n_x > (std::uint64_t{1} << 31))
    throw std::runtime_error("grid function file: implausible dimensions");
  const Grid2D g = Grid2D::centered(n_t, n_x, t_extent, x_extent);
  std::vector<cplx> v(g.size());
  for (cplx& z : v) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    z = {re, im};
  }
  return GridFunction2D(g, side == 0 ? Side::physical : Side::fourier, std::move(v));
}

void save_grid_function(const std::string_view path, const GridFunction2D& u) {
  std::ofstream out{std::string(path), std::ios::binary};
  if (!out) throw std::runtime_error("cannot open " + std::string(path) + " for writing");
  write_grid_function(out, u);
}

GridFunction2D load_grid_function(const std::string_view path) {
  std::ifstream in{std::string(path), std::ios::binary};
  if (!in) throw std::runtime_error("cannot open " + std::string(path));
  return read_grid_function(in);
}

}  // namespace dkg
