#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace rrbf {

using cplx = std::complex<double>;

/// 2x2 complex matrix, row-major.
struct Matrix2 {
  std::array<cplx, 4> e{};

  constexpr Matrix2() = default;
  constexpr Matrix2(cplx a, cplx b, cplx c, cplx d) : e{a, b, c, d} {}

  static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Matrix2 diagonal(cplx a, cplx d) { return {a, 0.0, 0.0, d}; }

  cplx& operator()(std::size_t r, std::size_t c) { return e[2 * r + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return e[2 * r + c]; }

  Matrix2 adjoint() const;
  std::array<cplx, 2> row(std::size_t r) const { return {e[2 * r], e[2 * r + 1]}; }
  std::array<cplx, 2> col(std::size_t c) const { return {e[c], e[2 + c]}; }
  bool finite() const;
};

Matrix2 operator*(const Matrix2& a, const Matrix2& b);
Matrix2 operator+(const Matrix2& a, const Matrix2& b);
Matrix2 operator-(const Matrix2& a, const Matrix2& b);
Matrix2 operator*(cplx s, const Matrix2& a);

/// Largest entrywise magnitude of a - b.
double max_abs_diff(const Matrix2& a, const Matrix2& b);
double frobenius_sq(const Matrix2& a);
bool is_hermitian(const Matrix2& m, double tol = 1e-12);

/// Eigenvalues sorted descending, eigenvectors in the matching columns.
struct EigenPair2 {
  std::array<double, 2> values{};
  Matrix2 vectors;
};

/// Spectral decomposition m = U diag(values) U^H of a Hermitian 2x2 matrix.
///
/// Each eigenvector is rotated so that its first nonzero component is real and
/// nonnegative, which makes the result a deterministic function of m. Repeated
/// eigenvalues (m = c*I) return U = I.
EigenPair2 eig_hermitian_2x2(const Matrix2& m);

bool is_power_of_two(std::size_t n);

/// Unitary DFT (1/sqrt(L) scaling in both directions). L must be a power of two.
std::vector<cplx> dft(std::span<const cplx> x, bool inverse);

/// Spatial water-filling over two eigen-channels.
///
/// Returns loads delta_k = max(0, mu - noise/lambda_k) in the order of the
/// eigenvalues passed in, with delta_1 + delta_2 == total_power. A zero
/// eigenvalue is treated as an infinitely weak channel.
std::pair<double, double> water_fill(std::array<double, 2> eigenvalues, double total_power,
                                     double noise_power);

}  // namespace rrbf
