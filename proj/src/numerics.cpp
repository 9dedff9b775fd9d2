#include "rrbf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rrbf/errors.hpp"

namespace rrbf {

Matrix2 Matrix2::adjoint() const {
  return {std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])};
}

bool Matrix2::finite() const {
  return std::all_of(e.begin(), e.end(), [](cplx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
  return {a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
          a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]};
}

Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
  return {a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]};
}

Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
  return {a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]};
}

Matrix2 operator*(cplx s, const Matrix2& a) {
  return {s * a.e[0], s * a.e[1], s * a.e[2], s * a.e[3]};
}

double max_abs_diff(const Matrix2& a, const Matrix2& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a.e[i] - b.e[i]));
  return worst;
}

double frobenius_sq(const Matrix2& a) {
  double s = 0.0;
  for (const auto& v : a.e) s += std::norm(v);
  return s;
}

bool is_hermitian(const Matrix2& m, double tol) {
  return std::abs(m(0, 1) - std::conj(m(1, 0))) <= tol && std::abs(m(0, 0).imag()) <= tol &&
         std::abs(m(1, 1).imag()) <= tol;
}

namespace {

// Rotates v so its first nonzero component is real and nonnegative.
void fix_phase(cplx& v0, cplx& v1) {
  const cplx lead = v0 != 0.0 ? v0 : v1;
  const double mag = std::abs(lead);
  if (mag == 0.0) return;
  const cplx rot = std::conj(lead) / mag;
  v0 *= rot;
  v1 *= rot;
  // Kill the rounding residue on the component that must be real.
  if (v0 != 0.0)
    v0 = cplx(v0.real(), 0.0);
  else
    v1 = cplx(v1.real(), 0.0);
}

}  // namespace

EigenPair2 eig_hermitian_2x2(const Matrix2& m) {
  if (!m.finite()) throw InvalidInput("eig_hermitian_2x2: non-finite entry");
  double scale = 0.0;
  for (const auto& v : m.e) scale = std::max(scale, std::abs(v));
  if (!is_hermitian(m, 1e-12 * std::max(1.0, scale)))
    throw ContractViolation("eig_hermitian_2x2: matrix is not Hermitian");

  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  // Symmetrize the off-diagonal so tiny asymmetries do not leak into U.
  const cplx b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  const double mean = 0.5 * (a + d);
  const double half_gap = 0.5 * (a - d);
  const double radius = std::hypot(half_gap, std::abs(b));

  EigenPair2 out;
  out.values = {mean + radius, mean - radius};

  if (std::abs(b) == 0.0) {
    out.vectors = a >= d ? Matrix2::identity() : Matrix2{0.0, 1.0, 1.0, 0.0};
    return out;
  }

  // Pick the eigenvector formula whose leading term does not cancel.
  cplx v0, v1;
  if (half_gap >= 0.0) {
    v0 = half_gap + radius;
    v1 = std::conj(b);
  } else {
    v0 = b;
    v1 = radius - half_gap;
  }
  const double norm = std::hypot(std::abs(v0), std::abs(v1));
  v0 /= norm;
  v1 /= norm;
  fix_phase(v0, v1);

  cplx w0 = -std::conj(v1);
  cplx w1 = std::conj(v0);
  fix_phase(w0, w1);

  out.vectors = {v0, w0, v1, w1};
  return out;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<cplx> dft(std::span<const cplx> x, bool inverse) {
  const std::size_t n = x.size();
  if (!is_power_of_two(n))
    throw InvalidInput("dft: length " + std::to_string(n) + " is not a power of two");

  std::vector<cplx> a(x.begin(), x.end());
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t k = 0; k < half; ++k) {
      // Direct twiddles instead of a running product keep round-off at ~1e-16.
      const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(len);
      const cplx w(std::cos(ang), std::sin(ang));
      for (std::size_t i = 0; i < n; i += len) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + half] * w;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : a) v *= scale;
  return a;
}

std::pair<double, double> water_fill(std::array<double, 2> eigenvalues, double total_power,
                                     double noise_power) {
  if (!(total_power > 0.0) || !std::isfinite(total_power))
    throw InvalidInput("water_fill: total power must be positive and finite");
  if (!(noise_power > 0.0) || !std::isfinite(noise_power))
    throw InvalidInput("water_fill: noise power must be positive and finite");
  for (double l : eigenvalues)
    if (!(l >= 0.0) || !std::isfinite(l))
      throw InvalidInput("water_fill: eigenvalues must be nonnegative and finite");
  if (eigenvalues[0] == 0.0 && eigenvalues[1] == 0.0)
    throw InvalidInput("water_fill: both eigen-channels have zero gain");

  const std::size_t strong = eigenvalues[0] >= eigenvalues[1] ? 0 : 1;
  const std::size_t weak = 1 - strong;
  const double inv_strong = noise_power / eigenvalues[strong];
  const double inv_weak = eigenvalues[weak] > 0.0 ? noise_power / eigenvalues[weak]
                                                  : std::numeric_limits<double>::infinity();

  std::array<double, 2> delta{};
  const double level = 0.5 * (total_power + inv_strong + inv_weak);
  if (std::isfinite(inv_weak) && level > inv_weak) {
    delta[strong] = level - inv_strong;
    delta[weak] = total_power - delta[strong];
  } else {
    delta[strong] = total_power;
    delta[weak] = 0.0;
  }
  return {delta[0], delta[1]};
}

}  // namespace rrbf
