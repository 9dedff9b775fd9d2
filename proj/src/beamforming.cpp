#include "rrbf/beamforming.hpp"

#include <cmath>

#include "rrbf/errors.hpp"

namespace rrbf {

Matrix2 EigenBeams::steering() const {
  return Matrix2::diagonal(std::sqrt(delta1), std::sqrt(delta2)) * unitary().adjoint();
}

Matrix2 transmit_correlation(const Matrix2& h) {
  Matrix2 r = h * h.adjoint();
  // Exact Hermitian symmetry; products above agree only to rounding.
  r(0, 0) = r(0, 0).real();
  r(1, 1) = r(1, 1).real();
  r(1, 0) = std::conj(r(0, 1));
  return r;
}

EigenBeams eigen_beams(const Matrix2& r, double power, double noise) {
  if (frobenius_sq(r) == 0.0) throw DegenerateChannel("eigen_beams: zero correlation matrix");
  const auto eig = eig_hermitian_2x2(r);
  EigenBeams b;
  b.correlation = r;
  // PSD input; clip negative round-off.
  b.eigenvalues = {std::max(eig.values[0], 0.0), std::max(eig.values[1], 0.0)};
  if (b.eigenvalues[0] == 0.0) throw DegenerateChannel("eigen_beams: no positive eigenvalue");
  b.u_a = eig.vectors.col(0);
  b.u_b = eig.vectors.col(1);
  const auto [d1, d2] = water_fill(b.eigenvalues, power, noise);
  b.delta1 = d1;
  b.delta2 = d2;
  return b;
}

Matrix2 beamform_rr(const SuperSymbolPair& precoded, const EigenBeams& beams) {
  return alamouti_matrix(precoded.c1, precoded.c2) * beams.steering();
}

Matrix2 beamform_alamouti(const Matrix2& x, const EigenBeams& beams) {
  return x * beams.steering();
}

std::array<cplx, 2> beamform_row(cplx first, cplx second, const EigenBeams& beams) {
  const Matrix2 w = beams.steering();
  return {first * w(0, 0) + second * w(1, 0), first * w(0, 1) + second * w(1, 1)};
}

}  // namespace rrbf
