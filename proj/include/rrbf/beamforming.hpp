#pragma once

#include <array>

#include "rrbf/numerics.hpp"
#include "rrbf/stbc.hpp"

namespace rrbf {

/// Eigen-directions of the transmit correlation and their water-filled loads.
struct EigenBeams {
  std::array<cplx, 2> u_a{};  // strongest eigen-direction
  std::array<cplx, 2> u_b{};
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::array<double, 2> eigenvalues{};
  Matrix2 correlation;

  /// U_H with columns (u_a, u_b).
  Matrix2 unitary() const { return {u_a[0], u_b[0], u_a[1], u_b[1]}; }
  /// diag(sqrt(delta)) * U_H^H, the right-hand factor applied to each code row.
  Matrix2 steering() const;
};

/// Transmit-side correlation H H^H of a channel stored transmit-by-receive
/// (h(t, r) is the gain from transmit antenna t to receive antenna r).
Matrix2 transmit_correlation(const Matrix2& h);

/// Eigendecomposition of r with loads water-filled to total `power` against
/// `noise`. Throws DegenerateChannel when r is zero.
EigenBeams eigen_beams(const Matrix2& r, double power, double noise);

/// Rate-reliability beamformer: [[c1p, c2p], [-c2p*, c1p*]] diag(sqrt(delta)) U^H.
Matrix2 beamform_rr(const SuperSymbolPair& precoded, const EigenBeams& beams);

/// Benchmark Alamouti beamformer: X diag(sqrt(delta)) U^H.
Matrix2 beamform_alamouti(const Matrix2& x, const EigenBeams& beams);

/// One channel use: the 1x2 code row times the steering matrix.
std::array<cplx, 2> beamform_row(cplx first, cplx second, const EigenBeams& beams);

}  // namespace rrbf
