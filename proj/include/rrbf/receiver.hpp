#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "rrbf/beamforming.hpp"
#include "rrbf/channel.hpp"
#include "rrbf/modem.hpp"
#include "rrbf/numerics.hpp"

namespace rrbf {

/// Equivalent virtual channel of one receive antenna:
///   [y^1; conj(y^2)] = G [C1; C2] + disturbance,
///   G = [[g1, g2], [conj(g2), -conj(g1)]], g1 = sqrt(d1) u_a^H h_i, g2 = sqrt(d2) u_b^H h_i.
/// G^H G = psi I.
struct Evcm {
  Matrix2 g;
  double psi = 0.0;
};

Evcm build_evcm(const ChannelRealization& ch, const EigenBeams& beams, std::size_t antenna);

/// Values received on the two channel uses of one block at one antenna.
struct ReceivedPair {
  cplx first;
  cplx second;
};

/// a = G^H [y^1; conj(y^2)]. Throws DegenerateChannel when psi == 0.
std::array<cplx, 2> equalize(const ReceivedPair& y, const Evcm& evcm);

struct EqualizedPair {
  std::array<cplx, 2> a;
  double psi;
};

/// Per-super-symbol statistics after antenna averaging; kappa is the gain that
/// multiplies (C1, C2) in r before the transmit amplitude is applied.
struct CombinedStatistic {
  cplx r1;
  cplx r2;
  double kappa = 0.0;
};

/// r^j = (a_1^j + a_2^j) / 2, kappa = (psi_1 + psi_2) / 2. Needs both antennas.
CombinedStatistic combine(std::span<const EqualizedPair> antennas);

struct PairDecision {
  std::size_t odd = 0;   // x1 (epoch 1) or x3 (epoch 2), constellation index
  std::size_t even = 0;  // x2 or x4
  double cost = 0.0;
  std::size_t cost_evaluations = 0;
};

/// Conditional ML search: for each candidate of the even symbol, slice the
/// odd one and evaluate |r - k(x_odd sin(phi) - conj(x_even) cos(phi))|^2
/// with k = amplitude * kappa. Exactly |Q| cost evaluations.
PairDecision conditional_ml_detect(const CombinedStatistic& r, int epoch, double phi1,
                                   const QamConstellation& q, double amplitude);

/// Brute-force reference over all |Q|^2 pairs; ties go to the lexicographically
/// smallest (odd, even) index pair.
PairDecision exhaustive_ml_detect(const CombinedStatistic& r, int epoch, double phi1,
                                  const QamConstellation& q, double amplitude);

struct AlamoutiDecision {
  std::size_t x1 = 0;
  std::size_t x2 = 0;
};

/// Linear Alamouti detection: x~ = sum_i G_i^H y_i, normalized by
/// amplitude * sum_i psi_i, then sliced per symbol.
AlamoutiDecision alamouti_detect(std::span<const ReceivedPair> y, std::span<const Evcm> evcms,
                                 const QamConstellation& q, double amplitude);

}  // namespace rrbf
