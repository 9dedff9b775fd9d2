#include "rrbf/receiver.hpp"

#include <cmath>
#include <numbers>

#include "rrbf/errors.hpp"

namespace rrbf {

Evcm build_evcm(const ChannelRealization& ch, const EigenBeams& beams, std::size_t antenna) {
  if (antenna > 1) throw InvalidInput("build_evcm: antenna index must be 0 or 1");
  const std::array<cplx, 2> h = ch.h.col(antenna);
  const cplx proj_a = std::conj(beams.u_a[0]) * h[0] + std::conj(beams.u_a[1]) * h[1];
  const cplx proj_b = std::conj(beams.u_b[0]) * h[0] + std::conj(beams.u_b[1]) * h[1];
  const cplx g1 = std::sqrt(beams.delta1) * proj_a;
  const cplx g2 = std::sqrt(beams.delta2) * proj_b;
  return {{g1, g2, std::conj(g2), -std::conj(g1)}, std::norm(g1) + std::norm(g2)};
}

std::array<cplx, 2> equalize(const ReceivedPair& y, const Evcm& evcm) {
  if (!(evcm.psi > 0.0)) throw DegenerateChannel("equalize: zero EVCM gain");
  const Matrix2 gh = evcm.g.adjoint();
  const cplx v0 = y.first;
  const cplx v1 = std::conj(y.second);
  return {gh(0, 0) * v0 + gh(0, 1) * v1, gh(1, 0) * v0 + gh(1, 1) * v1};
}

CombinedStatistic combine(std::span<const EqualizedPair> antennas) {
  if (antennas.size() != 2) throw InvalidInput("combine: expected two receive antennas");
  CombinedStatistic out;
  for (const auto& p : antennas) {
    out.r1 += 0.5 * p.a[0];
    out.r2 += 0.5 * p.a[1];
    out.kappa += 0.5 * p.psi;
  }
  return out;
}

namespace {

struct EpochTerms {
  cplx r;
  double gain_sin;
  double gain_cos;
};

EpochTerms epoch_terms(const CombinedStatistic& r, int epoch, double phi1, double amplitude) {
  if (epoch != 1 && epoch != 2) throw InvalidInput("detection epoch must be 1 or 2");
  if (!(r.kappa > 0.0)) throw DegenerateChannel("detection: combined gain kappa <= 0");
  if (!(amplitude > 0.0)) throw InvalidInput("detection: amplitude must be positive");
  const double phi = epoch == 1 ? phi1 : std::numbers::pi / 2.0 - phi1;
  const double k = amplitude * r.kappa;
  return {epoch == 1 ? r.r1 : r.r2, k * std::sin(phi), k * std::cos(phi)};
}

}  // namespace

PairDecision conditional_ml_detect(const CombinedStatistic& r, int epoch, double phi1,
                                   const QamConstellation& q, double amplitude) {
  const auto t = epoch_terms(r, epoch, phi1, amplitude);
  PairDecision best;
  bool first = true;
  for (std::size_t c = 0; c < q.order(); ++c) {
    const cplx even_term = -std::conj(q.point(c)) * t.gain_cos;
    const cplx intermediate = t.r - even_term;
    const std::size_t odd = q.nearest(intermediate / t.gain_sin);
    const double cost = std::norm(t.r - (q.point(odd) * t.gain_sin + even_term));
    ++best.cost_evaluations;
    if (first || cost < best.cost || (cost == best.cost && odd < best.odd)) {
      best.odd = odd;
      best.even = c;
      best.cost = cost;
      first = false;
    }
  }
  return best;
}

PairDecision exhaustive_ml_detect(const CombinedStatistic& r, int epoch, double phi1,
                                  const QamConstellation& q, double amplitude) {
  const auto t = epoch_terms(r, epoch, phi1, amplitude);
  PairDecision best;
  bool first = true;
  for (std::size_t odd = 0; odd < q.order(); ++odd) {
    for (std::size_t even = 0; even < q.order(); ++even) {
      const cplx model = q.point(odd) * t.gain_sin - std::conj(q.point(even)) * t.gain_cos;
      const double cost = std::norm(t.r - model);
      ++best.cost_evaluations;
      if (first || cost < best.cost) {
        best.odd = odd;
        best.even = even;
        best.cost = cost;
        first = false;
      }
    }
  }
  return best;
}

AlamoutiDecision alamouti_detect(std::span<const ReceivedPair> y, std::span<const Evcm> evcms,
                                 const QamConstellation& q, double amplitude) {
  if (y.size() != evcms.size() || y.empty())
    throw InvalidInput("alamouti_detect: need one EVCM per received pair");
  if (!(amplitude > 0.0)) throw InvalidInput("alamouti_detect: amplitude must be positive");
  std::array<cplx, 2> acc{};
  double gain = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    gain += evcms[i].psi;
    if (evcms[i].psi == 0.0) continue;
    const auto a = equalize(y[i], evcms[i]);
    acc[0] += a[0];
    acc[1] += a[1];
  }
  if (!(gain > 0.0)) throw DegenerateChannel("alamouti_detect: zero total gain");
  const double norm = amplitude * gain;
  return {q.nearest(acc[0] / norm), q.nearest(acc[1] / norm)};
}

}  // namespace rrbf
