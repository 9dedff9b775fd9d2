#include "rrbf/channel.hpp"

#include <cmath>

#include "rrbf/errors.hpp"

namespace rrbf {

ChannelRealization draw_channel(RandomStream& stream) {
  ChannelRealization ch;
  for (auto& v : ch.h.e) v = stream.complex_gaussian();
  return ch;
}

std::string_view to_string(JammerKind kind) {
  switch (kind) {
    case JammerKind::none: return "none";
    case JammerKind::all_band: return "all-band";
    case JammerKind::multi_band: return "multi-band";
    case JammerKind::barrage: return "barrage";
  }
  return "?";
}

std::string_view to_string(JammerPath path) {
  return path == JammerPath::direct ? "direct" : "faded";
}

JammerKind parse_jammer_kind(std::string_view s) {
  if (s == "none") return JammerKind::none;
  if (s == "all-band") return JammerKind::all_band;
  if (s == "multi-band") return JammerKind::multi_band;
  if (s == "barrage") return JammerKind::barrage;
  throw InvalidInput("unknown jammer kind '" + std::string(s) + "'");
}

JammerPath parse_jammer_path(std::string_view s) {
  if (s == "direct") return JammerPath::direct;
  if (s == "faded") return JammerPath::faded;
  throw InvalidInput("unknown jammer path '" + std::string(s) + "'");
}

void JammerSpec::validate(std::size_t data_slots) const {
  if (!std::isfinite(sjr_db)) throw InvalidInput("jammer: SJR must be finite");
  if (kind == JammerKind::multi_band) {
    if (jammed_slots.empty()) throw InvalidInput("multi-band jammer needs a jammed slot set");
    if (*jammed_slots.rbegin() >= data_slots)
      throw InvalidInput("multi-band jammer: slot index out of range");
  }
}

double mean_power(const AntennaSamples& x) {
  double acc = 0.0;
  std::size_t n = 0;
  for (const auto& ant : x) {
    for (const auto& v : ant) acc += std::norm(v);
    n += ant.size();
  }
  return n == 0 ? 0.0 : acc / static_cast<double>(n);
}

namespace {

std::vector<cplx> disguised_waveform(const JammerSpec& spec, const FrameGeometry& g,
                                     const QamConstellation& q, RandomStream& stream) {
  std::vector<cplx> out;
  out.reserve(g.samples());
  std::vector<cplx> spectrum(g.grid.data_count());
  for (std::size_t s = 0; s < g.ofdm_symbols; ++s) {
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
      const bool on = spec.kind == JammerKind::all_band || spec.jammed_slots.contains(k);
      spectrum[k] = on ? q.point(stream.uniform_index(q.order())) : cplx{};
    }
    const auto sym = ofdm_modulate(spectrum, g.grid);
    out.insert(out.end(), sym.begin(), sym.end());
  }
  return out;
}

std::vector<cplx> barrage_waveform(const FrameGeometry& g, RandomStream& stream) {
  std::vector<cplx> out(g.samples());
  for (auto& v : out) v = stream.complex_gaussian();
  return out;
}

std::vector<cplx> raw_waveform(const JammerSpec& spec, const FrameGeometry& g,
                               const QamConstellation& q, RandomStream& stream) {
  return spec.kind == JammerKind::barrage ? barrage_waveform(g, stream)
                                          : disguised_waveform(spec, g, q, stream);
}

}  // namespace

AntennaSamples synthesize_jammer(const JammerSpec& spec, const FrameGeometry& geometry,
                                 double signal_power_ref, RandomStream& stream) {
  geometry.grid.validate();
  spec.validate(geometry.grid.data_count());
  if (!(signal_power_ref >= 0.0) || !std::isfinite(signal_power_ref))
    throw InvalidInput("synthesize_jammer: signal power reference must be >= 0");

  AntennaSamples jam;
  if (spec.kind == JammerKind::none) {
    jam[0].assign(geometry.samples(), 0.0);
    jam[1].assign(geometry.samples(), 0.0);
    return jam;
  }
  const QamConstellation q(geometry.constellation_order);
  // Expected per-sample power of the unfaded waveform: unit-energy points on
  // the occupied bins through a unitary IDFT, or unit-variance barrage noise.
  const std::size_t occupied = spec.kind == JammerKind::all_band     ? geometry.grid.data_count()
                               : spec.kind == JammerKind::multi_band ? spec.jammed_slots.size()
                                                                     : geometry.grid.fft_size;
  double expected = static_cast<double>(occupied) / static_cast<double>(geometry.grid.fft_size);
  if (spec.path == JammerPath::faded) {
    const cplx g0 = stream.complex_gaussian();
    const cplx g1 = stream.complex_gaussian();
    expected *= 0.5 * (std::norm(g0) + std::norm(g1));
    const auto w = raw_waveform(spec, geometry, q, stream);
    jam[0].resize(w.size());
    jam[1].resize(w.size());
    for (std::size_t n = 0; n < w.size(); ++n) {
      jam[0][n] = g0 * w[n];
      jam[1][n] = g1 * w[n];
    }
  } else {
    jam[0] = raw_waveform(spec, geometry, q, stream);
    jam[1] = raw_waveform(spec, geometry, q, stream);
  }

  const double target = signal_power_ref * std::pow(10.0, -spec.sjr_db / 10.0);
  const double scale = expected > 0.0 ? std::sqrt(target / expected) : 0.0;
  for (auto& ant : jam)
    for (auto& v : ant) v *= scale;
  return jam;
}

AntennaSamples apply_channel(const AntennaSamples& tx, const ChannelRealization& ch,
                             double power) {
  if (tx[0].size() != tx[1].size())
    throw InvalidInput("apply_channel: antenna streams differ in length");
  const double amp = std::sqrt(power);
  AntennaSamples rx;
  for (std::size_t r = 0; r < 2; ++r) {
    const cplx g0 = amp * ch.h(0, r);
    const cplx g1 = amp * ch.h(1, r);
    rx[r].resize(tx[0].size());
    for (std::size_t n = 0; n < tx[0].size(); ++n) rx[r][n] = g0 * tx[0][n] + g1 * tx[1][n];
  }
  return rx;
}

AntennaSamples transmit_through(const AntennaSamples& tx, const ChannelRealization& ch,
                                const AntennaSamples& jam, const NoiseSpec& noise, double power,
                                RandomStream& stream) {
  if (!(noise.n0 >= 0.0)) throw InvalidInput("transmit_through: n0 must be >= 0");
  AntennaSamples rx = apply_channel(tx, ch, power);
  const bool has_jam = !jam[0].empty() || !jam[1].empty();
  if (has_jam && (jam[0].size() != rx[0].size() || jam[1].size() != rx[1].size()))
    throw InvalidInput("transmit_through: jam length does not match frame length");
  const double sigma = std::sqrt(noise.n0);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t n = 0; n < rx[r].size(); ++n) {
      if (has_jam) rx[r][n] += jam[r][n];
      if (noise.n0 > 0.0) rx[r][n] += sigma * stream.complex_gaussian();
    }
  }
  return rx;
}

}  // namespace rrbf
