#include "rrbf/psd.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "rrbf/beamforming.hpp"
#include "rrbf/errors.hpp"
#include "rrbf/modem.hpp"
#include "rrbf/random.hpp"
#include "rrbf/receiver.hpp"
#include "rrbf/stbc.hpp"

namespace rrbf {

std::size_t PsdEstimate::bin_of(double f_norm) const {
  const double n = static_cast<double>(freq.size());
  long k = std::lround((f_norm + 0.5) * n);
  k = ((k % static_cast<long>(freq.size())) + static_cast<long>(freq.size())) %
      static_cast<long>(freq.size());
  return static_cast<std::size_t>(k);
}

PsdEstimate estimate_psd(std::span<const cplx> samples, std::size_t segment) {
  if (!is_power_of_two(segment)) throw InvalidInput("estimate_psd: segment must be a power of two");
  if (samples.size() < segment)
    throw InvalidInput("estimate_psd: need at least " + std::to_string(segment) + " samples");

  std::vector<double> window(segment);
  double window_energy = 0.0;
  for (std::size_t n = 0; n < segment; ++n) {
    window[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                     static_cast<double>(segment));
    window_energy += window[n] * window[n];
  }

  const std::size_t hop = segment / 2;
  std::vector<double> acc(segment, 0.0);
  std::size_t count = 0;
  std::vector<cplx> buf(segment);
  for (std::size_t start = 0; start + segment <= samples.size(); start += hop) {
    for (std::size_t n = 0; n < segment; ++n) buf[n] = samples[start + n] * window[n];
    const auto spec = dft(buf, false);
    for (std::size_t k = 0; k < segment; ++k) acc[k] += std::norm(spec[k]);
    ++count;
  }

  // Unitary DFT: E|X_k|^2 = s2 * window_energy / segment for white noise.
  const double scale = static_cast<double>(segment) / (window_energy * static_cast<double>(count));
  PsdEstimate out;
  out.freq.resize(segment);
  out.density_db.resize(segment);
  for (std::size_t i = 0; i < segment; ++i) {
    const std::size_t k = (i + segment / 2) % segment;  // fftshift
    out.freq[i] = static_cast<double>(i) / static_cast<double>(segment) - 0.5;
    const double p = std::max(acc[k] * scale, 1e-300);
    out.density_db[i] = 10.0 * std::log10(p);
  }
  return out;
}

PsdRun run_psd(const PsdConfig& cfg) {
  if (cfg.frames == 0) throw InvalidInput("run_psd: frames must be >= 1");
  SweepConfig sc;
  sc.scheme = cfg.scheme;
  sc.jammer = cfg.jammer;
  sc.jammer_path = cfg.jammer_path;
  sc.jammed_slots = cfg.jammed_slots;
  sc.sjr_points = {cfg.sjr_db};
  sc.es_n0_db = cfg.es_n0_db;
  sc.seed = cfg.seed;
  sc.validate();

  const OfdmGrid grid = sc.grid();
  const QamConstellation q(sc.constellation());
  const std::size_t slots = grid.data_count();
  const double n0 = sc.noise_n0();
  const double loading_noise = n0 > 0.0 ? n0 : std::numeric_limits<double>::min();

  std::vector<cplx> legit, jam, received;
  for (std::uint64_t f = 0; f < cfg.frames; ++f) {
    const StreamSeed base{cfg.seed, {std::string("psd"), f}};
    RandomStream rng = derive_stream(base);
    ChannelRealization ch;
    EigenBeams beams;
    for (;;) {
      ch = draw_channel(rng);
      try {
        beams = eigen_beams(transmit_correlation(ch.h), 2.0, loading_noise);
        break;
      } catch (const DegenerateChannel&) {
      }
    }
    // Random code rows on every slot the scheme occupies.
    std::array<std::vector<cplx>, 2> spectrum{std::vector<cplx>(slots), std::vector<cplx>(slots)};
    for (std::size_t k = 0; k < slots; ++k) {
      if (sc.scheme == Scheme::rr_multi && !sc.jammed_slots.contains(k)) continue;
      const double rho = sc.scheme == Scheme::rr_multi
                             ? std::sqrt(static_cast<double>(slots) / sc.jammed_slots.size())
                             : 1.0;
      const cplx a = q.point(rng.uniform_index(q.order())) * rho;
      const cplx b = q.point(rng.uniform_index(q.order())) * rho;
      const auto row = beamform_row(a, b, beams);
      spectrum[0][k] = row[0];
      spectrum[1][k] = row[1];
    }
    AntennaSamples tx{ofdm_modulate(spectrum[0], grid), ofdm_modulate(spectrum[1], grid)};
    const auto clean = apply_channel(tx, ch, sc.tx_power);
    JammerSpec js{cfg.jammer, {}, cfg.sjr_db, cfg.jammer_path};
    if (cfg.jammer == JammerKind::multi_band) js.jammed_slots = cfg.jammed_slots;
    const FrameGeometry geom{grid, 1, q.order()};
    double slot_energy = 0.0;
    for (std::size_t k = 0; k < slots; ++k) {
      if (sc.scheme == Scheme::rr_multi && !sc.jammed_slots.contains(k)) continue;
      slot_energy += sc.scheme == Scheme::rr_multi
                         ? static_cast<double>(slots) / static_cast<double>(sc.jammed_slots.size())
                         : 1.0;
    }
    const double psi_sum = build_evcm(ch, beams, 0).psi + build_evcm(ch, beams, 1).psi;
    const double signal_power = sc.tx_power * 0.5 * psi_sum * slot_energy / static_cast<double>(grid.fft_size);
    const auto j = synthesize_jammer(js, geom, signal_power, rng);
    const auto y = transmit_through(tx, ch, j, NoiseSpec{n0}, sc.tx_power, rng);
    legit.insert(legit.end(), clean[0].begin(), clean[0].end());
    jam.insert(jam.end(), j[0].begin(), j[0].end());
    received.insert(received.end(), y[0].begin(), y[0].end());
  }
  return {estimate_psd(legit, cfg.segment), estimate_psd(jam, cfg.segment),
          estimate_psd(received, cfg.segment)};
}

void write_psd_csv(std::ostream& out, const PsdEstimate& psd) {
  out << "freq_norm,psd_db\n";
  char a[64], b[64];
  for (std::size_t i = 0; i < psd.freq.size(); ++i) {
    auto pa = std::to_chars(a, a + sizeof a, psd.freq[i]).ptr;
    auto pb = std::to_chars(b, b + sizeof b, psd.density_db[i], std::chars_format::fixed, 6).ptr;
    out << std::string_view(a, pa - a) << ',' << std::string_view(b, pb - b) << '\n';
  }
}

}  // namespace rrbf
