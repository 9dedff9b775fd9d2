#include "rrbf/harness.hpp"

#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "rrbf/beamforming.hpp"
#include "rrbf/errors.hpp"
#include "rrbf/precoding.hpp"
#include "rrbf/random.hpp"
#include "rrbf/receiver.hpp"

namespace rrbf {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::rr_full: return "rr-full";
    case Scheme::rr_multi: return "rr-multi";
    case Scheme::alamouti_bf: return "alamouti-bf";
  }
  return "?";
}

std::string_view to_string(Mapping m) { return m == Mapping::sf_pairs ? "sf-pairs" : "time-slots"; }

Scheme parse_scheme(std::string_view s) {
  if (s == "rr-full") return Scheme::rr_full;
  if (s == "rr-multi") return Scheme::rr_multi;
  if (s == "alamouti-bf") return Scheme::alamouti_bf;
  throw InvalidInput("unknown scheme '" + std::string(s) + "'");
}

Mapping parse_mapping(std::string_view s) {
  if (s == "sf-pairs") return Mapping::sf_pairs;
  if (s == "time-slots") return Mapping::time_slots;
  throw InvalidInput("unknown mapping '" + std::string(s) + "'");
}

double symbol_rate(Scheme s) { return s == Scheme::alamouti_bf ? 1.0 : 2.0; }

unsigned default_constellation(Scheme s) { return s == Scheme::alamouti_bf ? 16 : 4; }

std::set<std::size_t> parse_slot_list(std::string_view text) {
  std::set<std::size_t> out;
  auto number = [&](std::string_view tok) {
    std::size_t v = 0;
    const auto* end = tok.data() + tok.size();
    auto [p, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc{} || p != end || tok.empty())
      throw InvalidInput("bad slot index '" + std::string(tok) + "'");
    return v;
  };
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      out.insert(number(item));
    } else {
      const auto lo = number(item.substr(0, dash));
      const auto hi = number(item.substr(dash + 1));
      if (hi < lo) throw InvalidInput("descending slot range '" + std::string(item) + "'");
      for (auto k = lo; k <= hi; ++k) out.insert(k);
    }
  }
  return out;
}

std::string format_slot_list(const std::set<std::size_t>& slots) {
  std::string out;
  for (auto it = slots.begin(); it != slots.end();) {
    auto run_end = it;
    while (std::next(run_end) != slots.end() && *std::next(run_end) == *run_end + 1) ++run_end;
    if (!out.empty()) out += ',';
    out += std::to_string(*it);
    if (run_end != it) out += '-' + std::to_string(*run_end);
    it = std::next(run_end);
  }
  return out;
}

unsigned SweepConfig::constellation() const {
  return constellation_order.value_or(default_constellation(scheme));
}

double SweepConfig::noise_n0() const {
  if (std::isinf(es_n0_db) && es_n0_db > 0) return 0.0;
  return tx_power * std::pow(10.0, -es_n0_db / 10.0);
}

void SweepConfig::validate() const {
  if (frames_per_point < 1) throw InvalidInput("frames per point must be >= 1");
  if (sjr_points.empty()) throw InvalidInput("no SJR points");
  for (double s : sjr_points)
    if (!std::isfinite(s)) throw InvalidInput("SJR points must be finite");
  if (std::isnan(es_n0_db) || (std::isinf(es_n0_db) && es_n0_db < 0))
    throw InvalidInput("Es/N0 must be a number or +inf");
  if (!(tx_power > 0.0)) throw InvalidInput("transmit power must be positive");
  QamConstellation{constellation()};
  Rate2Block{{}, phi1}.validate();
  const auto g = grid();
  g.validate();
  if ((scheme == Scheme::rr_multi || jammer == JammerKind::multi_band) && jammed_slots.empty())
    throw InvalidInput("rr-multi and multi-band jamming need --jammed-slots");
  if (!jammed_slots.empty() && *jammed_slots.rbegin() >= g.data_count())
    throw InvalidInput("jammed slot index out of range (0.." + std::to_string(g.data_count() - 1) +
                       ")");
}

namespace {

// Where each channel use of each block lands on the time-frequency grid.
struct Layout {
  Mapping mapping;
  std::size_t ofdm_symbols;
  std::size_t blocks;

  struct Resource {
    std::size_t symbol;
    std::size_t slot;
  };

  // sf-pairs: block b on slots (2b, 2b+1) of one OFDM symbol.
  // time-slots: block b on slot b of two consecutive OFDM symbols.
  Resource at(std::size_t block, std::size_t epoch) const {
    if (mapping == Mapping::sf_pairs) return {0, 2 * block + epoch};
    return {epoch, block};
  }
};

Layout make_layout(Mapping m, std::size_t slots) {
  if (m == Mapping::sf_pairs) return {m, 1, slots / 2};
  return {m, 2, slots};
}

}  // namespace

TrialRecord run_frame(const SweepConfig& cfg, std::size_t point, std::uint64_t frame) {
  if (point >= cfg.sjr_points.size()) throw InvalidInput("run_frame: SJR point out of range");
  const OfdmGrid grid = cfg.grid();
  const QamConstellation q(cfg.constellation());
  const std::size_t slots = grid.data_count();
  const Layout layout = make_layout(cfg.mapping, slots);
  const bool rate2 = cfg.scheme != Scheme::alamouti_bf;
  const double amplitude = std::sqrt(cfg.tx_power);
  const double n0 = cfg.noise_n0();

  const StreamSeed base{cfg.seed, {std::string("point"), std::uint64_t{point},
                                   std::string("frame"), frame}};
  RandomStream channel_rng = derive_stream(base.child(std::string("channel")));
  RandomStream bits_rng = derive_stream(base.child(std::string("bits")));
  RandomStream jam_rng = derive_stream(base.child(std::string("jammer")));
  RandomStream noise_rng = derive_stream(base.child(std::string("noise")));

  TrialRecord rec;

  // Transmitter-side CSI: channel, eigen-beams and the EVCMs the receiver uses.
  // Loads are water-filled against N0/P; a noiseless run uses the high-SNR limit.
  const double loading_noise = n0 > 0.0 ? n0 / cfg.tx_power : std::numeric_limits<double>::min();
  ChannelRealization ch;
  EigenBeams beams;
  std::array<Evcm, 2> evcm;
  for (;;) {
    ch = draw_channel(channel_rng);
    try {
      beams = eigen_beams(transmit_correlation(ch.h), 2.0, loading_noise);
      evcm = {build_evcm(ch, beams, 0), build_evcm(ch, beams, 1)};
      if (evcm[0].psi > 0.0 && evcm[1].psi > 0.0) break;
    } catch (const DegenerateChannel&) {
    }
    ++rec.redraws;
  }

  std::optional<PrecoderProfile> precoder;
  if (cfg.scheme == Scheme::rr_full)
    precoder = build_full_precoder(slots, static_cast<double>(slots));
  else if (cfg.scheme == Scheme::rr_multi)
    precoder = build_multiband_precoder(slots, cfg.jammed_slots, static_cast<double>(slots));

  auto usable = [&](std::size_t b) {
    if (!precoder) return true;
    return precoder->is_protected(layout.at(b, 0).slot) &&
           precoder->is_protected(layout.at(b, 1).slot);
  };

  // Information symbols and code matrices.
  const std::size_t per_block = rate2 ? 4 : 2;
  std::vector<std::size_t> used_blocks;
  std::vector<std::uint32_t> tx_labels;
  std::vector<AntennaStreams> code(layout.ofdm_symbols);
  for (auto& c : code) {
    c.s1.assign(slots, 0.0);
    c.s2.assign(slots, 0.0);
  }
  for (std::size_t b = 0; b < layout.blocks; ++b) {
    if (!usable(b)) continue;
    used_blocks.push_back(b);
    std::array<cplx, 4> x{};
    for (std::size_t i = 0; i < per_block; ++i) {
      std::uint32_t label = 0;
      for (unsigned k = 0; k < q.bits_per_symbol(); ++k) label = (label << 1) | bits_rng.bit();
      tx_labels.push_back(label);
      x[i] = q.point(label);
    }
    const Matrix2 c = rate2 ? encode_rate2(Rate2Block{x, cfg.phi1}) : encode_alamouti(x[0], x[1]);
    for (std::size_t e = 0; e < 2; ++e) {
      const auto r = layout.at(b, e);
      code[r.symbol].s1[r.slot] = c(e, 0);
      code[r.symbol].s2[r.slot] = c(e, 1);
    }
  }

  // Precode, beamform each channel use, OFDM-modulate per transmit antenna.
  AntennaSamples tx;
  for (std::size_t s = 0; s < layout.ofdm_symbols; ++s) {
    const AntennaStreams streams = precoder ? apply_precoder(code[s], *precoder) : code[s];
    std::array<std::vector<cplx>, 2> spectrum{std::vector<cplx>(slots), std::vector<cplx>(slots)};
    for (std::size_t k = 0; k < slots; ++k) {
      const auto row = beamform_row(streams.s1[k], streams.s2[k], beams);
      spectrum[0][k] = row[0];
      spectrum[1][k] = row[1];
    }
    for (std::size_t a = 0; a < 2; ++a) {
      const auto sym = ofdm_modulate(spectrum[a], grid);
      tx[a].insert(tx[a].end(), sym.begin(), sym.end());
    }
  }

  // Jammer calibrated against the expected received legit power given the
  // channel, beams and precoder: each occupied slot carries a code row of unit
  // covariance, which reaches antenna r with gain rho^2 psi_r.
  double slot_energy = 0.0;
  for (std::size_t b : used_blocks)
    for (std::size_t e = 0; e < 2; ++e) {
      const double rho = precoder ? precoder->rho()[layout.at(b, e).slot] : 1.0;
      slot_energy += rho * rho;
    }
  const double signal_power = cfg.tx_power * 0.5 * (evcm[0].psi + evcm[1].psi) * slot_energy /
                              static_cast<double>(grid.fft_size * layout.ofdm_symbols);
  JammerSpec jspec{cfg.jammer, {}, cfg.sjr_points[point], cfg.jammer_path};
  if (cfg.jammer == JammerKind::multi_band) jspec.jammed_slots = cfg.jammed_slots;
  const FrameGeometry geometry{grid, layout.ofdm_symbols, q.order()};
  const AntennaSamples jam = synthesize_jammer(jspec, geometry, signal_power, jam_rng);
  const AntennaSamples rx = transmit_through(tx, ch, jam, NoiseSpec{n0}, cfg.tx_power, noise_rng);

  // OFDM demodulation and full/multi-band decoding.
  std::array<std::vector<DecodedSlots>, 2> decoded;
  const std::span<const cplx> whole[2] = {rx[0], rx[1]};
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t s = 0; s < layout.ofdm_symbols; ++s) {
      const auto bins =
          ofdm_demodulate(whole[r].subspan(s * grid.symbol_length(), grid.symbol_length()), grid);
      if (precoder) {
        decoded[r].push_back(apply_decoder(bins, *precoder));
      } else {
        decoded[r].emplace_back(bins.begin(), bins.end());
      }
    }
  }

  // Per-block detection.
  std::vector<std::uint32_t> rx_labels;
  rx_labels.reserve(tx_labels.size());
  for (std::size_t b : used_blocks) {
    std::array<ReceivedPair, 2> pairs;
    for (std::size_t r = 0; r < 2; ++r) {
      const auto r0 = layout.at(b, 0);
      const auto r1 = layout.at(b, 1);
      pairs[r] = {decoded[r][r0.symbol][r0.slot].value(), decoded[r][r1.symbol][r1.slot].value()};
    }
    if (rate2) {
      const std::array<EqualizedPair, 2> eq{EqualizedPair{equalize(pairs[0], evcm[0]), evcm[0].psi},
                                            EqualizedPair{equalize(pairs[1], evcm[1]), evcm[1].psi}};
      const CombinedStatistic stat = combine(eq);
      const auto first = conditional_ml_detect(stat, 1, cfg.phi1, q, amplitude);
      const auto second = conditional_ml_detect(stat, 2, cfg.phi1, q, amplitude);
      for (auto idx : {first.odd, first.even, second.odd, second.even})
        rx_labels.push_back(q.label(idx));
    } else {
      const auto d = alamouti_detect(pairs, evcm, q, amplitude);
      rx_labels.push_back(q.label(d.x1));
      rx_labels.push_back(q.label(d.x2));
    }
  }

  rec.bits = static_cast<std::uint64_t>(tx_labels.size()) * q.bits_per_symbol();
  for (std::size_t i = 0; i < tx_labels.size(); ++i)
    rec.bit_errors += static_cast<std::uint64_t>(std::popcount(tx_labels[i] ^ rx_labels[i]));
  return rec;
}

namespace {

std::vector<TrialRecord> run_batch(const SweepConfig& cfg, std::size_t point,
                                   std::uint64_t first, std::size_t count) {
  std::vector<TrialRecord> out(count);
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = run_frame(cfg, point, first + i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < count;)
          out[i] = run_frame(cfg, point, first + i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace

std::vector<MetricRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const unsigned order = cfg.constellation();
  const std::size_t batch = 32 * std::max(1u, cfg.threads);
  std::vector<MetricRow> rows;
  for (std::size_t p = 0; p < cfg.sjr_points.size(); ++p) {
    MetricRow row;
    row.scheme = std::string(to_string(cfg.scheme));
    row.jammer = std::string(to_string(cfg.jammer));
    row.sjr_db = cfg.sjr_points[p];
    row.es_n0_db = cfg.es_n0_db;
    row.rate = symbol_rate(cfg.scheme);
    row.seed = cfg.seed;

    bool done = false;
    while (!done && row.frames < cfg.frames_per_point) {
      const std::size_t n = std::min<std::size_t>(batch, cfg.frames_per_point - row.frames);
      // Records are consumed in frame order, so stopping is serial-equivalent.
      for (const auto& rec : run_batch(cfg, p, row.frames, n)) {
        row.frames += 1;
        row.bits += rec.bits;
        row.bit_errors += rec.bit_errors;
        if (cfg.target_errors > 0 && row.bit_errors >= cfg.target_errors &&
            row.bits >= cfg.min_bits) {
          done = true;
          break;
        }
      }
    }
    row.ber = row.bits == 0 ? 0.0
                            : static_cast<double>(row.bit_errors) / static_cast<double>(row.bits);
    row.spectral_efficiency = spectral_efficiency(row.rate, order, row.ber);
    rows.push_back(std::move(row));
  }
  return rows;
}

double spectral_efficiency(double rate, unsigned order, double ber) {
  if (!(ber >= 0.0 && ber <= 1.0)) throw InvalidInput("spectral_efficiency: BER outside [0, 1]");
  if (order < 2) throw InvalidInput("spectral_efficiency: constellation order must be >= 2");
  return rate * std::log2(static_cast<double>(order)) * (1.0 - ber);
}

namespace {

std::string fmt(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string fmt_sci(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, p);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw InvalidInput("csv: bad number '" + std::string(s) + "'");
  return v;
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw InvalidInput("csv: bad integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<MetricRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.scheme << ',' << r.jammer << ',' << fmt(r.sjr_db) << ',' << fmt(r.es_n0_db) << ','
        << r.frames << ',' << r.bits << ',' << r.bit_errors << ',' << fmt_sci(r.ber) << ','
        << fmt(r.rate) << ',' << fmt_sci(r.spectral_efficiency) << ',' << r.seed << '\n';
  }
}

void emit_csv(const std::vector<MetricRow>& rows, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError(path, "cannot open for writing");
  write_csv(f, rows);
  f.flush();
  if (!f) throw IoError(path, "write failed");
}

std::vector<MetricRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw InvalidInput("csv: unexpected header");
  std::vector<MetricRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest = line;
    for (;;) {
      const auto c = rest.find(',');
      f.push_back(rest.substr(0, c));
      if (c == std::string_view::npos) break;
      rest.remove_prefix(c + 1);
    }
    if (f.size() != 11) throw InvalidInput("csv: expected 11 fields, got " + std::to_string(f.size()));
    MetricRow r;
    r.scheme = std::string(f[0]);
    r.jammer = std::string(f[1]);
    r.sjr_db = parse_double(f[2]);
    r.es_n0_db = parse_double(f[3]);
    r.frames = parse_u64(f[4]);
    r.bits = parse_u64(f[5]);
    r.bit_errors = parse_u64(f[6]);
    r.ber = parse_double(f[7]);
    r.rate = parse_double(f[8]);
    r.spectral_efficiency = parse_double(f[9]);
    r.seed = parse_u64(f[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace rrbf
