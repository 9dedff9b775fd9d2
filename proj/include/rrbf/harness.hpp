#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rrbf/channel.hpp"
#include "rrbf/modem.hpp"
#include "rrbf/stbc.hpp"

namespace rrbf {

enum class Scheme { rr_full, rr_multi, alamouti_bf };
enum class Mapping { sf_pairs, time_slots };

std::string_view to_string(Scheme s);
std::string_view to_string(Mapping m);
Scheme parse_scheme(std::string_view s);
Mapping parse_mapping(std::string_view s);

/// Symbols per second per hertz: 2 for the rate-2 schemes, 1 for Alamouti.
double symbol_rate(Scheme s);
/// 4 for the rate-2 schemes and 16 for Alamouti, so both carry 4 b/s/Hz.
unsigned default_constellation(Scheme s);

/// Parses "12-25,30,40-41" into a set of zero-based indices.
std::set<std::size_t> parse_slot_list(std::string_view text);
std::string format_slot_list(const std::set<std::size_t>& slots);

struct SweepConfig {
  Scheme scheme = Scheme::rr_full;
  JammerKind jammer = JammerKind::none;
  JammerPath jammer_path = JammerPath::faded;
  std::vector<double> sjr_points{-20, -15, -10, -5, 0, 5, 10, 15, 20, 25, 30};
  /// Es/N0 per receive antenna, Es being the per-antenna transmit energy on a
  /// data subcarrier. +inf runs noiseless.
  double es_n0_db = 25.0;
  std::optional<unsigned> constellation_order;  // unset: scheme default
  std::size_t frames_per_point = 1000;
  double phi1 = kDefaultPhi1;
  Mapping mapping = Mapping::sf_pairs;
  std::size_t cp_length = 16;
  std::uint64_t seed = 1;
  /// Genie jammed set: protected slots of rr-multi and occupied slots of the
  /// multi-band jammer. Zero-based data-slot indices.
  std::set<std::size_t> jammed_slots;
  /// Per-antenna transmit power (the global sqrt(P) of the received model).
  double tx_power = 1.0;
  /// A point stops once it has at least this many bit errors and min_bits bits.
  /// Zero disables early stopping.
  std::uint64_t target_errors = 500;
  std::uint64_t min_bits = 0;
  unsigned threads = 1;

  unsigned constellation() const;
  OfdmGrid grid() const { return OfdmGrid::ieee80211a(cp_length); }
  double noise_n0() const;
  void validate() const;
};

struct TrialRecord {
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t redraws = 0;  // degenerate channel draws rejected

  bool operator==(const TrialRecord&) const = default;
};

/// One frame of the full transmit/receive chain at sjr_points[point].
/// Deterministic in (seed, point, frame); the channel and info bits of a frame
/// do not depend on scheme or mapping-independent settings such as SJR.
TrialRecord run_frame(const SweepConfig& cfg, std::size_t point, std::uint64_t frame);

struct MetricRow {
  std::string scheme;
  std::string jammer;
  double sjr_db = 0.0;
  double es_n0_db = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  double ber = 0.0;
  double rate = 0.0;
  double spectral_efficiency = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const MetricRow&) const = default;
};

/// One row per SJR point, in configuration order.
std::vector<MetricRow> run_sweep(const SweepConfig& cfg);

/// eta = R log2|Q| (1 - BER).
double spectral_efficiency(double rate, unsigned order, double ber);

inline constexpr std::string_view kCsvHeader =
    "scheme,jammer,sjr_db,es_n0_db,frames,bits,bit_errors,ber,rate,spectral_efficiency,seed";

void write_csv(std::ostream& out, const std::vector<MetricRow>& rows);
/// Writes to a file; throws IoError naming the path on failure.
void emit_csv(const std::vector<MetricRow>& rows, const std::string& path);
std::vector<MetricRow> parse_csv(std::istream& in);

}  // namespace rrbf
