#pragma once

#include <array>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rrbf/modem.hpp"
#include "rrbf/numerics.hpp"
#include "rrbf/random.hpp"

namespace rrbf {

/// Time samples for each of the two antennas (transmit or receive side).
using AntennaSamples = std::array<std::vector<cplx>, 2>;

/// Quasi-static flat Rayleigh channel, h(t, r) = gain from tx t to rx r.
struct ChannelRealization {
  Matrix2 h;
};

ChannelRealization draw_channel(RandomStream& stream);

enum class JammerKind { none, all_band, multi_band, barrage };
enum class JammerPath { direct, faded };

std::string_view to_string(JammerKind kind);
std::string_view to_string(JammerPath path);
JammerKind parse_jammer_kind(std::string_view s);
JammerPath parse_jammer_path(std::string_view s);

struct JammerSpec {
  JammerKind kind = JammerKind::none;
  std::set<std::size_t> jammed_slots;  // multi_band only; indices into the data-slot list
  double sjr_db = 0.0;
  JammerPath path = JammerPath::faded;

  void validate(std::size_t data_slots) const;
};

struct NoiseSpec {
  double n0 = 0.0;  // per complex sample; 0 means noiseless
};

/// Layout of one frame on the air, used to shape disguised jamming.
struct FrameGeometry {
  OfdmGrid grid;
  std::size_t ofdm_symbols = 1;
  unsigned constellation_order = 4;  // constellation the disguised jammer imitates

  std::size_t samples() const { return ofdm_symbols * grid.symbol_length(); }
};

double mean_power(const AntennaSamples& x);

/// Jam waveform at each receive antenna, scaled so that its expected power
/// given the drawn jammer fading is signal_power_ref * 10^(-sjr_db/10). The
/// expectation is over the jam symbols only, so the realized SJR does not
/// depend on how many OFDM symbols a frame holds.
///
/// Disguised kinds send uniformly random points of the imitated constellation
/// on the occupied data bins, frame-aligned OFDM with the same cyclic prefix.
/// Barrage sends white CN noise over the whole sampled band. A faded path runs
/// one jammer antenna through an independent CN(0,1) 1x2 channel; a direct path
/// adds independent waveforms per receive antenna.
AntennaSamples synthesize_jammer(const JammerSpec& spec, const FrameGeometry& geometry,
                                 double signal_power_ref, RandomStream& stream);

/// Noiseless legit part sqrt(P) * sum_t h(t, r) x_t.
AntennaSamples apply_channel(const AntennaSamples& tx, const ChannelRealization& ch,
                             double power);

/// y_r = sqrt(P) sum_t h(t, r) x_t + jam_r + awgn_r. An empty jam means none.
AntennaSamples transmit_through(const AntennaSamples& tx, const ChannelRealization& ch,
                                const AntennaSamples& jam, const NoiseSpec& noise, double power,
                                RandomStream& stream);

}  // namespace rrbf
