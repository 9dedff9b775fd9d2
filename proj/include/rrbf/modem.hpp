#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rrbf/numerics.hpp"

namespace rrbf {

/// Square Gray-coded QAM with unit average energy.
///
/// A point's index equals its bit label read MSB-first. The first half of the
/// label selects the in-phase level, the second half the quadrature level; each
/// half is a reflected Gray code over the levels ordered from most positive to
/// most negative. For 4-QAM this gives
///
///     00 -> ( 1 + 1i)/sqrt2    01 -> ( 1 - 1i)/sqrt2
///     10 -> (-1 + 1i)/sqrt2    11 -> (-1 - 1i)/sqrt2
class QamConstellation {
 public:
  /// order must be 4, 16 or 64.
  explicit QamConstellation(unsigned order);

  unsigned order() const { return order_; }
  unsigned bits_per_symbol() const { return bits_; }
  const std::vector<cplx>& points() const { return points_; }
  const cplx& point(std::size_t index) const { return points_[index]; }
  /// Bit label of a point (index and label coincide).
  std::uint32_t label(std::size_t index) const { return static_cast<std::uint32_t>(index); }

  /// Nearest point to z; exact ties go to the lowest index. O(1).
  std::size_t nearest(cplx z) const;

 private:
  unsigned order_;
  unsigned bits_;
  unsigned side_;
  double scale_;
  std::vector<cplx> points_;
  std::vector<std::uint32_t> level_to_gray_;
};

struct SliceResult {
  std::size_t index;
  std::uint32_t label;
};

/// Maps each group of log2|Q| bits (MSB first) to its labeled point.
std::vector<cplx> qam_modulate(std::span<const std::uint8_t> bits, const QamConstellation& q);

/// Nearest-point decision. Throws InvalidInput on NaN.
SliceResult qam_slice(cplx z, const QamConstellation& q);

/// Appends the label bits of point `index` (MSB first).
void append_label_bits(std::vector<std::uint8_t>& out, std::uint32_t label, unsigned nbits);

/// 802.11a-style grid: 64 bins, 52 data subcarriers (-26..-1, +1..+26) listed in
/// ascending frequency, DC and band edges unused.
struct OfdmGrid {
  std::size_t fft_size = 64;
  std::size_t cp_length = 16;
  std::vector<std::size_t> data_indices;

  static OfdmGrid ieee80211a(std::size_t cp_length = 16);
  std::size_t data_count() const { return data_indices.size(); }
  std::size_t symbol_length() const { return fft_size + cp_length; }
  void validate() const;
};

/// One OFDM symbol (cyclic prefix first) carrying `spectrum` on the data bins.
std::vector<cplx> ofdm_modulate(std::span<const cplx> spectrum, const OfdmGrid& grid);

/// Strips the cyclic prefix and returns the data-bin values.
std::vector<cplx> ofdm_demodulate(std::span<const cplx> samples, const OfdmGrid& grid);

}  // namespace rrbf
