#include "rrbf/modem.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "rrbf/errors.hpp"

namespace rrbf {

namespace {

std::uint32_t gray(std::uint32_t v) { return v ^ (v >> 1); }

}  // namespace

QamConstellation::QamConstellation(unsigned order) : order_(order) {
  switch (order) {
    case 4: bits_ = 2; side_ = 2; break;
    case 16: bits_ = 4; side_ = 4; break;
    case 64: bits_ = 6; side_ = 8; break;
    default:
      throw InvalidInput("unsupported QAM order " + std::to_string(order) + " (use 4, 16 or 64)");
  }
  scale_ = 1.0 / std::sqrt(2.0 * (order_ - 1) / 3.0);
  const unsigned half = bits_ / 2;

  // Level l (0 = most positive) has amplitude (side-1-2l) and Gray code gray(l).
  level_to_gray_.resize(side_);
  std::vector<double> amp_of_code(side_);
  for (unsigned l = 0; l < side_; ++l) {
    level_to_gray_[l] = gray(l);
    amp_of_code[gray(l)] = static_cast<double>(side_ - 1) - 2.0 * l;
  }
  points_.resize(order_);
  for (std::uint32_t idx = 0; idx < order_; ++idx) {
    const std::uint32_t ic = idx >> half;
    const std::uint32_t qc = idx & ((1u << half) - 1);
    points_[idx] = cplx(amp_of_code[ic], amp_of_code[qc]) * scale_;
  }
}

std::size_t QamConstellation::nearest(cplx z) const {
  // Per-axis candidates: the nearest level plus its neighbor when exactly tied.
  auto axis = [this](double v, std::array<unsigned, 2>& cand) -> unsigned {
    const double u = (static_cast<double>(side_ - 1) - v / scale_) / 2.0;  // fractional level
    double fl = std::floor(u);
    fl = std::clamp(fl, 0.0, static_cast<double>(side_ - 1));
    const unsigned lo = static_cast<unsigned>(fl);
    if (lo + 1 >= side_) {
      cand[0] = lo;
      return 1;
    }
    const double amp_lo = (static_cast<double>(side_ - 1) - 2.0 * lo) * scale_;
    const double amp_hi = (static_cast<double>(side_ - 1) - 2.0 * (lo + 1)) * scale_;
    const double d_lo = std::abs(v - amp_lo);
    const double d_hi = std::abs(v - amp_hi);
    if (d_lo < d_hi) {
      cand[0] = lo;
      return 1;
    }
    if (d_hi < d_lo) {
      cand[0] = lo + 1;
      return 1;
    }
    cand = {lo, lo + 1};
    return 2;
  };
  std::array<unsigned, 2> ci{}, cq{};
  const unsigned ni = axis(z.real(), ci);
  const unsigned nq = axis(z.imag(), cq);
  const unsigned half = bits_ / 2;

  std::size_t best = order_;
  double best_d = 0.0;
  for (unsigned a = 0; a < ni; ++a) {
    for (unsigned b = 0; b < nq; ++b) {
      const std::size_t idx = (static_cast<std::size_t>(level_to_gray_[ci[a]]) << half) |
                              level_to_gray_[cq[b]];
      const double d = std::norm(z - points_[idx]);
      if (best == order_ || d < best_d || (d == best_d && idx < best)) {
        best = idx;
        best_d = d;
      }
    }
  }
  return best;
}

std::vector<cplx> qam_modulate(std::span<const std::uint8_t> bits, const QamConstellation& q) {
  const unsigned k = q.bits_per_symbol();
  if (bits.size() % k != 0)
    throw InvalidInput("qam_modulate: " + std::to_string(bits.size()) +
                       " bits is not a multiple of " + std::to_string(k));
  std::vector<cplx> out;
  out.reserve(bits.size() / k);
  for (std::size_t i = 0; i < bits.size(); i += k) {
    std::uint32_t label = 0;
    for (unsigned b = 0; b < k; ++b) label = (label << 1) | (bits[i + b] & 1u);
    out.push_back(q.point(label));
  }
  return out;
}

SliceResult qam_slice(cplx z, const QamConstellation& q) {
  if (std::isnan(z.real()) || std::isnan(z.imag())) throw InvalidInput("qam_slice: NaN input");
  const std::size_t idx = q.nearest(z);
  return {idx, q.label(idx)};
}

void append_label_bits(std::vector<std::uint8_t>& out, std::uint32_t label, unsigned nbits) {
  for (unsigned b = nbits; b-- > 0;) out.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
}

OfdmGrid OfdmGrid::ieee80211a(std::size_t cp_length) {
  OfdmGrid g;
  g.fft_size = 64;
  g.cp_length = cp_length;
  for (std::size_t k = 38; k < 64; ++k) g.data_indices.push_back(k);  // -26..-1
  for (std::size_t k = 1; k <= 26; ++k) g.data_indices.push_back(k);
  return g;
}

void OfdmGrid::validate() const {
  if (!is_power_of_two(fft_size)) throw InvalidInput("OfdmGrid: fft size must be a power of two");
  if (cp_length > fft_size) throw InvalidInput("OfdmGrid: cyclic prefix longer than symbol");
  std::set<std::size_t> seen;
  for (auto k : data_indices) {
    if (k >= fft_size) throw InvalidInput("OfdmGrid: data index out of range");
    if (k == 0) throw InvalidInput("OfdmGrid: DC bin cannot carry data");
    if (!seen.insert(k).second) throw InvalidInput("OfdmGrid: duplicate data index");
  }
}

std::vector<cplx> ofdm_modulate(std::span<const cplx> spectrum, const OfdmGrid& grid) {
  if (spectrum.size() != grid.data_count())
    throw InvalidInput("ofdm_modulate: expected " + std::to_string(grid.data_count()) +
                       " data values, got " + std::to_string(spectrum.size()));
  std::vector<cplx> bins(grid.fft_size, 0.0);
  for (std::size_t i = 0; i < spectrum.size(); ++i) bins[grid.data_indices[i]] = spectrum[i];
  const auto body = dft(bins, /*inverse=*/true);
  std::vector<cplx> out;
  out.reserve(grid.symbol_length());
  out.insert(out.end(), body.end() - static_cast<std::ptrdiff_t>(grid.cp_length), body.end());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::vector<cplx> ofdm_demodulate(std::span<const cplx> samples, const OfdmGrid& grid) {
  if (samples.size() != grid.symbol_length())
    throw InvalidInput("ofdm_demodulate: expected " + std::to_string(grid.symbol_length()) +
                       " samples, got " + std::to_string(samples.size()));
  const auto bins = dft(samples.subspan(grid.cp_length), /*inverse=*/false);
  std::vector<cplx> out;
  out.reserve(grid.data_count());
  for (auto k : grid.data_indices) out.push_back(bins[k]);
  return out;
}

}  // namespace rrbf
