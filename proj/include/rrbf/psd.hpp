#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rrbf/harness.hpp"
#include "rrbf/numerics.hpp"

namespace rrbf {

/// Averaged periodogram. Bins run over normalized frequency [-0.5, 0.5) in
/// cycles/sample; density_db is 10 log10 of power per bin, scaled so white
/// noise of variance s2 reads s2 in every bin.
struct PsdEstimate {
  std::vector<double> freq;
  std::vector<double> density_db;

  std::size_t bin_of(double f_norm) const;
};

/// Welch estimate with a Hann window, 50 % overlap, `segment` a power of two.
PsdEstimate estimate_psd(std::span<const cplx> samples, std::size_t segment);

struct PsdConfig {
  Scheme scheme = Scheme::rr_full;
  JammerKind jammer = JammerKind::all_band;
  JammerPath jammer_path = JammerPath::faded;
  std::set<std::size_t> jammed_slots;
  double sjr_db = -10.0;
  double es_n0_db = 25.0;
  std::size_t frames = 1000;
  std::size_t segment = 64;
  std::uint64_t seed = 1;
};

/// Spectra seen at receive antenna 0: legit part, jam part and their sum with
/// noise, each over `frames` consecutive OFDM frames.
struct PsdRun {
  PsdEstimate legit;
  PsdEstimate jam;
  PsdEstimate received;
};

PsdRun run_psd(const PsdConfig& cfg);

/// "freq_norm,psd_db" rows.
void write_psd_csv(std::ostream& out, const PsdEstimate& psd);

}  // namespace rrbf
