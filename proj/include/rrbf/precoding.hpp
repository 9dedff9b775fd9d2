#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "rrbf/numerics.hpp"
#include "rrbf/stbc.hpp"

namespace rrbf {

enum class PrecoderMode { full, multiband };

/// Diagonal per-slot weights of the full / multi-band precoder. Slot indices
/// are zero-based positions in the data-subcarrier list.
class PrecoderProfile {
 public:
  /// Validates an arbitrary allocation: sum(rho^2) == power_budget (1e-12
  /// relative), rho >= 0, full mode strictly positive everywhere.
  PrecoderProfile(PrecoderMode mode, std::vector<double> rho, double power_budget);

  PrecoderMode mode() const { return mode_; }
  const std::vector<double>& rho() const { return rho_; }
  double power_budget() const { return power_; }
  std::size_t slots() const { return rho_.size(); }
  bool is_protected(std::size_t slot) const { return rho_[slot] > 0.0; }
  std::vector<std::size_t> protected_set() const;

 private:
  PrecoderMode mode_;
  std::vector<double> rho_;
  double power_;
};

/// Uniform weights sqrt(power/slots) on every slot.
PrecoderProfile build_full_precoder(std::size_t slots, double power);

/// Uniform weights sqrt(power/|jammed|) on the jammed slots, zero elsewhere.
PrecoderProfile build_multiband_precoder(std::size_t slots, const std::set<std::size_t>& jammed,
                                         double power);

/// Scales both antenna streams by rho_k at slot k.
AntennaStreams apply_precoder(const AntennaStreams& streams, const PrecoderProfile& profile);

/// Decoder output for one receive antenna: nullopt marks a slot that carries no
/// data under this profile.
using DecodedSlots = std::vector<std::optional<cplx>>;

/// Scales received slot values by 1/rho_k on protected slots.
DecodedSlots apply_decoder(std::span<const cplx> received, const PrecoderProfile& profile);

}  // namespace rrbf
