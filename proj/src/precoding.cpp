#include "rrbf/precoding.hpp"

#include <cmath>
#include <string>

#include "rrbf/errors.hpp"

namespace rrbf {

PrecoderProfile::PrecoderProfile(PrecoderMode mode, std::vector<double> rho, double power_budget)
    : mode_(mode), rho_(std::move(rho)), power_(power_budget) {
  if (rho_.empty()) throw InvalidInput("precoder: no slots");
  if (!(power_ > 0.0) || !std::isfinite(power_))
    throw InvalidInput("precoder: power budget must be positive");
  double sum = 0.0;
  std::size_t active = 0;
  for (double r : rho_) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidInput("precoder: weights must be >= 0");
    if (r > 0.0) ++active;
    sum += r * r;
  }
  if (mode_ == PrecoderMode::full && active != rho_.size())
    throw InvalidInput("precoder: full mode requires every weight > 0");
  if (active == 0) throw InvalidInput("precoder: no protected slots");
  if (std::abs(sum - power_) > 1e-12 * std::max(1.0, power_))
    throw InvalidInput("precoder: sum of squared weights " + std::to_string(sum) +
                       " does not match power budget " + std::to_string(power_));
}

std::vector<std::size_t> PrecoderProfile::protected_set() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < rho_.size(); ++k)
    if (rho_[k] > 0.0) out.push_back(k);
  return out;
}

namespace {

std::vector<double> uniform_weights(std::size_t slots, const std::vector<std::size_t>& on,
                                    double power) {
  std::vector<double> rho(slots, 0.0);
  const double w = std::sqrt(power / static_cast<double>(on.size()));
  for (auto k : on) rho[k] = w;
  return rho;
}

}  // namespace

PrecoderProfile build_full_precoder(std::size_t slots, double power) {
  if (slots == 0) throw InvalidInput("build_full_precoder: slot count must be >= 1");
  if (!(power > 0.0)) throw InvalidInput("build_full_precoder: power must be positive");
  std::vector<std::size_t> all(slots);
  for (std::size_t k = 0; k < slots; ++k) all[k] = k;
  return PrecoderProfile(PrecoderMode::full, uniform_weights(slots, all, power), power);
}

PrecoderProfile build_multiband_precoder(std::size_t slots, const std::set<std::size_t>& jammed,
                                         double power) {
  if (jammed.empty())
    throw InvalidInput("build_multiband_precoder: jammed slot set is empty");
  if (!(power > 0.0)) throw InvalidInput("build_multiband_precoder: power must be positive");
  for (auto k : jammed)
    if (k >= slots)
      throw InvalidInput("build_multiband_precoder: slot " + std::to_string(k) +
                         " out of range for " + std::to_string(slots) + " slots");
  const std::vector<std::size_t> on(jammed.begin(), jammed.end());
  return PrecoderProfile(PrecoderMode::multiband, uniform_weights(slots, on, power), power);
}

AntennaStreams apply_precoder(const AntennaStreams& streams, const PrecoderProfile& profile) {
  if (streams.s1.size() != profile.slots() || streams.s2.size() != profile.slots())
    throw InvalidInput("apply_precoder: stream length does not match slot count");
  AntennaStreams out = streams;
  for (std::size_t k = 0; k < profile.slots(); ++k) {
    out.s1[k] *= profile.rho()[k];
    out.s2[k] *= profile.rho()[k];
  }
  return out;
}

DecodedSlots apply_decoder(std::span<const cplx> received, const PrecoderProfile& profile) {
  if (received.size() != profile.slots())
    throw InvalidInput("apply_decoder: received length does not match slot count");
  DecodedSlots out(received.size());
  for (std::size_t k = 0; k < received.size(); ++k)
    if (profile.is_protected(k)) out[k] = received[k] / profile.rho()[k];
  return out;
}

}  // namespace rrbf
