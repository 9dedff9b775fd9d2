#include "rrbf/random.hpp"

#include <cmath>
#include <numbers>

namespace rrbf {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t absorb(std::uint64_t h, std::uint64_t v) { return splitmix(h ^ splitmix(v)); }

}  // namespace

StreamSeed StreamSeed::child(Label label) const {
  StreamSeed s = *this;
  s.path.push_back(std::move(label));
  return s;
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::uniform_index(std::uint64_t n) {
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = n == 0 ? 0 : (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

double RandomStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

cplx RandomStream::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return cplx(re, im) * std::numbers::sqrt2 * 0.5;
}

RandomStream derive_stream(const StreamSeed& seed) {
  std::uint64_t h = splitmix(seed.root);
  for (const auto& label : seed.path) {
    if (const auto* n = std::get_if<std::uint64_t>(&label)) {
      h = absorb(h, 0x1ULL);
      h = absorb(h, *n);
    } else {
      const auto& s = std::get<std::string>(label);
      h = absorb(h, 0x2ULL);
      h = absorb(h, s.size());
      for (unsigned char c : s) h = absorb(h, c);
    }
  }
  return RandomStream(h);
}

}  // namespace rrbf
