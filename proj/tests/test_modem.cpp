#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "rrbf/errors.hpp"
#include "rrbf/modem.hpp"
#include "rrbf/random.hpp"

using namespace rrbf;

TEST_CASE("constellations have unit energy and Gray neighbours") {
  for (unsigned order : {4u, 16u, 64u}) {
    const QamConstellation q(order);
    double energy = 0.0;
    for (const auto& p : q.points()) energy += std::norm(p);
    CHECK(std::abs(energy / order - 1.0) <= 1e-12);

    double dmin = INFINITY;
    for (std::size_t i = 0; i < order; ++i)
      for (std::size_t j = i + 1; j < order; ++j) dmin = std::min(dmin, std::abs(q.point(i) - q.point(j)));
    for (std::size_t i = 0; i < order; ++i)
      for (std::size_t j = i + 1; j < order; ++j)
        if (std::abs(std::abs(q.point(i) - q.point(j)) - dmin) < 1e-12)
          CHECK(std::popcount(q.label(i) ^ q.label(j)) == 1);
  }
  CHECK_THROWS_AS(QamConstellation(8), InvalidInput);
}

TEST_CASE("qam_modulate") {
  const QamConstellation q4(4);
  SUBCASE("00 maps to (1+i)/sqrt2") {
    const std::vector<std::uint8_t> bits{0, 0};
    const auto s = qam_modulate(bits, q4);
    REQUIRE(s.size() == 1);
    CHECK(std::abs(s[0] - cplx(1, 1) / std::numbers::sqrt2) <= 1e-15);
  }
  SUBCASE("documented 4-QAM table") {
    const std::vector<std::uint8_t> bits{0, 1, 1, 0, 1, 1};
    const auto s = qam_modulate(bits, q4);
    const double r = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(s[0] - cplx(r, -r)) <= 1e-15);
    CHECK(std::abs(s[1] - cplx(-r, r)) <= 1e-15);
    CHECK(std::abs(s[2] - cplx(-r, -r)) <= 1e-15);
  }
  SUBCASE("empty") { CHECK(qam_modulate(std::vector<std::uint8_t>{}, q4).empty()); }
  SUBCASE("16-QAM mapped average energy") {
    const QamConstellation q16(16);
    std::vector<std::uint8_t> bits;
    for (std::uint32_t l = 0; l < 16; ++l) append_label_bits(bits, l, 4);
    double e = 0.0;
    for (const auto& p : qam_modulate(bits, q16)) e += std::norm(p);
    CHECK(std::abs(e / 16.0 - 1.0) <= 1e-12);
  }
  SUBCASE("indivisible bit count") {
    CHECK_THROWS_AS(qam_modulate(std::vector<std::uint8_t>{1, 0, 1}, q4), InvalidInput);
  }
}

TEST_CASE("qam_slice") {
  const QamConstellation q4(4);
  CHECK(qam_slice({0.9, 0.8}, q4).index == 0);
  for (std::size_t i = 0; i < 4; ++i) CHECK(qam_slice(q4.point(i), q4).index == i);
  CHECK(qam_slice(0.0, q4).index == 0);  // four-way tie, lowest index
  CHECK_THROWS_AS(qam_slice({NAN, 0.0}, q4), InvalidInput);
}

TEST_CASE("O(1) slicer agrees with the linear-scan oracle") {
  RandomStream rng = derive_stream({2, {std::string("slice")}});
  for (unsigned order : {4u, 16u, 64u}) {
    const QamConstellation q(order);
    for (int t = 0; t < 20000; ++t) {
      const cplx z = 1.5 * rng.complex_gaussian();
      CHECK(q.nearest(z) == oracle::brute_slice(z, q));
    }
    // Points on decision boundaries: midpoints between neighbours.
    for (std::size_t i = 0; i < order; ++i)
      for (std::size_t j = 0; j < order; ++j) {
        const cplx mid = 0.5 * (q.point(i) + q.point(j));
        CHECK(q.nearest(mid) == oracle::brute_slice(mid, q));
      }
  }
}

TEST_CASE("slice(modulate(bits)) recovers bits") {
  RandomStream rng = derive_stream({4, {}});
  for (unsigned order : {4u, 16u, 64u}) {
    const QamConstellation q(order);
    std::vector<std::uint8_t> bits(600);
    for (auto& b : bits) b = rng.bit();
    std::vector<std::uint8_t> back;
    for (const auto& s : qam_modulate(bits, q)) append_label_bits(back, qam_slice(s, q).label, q.bits_per_symbol());
    CHECK(back == bits);
  }
}

TEST_CASE("OFDM grid") {
  const auto g = OfdmGrid::ieee80211a();
  CHECK(g.fft_size == 64);
  CHECK(g.cp_length == 16);
  CHECK(g.data_count() == 52);
  g.validate();
  CHECK(std::find(g.data_indices.begin(), g.data_indices.end(), 0u) == g.data_indices.end());
  OfdmGrid bad = g;
  bad.data_indices.push_back(0);
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("ofdm_modulate / ofdm_demodulate") {
  const auto g = OfdmGrid::ieee80211a();
  SUBCASE("zero in, zero out") {
    for (const auto& v : ofdm_modulate(std::vector<cplx>(52), g)) CHECK(v == cplx(0.0));
    for (const auto& v : ofdm_demodulate(std::vector<cplx>(80), g)) CHECK(v == cplx(0.0));
  }
  SUBCASE("single active subcarrier is a constant-modulus exponential of magnitude 1/8") {
    std::vector<cplx> x(52);
    x[30] = 1.0;
    const auto t = ofdm_modulate(x, g);
    REQUIRE(t.size() == 80);
    for (const auto& v : t) CHECK(std::abs(std::abs(v) - 0.125) <= 1e-15);
    for (std::size_t n = 0; n < 16; ++n) CHECK(t[n] == t[64 + n]);  // cyclic prefix
  }
  SUBCASE("no energy on non-data bins") {
    RandomStream rng = derive_stream({6, {}});
    std::vector<cplx> x(52);
    for (auto& v : x) v = rng.complex_gaussian();
    const auto t = ofdm_modulate(x, g);
    const auto bins = dft(std::span<const cplx>(t).subspan(16), false);
    std::vector<bool> data(64, false);
    for (auto k : g.data_indices) data[k] = true;
    for (std::size_t k = 0; k < 64; ++k)
      if (!data[k]) CHECK(std::abs(bins[k]) <= 1e-15);
  }
  SUBCASE("length errors") {
    CHECK_THROWS_AS(ofdm_modulate(std::vector<cplx>(51), g), InvalidInput);
    CHECK_THROWS_AS(ofdm_demodulate(std::vector<cplx>(64), g), InvalidInput);
  }
}

TEST_CASE("OFDM round trip over 1e4 random spectra, and superposition with noise") {
  const auto g = OfdmGrid::ieee80211a();
  RandomStream rng = derive_stream({8, {}});
  std::vector<cplx> x(52);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    for (auto& v : x) v = rng.complex_gaussian();
    const auto back = ofdm_demodulate(ofdm_modulate(x, g), g);
    for (std::size_t k = 0; k < 52; ++k) worst = std::max(worst, std::abs(back[k] - x[k]));
  }
  CHECK(worst <= 1e-12);

  auto tx = ofdm_modulate(x, g);
  std::vector<cplx> noise(80);
  for (auto& v : noise) v = rng.complex_gaussian();
  for (std::size_t n = 0; n < 80; ++n) tx[n] += noise[n];
  const auto sum = ofdm_demodulate(tx, g);
  const auto nd = ofdm_demodulate(noise, g);
  for (std::size_t k = 0; k < 52; ++k) CHECK(std::abs(sum[k] - (x[k] + nd[k])) <= 1e-12);
}
