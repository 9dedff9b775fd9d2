#include <cmath>

#include "doctest.h"
#include "rrbf/beamforming.hpp"
#include "rrbf/channel.hpp"
#include "rrbf/errors.hpp"
#include "rrbf/random.hpp"
#include "rrbf/receiver.hpp"
#include "rrbf/stbc.hpp"

using namespace rrbf;

namespace {

EigenBeams unit_beams() { return eigen_beams(Matrix2::identity(), 2.0, 1e-3); }

// Received pair at one antenna for the rate-2 beamformer, noiseless.
ReceivedPair receive(const Matrix2& tx, const ChannelRealization& ch, std::size_t ant, double amp) {
  const auto h = ch.h.col(ant);
  return {amp * (tx(0, 0) * h[0] + tx(0, 1) * h[1]), amp * (tx(1, 0) * h[0] + tx(1, 1) * h[1])};
}

CombinedStatistic noisy_statistic(RandomStream& rng, const QamConstellation& q, double phi1, double sigma,
                                  std::size_t& odd, std::size_t& even) {
  odd = rng.uniform_index(q.order());
  even = rng.uniform_index(q.order());
  const double kappa = 0.2 + 2.0 * rng.uniform();
  const cplx c = q.point(odd) * std::sin(phi1) - std::conj(q.point(even)) * std::cos(phi1);
  CombinedStatistic r;
  r.kappa = kappa;
  r.r1 = kappa * c + sigma * rng.complex_gaussian();
  r.r2 = rng.complex_gaussian();
  return r;
}

}  // namespace

TEST_CASE("EVCM examples") {
  const ChannelRealization ch{Matrix2::identity()};
  const Evcm e = build_evcm(ch, unit_beams(), 0);
  CHECK(max_abs_diff(e.g, Matrix2{1.0, 0.0, 0.0, -1.0}) <= 1e-15);
  CHECK(e.psi == doctest::Approx(1.0));

  EigenBeams zero = unit_beams();
  zero.delta1 = zero.delta2 = 0.0;
  const Evcm z = build_evcm(ch, zero, 1);
  CHECK(z.psi == 0.0);
  CHECK(max_abs_diff(z.g, Matrix2{}) == 0.0);
  CHECK_THROWS_AS(equalize({1.0, 1.0}, z), DegenerateChannel);
  CHECK_THROWS_AS(build_evcm(ch, zero, 2), InvalidInput);
}

TEST_CASE("EVCM quasi-orthogonality over random draws") {
  RandomStream rng = derive_stream({1, {std::string("evcm")}});
  for (int t = 0; t < 1000; ++t) {
    const auto ch = draw_channel(rng);
    const auto b = eigen_beams(transmit_correlation(ch.h), 2.0, std::exp(rng.gaussian()));
    for (std::size_t i = 0; i < 2; ++i) {
      const Evcm e = build_evcm(ch, b, i);
      CHECK(max_abs_diff(e.g.adjoint() * e.g, Matrix2::diagonal(e.psi, e.psi)) <= 1e-10);
    }
  }
}

TEST_CASE("equalize: noiseless, zero and jam-only inputs") {
  RandomStream rng = derive_stream({2, {}});
  for (int t = 0; t < 200; ++t) {
    const auto ch = draw_channel(rng);
    const auto b = eigen_beams(transmit_correlation(ch.h), 2.0, 0.1);
    const cplx c1 = rng.complex_gaussian(), c2 = rng.complex_gaussian();
    const Matrix2 tx = beamform_rr({c1, c2}, b);
    std::array<EqualizedPair, 2> eq;
    for (std::size_t i = 0; i < 2; ++i) {
      const Evcm e = build_evcm(ch, b, i);
      const auto a = equalize(receive(tx, ch, i, 1.0), e);
      CHECK(std::abs(a[0] - e.psi * c1) <= 1e-10);
      CHECK(std::abs(a[1] - e.psi * c2) <= 1e-10);
      eq[i] = {a, e.psi};

      const auto zero = equalize({0.0, 0.0}, e);
      CHECK(zero[0] == cplx(0.0));
      CHECK(zero[1] == cplx(0.0));

      const ReceivedPair j{rng.complex_gaussian(), rng.complex_gaussian()};
      const auto aj = equalize(j, e);
      CHECK(std::norm(aj[0]) + std::norm(aj[1]) ==
            doctest::Approx(e.psi * (std::norm(j.first) + std::norm(j.second))).epsilon(1e-10));
    }
    const auto r = combine(eq);
    CHECK(std::abs(r.r1 - r.kappa * c1) <= 1e-10);
    CHECK(std::abs(r.r2 - r.kappa * c2) <= 1e-10);
  }
}

TEST_CASE("combine") {
  const EqualizedPair p{{cplx(1, 2), cplx(-3, 0)}, 0.7};
  const std::array<EqualizedPair, 2> dup{p, p};
  const auto r = combine(dup);
  CHECK(r.r1 == p.a[0]);
  CHECK(r.r2 == p.a[1]);
  CHECK(r.kappa == doctest::Approx(0.7));
  const std::array<EqualizedPair, 2> zero{};
  const auto z = combine(zero);
  CHECK(z.r1 == cplx(0.0));
  CHECK(z.kappa == 0.0);
  CHECK_THROWS_AS(combine(std::span<const EqualizedPair>(dup.data(), 1)), InvalidInput);
}

TEST_CASE("conditional ML: noiseless exact recovery and counters") {
  for (unsigned order : {4u, 16u}) {
    const QamConstellation q(order);
    for (int epoch : {1, 2}) {
      const double phi = epoch == 1 ? kDefaultPhi1 : std::numbers::pi / 2 - kDefaultPhi1;
      for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = 0; j < order; ++j) {
          const cplx c = q.point(i) * std::sin(phi) - std::conj(q.point(j)) * std::cos(phi);
          CombinedStatistic r;
          r.kappa = 1.3;
          (epoch == 1 ? r.r1 : r.r2) = 0.8 * 1.3 * c;
          const auto d = conditional_ml_detect(r, epoch, kDefaultPhi1, q, 0.8);
          CHECK(d.odd == i);
          CHECK(d.even == j);
          CHECK(d.cost <= 1e-18);
          CHECK(d.cost_evaluations == order);
          const auto e = exhaustive_ml_detect(r, epoch, kDefaultPhi1, q, 0.8);
          CHECK(e.odd == i);
          CHECK(e.even == j);
          CHECK(e.cost_evaluations == order * order);
        }
    }
  }
}

TEST_CASE("conditional ML agrees with exhaustive search on noisy statistics") {
  RandomStream rng = derive_stream({3, {std::string("ml")}});
  for (unsigned order : {4u, 16u}) {
    const QamConstellation q(order);
    int mismatches = 0;
    for (int t = 0; t < 10000; ++t) {
      std::size_t odd = 0, even = 0;
      const double sigma = std::exp(1.5 * rng.gaussian() - 1.0);
      const auto r = noisy_statistic(rng, q, kDefaultPhi1, sigma, odd, even);
      const auto c = conditional_ml_detect(r, 1, kDefaultPhi1, q, 1.0);
      const auto e = exhaustive_ml_detect(r, 1, kDefaultPhi1, q, 1.0);
      if (c.odd != e.odd || c.even != e.even) {
        ++mismatches;
        CHECK(std::abs(c.cost - e.cost) <= 1e-9);
      }
      CHECK(c.cost >= e.cost - 1e-12);
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("detection errors") {
  const QamConstellation q(4);
  CombinedStatistic r;
  CHECK_THROWS_AS(conditional_ml_detect(r, 1, kDefaultPhi1, q, 1.0), DegenerateChannel);
  r.kappa = 1.0;
  CHECK_THROWS_AS(conditional_ml_detect(r, 3, kDefaultPhi1, q, 1.0), InvalidInput);
  CHECK_THROWS_AS(conditional_ml_detect(r, 1, kDefaultPhi1, q, 0.0), InvalidInput);
  CHECK_THROWS_AS(exhaustive_ml_detect(r, 0, kDefaultPhi1, q, 1.0), InvalidInput);
}

TEST_CASE("Alamouti detector") {
  const QamConstellation q(16);
  SUBCASE("unit channel, noiseless") {
    const ChannelRealization ch{Matrix2::identity()};
    const auto b = unit_beams();
    const Matrix2 tx = beamform_alamouti(encode_alamouti(q.point(3), q.point(12)), b);
    const std::array<ReceivedPair, 2> y{receive(tx, ch, 0, 1.0), receive(tx, ch, 1, 1.0)};
    const std::array<Evcm, 2> e{build_evcm(ch, b, 0), build_evcm(ch, b, 1)};
    const auto d = alamouti_detect(y, e, q, 1.0);
    CHECK(d.x1 == 3);
    CHECK(d.x2 == 12);
  }
  SUBCASE("random channels, every symbol pair, amplitude 2") {
    RandomStream rng = derive_stream({4, {}});
    for (std::size_t i = 0; i < 16; ++i)
      for (std::size_t j = 0; j < 16; ++j) {
        const auto ch = draw_channel(rng);
        const auto b = eigen_beams(transmit_correlation(ch.h), 2.0, 0.1);
        const Matrix2 tx = beamform_alamouti(encode_alamouti(q.point(i), q.point(j)), b);
        const std::array<ReceivedPair, 2> y{receive(tx, ch, 0, 2.0), receive(tx, ch, 1, 2.0)};
        const std::array<Evcm, 2> e{build_evcm(ch, b, 0), build_evcm(ch, b, 1)};
        const auto d = alamouti_detect(y, e, q, 2.0);
        CHECK(d.x1 == i);
        CHECK(d.x2 == j);
      }
  }
  SUBCASE("zero input slices to the tie-break point") {
    const ChannelRealization ch{Matrix2::identity()};
    const std::array<ReceivedPair, 2> y{};
    const std::array<Evcm, 2> e{build_evcm(ch, unit_beams(), 0), build_evcm(ch, unit_beams(), 1)};
    const auto d = alamouti_detect(y, e, q, 1.0);
    CHECK(d.x1 == q.nearest(0.0));
    CHECK(d.x2 == q.nearest(0.0));
  }
  SUBCASE("errors") {
    const std::array<ReceivedPair, 2> y{};
    const std::array<Evcm, 2> zero{};
    CHECK_THROWS_AS(alamouti_detect(y, zero, q, 1.0), DegenerateChannel);
    CHECK_THROWS_AS(alamouti_detect(y, std::span<const Evcm>(zero.data(), 1), q, 1.0), InvalidInput);
  }
}
