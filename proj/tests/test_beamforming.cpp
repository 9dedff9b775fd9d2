#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "rrbf/beamforming.hpp"
#include "rrbf/channel.hpp"
#include "rrbf/errors.hpp"
#include "rrbf/random.hpp"
#include "rrbf/stbc.hpp"

using namespace rrbf;

TEST_CASE("transmit correlation is H H^H") {
  const Matrix2 h{1.0, cplx(0, 1), 2.0, 0.5};
  const Matrix2 r = transmit_correlation(h);
  CHECK(is_hermitian(r, 0.0));
  CHECK(max_abs_diff(r, h * h.adjoint()) <= 1e-15);
}

TEST_CASE("identity channel splits power evenly") {
  const auto b = eigen_beams(transmit_correlation(Matrix2::identity()), 2.0, 0.1);
  CHECK(b.delta1 == doctest::Approx(1.0));
  CHECK(b.delta2 == doctest::Approx(1.0));
  CHECK(max_abs_diff(b.unitary(), Matrix2::identity()) == 0.0);
}

TEST_CASE("rank-one channel puts all power on the strong beam") {
  const Matrix2 h{1.0, 1.0, 1.0, 1.0};
  const auto b = eigen_beams(transmit_correlation(h), 2.0, 0.01);
  CHECK(b.delta1 == doctest::Approx(2.0));
  CHECK(b.delta2 == 0.0);
  CHECK(b.eigenvalues[0] == doctest::Approx(4.0));
  CHECK(std::abs(b.eigenvalues[1]) <= 1e-14);
}

TEST_CASE("zero channel is degenerate") {
  CHECK_THROWS_AS(eigen_beams(Matrix2{}, 2.0, 0.1), DegenerateChannel);
}

TEST_CASE("eigenvalues equal squared singular values of H for random channels") {
  RandomStream rng = derive_stream({2, {std::string("beams")}});
  for (int t = 0; t < 5000; ++t) {
    const auto ch = draw_channel(rng);
    const auto b = eigen_beams(transmit_correlation(ch.h), 2.0, 0.05);
    const auto [s1, s2] = oracle::squared_singular_values(ch.h);
    CHECK(std::abs(b.eigenvalues[0] - s1) <= 1e-10 * std::max(1.0, s1));
    CHECK(std::abs(b.eigenvalues[1] - s2) <= 1e-10 * std::max(1.0, s1));
    CHECK(std::abs(b.delta1 + b.delta2 - 2.0) <= 1e-12);
    CHECK(b.delta1 >= b.delta2);
    const Matrix2 u = b.unitary();
    CHECK(max_abs_diff(u.adjoint() * u, Matrix2::identity()) <= 1e-12);
  }
}

TEST_CASE("beamformers equal code matrix times steering") {
  RandomStream rng = derive_stream({4, {}});
  const auto ch = draw_channel(rng);
  const auto b = eigen_beams(transmit_correlation(ch.h), 2.0, 0.05);
  const cplx c1 = rng.complex_gaussian(), c2 = rng.complex_gaussian();
  CHECK(max_abs_diff(beamform_rr({c1, c2}, b), alamouti_matrix(c1, c2) * b.steering()) <= 1e-14);
  const Matrix2 x = encode_alamouti(c1, c2);
  CHECK(max_abs_diff(beamform_alamouti(x, b), x * b.steering()) <= 1e-14);
  const auto row = beamform_row(c1, c2, b);
  const Matrix2 full = alamouti_matrix(c1, c2) * b.steering();
  CHECK(std::abs(row[0] - full(0, 0)) <= 1e-14);
  CHECK(std::abs(row[1] - full(0, 1)) <= 1e-14);
  // Steering preserves transmit power split: ||B||_F^2 = (|c1|^2+|c2|^2)(d1+d2).
  CHECK(std::abs(frobenius_sq(full) - (std::norm(c1) + std::norm(c2)) * 2.0) <= 1e-12);
}
