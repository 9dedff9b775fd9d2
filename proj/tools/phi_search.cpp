// Offline search for the rate-2 rotation angle.
//
// For every angle on a grid over (0, pi/2), computes the minimum over all
// distinct codeword pairs of det((C - C')^H (C - C')), the coding-gain metric of
// the rate-2 code. Codewords differing in only one super-symbol dominate the
// minimum, so the search runs over single-block symbol differences of both
// super-symbols. Prints the best angle (ties: largest angle).
//
//   phi_search [--order 4] [--steps 200000]

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rrbf/modem.hpp"
#include "rrbf/stbc.hpp"

int main(int argc, char** argv) {
  CLI::App app{"rate-2 rotation angle search"};
  unsigned order = 4;
  long steps = 200000;
  app.add_option("--order", order);
  app.add_option("--steps", steps);
  CLI11_PARSE(app, argc, argv);

  const rrbf::QamConstellation q(order);
  const auto& pts = q.points();
  // Distinct differences of constellation points, including zero.
  std::vector<rrbf::cplx> diffs;
  for (const auto& a : pts)
    for (const auto& b : pts) {
      const auto d = a - b;
      bool seen = false;
      for (const auto& e : diffs) seen = seen || std::abs(e - d) < 1e-12;
      if (!seen) diffs.push_back(d);
    }

  double best_phi = 0.0, best_metric = -1.0;
  for (long i = 1; i < steps; ++i) {
    const double phi1 = std::numbers::pi / 2.0 * static_cast<double>(i) / static_cast<double>(steps);
    double worst = INFINITY;
    for (const auto& d1 : diffs)
      for (const auto& d2 : diffs) {
        if (std::abs(d1) == 0.0 && std::abs(d2) == 0.0) continue;
        // C - C' for a single super-symbol difference is Alamouti([dc, 0]);
        // det = |dc|^4. Both angles phi1 and phi2 = pi/2 - phi1 are covered.
        for (double phi : {phi1, std::numbers::pi / 2.0 - phi1}) {
          const auto dc = d1 * std::sin(phi) - std::conj(d2) * std::cos(phi);
          worst = std::min(worst, std::pow(std::norm(dc), 2));
        }
      }
    if (worst >= best_metric - 1e-12) {
      best_metric = std::max(best_metric, worst);
      best_phi = phi1;
    }
  }
  std::printf("order %u: phi1 = %.16f rad (min det %.6f), atan(2) = %.16f\n", order, best_phi,
              best_metric, std::atan(2.0));
  return 0;
}
