#include "rrbf/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "rrbf/beamforming.hpp"
#include "rrbf/harness.hpp"
#include "rrbf/modem.hpp"
#include "rrbf/numerics.hpp"
#include "rrbf/precoding.hpp"
#include "rrbf/random.hpp"
#include "rrbf/receiver.hpp"

namespace rrbf {

namespace {

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

Matrix2 random_hermitian(RandomStream& rng) {
  const cplx off = rng.complex_gaussian();
  return {rng.gaussian(), off, std::conj(off), rng.gaussian()};
}

CheckResult detector_equivalence(unsigned order, std::uint64_t seed) {
  const QamConstellation q(order);
  RandomStream rng = derive_stream({seed, {std::string("ml-equivalence"), std::uint64_t{order}}});
  std::size_t mismatches = 0;
  double worst_gap = 0.0;
  bool counts_ok = true;
  constexpr int kTrials = 10000;
  for (int t = 0; t < kTrials; ++t) {
    const double phi1 = 0.1 + 1.3 * rng.uniform();
    const double kappa = 0.2 + 2.0 * rng.uniform();
    const double amp = 0.5 + rng.uniform();
    const int epoch = 1 + static_cast<int>(rng.uniform_index(2));
    const double phi = epoch == 1 ? phi1 : std::numbers::pi / 2.0 - phi1;
    const cplx xo = q.point(rng.uniform_index(order));
    const cplx xe = q.point(rng.uniform_index(order));
    const cplx clean = amp * kappa * (xo * std::sin(phi) - std::conj(xe) * std::cos(phi));
    const cplx r = clean + 0.4 * amp * kappa * rng.complex_gaussian();
    CombinedStatistic stat{epoch == 1 ? r : 0.0, epoch == 2 ? r : 0.0, kappa};
    const auto fast = conditional_ml_detect(stat, epoch, phi1, q, amp);
    const auto slow = exhaustive_ml_detect(stat, epoch, phi1, q, amp);
    if (fast.odd != slow.odd || fast.even != slow.even) {
      ++mismatches;
      worst_gap = std::max(worst_gap, std::abs(fast.cost - slow.cost));
    }
    counts_ok = counts_ok && fast.cost_evaluations == order &&
                slow.cost_evaluations == static_cast<std::size_t>(order) * order;
  }
  CheckResult c;
  c.name = "conditional ML == exhaustive ML (" + std::to_string(order) + "-QAM)";
  c.passed = worst_gap <= 1e-9 && counts_ok;
  c.detail = std::to_string(kTrials) + " trials, " + std::to_string(mismatches) +
             " index mismatches, worst cost gap " + sci(worst_gap) +
             (counts_ok ? ", evaluation counts exact" : ", evaluation counts WRONG");
  return c;
}

}  // namespace

std::vector<CheckResult> run_validation(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(detector_equivalence(4, seed));
  out.push_back(detector_equivalence(16, seed));

  {
    RandomStream rng = derive_stream({seed, {std::string("evcm")}});
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      ChannelRealization ch = draw_channel(rng);
      const auto beams = eigen_beams(transmit_correlation(ch.h), 2.0, 0.01 + rng.uniform());
      for (std::size_t i = 0; i < 2; ++i) {
        const Evcm g = build_evcm(ch, beams, i);
        worst = std::max(worst, max_abs_diff(g.g.adjoint() * g.g, Matrix2::diagonal(g.psi, g.psi)));
      }
    }
    out.push_back({"EVCM G^H G == psi I", worst <= 1e-10, "max deviation " + sci(worst)});
  }

  {
    RandomStream rng = derive_stream({seed, {std::string("eig")}});
    double recon = 0.0, unit = 0.0;
    for (int t = 0; t < 10000; ++t) {
      const Matrix2 m = random_hermitian(rng);
      const auto e = eig_hermitian_2x2(m);
      const Matrix2 u = e.vectors;
      recon = std::max(recon, max_abs_diff(u * Matrix2::diagonal(e.values[0], e.values[1]) *
                                               u.adjoint(), m));
      unit = std::max(unit, max_abs_diff(u.adjoint() * u, Matrix2::identity()));
    }
    out.push_back({"Hermitian eigendecomposition", recon <= 1e-10 && unit <= 1e-12,
                   "reconstruction " + sci(recon) + ", unitarity " + sci(unit)});
  }

  {
    RandomStream rng = derive_stream({seed, {std::string("ofdm")}});
    const OfdmGrid grid = OfdmGrid::ieee80211a();
    double worst = 0.0;
    std::vector<cplx> x(grid.data_count());
    for (int t = 0; t < 10000; ++t) {
      for (auto& v : x) v = rng.complex_gaussian();
      const auto back = ofdm_demodulate(ofdm_modulate(x, grid), grid);
      for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(back[k] - x[k]));
    }
    out.push_back({"OFDM round trip", worst <= 1e-12, "max error " + sci(worst)});
  }

  {
    RandomStream rng = derive_stream({seed, {std::string("waterfill")}});
    double worst = 0.0;
    bool nonneg = true;
    for (int t = 0; t < 10000; ++t) {
      const double p = 0.1 + 10.0 * rng.uniform();
      const auto [d1, d2] =
          water_fill({0.001 + 5.0 * rng.uniform(), 0.001 + 5.0 * rng.uniform()}, p,
                     0.01 + 3.0 * rng.uniform());
      worst = std::max(worst, std::abs(d1 + d2 - p));
      nonneg = nonneg && d1 >= 0.0 && d2 >= 0.0;
    }
    out.push_back({"water-filling budget", worst <= 1e-12 && nonneg, "max budget error " + sci(worst)});
  }

  {
    double worst = 0.0;
    for (std::size_t slots = 1; slots <= 64; ++slots) {
      for (double p : {0.5, 1.0, 52.0, 1000.0}) {
        const auto prof = build_full_precoder(slots, p);
        double s = 0.0;
        for (double r : prof.rho()) s += r * r;
        worst = std::max(worst, std::abs(s - p) / p);
        std::set<std::size_t> jam;
        for (std::size_t k = slots / 3; k < slots; k += 2) jam.insert(k);
        const auto mb = build_multiband_precoder(slots, jam, p);
        s = 0.0;
        for (double r : mb.rho()) s += r * r;
        worst = std::max(worst, std::abs(s - p) / p);
      }
    }
    out.push_back({"precoder power constraint", worst <= 1e-12, "max relative error " + sci(worst)});
  }

  for (Scheme s : {Scheme::rr_full, Scheme::rr_multi, Scheme::alamouti_bf}) {
    for (Mapping m : {Mapping::sf_pairs, Mapping::time_slots}) {
      SweepConfig cfg;
      cfg.scheme = s;
      cfg.mapping = m;
      cfg.es_n0_db = std::numeric_limits<double>::infinity();
      cfg.sjr_points = {0.0};
      cfg.frames_per_point = 200;
      cfg.target_errors = 0;
      cfg.seed = seed;
      if (s == Scheme::rr_multi) cfg.jammed_slots = parse_slot_list("12-25");
      const auto rows = run_sweep(cfg);
      out.push_back({"noiseless decoding " + std::string(to_string(s)) + "/" +
                         std::string(to_string(m)),
                     rows[0].bit_errors == 0 && rows[0].bits > 0,
                     std::to_string(rows[0].bit_errors) + " errors in " +
                         std::to_string(rows[0].bits) + " bits"});
    }
  }
  return out;
}

bool report_validation(const std::vector<CheckResult>& results, std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  return all;
}

}  // namespace rrbf
