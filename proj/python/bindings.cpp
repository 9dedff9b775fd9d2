#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "rrbf/beamforming.hpp"
#include "rrbf/channel.hpp"
#include "rrbf/errors.hpp"
#include "rrbf/harness.hpp"
#include "rrbf/modem.hpp"
#include "rrbf/numerics.hpp"
#include "rrbf/psd.hpp"
#include "rrbf/receiver.hpp"
#include "rrbf/stbc.hpp"
#include "rrbf/validation.hpp"

namespace py = pybind11;
using namespace rrbf;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

Matrix2 to_matrix(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != 2 || a.shape(1) != 2) throw InvalidInput("expected a 2x2 array");
  const auto r = a.unchecked<2>();
  return {r(0, 0), r(0, 1), r(1, 0), r(1, 1)};
}

py::array_t<cplx> from_matrix(const Matrix2& m) {
  py::array_t<cplx> out({2, 2});
  auto w = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < 2; ++i)
    for (py::ssize_t j = 0; j < 2; ++j) w(i, j) = m(i, j);
  return out;
}

std::vector<cplx> to_vector(const CArray& a) {
  if (a.ndim() != 1) throw InvalidInput("expected a 1-D array");
  return {a.data(), a.data() + a.size()};
}

py::array_t<cplx> from_vector(const std::vector<cplx>& v) {
  py::array_t<cplx> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict row_dict(const MetricRow& r) {
  py::dict d;
  d["scheme"] = r.scheme;
  d["jammer"] = r.jammer;
  d["sjr_db"] = r.sjr_db;
  d["es_n0_db"] = r.es_n0_db;
  d["frames"] = r.frames;
  d["bits"] = r.bits;
  d["bit_errors"] = r.bit_errors;
  d["ber"] = r.ber;
  d["rate"] = r.rate;
  d["spectral_efficiency"] = r.spectral_efficiency;
  d["seed"] = r.seed;
  return d;
}

py::dict psd_dict(const PsdEstimate& p) {
  py::dict d;
  d["freq"] = p.freq;
  d["psd_db"] = p.density_db;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rate-reliability beamforming MIMO-OFDM link simulator";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<DegenerateChannel>(m, "DegenerateChannel", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.attr("DEFAULT_PHI1") = kDefaultPhi1;

  py::class_<QamConstellation>(m, "QamConstellation")
      .def(py::init<unsigned>(), py::arg("order"))
      .def_property_readonly("order", &QamConstellation::order)
      .def_property_readonly("bits_per_symbol", &QamConstellation::bits_per_symbol)
      .def_property_readonly("points", [](const QamConstellation& q) { return from_vector(q.points()); })
      .def("nearest", &QamConstellation::nearest, py::arg("z"));

  m.def(
      "qam_modulate",
      [](const std::vector<std::uint8_t>& bits, const QamConstellation& q) {
        return from_vector(qam_modulate(bits, q));
      },
      py::arg("bits"), py::arg("constellation"));
  m.def(
      "qam_slice", [](cplx z, const QamConstellation& q) { return qam_slice(z, q).index; }, py::arg("z"),
      py::arg("constellation"), "Index (= bit label) of the nearest point.");

  m.def(
      "dft", [](const CArray& x, bool inverse) { return from_vector(dft(to_vector(x), inverse)); },
      py::arg("x"), py::arg("inverse") = false, "Unitary radix-2 DFT.");
  m.def(
      "ofdm_modulate",
      [](const CArray& spectrum, std::size_t cp) {
        return from_vector(ofdm_modulate(to_vector(spectrum), OfdmGrid::ieee80211a(cp)));
      },
      py::arg("spectrum"), py::arg("cp_length") = 16);
  m.def(
      "ofdm_demodulate",
      [](const CArray& samples, std::size_t cp) {
        return from_vector(ofdm_demodulate(to_vector(samples), OfdmGrid::ieee80211a(cp)));
      },
      py::arg("samples"), py::arg("cp_length") = 16);

  m.def(
      "eig_hermitian_2x2",
      [](const CArray& a) {
        const auto e = eig_hermitian_2x2(to_matrix(a));
        return py::make_tuple(py::make_tuple(e.values[0], e.values[1]), from_matrix(e.vectors));
      },
      py::arg("matrix"), "Eigenvalues (descending) and eigenvectors as columns.");
  m.def(
      "water_fill",
      [](double l1, double l2, double power, double noise) {
        const auto [d1, d2] = water_fill({l1, l2}, power, noise);
        return py::make_tuple(d1, d2);
      },
      py::arg("lambda1"), py::arg("lambda2"), py::arg("power"), py::arg("noise"));

  m.def(
      "encode_rate2",
      [](const std::array<cplx, 4>& x, double phi1) { return from_matrix(encode_rate2(Rate2Block{x, phi1})); },
      py::arg("x"), py::arg("phi1") = kDefaultPhi1);
  m.def(
      "encode_alamouti", [](cplx x1, cplx x2) { return from_matrix(encode_alamouti(x1, x2)); }, py::arg("x1"),
      py::arg("x2"));

  m.def(
      "eigen_beams",
      [](const CArray& h, double power, double noise) {
        const auto b = eigen_beams(transmit_correlation(to_matrix(h)), power, noise);
        py::dict d;
        d["unitary"] = from_matrix(b.unitary());
        d["delta"] = py::make_tuple(b.delta1, b.delta2);
        d["eigenvalues"] = py::make_tuple(b.eigenvalues[0], b.eigenvalues[1]);
        d["steering"] = from_matrix(b.steering());
        return d;
      },
      py::arg("h"), py::arg("power") = 2.0, py::arg("noise") = 0.01,
      "Beams for a channel stored transmit-by-receive.");
  m.def(
      "build_evcm",
      [](const CArray& h, double power, double noise, std::size_t antenna) {
        const ChannelRealization ch{to_matrix(h)};
        const auto e = build_evcm(ch, eigen_beams(transmit_correlation(ch.h), power, noise), antenna);
        return py::make_tuple(from_matrix(e.g), e.psi);
      },
      py::arg("h"), py::arg("power") = 2.0, py::arg("noise") = 0.01, py::arg("antenna") = 0);

  auto detect = [](auto fn) {
    return [fn](cplx r1, cplx r2, double kappa, int epoch, double phi1, const QamConstellation& q,
                double amplitude) {
      const auto d = fn(CombinedStatistic{r1, r2, kappa}, epoch, phi1, q, amplitude);
      py::dict out;
      out["odd"] = d.odd;
      out["even"] = d.even;
      out["cost"] = d.cost;
      out["cost_evaluations"] = d.cost_evaluations;
      return out;
    };
  };
  m.def("conditional_ml_detect", detect(conditional_ml_detect), py::arg("r1"), py::arg("r2"), py::arg("kappa"),
        py::arg("epoch"), py::arg("phi1"), py::arg("constellation"), py::arg("amplitude") = 1.0);
  m.def("exhaustive_ml_detect", detect(exhaustive_ml_detect), py::arg("r1"), py::arg("r2"), py::arg("kappa"),
        py::arg("epoch"), py::arg("phi1"), py::arg("constellation"), py::arg("amplitude") = 1.0);

  m.def("spectral_efficiency", &spectral_efficiency, py::arg("rate"), py::arg("order"), py::arg("ber"));

  m.def(
      "run_sweep",
      [](const std::string& scheme, const std::string& jammer, const std::vector<double>& sjr_db,
         double es_n0_db, std::size_t frames, std::uint64_t seed, const std::string& mapping,
         const std::string& jammed_slots, const std::string& jammer_path, std::optional<unsigned> constellation,
         double phi1, std::uint64_t target_errors, std::uint64_t min_bits, unsigned threads) {
        SweepConfig c;
        c.scheme = parse_scheme(scheme);
        c.jammer = parse_jammer_kind(jammer);
        c.jammer_path = parse_jammer_path(jammer_path);
        c.sjr_points = sjr_db;
        c.es_n0_db = es_n0_db;
        c.frames_per_point = frames;
        c.seed = seed;
        c.mapping = parse_mapping(mapping);
        c.jammed_slots = parse_slot_list(jammed_slots);
        c.constellation_order = constellation;
        c.phi1 = phi1;
        c.target_errors = target_errors;
        c.min_bits = min_bits;
        c.threads = threads;
        std::vector<MetricRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_sweep(c);
        }
        py::list out;
        for (const auto& r : rows) out.append(row_dict(r));
        return out;
      },
      py::arg("scheme") = "rr-full", py::arg("jammer") = "none",
      py::arg("sjr_db") = std::vector<double>{0.0}, py::arg("es_n0_db") = 25.0, py::arg("frames") = 1000,
      py::arg("seed") = 1, py::arg("mapping") = "sf-pairs", py::arg("jammed_slots") = "",
      py::arg("jammer_path") = "faded", py::arg("constellation") = py::none(), py::arg("phi1") = kDefaultPhi1,
      py::arg("target_errors") = 500, py::arg("min_bits") = 0, py::arg("threads") = 1,
      "Monte Carlo BER sweep; one dict per SJR point.");

  m.def(
      "run_psd",
      [](const std::string& scheme, const std::string& jammer, double sjr_db, std::size_t frames,
         const std::string& jammed_slots, std::size_t segment, std::uint64_t seed) {
        PsdConfig c;
        c.scheme = parse_scheme(scheme);
        c.jammer = parse_jammer_kind(jammer);
        c.jammed_slots = parse_slot_list(jammed_slots);
        c.sjr_db = sjr_db;
        c.frames = frames;
        c.segment = segment;
        c.seed = seed;
        const auto r = run_psd(c);
        py::dict out;
        out["legit"] = psd_dict(r.legit);
        out["jammer"] = psd_dict(r.jam);
        out["received"] = psd_dict(r.received);
        return out;
      },
      py::arg("scheme") = "rr-full", py::arg("jammer") = "all-band", py::arg("sjr_db") = -10.0,
      py::arg("frames") = 1000, py::arg("jammed_slots") = "", py::arg("segment") = 64, py::arg("seed") = 1);

  m.def(
      "validate",
      [](std::uint64_t seed) {
        py::list out;
        for (const auto& c : run_validation(seed)) out.append(py::make_tuple(c.name, c.passed, c.detail));
        return out;
      },
      py::arg("seed") = 7, "Self-checks as (name, passed, detail) tuples.");
}
