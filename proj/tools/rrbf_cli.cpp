// rrbf: command-line front end for the link simulator.
//
//   rrbf sweep    --scheme rr-full --jammer all-band --sjr-start -20 --sjr-stop 30 --out ber.csv
//   rrbf psd      --jammer multi-band --jammed-slots 12-25 --sjr -10 --out psd.csv
//   rrbf validate
//
// Any subcommand also accepts --config FILE with `key = value` lines using the
// long flag names; flags given on the command line win over the file.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rrbf/errors.hpp"
#include "rrbf/harness.hpp"
#include "rrbf/psd.hpp"
#include "rrbf/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw rrbf::InvalidInput("cannot read config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw rrbf::InvalidInput(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

// Splices config-file entries into the argument list unless the flag is
// already present on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  for (const auto& [key, value] : read_config(path)) {
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
    if (!given) {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

double parse_db(const std::string& s) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw rrbf::InvalidInput("bad number '" + s + "'");
  return v;
}

std::vector<double> sjr_range(double start, double stop, double step) {
  if (!(step > 0.0)) throw rrbf::InvalidInput("--sjr-step must be positive");
  if (stop < start) throw rrbf::InvalidInput("--sjr-stop is below --sjr-start");
  std::vector<double> pts;
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= n; ++i) pts.push_back(start + static_cast<double>(i) * step);
  return pts;
}

template <class F>
void with_output(const std::string& out_path, F&& write) {
  if (out_path.empty() || out_path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw rrbf::IoError(out_path, "cannot open for writing");
  write(f);
  f.flush();
  if (!f) throw rrbf::IoError(out_path, "write failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate-reliability beamformer MIMO-OFDM link simulator", "rrbf"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "BER / spectral-efficiency sweep over SJR");
  std::string scheme = "rr-full", jammer = "none", jpath = "faded", mapping = "sf-pairs";
  std::string slots_text, esn0_text = "25", out_path;
  double sjr_start = -20, sjr_stop = 30, sjr_step = 5, phi1 = rrbf::kDefaultPhi1;
  unsigned constellation = 0, threads = 1;
  std::size_t frames = 1000, cp = 16;
  std::uint64_t seed = 1, target_errors = 500, min_bits = 0;
  sweep->add_option("--scheme", scheme)->check(CLI::IsMember({"rr-full", "rr-multi", "alamouti-bf"}));
  sweep->add_option("--jammer", jammer)
      ->check(CLI::IsMember({"none", "all-band", "multi-band", "barrage"}));
  sweep->add_option("--jammer-path", jpath)->check(CLI::IsMember({"direct", "faded"}));
  sweep->add_option("--sjr-start", sjr_start);
  sweep->add_option("--sjr-stop", sjr_stop);
  sweep->add_option("--sjr-step", sjr_step);
  sweep->add_option("--esn0", esn0_text, "Es/N0 in dB, or inf for noiseless");
  sweep->add_option("--constellation", constellation, "4, 16 or 64 (default: per scheme)");
  sweep->add_option("--frames", frames, "frames per SJR point");
  sweep->add_option("--phi1", phi1, "rotation angle in radians");
  sweep->add_option("--mapping", mapping)->check(CLI::IsMember({"sf-pairs", "time-slots"}));
  sweep->add_option("--jammed-slots", slots_text, "zero-based data slots, e.g. 12-25");
  sweep->add_option("--seed", seed);
  sweep->add_option("--cp", cp, "cyclic prefix length");
  sweep->add_option("--threads", threads);
  sweep->add_option("--target-errors", target_errors, "early stop per point (0 = off)");
  sweep->add_option("--min-bits", min_bits, "bits required before early stop");
  sweep->add_option("--out", out_path, "CSV destination (default stdout)");

  // psd
  auto* psd = app.add_subcommand("psd", "received power spectral density under jamming");
  std::string p_scheme = "rr-full", p_jammer = "all-band", p_jpath = "faded", p_slots, p_esn0 = "25";
  std::string p_out, component = "received";
  double p_sjr = -10;
  std::size_t p_frames = 1000, segment = 64;
  std::uint64_t p_seed = 1;
  psd->add_option("--scheme", p_scheme)->check(CLI::IsMember({"rr-full", "rr-multi", "alamouti-bf"}));
  psd->add_option("--jammer", p_jammer)
      ->check(CLI::IsMember({"none", "all-band", "multi-band", "barrage"}));
  psd->add_option("--jammer-path", p_jpath)->check(CLI::IsMember({"direct", "faded"}));
  psd->add_option("--jammed-slots", p_slots);
  psd->add_option("--sjr", p_sjr);
  psd->add_option("--esn0", p_esn0);
  psd->add_option("--frames", p_frames);
  psd->add_option("--segment", segment);
  psd->add_option("--seed", p_seed);
  psd->add_option("--component", component)->check(CLI::IsMember({"received", "legit", "jammer"}));
  psd->add_option("--out", p_out);

  // validate
  auto* validate = app.add_subcommand("validate", "oracle-equivalence and invariant checks");
  std::uint64_t v_seed = 7;
  validate->add_option("--seed", v_seed);

  // Consumed by merge_config before parsing; declared here for --help only.
  std::string config_path;
  for (auto* sub : {sweep, psd, validate})
    sub->add_option("--config", config_path, "key = value file; command-line flags override it");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = merge_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const rrbf::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (sweep->parsed()) {
      rrbf::SweepConfig cfg;
      try {
        cfg.scheme = rrbf::parse_scheme(scheme);
        cfg.jammer = rrbf::parse_jammer_kind(jammer);
        cfg.jammer_path = rrbf::parse_jammer_path(jpath);
        cfg.mapping = rrbf::parse_mapping(mapping);
        cfg.sjr_points = sjr_range(sjr_start, sjr_stop, sjr_step);
        cfg.es_n0_db = parse_db(esn0_text);
        if (constellation != 0) cfg.constellation_order = constellation;
        cfg.frames_per_point = frames;
        cfg.phi1 = phi1;
        cfg.cp_length = cp;
        cfg.seed = seed;
        cfg.threads = threads;
        cfg.target_errors = target_errors;
        cfg.min_bits = min_bits;
        if (!slots_text.empty()) cfg.jammed_slots = rrbf::parse_slot_list(slots_text);
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
      }
      const auto rows = rrbf::run_sweep(cfg);
      with_output(out_path, [&](std::ostream& o) { rrbf::write_csv(o, rows); });
      return kExitOk;
    }

    if (psd->parsed()) {
      rrbf::PsdConfig cfg;
      try {
        cfg.scheme = rrbf::parse_scheme(p_scheme);
        cfg.jammer = rrbf::parse_jammer_kind(p_jammer);
        cfg.jammer_path = rrbf::parse_jammer_path(p_jpath);
        if (!p_slots.empty()) cfg.jammed_slots = rrbf::parse_slot_list(p_slots);
        cfg.sjr_db = p_sjr;
        cfg.es_n0_db = parse_db(p_esn0);
        cfg.frames = p_frames;
        cfg.segment = segment;
        cfg.seed = p_seed;
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
      }
      rrbf::PsdRun run;
      try {
        run = rrbf::run_psd(cfg);
      } catch (const rrbf::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
      }
      const auto& est = component == "legit" ? run.legit : component == "jammer" ? run.jam : run.received;
      with_output(p_out, [&](std::ostream& o) { rrbf::write_psd_csv(o, est); });
      return kExitOk;
    }

    if (validate->parsed()) {
      const bool ok = rrbf::report_validation(rrbf::run_validation(v_seed), std::cout);
      return ok ? kExitOk : kExitRuntime;
    }
  } catch (const rrbf::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
