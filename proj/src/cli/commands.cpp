#include "cli/commands.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cli/manifest.hpp"
#include "qswap/amplitudes.hpp"
#include "qswap/config_io.hpp"

namespace qswap::cli {

using nlohmann::json;

namespace {

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const DegenerateConfigurationError& e) {
    err << "numerical degeneracy: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

std::vector<double> rounded(const std::vector<double>& v) {
  std::vector<double> out;
  for (double x : v) out.push_back(round15(x));
  return out;
}

// Writes `contents` to `path` (or `fallback` when path is empty) and the
// manifest next to it.
void emit(const std::string& path, const std::string& contents, const RunManifest& manifest,
          std::ostream& fallback) {
  if (path.empty()) {
    fallback << contents;
    return;
  }
  write_atomic(path, contents);
  write_atomic(path + ".manifest.json", manifest.to_json().dump(2) + "\n");
}

json report_json(const FidelityReport& r) {
  json j;
  j["fidelity"] = round15(r.fidelity);
  j["process_fidelity"] = round15(r.process_fidelity);
  j["optimal_phase"] = round15(r.optimal_phase);
  j["target_unitary"] = r.target_unitary;
  j["bystanders"] = json::array();
  for (const auto& b : r.bystanders) {
    j["bystanders"].push_back({{"qubit", b.qubit}, {"choi_distance", round15(b.choi_distance)}});
  }
  return j;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(15) << x;
  return os.str();
}

}  // namespace

Grid parse_grid(const std::string& text) {
  std::istringstream in(text);
  Grid g;
  char c1 = 0, c2 = 0;
  if (!(in >> g.start >> c1 >> g.stop >> c2 >> g.count) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
    throw InputError("grid must look like START:STOP:COUNT, got '" + text + "'");
  }
  if (g.count < 1) throw InputError("grid COUNT must be positive");
  return g;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InputError("not an integer list: '" + text + "'");
    }
    if (used != item.size()) throw InputError("not an integer list: '" + text + "'");
    out.push_back(value);
  }
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

int cmd_design(const DesignOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.kd_a.has_value() == opt.g0.has_value()) throw InputError("design: give exactly one of --kd-a and --g0");
    double kd_a = 0.0;
    json inputs{{"N", opt.n_static}, {"target", opt.target}, {"windings", opt.windings}};
    if (opt.g0) {
      const std::vector<double> roots = g_tilde_roots(*opt.g0);
      if (opt.root < 0 || opt.root >= static_cast<int>(roots.size())) {
        throw InputError("design: --root must be in [0, " + std::to_string(roots.size() - 1) + "]");
      }
      err << "g0 = " << fmt(*opt.g0) << " has " << roots.size() << " root(s) in (0, pi):";
      for (double r : roots) err << ' ' << fmt(r);
      err << "; using kd_a = " << fmt(roots[static_cast<std::size_t>(opt.root)]) << '\n';
      kd_a = roots[static_cast<std::size_t>(opt.root)];
      inputs["g0"] = *opt.g0;
      inputs["root"] = opt.root;
    } else {
      kd_a = *opt.kd_a;
      inputs["kd_a"] = kd_a;
    }
    RegisterConfig config = design_register(opt.n_static, opt.target, kd_a, opt.windings);
    config.kd = rounded(config.kd);
    config.g = round15(config.g);

    err << "g = " << fmt(config.g) << ", kd =";
    for (double kd : config.kd) err << ' ' << fmt(kd);
    err << '\n';

    RunManifest manifest = make_manifest("design", inputs);
    if (!opt.out.empty()) manifest.outputs = {opt.out};
    json doc = json::parse(config_to_json(config));
    doc["manifest"] = manifest.hash();
    emit(opt.out, doc.dump(2) + "\n", manifest, out);
    return kExitOk;
  });
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RegisterConfig config = load_config(opt.config);
    const FidelityReport report = verify_swap(config);
    const bool ok = report.fidelity >= 1.0 - kVerifyTolerance;

    out << "target " << report.target_unitary << '\n'
        << "fidelity " << std::fixed << std::setprecision(12) << report.fidelity << '\n'
        << "process_fidelity " << report.process_fidelity << '\n'
        << "optimal_phase " << report.optimal_phase << '\n';
    for (const auto& b : report.bystanders) {
      out << "bystander SQ_" << b.qubit << " choi_distance " << std::scientific << std::setprecision(3)
          << b.choi_distance << std::fixed << '\n';
    }
    out << (ok ? "PASS" : "FAIL") << '\n';
    out.unsetf(std::ios::floatfield);

    if (!opt.out.empty()) {
      RunManifest manifest = make_manifest("verify", {{"config", opt.config}});
      manifest.outputs = {opt.out};
      json doc = report_json(report);
      doc["schema_version"] = "v1";
      doc["passed"] = ok;
      doc["manifest"] = manifest.hash();
      emit(opt.out, doc.dump(2) + "\n", manifest, out);
    }
    return ok ? kExitOk : kExitVerificationFailed;
  });
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<DesignSample> rows = sweep_design_functions(opt.grid.points());
    RunManifest manifest = make_manifest(
        "sweep", {{"grid", {{"start", opt.grid.start}, {"stop", opt.grid.stop}, {"count", opt.grid.count}}}});
    if (!opt.out.empty()) manifest.outputs = {opt.out};
    std::ostringstream csv;
    csv << "# manifest=" << manifest.hash() << '\n' << "kd,g_tilde,h\n" << std::setprecision(15);
    for (const auto& r : rows) csv << r.kd << ',' << r.g_tilde << ',' << r.h << '\n';
    emit(opt.out, csv.str(), manifest, out);
    return kExitOk;
  });
}

int cmd_disorder(const DisorderOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RegisterConfig config = load_config(opt.config);
    const DisorderResult result = disorder_trials(config, opt.spec, opt.threads);

    json inputs{{"config", opt.config}, {"sigma_rel", opt.spec.sigma_rel}, {"trials", opt.spec.trials}};
    if (opt.spec.sigma_abs) inputs["sigma_abs"] = *opt.spec.sigma_abs;
    RunManifest manifest = make_manifest("disorder", inputs, opt.spec.seed);
    if (!opt.out.empty()) manifest.outputs.push_back(opt.out);
    if (!opt.summary.empty()) manifest.outputs.push_back(opt.summary);
    const std::string hash = manifest.hash();

    if (!opt.out.empty()) {
      std::ostringstream csv;
      csv << "# manifest=" << hash << '\n' << "trial";
      for (int i = 1; i <= config.n_static; ++i) csv << ",x" << i;
      csv << ",process_fidelity,resamples,rejected\n" << std::setprecision(15);
      for (const auto& t : result.trials) {
        csv << t.trial;
        for (double x : t.positions) csv << ',' << x;
        csv << ',' << t.fidelity << ',' << t.resamples << ',' << (t.rejected ? 1 : 0) << '\n';
      }
      emit(opt.out, csv.str(), manifest, out);
    }

    const FidelityStats& s = result.stats;
    json summary{{"schema_version", "v1"},
                 {"manifest", hash},
                 {"metric", "process_fidelity"},
                 {"mean", round15(s.mean)},
                 {"std", round15(s.std)},
                 {"min", round15(s.min)},
                 {"accepted_trials", s.accepted_trials},
                 {"rejected_trials", s.rejected_trials},
                 {"resampled_draws", s.resampled_draws}};
    json q = json::object();
    for (std::size_t i = 0; i < s.quantiles.size(); ++i) {
      std::ostringstream key;
      key << "q" << std::setw(2) << std::setfill('0') << std::lround(100 * kQuantileLevels[i]);
      q[key.str()] = round15(s.quantiles[i]);
    }
    summary["quantiles"] = q;
    emit(opt.summary, summary.dump(2) + "\n", manifest, out);
    return kExitOk;
  });
}

int cmd_wavepacket(const WavepacketOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RegisterConfig config = load_config(opt.config);
    const double f = wavepacket_fidelity(config, opt.bandwidth, opt.samples);
    RunManifest manifest = make_manifest(
        "wavepacket", {{"config", opt.config}, {"bandwidth", opt.bandwidth}, {"samples", opt.samples}});
    if (!opt.out.empty()) manifest.outputs = {opt.out};
    json doc{{"schema_version", "v1"},
             {"manifest", manifest.hash()},
             {"rel_bandwidth", opt.bandwidth},
             {"samples", opt.samples},
             {"process_fidelity", round15(f)}};
    emit(opt.out, doc.dump(2) + "\n", manifest, out);
    return kExitOk;
  });
}

int cmd_scatter(const ScatterOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RegisterConfig config = load_config(opt.config);
    const SpinOperatorSet ops = build_spin_operators(config.n_static + 1);
    const ChannelOperators channel = solve(build_problem(config, ops, opt.k));
    RunManifest manifest = make_manifest("scatter", {{"config", opt.config}, {"k", opt.k}});
    if (!opt.out.empty()) manifest.outputs = {opt.out};
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < channel.R.rows(); ++r) {
      json row_re = json::array(), row_im = json::array();
      for (Eigen::Index c = 0; c < channel.R.cols(); ++c) {
        row_re.push_back(round15(channel.R(r, c).real()));
        row_im.push_back(round15(channel.R(r, c).imag()));
      }
      re.push_back(row_re);
      im.push_back(row_im);
    }
    json doc{{"schema_version", "v1"},
             {"manifest", manifest.hash()},
             {"k", opt.k},
             {"dimension", channel.R.rows()},
             {"flux_defect", round15(flux_defect(channel))},
             {"R_real", re},
             {"R_imag", im}};
    emit(opt.out, doc.dump(2) + "\n", manifest, out);
    return kExitOk;
  });
}

}  // namespace qswap::cli
