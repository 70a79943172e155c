// Command-line surface for the library: closed-form spectrum tables, band
// powers, infrared classification, the synthesize/estimate/fit pipeline and
// the turbulence exponent bounds, emitted as CSV or JSON for plotting
// pipelines.
//
// Exit codes: 0 ok, 2 invalid input, 3 divergent or inadmissible result,
// 4 numerical non-convergence.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "onef/onef.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitDivergent = 3;
constexpr int kExitNoConvergence = 4;

// 17 significant digits: enough for exact double round trips.
std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;

  static GridSpec parse(const std::string& text) {
    GridSpec g;
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos)
      throw std::invalid_argument("grid spec must be lo:hi:count, got '" + text + "'");
    std::size_t used = 0;
    g.lo = std::stod(text.substr(0, first), &used);
    g.hi = std::stod(text.substr(first + 1, second - first - 1), &used);
    g.count = std::stoi(text.substr(second + 1), &used);
    return g;
  }
};

// Frequency grid from the --flog/--flin pair; exactly one must be given
// unless a default spec is provided.
std::vector<double> frequency_grid(const std::string& flog, const std::string& flin,
                                   const std::string& fallback_log) {
  if (!flog.empty() && !flin.empty())
    throw std::invalid_argument("give either --flog or --flin, not both");
  if (flog.empty() && flin.empty() && fallback_log.empty())
    throw std::invalid_argument("a frequency grid is required: --flog lo:hi:count or --flin lo:hi:count");
  if (!flin.empty()) {
    const GridSpec g = GridSpec::parse(flin);
    return onef::linspace(g.lo, g.hi, g.count);
  }
  const GridSpec g = GridSpec::parse(flog.empty() ? fallback_log : flog);
  return onef::logspace(g.lo, g.hi, g.count);
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::invalid_argument("cannot open output file '" + out_path + "'");
  f << text;
}

// Scalar JSON reports rendered as CSV: dotted keys in (alphabetical) object
// order, one header row and one value row.
void flatten_json(const json& j, const std::string& prefix,
                  std::vector<std::pair<std::string, std::string>>& cells) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      flatten_json(value, prefix.empty() ? key : prefix + "." + key, cells);
    return;
  }
  std::string text;
  if (j.is_number_float()) {
    text = fmt_double(j.get<double>());
  } else if (j.is_boolean()) {
    text = j.get<bool>() ? "true" : "false";
  } else if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_null()) {
    text = "";
  } else {
    text = j.dump();
  }
  cells.emplace_back(prefix, text);
}

std::string render_scalar(const json& j, const std::string& format) {
  if (format == "csv") {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten_json(j, "", cells);
    std::string header, row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) {
        header += ',';
        row += ',';
      }
      header += cells[i].first;
      row += cells[i].second;
    }
    return header + "\n" + row + "\n";
  }
  return j.dump(2) + "\n";
}

struct ModelFlags {
  double i0 = 1.0;
  double alpha0 = 1.0;
  double y = 0.0;
  double duration = 0.0;
  bool infinite = false;

  onef::DissipationParams params() const { return {i0, alpha0, y}; }
  onef::FiniteSignalModel model() const { return {params(), duration}; }
};

void add_model_flags(CLI::App* sub, ModelFlags& mf, bool with_duration) {
  sub->add_option("--i0", mf.i0, "initial power i0 > 0")->capture_default_str();
  sub->add_option("--alpha0", mf.alpha0, "attenuation scale alpha0 > 0")->capture_default_str();
  sub->add_option("--y", mf.y, "attenuation exponent y in [0, 2]")->required();
  if (with_duration) sub->add_option("--duration", mf.duration, "signal duration T > 0");
}

int run_eval(const ModelFlags& mf, const std::string& flog, const std::string& flin,
             const std::string& format, const std::string& out) {
  const onef::FiniteSignalModel model = mf.model();
  const std::vector<double> freqs = frequency_grid(flog, flin, "");

  if (format == "json") {
    json rows = json::array();
    for (double f : freqs) {
      const onef::SpectrumValue inf_value = onef::psd_infinite(model.params(), f);
      json row;
      row["f"] = f;
      row["psd_finite"] = onef::psd_finite(model, f);
      if (inf_value.is_infinite())
        row["psd_infinite"] = "inf";
      else
        row["psd_infinite"] = inf_value.power;
      row["r"] = onef::augmented_r(model, f);
      rows.push_back(row);
    }
    write_output(rows.dump(2) + "\n", out);
    return kExitOk;
  }

  std::string text = "f,psd_finite,psd_infinite,r\n";
  for (double f : freqs) {
    const onef::SpectrumValue inf_value = onef::psd_infinite(model.params(), f);
    text += fmt_double(f) + ',' + fmt_double(onef::psd_finite(model, f)) + ',' +
            fmt_double(inf_value.power) + ',' + fmt_double(onef::augmented_r(model, f)) + '\n';
  }
  write_output(text, out);
  return kExitOk;
}

int run_band(const ModelFlags& mf, double f_lo, double f_hi, double tol,
             const std::string& format, const std::string& out) {
  const onef::Band band(f_lo, f_hi);
  json report;
  report["band"]["f_lo"] = band.f_lo();
  report["band"]["f_hi"] = band.f_hi();
  report["mode"] = mf.infinite ? "infinite" : "finite";

  if (mf.infinite) {
    const onef::BandPower bp = onef::band_power_infinite(mf.params(), band);
    if (bp.is_divergent()) {
      report["result"] = "divergent";
      write_output(render_scalar(report, format), out);
      return kExitDivergent;
    }
    report["result"]["finite"] = bp.value();
    report["result"]["error"] = bp.error_estimate();
    write_output(render_scalar(report, format), out);
    return kExitOk;
  }

  try {
    const onef::BandPower bp = onef::band_power_finite(mf.model(), band, tol);
    report["result"]["finite"] = bp.value();
    report["result"]["error"] = bp.error_estimate();
  } catch (const onef::ConvergenceError& e) {
    report["error"] = e.what();
    report["result"]["best_estimate"] = e.best_estimate();
    report["result"]["error_estimate"] = e.error_estimate();
    write_output(render_scalar(report, format), out);
    return kExitNoConvergence;
  }
  write_output(render_scalar(report, format), out);
  return kExitOk;
}

int run_classify(const ModelFlags& mf, const std::string& format, const std::string& out) {
  json report;
  onef::Classification cls;
  if (mf.infinite) {
    cls = onef::classify_infrared(mf.params());
    report["duration"] = "infinite";
  } else {
    cls = onef::classify_infrared(mf.model());
    report["duration"] = mf.duration;
  }
  report["classification"] =
      cls == onef::Classification::divergent ? "divergent" : "convergent";
  report["y"] = mf.y;
  write_output(render_scalar(report, format), out);
  return cls == onef::Classification::divergent ? kExitDivergent : kExitOk;
}

int run_synth_fit(const ModelFlags& mf, const std::string& flog, const std::string& flin,
                  double noise, std::uint64_t seed, const std::string& format,
                  const std::string& out) {
  const onef::FiniteSignalModel model = mf.model();
  const std::vector<double> freqs = frequency_grid(flog, flin, "1e-3:1e1:50");
  const std::vector<double> times = onef::linspace(0.0, model.duration(), (1 << 14) + 1);

  const onef::EnvelopeGrid grid = onef::synthesize_grid(model, freqs, times, noise, seed);
  const onef::SpectrumSamples samples = onef::estimate_psd(grid);
  const onef::FitResult fit = onef::fit_spectrum(samples);

  json report;
  report["canonical"]["A"] = fit.params.a();
  report["canonical"]["B"] = fit.params.b();
  report["canonical"]["y"] = fit.params.y();
  report["residual"] = fit.residual;
  report["converged"] = fit.converged;
  report["seed"] = seed;
  write_output(render_scalar(report, format), out);
  return kExitOk;
}

int run_turb(const CLI::App* sub, double c, double dimension, const std::string& format,
             const std::string& out) {
  const bool has_c = sub->count("--c") > 0;
  const bool has_d = sub->count("--dimension") > 0;
  if (has_c == has_d)
    throw std::invalid_argument("give exactly one of --c or --dimension");

  onef::TurbulenceExponent e =
      has_c ? onef::beta_from_correction(c) : onef::exponent_from_dimension(dimension);
  if (has_c && c < onef::kMaxCorrection) e.dimension = onef::dimension_from_correction(c);

  json report;
  report["admissible"] = e.admissible;
  report["beta"] = e.beta;
  report["c"] = e.c;
  if (e.dimension)
    report["d"] = *e.dimension;
  else
    report["d"] = nullptr;
  write_output(render_scalar(report, format), out);
  return e.admissible ? kExitOk : kExitDivergent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dissipative 1/f power spectrum toolkit"};
  app.require_subcommand(1);
  app.failure_message([](const CLI::App*, const CLI::Error& e) {
    return std::string("error: ") + e.what() + "\n";
  });

  std::string flog, flin, format, out;
  double f_lo = 0.0, f_hi = 0.0, tol = 1e-9, noise = 0.0;
  double turb_c = 0.0, turb_dim = 0.0;
  std::uint64_t seed = 0;

  ModelFlags ev, bd, cl, sf;

  CLI::App* eval = app.add_subcommand("eval", "tabulate psd_finite, psd_infinite and R over a grid");
  add_model_flags(eval, ev, true);
  eval->get_option("--duration")->required();
  eval->add_option("--flog", flog, "log-spaced frequency grid lo:hi:count");
  eval->add_option("--flin", flin, "linearly spaced frequency grid lo:hi:count");
  eval->add_option("--format", format, "output format: csv (default) or json");
  eval->add_option("--out", out, "output path (default: stdout)");

  CLI::App* band = app.add_subcommand("band", "band-integrated spectrum power");
  add_model_flags(band, bd, true);
  band->add_flag("--infinite", bd.infinite, "infinite signal duration");
  band->add_option("--flo", f_lo, "band lower edge")->required();
  band->add_option("--fhi", f_hi, "band upper edge")->required();
  band->add_option("--tol", tol, "relative quadrature tolerance")->capture_default_str();
  band->add_option("--format", format, "output format: json (default) or csv");
  band->add_option("--out", out, "output path (default: stdout)");

  CLI::App* classify = app.add_subcommand("classify", "infrared-catastrophe classification");
  add_model_flags(classify, cl, true);
  classify->add_flag("--infinite", cl.infinite, "infinite signal duration");
  classify->add_option("--format", format, "output format: json (default) or csv");
  classify->add_option("--out", out, "output path (default: stdout)");

  CLI::App* synth = app.add_subcommand("synth-fit", "synthesize a grid, estimate the spectrum, fit (A, B, y)");
  add_model_flags(synth, sf, true);
  synth->get_option("--duration")->required();
  synth->add_option("--flog", flog, "log-spaced frequency grid lo:hi:count (default 1e-3:1e1:50)");
  synth->add_option("--flin", flin, "linearly spaced frequency grid lo:hi:count");
  synth->add_option("--noise", noise, "lognormal noise level sigma >= 0")->capture_default_str();
  synth->add_option("--seed", seed, "RNG seed")->capture_default_str();
  synth->add_option("--format", format, "output format: json (default) or csv");
  synth->add_option("--out", out, "output path (default: stdout)");

  CLI::App* turb = app.add_subcommand("turb", "turbulence exponent bounds");
  turb->add_option("--c", turb_c, "intermittency correction c >= 0");
  turb->add_option("--dimension", turb_dim, "fractal dimension D in (2, 3]");
  turb->add_option("--format", format, "output format: json (default) or csv");
  turb->add_option("--out", out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (!format.empty() && format != "csv" && format != "json")
      throw std::invalid_argument("--format must be csv or json");

    if (app.got_subcommand(eval))
      return run_eval(ev, flog, flin, format.empty() ? "csv" : format, out);
    if (app.got_subcommand(band)) {
      if (bd.infinite == (band->count("--duration") > 0))
        throw std::invalid_argument("give exactly one of --duration or --infinite");
      return run_band(bd, f_lo, f_hi, tol, format.empty() ? "json" : format, out);
    }
    if (app.got_subcommand(classify)) {
      if (cl.infinite == (classify->count("--duration") > 0))
        throw std::invalid_argument("give exactly one of --duration or --infinite");
      return run_classify(cl, format.empty() ? "json" : format, out);
    }
    if (app.got_subcommand(synth))
      return run_synth_fit(sf, flog, flin, noise, seed, format.empty() ? "json" : format, out);
    if (app.got_subcommand(turb))
      return run_turb(turb, turb_c, turb_dim, format.empty() ? "json" : format, out);
  } catch (const onef::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
