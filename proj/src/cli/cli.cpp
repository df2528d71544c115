#include "ringfwm/cli.hpp"

#include <CLI11.hpp>

#include "commands.hpp"
#include "ringfwm/errors.hpp"

namespace ringfwm {

namespace {

void emit(const Report& report, const std::optional<cli::Path>& path, std::ostream& out) {
  if (path) {
    write_report(report, *path);
  } else {
    out << render_report(report);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Four-wave mixing in micro-ring resonators: simulate, fit, predict, verify."};
  app.name("ringfwm");
  app.require_subcommand(1);

  std::optional<cli::Path> out_path;
  auto add_out = [&](CLI::App* sub, const char* what) { sub->add_option("--out", out_path, what); };

  cli::SimulateSpectrumOptions sim;
  auto* s_sim = app.add_subcommand("simulate-spectrum", "Transmission spectrum of a ring as CSV");
  s_sim->add_option("--ring", sim.ring, "Ring JSON")->required();
  s_sim->add_option("--span-nm", sim.span_nm, "Wavelength span centred on the pump [nm]")->capture_default_str();
  s_sim->add_option("--points", sim.points, "Number of samples")->capture_default_str();
  s_sim->add_option("--center-nm", sim.center_nm, "Span centre [nm] (default: pump wavelength)");
  s_sim->add_option("--noise", sim.noise, "Relative multiplicative noise")->capture_default_str();
  s_sim->add_option("--seed", sim.seed, "Noise seed")->capture_default_str();
  s_sim->add_option("--svg", sim.svg, "Also write an SVG plot");
  add_out(s_sim, "CSV path (default: stdout)");

  cli::FitQOptions fq;
  auto* s_fq = app.add_subcommand("fit-q", "Lorentzian fit of a resonance dip");
  s_fq->add_option("--input", fq.input, "Spectrum CSV")->required();
  s_fq->add_option("--ring", fq.ring, "Ring JSON, to name the fitted comb line");
  s_fq->add_option("--window-nm", fq.window_nm, "Fit only this window around the deepest sample [nm]");
  s_fq->add_option("--svg", fq.svg, "Also write an SVG plot");
  add_out(s_fq, "Report path (default: stdout)");

  cli::FitGammaOptions fg;
  auto* s_fg = app.add_subcommand("fit-gamma", "Nonlinear parameter from a stimulated sweep");
  s_fg->add_option("--input", fg.input, "Stimulated sweep CSV")->required();
  s_fg->add_option("--ring", fg.ring, "Ring JSON")->required();
  s_fg->add_option("--calibration", fg.calibration, "Calibration JSON; the sweep then holds raw readings");
  s_fg->add_option("--pump-cutoff-mw", fg.pump_cutoff_mw, "Exclude records above this pump [mW]")
      ->capture_default_str();
  s_fg->add_option("--bootstrap", fg.bootstrap, "Bootstrap resamples for the uncertainty")->capture_default_str();
  s_fg->add_option("--seed", fg.seed, "Bootstrap seed")->capture_default_str();
  s_fg->add_option("--ring-out", fg.ring_out, "Write the ring JSON with the fitted gamma");
  s_fg->add_option("--svg", fg.svg, "Also write an SVG plot");
  add_out(s_fg, "Report path (default: stdout)");

  cli::PredictOptions pr;
  auto* s_pr = app.add_subcommand("predict", "Idler powers and pair rate, from a model or a measurement");
  s_pr->add_option("--ring", pr.ring, "Ring JSON (model path)");
  s_pr->add_option("--pump-mw", pr.pump_mw, "On-chip pump power [mW]");
  s_pr->add_option("--signal-uw", pr.signal_uw, "On-chip signal power [uW]");
  s_pr->add_option("--stimulated-report", pr.stimulated_report, "Report holding a stimulated idler power");
  s_pr->add_option("--stimulated-idler-pw", pr.stimulated_idler_pw, "Measured stimulated idler power [pW]");
  s_pr->add_option("--q", pr.q, "Loaded quality factor (measurement path)");
  s_pr->add_option("--pump-wavelength-nm", pr.pump_wavelength_nm, "Pump wavelength [nm] (measurement path)");
  add_out(s_pr, "Report path (default: stdout)");

  cli::ScalingReportOptions sc;
  auto* s_sc = app.add_subcommand("scaling-report", "Radius scaling and ratio table across rings");
  s_sc->add_option("--synthetic", sc.synthetic, "Generate the four-ring suite: fixed-q or raw");
  s_sc->add_option("--ring", sc.rings, "Ring JSON, repeated per ring");
  s_sc->add_option("--input", sc.inputs, "Two sweep CSVs per ring, in ring order");
  s_sc->add_option("--calibration", sc.calibration, "Calibration JSON; sweeps then hold raw readings");
  s_sc->add_option("--pump-cutoff-mw", sc.pump_cutoff_mw, "Exclude records above this pump [mW]")
      ->capture_default_str();
  s_sc->add_option("--reference-pump-mw", sc.reference_pump_mw, "Pump power the radius scaling is evaluated at [mW]")
      ->capture_default_str();
  s_sc->add_option("--tolerance", sc.tolerance, "Allowed relative ratio deviation")->capture_default_str();
  s_sc->add_option("--noise", sc.noise, "Relative noise on synthetic sweeps")->capture_default_str();
  s_sc->add_option("--seed", sc.seed, "Synthetic noise seed")->capture_default_str();
  s_sc->add_option("--svg", sc.svg, "Also write an SVG plot");
  add_out(s_sc, "Report path (default: stdout)");

  cli::RatioCheckOptions rc;
  auto* s_rc = app.add_subcommand("ratio-check", "Spontaneous/stimulated ratio against the closed form");
  s_rc->add_option("--input", rc.inputs, "Stimulated and spontaneous sweep CSVs (any order)")->required();
  s_rc->add_option("--ring", rc.ring, "Ring JSON")->required();
  s_rc->add_option("--calibration", rc.calibration, "Calibration JSON; sweeps then hold raw readings");
  s_rc->add_option("--pump-cutoff-mw", rc.pump_cutoff_mw, "Exclude records above this pump [mW]")
      ->capture_default_str();
  s_rc->add_option("--tolerance", rc.tolerance, "Allowed |mean deviation|")->capture_default_str();
  s_rc->add_option("--svg", rc.svg, "Also write an SVG plot");
  add_out(s_rc, "Report path (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::optional<Report> report;
    if (s_sim->parsed()) {
      sim.out = out_path;
      cli::simulate_spectrum(sim, out);
      return kExitOk;
    }
    if (s_fq->parsed()) report = cli::fit_q(fq);
    if (s_fg->parsed()) report = cli::fit_gamma(fg);
    if (s_pr->parsed()) report = cli::predict(pr);
    if (s_sc->parsed()) report = cli::scaling_report(sc);
    if (s_rc->parsed()) report = cli::ratio_check(rc);
    emit(*report, out_path, out);
    for (const auto& w : report->warnings) err << "warning: " << w << '\n';
    for (const auto& v : report->verdicts) {
      if (!v.passed) err << "FAIL " << v.name << ": " << v.detail << '\n';
    }
    return report->all_passed() ? kExitOk : kExitVerdictFailed;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FitError& e) {
    err << "fit failed: " << e.what() << '\n';
    return kExitFitFailed;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidData;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidData;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidData;
  }
}

}  // namespace ringfwm
