// nrlat: worst-case NR control-plane and user-plane latency tables.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nrlat/calibration.hpp"
#include "nrlat/errors.hpp"
#include "nrlat/report.hpp"

namespace {

using nlohmann::json;

constexpr int kUsageExit = 2;

struct SweepFlags {
  std::string config;
  std::vector<std::string> duplex;
  int phase = -1;
  std::vector<int> scs;
  std::vector<int> tti;
  std::vector<std::string> mode;
  int retx = -1;
  std::string profile;
  std::string overrides;
  std::string format;
  std::string out;
  int resolution = 0;
  bool oracle = false;
  bool check = false;
  bool breakdown = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nrlat::ConfigError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw nrlat::ConfigError("cannot write '" + out + "'");
  f << text;
}

void add_sweep_flags(CLI::App* cmd, SweepFlags& f, bool up) {
  cmd->add_option("--config", f.config, "JSON scenario config; flags override its keys");
  cmd->add_option("--duplex", f.duplex, "fdd, tdd-uldl, tdd-uldldldl")->delimiter(',');
  cmd->add_option("--phase", f.phase, "TDD slot-phase offset");
  cmd->add_option("--scs", f.scs, "Subcarrier spacings in kHz")->delimiter(',');
  cmd->add_option("--tti", f.tti, "TTI lengths in symbols")->delimiter(',');
  cmd->add_option("--format", f.format, "md or csv");
  cmd->add_option("--out", f.out, "Write to a file instead of stdout");
  cmd->add_flag("--check", f.check, "Append compliance verdicts and set the exit code");
  cmd->add_flag("--breakdown", f.breakdown, "Emit the component sum behind every cell");
  if (!up) return;
  cmd->add_option("--mode", f.mode, "dl, sr, cg")->delimiter(',');
  cmd->add_option("--retx", f.retx, "Highest HARQ retransmission count (0..3)");
  cmd->add_option("--profile", f.profile, "Assumption profile JSON");
  cmd->add_option("--override", f.overrides, "JSON object of knob overrides");
  cmd->add_option("--resolution", f.resolution, "Oracle arrival samples per symbol");
  cmd->add_flag("--oracle", f.oracle, "Append oracle cross-check columns");
}

nrlat::ScenarioConfig build_config(const SweepFlags& f, bool up) {
  json j = json::object();
  if (!f.config.empty()) {
    try {
      j = json::parse(read_file(f.config));
    } catch (const json::parse_error& e) {
      throw nrlat::ConfigError(std::string("config syntax error: ") + e.what());
    }
  }
  j["plane"] = up ? "up" : "cp";
  if (!f.duplex.empty()) j["duplex"] = f.duplex;
  if (f.phase >= 0) j["pattern_phase"] = f.phase;
  if (!f.scs.empty()) j["scs"] = f.scs;
  if (!f.tti.empty()) j["tti"] = f.tti;
  if (!f.format.empty()) j["format"] = f.format;
  if (f.check) j["check"] = true;
  if (f.breakdown) j["breakdown"] = true;
  if (up) {
    if (!f.mode.empty()) {
      bool dl = false;
      std::vector<std::string> ul;
      for (const auto& m : f.mode) {
        if (m == "dl") {
          dl = true;
        } else {
          ul.push_back(m);
        }
      }
      j["direction"] = dl && !ul.empty() ? "both" : dl ? "dl" : "ul";
      if (!ul.empty()) j["ul_mode"] = ul;
    }
    if (f.retx >= 0) j["retx_max"] = f.retx;
    if (!f.profile.empty()) j["profile"] = f.profile;
    if (!f.overrides.empty()) {
      try {
        j["overrides"] = json::parse(f.overrides);
      } catch (const json::parse_error& e) {
        throw nrlat::ConfigError(std::string("--override: ") + e.what());
      }
    }
    if (f.resolution > 0) j["oracle_resolution"] = f.resolution;
    if (f.oracle) j["oracle"] = true;
  }
  return nrlat::parse_config(j.dump());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worst-case 5G NR radio-interface latency evaluation"};
  app.require_subcommand(1);

  SweepFlags cp_flags, up_flags;
  auto* cp = app.add_subcommand("cp", "Control-plane latency tables");
  add_sweep_flags(cp, cp_flags, false);
  auto* up = app.add_subcommand("up", "User-plane latency tables");
  add_sweep_flags(up, up_flags, true);

  auto* oracle = app.add_subcommand("oracle", "Brute-force worst case for one scenario");
  std::string o_duplex = "fdd", o_mode = "dl", o_format = "md", o_out, o_profile, o_offsets;
  int o_scs = 15, o_tti = 14, o_retx = 0, o_phase = 0, o_res = 4;
  double o_dl_margin = 1, o_ul_margin = 0;
  bool o_quantize = false;
  oracle->add_option("--duplex", o_duplex, "fdd, tdd-uldl, tdd-uldldldl");
  oracle->add_option("--phase", o_phase, "TDD slot-phase offset");
  oracle->add_option("--scs", o_scs, "Subcarrier spacing in kHz");
  oracle->add_option("--tti", o_tti, "TTI length in symbols");
  oracle->add_option("--mode", o_mode, "dl, sr, cg");
  oracle->add_option("--retx", o_retx, "HARQ retransmissions (0..3)");
  oracle->add_option("--profile", o_profile, "Assumption profile JSON");
  oracle->add_option("--resolution", o_res, "Arrival samples per symbol");
  oracle->add_option("--dl-margin", o_dl_margin, "Symbols required before a DL data occasion");
  oracle->add_option("--ul-margin", o_ul_margin, "Symbols required before an UL data occasion");
  oracle->add_flag("--quantize", o_quantize, "Sample arrivals at symbol boundaries only");
  oracle->add_option("--offsets", o_offsets, "Write the latency-vs-offset profile as CSV");
  oracle->add_option("--format", o_format, "md or csv");
  oracle->add_option("--out", o_out, "Write to a file instead of stdout");

  auto* calibrate = app.add_subcommand("calibrate", "Fit knobs against the published tables");
  std::string c_profile, c_format = "md", c_out, c_write;
  bool c_no_fit = false;
  calibrate->add_option("--profile", c_profile, "Starting assumption profile JSON");
  calibrate->add_flag("--no-fit", c_no_fit, "Report residuals of the profile as is");
  calibrate->add_option("--format", c_format, "md or csv");
  calibrate->add_option("--out", c_out, "Write to a file instead of stdout");
  calibrate->add_option("--write-profile", c_write, "Save the fitted profile as JSON");

  auto* chk = app.add_subcommand("check", "Compliance against the IMT-2020 latency requirements");
  std::string k_profile, k_format = "md", k_out;
  bool k_strict = false;
  chk->add_option("--profile", k_profile, "Assumption profile JSON");
  chk->add_flag("--strict", k_strict, "Require every evaluated configuration to pass");
  chk->add_option("--format", k_format, "md or csv");
  chk->add_option("--out", k_out, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  }

  try {
    if (cp->parsed() || up->parsed()) {
      const bool is_up = up->parsed();
      const auto& flags = is_up ? up_flags : cp_flags;
      const auto report = nrlat::run(build_config(flags, is_up));
      emit(report.text, flags.out);
      return report.exit_code;
    }
    if (oracle->parsed()) {
      const auto profile = o_profile.empty() ? nrlat::default_profile() : nrlat::load_profile(o_profile);
      const auto s = nrlat::UpScenario::make(
          nrlat::mode_from_name(o_mode), nrlat::Numerology::from_khz(o_scs), nrlat::TtiConfig{o_tti},
          nrlat::DuplexConfig::from_name(o_duplex, o_phase), o_retx);
      nrlat::OracleOptions opt;
      opt.resolution = o_res;
      opt.dl_dispatch_margin_os = o_dl_margin;
      opt.ul_dispatch_margin_os = o_ul_margin;
      opt.quantize_arrivals = o_quantize;
      opt.keep_profile = !o_offsets.empty();
      const auto r = nrlat::worst_case(s, profile, opt);
      std::string text = nrlat::render_trace(r, nrlat::format_from_name(o_format));
      const auto closed = nrlat::up_latency(s, profile).total;
      if (nrlat::format_from_name(o_format) == nrlat::Format::markdown)
        text += "closed form " + nrlat::format_decimals(closed, 4) + " ms\n";
      emit(text, o_out);
      if (!o_offsets.empty()) emit(nrlat::render_offsets(r), o_offsets);
      return 0;
    }
    if (calibrate->parsed()) {
      const auto base = c_profile.empty() ? nrlat::default_profile() : nrlat::load_profile(c_profile);
      const auto goldens = std::vector<nrlat::GoldenTable>{nrlat::builtin_golden("up-fdd"),
                                                           nrlat::builtin_golden("up-tdd")};
      const auto fit = c_no_fit ? nrlat::residual_report(base, goldens) : nrlat::calibrate(base, goldens);
      const auto fmt = nrlat::format_from_name(c_format);
      emit(fmt == nrlat::Format::csv ? nrlat::render_fit_csv(fit)
                                     : nrlat::render_fit_markdown(fit, "UP residual report"),
           c_out);
      if (!c_write.empty()) {
        auto fitted = base;
        fitted.knobs = fit.knobs;
        emit(nrlat::profile_to_json(fitted), c_write);
      }
      return 0;
    }
    if (chk->parsed()) {
      const auto profile = k_profile.empty() ? nrlat::default_profile() : nrlat::load_profile(k_profile);
      const auto verdicts =
          nrlat::check(nrlat::observation_configs(profile), nrlat::default_requirements(),
                       k_strict ? nrlat::MetSemantics::strict : nrlat::MetSemantics::existential);
      emit(nrlat::render_verdicts(verdicts, nrlat::format_from_name(k_format)), k_out);
      for (const auto& v : verdicts)
        if (!v.met) return 1;
      return 0;
    }
  } catch (const nrlat::ConfigError& e) {
    std::cerr << "nrlat: " << e.what() << '\n';
    return kUsageExit;
  } catch (const nrlat::UsageError& e) {
    std::cerr << "nrlat: " << e.what() << '\n';
    return kUsageExit;
  }
  return kUsageExit;
}
