// Prints one line per acceptance criterion and exits 1 if any of them fails.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "../property/properties.hpp"
#include "nrlat/calibration.hpp"
#include "nrlat/compliance.hpp"
#include "nrlat/cp_model.hpp"
#include "nrlat/report.hpp"
#include "nrlat/timeline_oracle.hpp"
#include "nrlat/up_model.hpp"

using namespace nrlat;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail.clear();
    if (!detail.empty()) detail += "; ";
    detail += what;
    pass = false;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string ms2(double ms) { return format_significant(Ticks{std::llround(ms * kTicksPerMs)}); }

// DL, CG and SR (14/7 os) first transmissions of the FDD table, plus the DL
// 15 kHz slot and 7-symbol retransmission rows.
std::vector<GoldenCell> anchor_cells() {
  std::vector<GoldenCell> out;
  for (const auto& c : builtin_golden("up-fdd").cells) {
    const bool first = c.retx == 0 && (*c.mode != LinkMode::ul_sr || c.tti >= 7);
    const bool delta = *c.mode == LinkMode::dl && c.scs_khz == 15 && c.tti >= 7;
    if (first || delta) out.push_back(c);
  }
  return out;
}

UpScenario scenario_of(const GoldenCell& c) {
  return UpScenario::make(*c.mode, Numerology::from_khz(c.scs_khz), TtiConfig(c.tti),
                          DuplexConfig::from_name(c.duplex), c.retx);
}

Outcome criterion1() {
  Outcome o;
  struct Row {
    const char* duplex;
    Scs scs;
    int ttis;
  };
  const Row rows[] = {{"fdd", Scs::khz15, 9},           {"fdd", Scs::khz30, 9},
                      {"fdd", Scs::khz120, 14},         {"tdd-uldl", Scs::khz15, 14},
                      {"tdd-uldl", Scs::khz30, 14},     {"tdd-uldl", Scs::khz120, 20},
                      {"tdd-uldldldl", Scs::khz15, 12}, {"tdd-uldldldl", Scs::khz30, 12},
                      {"tdd-uldldldl", Scs::khz120, 26}};
  for (const auto& r : rows) {
    const auto l = build_cp_ledger(DuplexConfig::from_name(r.duplex), Numerology(r.scs));
    o.require(l.total_ttis() == r.ttis && l.total_fixed() == Ticks{6 * kTicksPerMs},
              std::string(r.duplex) + " " + scs_label(r.scs) + ": " + std::to_string(l.total_ttis()) +
                  " TTI + " + format_decimals(l.total_fixed(), 1) + " ms");
  }
  if (o.pass) o.detail = "9 ledgers: 9/14, 14/20, 12/26 TTI + 6 ms";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto r = residual_report(builtin_profile(), {builtin_golden("cp")});
  for (const auto& c : r.cells)
    o.require(c.matched, c.cell.key() + " " + c.computed_printed + " vs " + c.cell.printed);
  if (o.pass) o.detail = std::to_string(r.matched) + "/" + std::to_string(r.total()) + " cells";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto p = default_profile();
  int n = 0;
  for (const auto& c : anchor_cells()) {
    if (c.retx != 0) continue;
    ++n;
    const auto t = evaluate_cell(c, p);
    o.require(matches_printed(t, c.printed), c.key() + " " + format_significant(t) + " vs " + c.printed);
  }
  const Numerology n15(Scs::khz15);
  for (auto [tti, delta] : {std::pair{14, 3.0}, std::pair{7, 1.5}}) {
    const auto s = UpScenario::make(LinkMode::dl, n15, TtiConfig(tti));
    const auto rtt = harq_rtt(s, p.processing, p.knobs);
    o.require(rtt == ticks_from_ms(delta), "DL 15 kHz " + std::to_string(tti) + " os retx delta " +
                                               format_decimals(rtt, 3) + " ms");
  }
  if (o.pass) o.detail = std::to_string(n) + " first-Tx cells, retx deltas +3.0/+1.5 ms";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const std::vector<GoldenTable> goldens{builtin_golden("up-fdd"), builtin_golden("up-tdd")};
  const auto fit = calibrate(default_profile(), goldens);
  o.require(fit.total() == 252, "report covers " + std::to_string(fit.total()) + " cells");
  o.require(fit.coverage() >= 0.75, "coverage " + format_fixed(100 * fit.coverage(), 1) + "%");

  const std::string dir = NRLAT_SOURCE_DIR "/reports/";
  const auto csv = read_file(dir + "residuals_up.csv");
  const auto md = read_file(dir + "residuals_up.md");
  o.require(csv == render_fit_csv(fit), "reports/residuals_up.csv is stale or missing");
  for (const auto& c : fit.cells)
    if (!c.matched && md.find("| " + c.cell.key() + " |") == std::string::npos) {
      o.require(false, "reports/residuals_up.md does not list " + c.cell.key());
      break;
    }
  if (o.pass)
    o.detail = std::to_string(fit.matched) + "/" + std::to_string(fit.total()) + " matched (" +
               format_fixed(100 * fit.coverage(), 1) + "%), " + std::to_string(fit.mismatched()) +
               " mismatches listed";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto p = default_profile();
  Ticks worst_gap{0};
  int cells = 0;
  for (const auto& c : anchor_cells()) {
    const auto s = scenario_of(c);
    const auto closed = up_latency(s, p).total;
    const auto oracle = worst_case(s, p).worst_case;
    const auto gap = closed > oracle ? closed - oracle : oracle - closed;
    ++cells;
    if (gap > worst_gap) worst_gap = gap;
    o.require(gap <= s.scs.symbol_duration(),
              c.key() + " oracle " + format_decimals(oracle, 4) + " vs closed " + format_decimals(closed, 4));
  }
  const auto st = props::oracle_random(p, 1000, 20181u);
  o.require(st.failure.empty(), st.failure);
  if (o.pass)
    o.detail = std::to_string(cells) + " cells within one symbol (largest gap " +
               format_decimals(worst_gap, 4) + " ms), " + std::to_string(st.scenarios) +
               " random scenarios periodic and dominated";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto v = check(observation_configs(default_profile()), default_requirements());
  std::ostringstream summary;
  for (const auto& x : v) {
    const auto range = ms2(x.obtained_min_ms) + "-" + ms2(x.obtained_max_ms);
    const std::string name = plane_label(x.requirement.plane) + " " + category_label(x.requirement.category);
    summary << (summary.tellp() > 0 ? ", " : "") << name << " " << range << (x.met ? " met" : " not met");
    o.require(x.met, name + " not met");
    if (x.requirement.plane == Plane::up) {
      const auto expected = x.requirement.category == UsageCategory::embb ? "0.86-3.9" : "0.31-0.96";
      o.require(range == expected, name + " obtained " + range + ", expected " + expected);
    } else if (x.requirement.category == UsageCategory::embb) {
      o.require(range == "8.5-20", name + " obtained " + range + ", expected 8.5-20");
    } else {
      o.require(ms2(x.obtained_min_ms) == "6.5", name + " obtained " + range + ", expected to start at 6.5");
    }
  }
  if (o.pass) o.detail = summary.str();
  else o.detail += " [" + summary.str() + "]";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto p = default_profile();
  const std::pair<const char*, std::function<std::string()>> checks[] = {
      {"linearity", [&] { return props::linearity(p); }},
      {"scs scaling", [&] { return props::scs_scaling(p); }},
      {"tdd >= fdd", [&] { return props::tdd_dominance(p); }},
      {"sr >= cg", [&] { return props::sr_dominance(p); }},
      {"monotonicity", [&] { return props::monotonicity(p); }},
      {"determinism", [] { return props::determinism(); }},
  };
  std::string names;
  for (const auto& [name, fn] : checks) {
    const auto r = fn();
    o.require(r.empty(), std::string(name) + ": " + r);
    names += names.empty() ? name : std::string(", ") + name;
  }
  if (o.pass) o.detail = names;
  return o;
}

}  // namespace

int main() {
  const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3, criterion4,
                                               criterion5, criterion6, criterion7};
  int failed = 0;
  for (int i = 0; i < 7; ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("criterion %d: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
