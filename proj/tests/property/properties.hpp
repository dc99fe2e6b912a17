#pragma once

// Property checks shared by the doctest suite and the acceptance binary. Each
// returns an empty string when the property holds, otherwise the first
// counterexample.

#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nrlat/calibration.hpp"
#include "nrlat/report.hpp"
#include "nrlat/timeline_oracle.hpp"
#include "nrlat/up_model.hpp"

namespace nrlat::props {

inline std::vector<DuplexConfig> all_duplexes() {
  return {DuplexConfig::fdd(),      DuplexConfig::alternating(0), DuplexConfig::alternating(1),
          DuplexConfig::dl_heavy(0), DuplexConfig::dl_heavy(1),    DuplexConfig::dl_heavy(2),
          DuplexConfig::dl_heavy(3)};
}

inline std::vector<UpScenario> all_scenarios(int retx) {
  std::vector<UpScenario> out;
  for (const auto& d : all_duplexes())
    for (auto m : kAllModes)
      for (auto s : kAllScs)
        for (int l : kAllTtiLengths) {
          if (d.is_tdd() && l == 2) continue;
          out.push_back(UpScenario::make(m, Numerology(s), TtiConfig(l), d, retx));
        }
  return out;
}

inline std::string fail(const UpScenario& s, const std::string& what) {
  return s.describe() + ": " + what;
}

inline std::string linearity(const AssumptionProfile& p) {
  for (auto s : all_scenarios(0)) {
    const auto base = up_latency(s, p).total;
    const auto rtt = harq_rtt(s, p.processing, p.knobs);
    for (int k = 1; k <= 3; ++k) {
      s.harq_retx = k;
      const auto r = up_latency(s, p);
      if (r.total != base + k * rtt || r.harq_rtt != rtt) return fail(s, "not base + k * rtt");
    }
  }
  return {};
}

// Same symbol counts at every SCS, so only the symbol duration differs.
inline AssumptionProfile scs_uniform(const AssumptionProfile& p) {
  AssumptionProfile u = p;
  u.processing.gnb_os[ScsClass::khz120] = u.processing.gnb_os.at(ScsClass::khz15_30);
  for (int khz : {30, 120}) {
    u.processing.n1_os[khz] = u.processing.n1_os.at(15);
    u.processing.n2_os[khz] = u.processing.n2_os.at(15);
    u.knobs.sr_grant_decode_os[khz] = u.knobs.sr_grant_decode_os.at(15);
  }
  return u;
}

inline std::string scs_scaling(const AssumptionProfile& p) {
  const auto u = scs_uniform(p);
  for (const auto& s : all_scenarios(2)) {
    if (s.scs.scs() != Scs::khz15) continue;
    const auto ref = up_latency(s, u).total;
    for (auto other : {Scs::khz30, Scs::khz120}) {
      auto t = s;
      t.scs = Numerology(other);
      const auto ratio = Numerology(Scs::khz15).symbol_duration() / t.scs.symbol_duration();
      if (up_latency(t, u).total * ratio != ref) return fail(t, "does not scale with the symbol duration");
    }
  }
  return {};
}

inline std::string tdd_dominance(const AssumptionProfile& p) {
  for (int retx = 0; retx <= 3; ++retx)
    for (const auto& s : all_scenarios(retx)) {
      if (!s.duplex.is_tdd()) continue;
      auto f = s;
      f.duplex = DuplexConfig::fdd();
      if (up_latency(s, p).total < up_latency(f, p).total) return fail(s, "below FDD");
    }
  return {};
}

inline std::string sr_dominance(const AssumptionProfile& p) {
  for (int retx = 0; retx <= 3; ++retx)
    for (const auto& s : all_scenarios(retx)) {
      if (s.mode() != LinkMode::ul_sr) continue;
      const auto cg = UpScenario::make(LinkMode::ul_cg, s.scs, s.tti, s.duplex, retx);
      if (up_latency(s, p).total < up_latency(cg, p).total) return fail(s, "below configured grant");
    }
  return {};
}

// Raising any knob or processing entry by half a symbol never lowers a cell,
// and neither does another retransmission.
inline std::string monotonicity(const AssumptionProfile& p) {
  std::vector<std::pair<std::string, AssumptionProfile>> bumped;
  for (const auto& spec : knob_specs()) {
    if (spec.shape == KnobShape::scalar) {
      auto q = p;
      set_knob(q.knobs, spec, std::nullopt, knob_value(p.knobs, spec) + 0.5);
      bumped.emplace_back(spec.name, q);
      continue;
    }
    for (const auto& [key, v] : p.knobs.*(spec.table)) {
      auto q = p;
      set_knob(q.knobs, spec, key, v + 0.5);
      bumped.emplace_back(spec.name + "[" + std::to_string(key) + "]", q);
    }
  }
  for (auto cls : {ScsClass::khz15_30, ScsClass::khz120})
    for (const auto& [key, v] : p.processing.gnb_os.at(cls)) {
      auto q = p;
      q.processing.gnb_os[cls][key] = v + 0.5;
      bumped.emplace_back("gnb_os[" + std::to_string(key) + "]", q);
    }
  for (int khz : {15, 30, 120}) {
    auto q1 = p;
    q1.processing.n1_os[khz] += 0.5;
    bumped.emplace_back("n1_os[" + std::to_string(khz) + "]", q1);
    auto q2 = p;
    q2.processing.n2_os[khz] += 0.5;
    bumped.emplace_back("n2_os[" + std::to_string(khz) + "]", q2);
  }
  for (int retx = 0; retx <= 3; ++retx)
    for (auto s : all_scenarios(retx)) {
      const auto base = up_latency(s, p).total;
      for (const auto& [name, q] : bumped)
        if (up_latency(s, q).total < base) return fail(s, "decreases when " + name + " grows");
      if (retx < 3) {
        s.harq_retx = retx + 1;
        if (up_latency(s, p).total < base) return fail(s, "decreases with another retransmission");
      }
    }
  return {};
}

inline std::string determinism() {
  for (const char* text : {R"({"duplex": ["fdd", "tdd-uldl", "tdd-uldldldl"], "breakdown": true, "check": true})",
                           R"({"plane": "cp", "breakdown": true, "check": true, "format": "csv"})",
                           R"({"scs": [30], "tti": [7], "retx_max": 1, "oracle": true, "format": "csv"})"}) {
    const auto c = parse_config(text);
    if (run(c).text != run(c).text) return std::string("run() differs between calls for ") + text;
  }
  const auto goldens = std::vector<GoldenTable>{builtin_golden("up-fdd"), builtin_golden("up-tdd")};
  const auto p = builtin_profile();
  if (render_fit_csv(calibrate(p, goldens)) != render_fit_csv(calibrate(p, goldens)))
    return "calibration report differs between calls";
  return {};
}

struct OracleStats {
  int scenarios = 0;
  std::string failure;
};

// Random scenario and arrival: shifting the arrival by a hyperperiod leaves the
// latency unchanged, and the worst case dominates the sampled arrival.
inline OracleStats oracle_random(const AssumptionProfile& p, int n, unsigned seed) {
  std::mt19937 rng(seed);
  const auto duplexes = all_duplexes();
  std::map<std::string, Ticks> worst;
  OracleStats st;
  for (int i = 0; i < n; ++i) {
    const auto d = duplexes[std::uniform_int_distribution<std::size_t>(0, duplexes.size() - 1)(rng)];
    const auto m = kAllModes[std::uniform_int_distribution<int>(0, 2)(rng)];
    const auto s = kAllScs[std::uniform_int_distribution<int>(0, 2)(rng)];
    int l = kAllTtiLengths[std::uniform_int_distribution<int>(0, 3)(rng)];
    if (d.is_tdd() && l == 2) l = 4;
    const int retx = std::uniform_int_distribution<int>(0, 3)(rng);
    const auto sc = UpScenario::make(m, Numerology(s), TtiConfig(l), d, retx);
    const auto h = oracle_hyperperiod(sc, p);
    const Ticks off{std::uniform_int_distribution<std::int64_t>(0, h.count() - 1)(rng)};

    const auto a = simulate(sc, off, p).latency();
    const auto b = simulate(sc, off + h, p).latency();
    const auto c = simulate(sc, off + 3 * h, p).latency();
    ++st.scenarios;
    if (a != b || a != c) {
      st.failure = fail(sc, "latency changes after a hyperperiod shift at offset " +
                                std::to_string(off.count()));
      return st;
    }
    const auto key = sc.describe();
    auto it = worst.find(key);
    if (it == worst.end()) it = worst.emplace(key, worst_case(sc, p).worst_case).first;
    if (it->second < a) {
      st.failure = fail(sc, "worst case below the latency at offset " + std::to_string(off.count()));
      return st;
    }
  }
  return st;
}

}  // namespace nrlat::props
