#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>

#include "nrlat/calibration.hpp"
#include "nrlat/errors.hpp"
#include "nrlat/up_model.hpp"

using namespace nrlat;

namespace {

const AssumptionProfile& profile() {
  static const auto p = builtin_profile();
  return p;
}

std::string printed(LinkMode m, Scs s, int tti, DuplexConfig d = DuplexConfig::fdd(), int retx = 0) {
  return format_significant(
      up_latency(UpScenario::make(m, Numerology(s), TtiConfig(tti), d, retx), profile()).total);
}

}  // namespace

TEST_CASE("worked cells") {
  CHECK(printed(LinkMode::dl, Scs::khz30, 7) == "0.91");
  CHECK(printed(LinkMode::ul_cg, Scs::khz15, 14) == "3.4");
  CHECK(printed(LinkMode::ul_sr, Scs::khz15, 7) == "3.0");
  CHECK(printed(LinkMode::dl, Scs::khz30, 14, DuplexConfig::alternating()) == "2.2");
  CHECK(printed(LinkMode::ul_cg, Scs::khz120, 7, DuplexConfig::alternating()) == "0.70");
  CHECK(printed(LinkMode::dl, Scs::khz120, 2) == "0.31");
  CHECK(printed(LinkMode::ul_sr, Scs::khz15, 14, DuplexConfig::fdd(), 3) == "15");
}

TEST_CASE("component sums") {
  const auto r = up_latency(UpScenario::make(LinkMode::dl, Numerology(Scs::khz30), TtiConfig(7)),
                            profile());
  const Ticks sum = std::accumulate(r.components.begin(), r.components.end(), Ticks{0},
                                    [](Ticks a, const Component& c) { return a + c.duration; });
  CHECK(sum == r.total);
  // 7 + 7 + 7 + 4.5 symbols
  CHECK(r.total == Numerology(Scs::khz30).symbols(25.5));

  const auto cg = up_latency(UpScenario::make(LinkMode::ul_cg, Numerology(Scs::khz15), TtiConfig(14)),
                             profile());
  CHECK(cg.total == Numerology(Scs::khz15).symbols(47));
  const auto sr = up_latency(UpScenario::make(LinkMode::ul_sr, Numerology(Scs::khz15), TtiConfig(7)),
                             profile());
  // 1 + 1.5 + 7 + 7 + 5 + 7 + 7 + 7
  CHECK(sr.total == Numerology(Scs::khz15).symbols(42.5));
}

TEST_CASE("retransmission rows") {
  const Numerology n(Scs::khz15);
  for (auto [tti, delta] : {std::pair{14, 3.0}, std::pair{7, 1.5}}) {
    const auto s = UpScenario::make(LinkMode::dl, n, TtiConfig(tti));
    CHECK(to_ms(harq_rtt(s, profile().processing, profile().knobs)) == delta);
  }
  CHECK(printed(LinkMode::dl, Scs::khz15, 14, DuplexConfig::fdd(), 1) == "6.2");
  CHECK(printed(LinkMode::dl, Scs::khz15, 14, DuplexConfig::fdd(), 3) == "12");
  CHECK(printed(LinkMode::dl, Scs::khz15, 7, DuplexConfig::fdd(), 3) == "6.2");
}

TEST_CASE("first-transmission FDD anchors") {
  const auto golden = builtin_golden("up-fdd");
  int dl = 0, cg = 0, sr = 0;
  for (const auto& c : golden.cells) {
    if (c.retx != 0) continue;
    const bool anchor = *c.mode != LinkMode::ul_sr || c.tti >= 7;
    if (!anchor) continue;
    CAPTURE(c.key());
    CHECK(matches_printed(evaluate_cell(c, profile()), c.printed));
    (*c.mode == LinkMode::dl ? dl : *c.mode == LinkMode::ul_cg ? cg : sr)++;
  }
  CHECK(dl == 12);
  CHECK(cg == 12);
  CHECK(sr == 6);
}

TEST_CASE("zero processing and alignment leaves one TTI") {
  ProcessingProfile p;
  for (auto cls : {ScsClass::khz15_30, ScsClass::khz120})
    p.gnb_os[cls] = {{14, 0}, {7, 0}, {4, 0}, {2, 0}};
  p.n1_os = {{15, 0}, {30, 0}, {120, 0}};
  p.n2_os = p.n1_os;
  AssumptionKnobs k = profile().knobs;
  for (int l : {14, 7, 4, 2}) k.dl_alignment_os[l] = 0;
  k.gnb_14os_processing_os = 0;
  for (auto s : kAllScs)
    for (int l : {14, 7, 4, 2}) {
      const auto sc = UpScenario::make(LinkMode::dl, Numerology(s), TtiConfig(l));
      CHECK(up_latency(sc, p, k).total == tti_duration(Numerology(s), TtiConfig(l)));
    }
}

TEST_CASE("scenario validation") {
  const auto tdd2 = UpScenario::make(LinkMode::dl, Numerology(Scs::khz15), TtiConfig(2),
                                     DuplexConfig::alternating());
  CHECK_THROWS_AS(tdd2.validate(), UnsupportedScenario);
  CHECK_THROWS_AS(up_latency(tdd2, profile()), UnsupportedScenario);

  auto bad = UpScenario::make(LinkMode::dl, Numerology(Scs::khz15), TtiConfig(14));
  bad.harq_retx = 4;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.harq_retx = 0;
  bad.ul_mode = UlMode::configured_grant;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("missing knob entry") {
  AssumptionKnobs k = profile().knobs;
  k.dl_alignment_os.erase(4);
  const auto s = UpScenario::make(LinkMode::dl, Numerology(Scs::khz15), TtiConfig(4));
  CHECK_THROWS_WITH_AS(up_latency(s, profile().processing, k), doctest::Contains("dl_alignment_os"),
                       ConfigError);
}

TEST_CASE("mode names") {
  CHECK(mode_from_name("sps") == LinkMode::ul_cg);
  CHECK(mode_from_name("sr") == LinkMode::ul_sr);
  CHECK(mode_label(LinkMode::ul_cg) == "cg");
  CHECK_THROWS_AS(mode_from_name("grant-free"), ConfigError);
}

TEST_CASE("profile round trip") {
  const auto text = profile_to_json(profile());
  const auto again = parse_profile(text);
  CHECK(profile_to_json(again) == text);
  CHECK(again.knobs.provenance.size() == profile().knobs.provenance.size());
  for (const auto& s : knob_specs()) CHECK(profile().knobs.provenance.count(s.name) == 1);
}

TEST_CASE("profile errors are reported together") {
  const auto text = R"({
    "colour": "blue",
    "knobs": {"dl_alignment_os": {"5": 1}, "sr_tx_os": -1, "harq_feedback_os": 0.3}
  })";
  try {
    parse_profile(text);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.problems().size() == 4);
  }
  CHECK_THROWS_AS(parse_profile("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(load_profile("/nonexistent/profile.json"), ConfigError);
}

TEST_CASE("overrides") {
  AssumptionKnobs k = profile().knobs;
  apply_overrides(k, R"({"dl_alignment_os": {"4": 6}, "harq_feedback_os": 2})");
  CHECK(k.dl_alignment_os.at(4) == 6);
  CHECK(k.harq_feedback_os == 2);
  CHECK_THROWS_AS(apply_overrides(k, R"({"no_such_knob": 1})"), ConfigError);
}

TEST_CASE("NRLAT_PROFILE selects the default profile") {
  auto p = profile();
  p.name = "from-env";
  const std::string path = "nrlat_env_profile.json";
  std::ofstream(path) << profile_to_json(p);
  setenv("NRLAT_PROFILE", path.c_str(), 1);
  CHECK(default_profile().name == "from-env");
  unsetenv("NRLAT_PROFILE");
  CHECK(default_profile().name == profile().name);
  std::remove(path.c_str());
}

TEST_CASE("up table order and tags") {
  const auto cells = up_table({LinkMode::dl}, {Numerology(Scs::khz15), Numerology(Scs::khz120)},
                              {TtiConfig(14), TtiConfig(2)}, 1, DuplexConfig::fdd(), profile());
  REQUIRE(cells.size() == 8);
  CHECK(cells[0].result.scenario.harq_retx == 0);
  CHECK(cells[0].result.scenario.scs.khz() == 15);
  CHECK(cells[1].result.scenario.tti.length_os() == 2);
  CHECK(cells[2].result.scenario.scs.khz() == 120);
  CHECK(cells[4].result.scenario.harq_retx == 1);
  CHECK(cells[3].tag == ThresholdTag::urllc_ok);
  CHECK(cells[0].tag == ThresholdTag::embb_ok);
}
