#include "doctest.h"

#include "nrlat/cp_model.hpp"
#include "properties.hpp"

using namespace nrlat;

namespace {

const AssumptionProfile& profile() {
  static const auto p = builtin_profile();
  return p;
}

}  // namespace

TEST_CASE("retransmission linearity") { CHECK(props::linearity(profile()) == ""); }

TEST_CASE("SCS scaling") { CHECK(props::scs_scaling(profile()) == ""); }

TEST_CASE("TDD never beats FDD") { CHECK(props::tdd_dominance(profile()) == ""); }

TEST_CASE("SR never beats configured grant") { CHECK(props::sr_dominance(profile()) == ""); }

TEST_CASE("monotonic in knobs, processing and retransmissions") {
  CHECK(props::monotonicity(profile()) == "");
}

TEST_CASE("deterministic output") { CHECK(props::determinism() == ""); }

TEST_CASE("oracle periodicity and dominance") {
  const auto st = props::oracle_random(profile(), 1000, 20181u);
  CHECK(st.failure == "");
  CHECK(st.scenarios == 1000);
}

TEST_CASE("component sums") {
  for (int retx = 0; retx <= 3; ++retx)
    for (const auto& s : props::all_scenarios(retx)) {
      const auto r = up_latency(s, profile());
      Ticks sum{0};
      for (const auto& c : r.components) {
        CHECK(c.duration >= Ticks{0});
        sum += c.duration;
      }
      CHECK(sum == r.total);
    }
}

TEST_CASE("oracle trace conservation") {
  for (const auto& s : props::all_scenarios(1)) {
    const auto r = worst_case(s, profile());
    Ticks sum{0};
    for (const auto& e : r.trace) sum += e.end - e.start;
    CHECK(sum == r.worst_case);
  }
}

TEST_CASE("oracle resolution 4 and 16 agree") {
  OracleOptions fine;
  fine.resolution = 16;
  for (const auto& s : props::all_scenarios(0)) {
    if (s.duplex.phase() != 0) continue;
    const auto a = worst_case(s, profile()).worst_case;
    const auto b = worst_case(s, profile(), fine).worst_case;
    CAPTURE(s.describe());
    CHECK(b >= a);
    CHECK((b - a) < s.scs.symbol_duration() / 4);
  }
}

TEST_CASE("next opportunity is monotonic and periodic") {
  for (const auto& d : props::all_duplexes())
    for (auto s : kAllScs)
      for (int l : kAllTtiLengths) {
        if (d.is_tdd() && l == 2) continue;
        const Numerology n(s);
        const auto grid = occasions_for(TtiConfig(l), default_placement(TtiConfig(l)));
        const auto h = hyperperiod(d, grid, n);
        const auto step = n.symbol_duration() / 8;
        for (auto dir : {Direction::uplink, Direction::downlink}) {
          Ticks prev{0};
          for (Ticks t{0}; t < 2 * h; t += step) {
            const auto a = next_opportunity(t, dir, grid, d, n);
            CHECK(a >= t);
            CHECK(a >= prev);
            CHECK(next_opportunity(t + h, dir, grid, d, n) == a + h);
            if (!d.is_tdd() && grid.policy == PlacementPolicy::contiguous)
              CHECK(a - t < tti_duration(n, TtiConfig(l)));
            prev = a;
          }
        }
      }
}

TEST_CASE("CP total grows with TTI duration") {
  for (const auto& d : duplex_preset_names())
    for (auto s : kAllScs) {
      const Numerology n(s);
      const auto l = build_cp_ledger(DuplexConfig::from_name(d), n);
      Ticks prev{0};
      for (int len : {2, 4, 7, 14}) {
        const auto t = cp_total(l, n, TtiConfig(len));
        CHECK(t > prev);
        prev = t;
      }
    }
}

TEST_CASE("fitted profile keeps every anchor") {
  const auto r = residual_report(profile(), {builtin_golden("up-fdd")});
  for (const auto& c : r.cells) {
    if (c.cell.retx != 0) continue;
    if (*c.cell.mode == LinkMode::ul_sr && c.cell.tti < 7) continue;
    CAPTURE(c.cell.key());
    CHECK(c.matched);
  }
}
