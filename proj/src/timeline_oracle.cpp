#include "nrlat/timeline_oracle.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "nrlat/errors.hpp"

namespace nrlat {
namespace {

class Timeline {
public:
  explicit Timeline(Ticks start) : now_(start) {}

  void process(const std::string& label, Ticks d) { push(label, d, EventKind::process); }
  void transmit(const std::string& label, Ticks d) { push(label, d, EventKind::transmit); }
  void wait_until(const std::string& label, Ticks t) {
    if (t > now_) push(label, t - now_, EventKind::wait);
  }

  Ticks now() const { return now_; }
  std::vector<TimelineEvent>& events() { return events_; }

private:
  void push(const std::string& label, Ticks d, EventKind k) {
    if (d.count() == 0) return;
    events_.push_back({label, now_, now_ + d, k});
    now_ += d;
  }

  Ticks now_;
  std::vector<TimelineEvent> events_;
};

struct Setup {
  Numerology num;
  OpportunityGrid grid;
  Ticks tti;
  Ticks g, n1, n2, fb;
  Ticks dl_margin, ul_margin;
};

Setup setup(const UpScenario& s, const AssumptionProfile& p, const OracleOptions& opt) {
  s.validate();
  const auto& k = p.knobs;
  const Numerology n = s.scs;
  const auto get = [&](const SymbolMap& m, const char* what) {
    const auto it = m.find(n.khz());
    if (it == m.end()) throw ConfigError(std::string("missing ") + what + " for " + std::to_string(n.khz()) + " kHz");
    return n.symbols(it->second);
  };
  return Setup{n,
               grid_for(s.tti, k),
               tti_duration(n, s.tti),
               n.symbols(gnb_processing_os(p.processing, k, n, s.tti)),
               get(p.processing.n1_os, "n1_os"),
               get(p.processing.n2_os, "n2_os"),
               n.symbols(k.harq_feedback_os),
               n.symbols(opt.dl_dispatch_margin_os),
               n.symbols(opt.ul_dispatch_margin_os)};
}

// Constant processing between arrival and the first data dispatch, FDD timing.
Ticks pre_dispatch(const UpScenario& s, const AssumptionProfile& p, const Setup& st) {
  switch (s.mode()) {
    case LinkMode::dl: return st.g + st.dl_margin;
    case LinkMode::ul_cg: return st.n2 + st.ul_margin;
    case LinkMode::ul_sr: {
      const auto& k = p.knobs;
      const int l = s.tti.length_os();
      const auto grant = k.grant_tx_os.count(l) ? st.num.symbols(k.grant_tx_os.at(l)) : Ticks{0};
      const auto dec = k.sr_grant_decode_os.count(st.num.khz())
                           ? st.num.symbols(k.sr_grant_decode_os.at(st.num.khz()))
                           : Ticks{0};
      return st.num.symbols(k.sr_alignment_os) + st.num.symbols(k.sr_tx_os) + st.g + grant + dec +
             st.n2 + st.ul_margin;
    }
  }
  return Ticks{0};
}

}  // namespace

std::string event_kind_label(EventKind k) {
  switch (k) {
    case EventKind::wait: return "wait";
    case EventKind::transmit: return "transmit";
    case EventKind::process: return "process";
  }
  return "?";
}

Simulation simulate(const UpScenario& s, Ticks arrival, const AssumptionProfile& profile,
                    const OracleOptions& opt) {
  const Setup st = setup(s, profile, opt);
  const auto& k = profile.knobs;
  const auto& dpx = s.duplex;
  const auto dl = Direction::downlink;
  const auto ul = Direction::uplink;
  Timeline tl(arrival);

  const auto dl_data = [&](const std::string& label) {
    tl.wait_until("DL occasion alignment", next_opportunity(tl.now() + st.dl_margin, dl, st.grid, dpx, st.num));
    tl.transmit(label, st.tti);
  };
  const auto ul_data = [&](const std::string& label) {
    tl.wait_until("UL occasion alignment", next_opportunity(tl.now() + st.ul_margin, ul, st.grid, dpx, st.num));
    tl.transmit(label, st.tti);
  };

  if (s.direction == Direction::downlink) {
    tl.process("gNB processing", st.g);
    dl_data("DL data transmission");
    for (int i = 1; i <= s.harq_retx; ++i) {
      tl.process("UE PDSCH processing (N1)", st.n1);
      tl.wait_until("PUCCH alignment", next_control(tl.now(), ul, st.fb, dpx, st.num));
      tl.transmit("HARQ NACK", st.fb);
      tl.process("gNB processing", st.g);
      dl_data("DL retransmission " + std::to_string(i));
    }
    tl.process("UE PDSCH processing (N1)", st.n1);
  } else {
    if (*s.ul_mode == UlMode::scheduling_request) {
      const int l = s.tti.length_os();
      const auto grant = st.num.symbols(knob_value(k, knob_spec("grant_tx_os"), l));
      const auto decode = st.num.symbols(knob_value(k, knob_spec("sr_grant_decode_os"), st.num.khz()));
      const auto sr_tx = st.num.symbols(k.sr_tx_os);
      tl.wait_until("SR occasion alignment", tl.now() + st.num.symbols(k.sr_alignment_os));
      tl.wait_until("SR UL slot alignment", next_control(tl.now(), ul, sr_tx, dpx, st.num));
      tl.transmit("SR transmission", sr_tx);
      tl.process("gNB grant preparation", st.g);
      tl.wait_until("PDCCH alignment", next_control(tl.now(), dl, grant, dpx, st.num));
      tl.transmit("UL grant transmission", grant);
      tl.process("UE grant decoding", decode);
    }
    tl.process("UE PUSCH preparation (N2)", st.n2);
    ul_data("UL data transmission");
    for (int i = 1; i <= s.harq_retx; ++i) {
      tl.process("gNB processing", st.g);
      tl.wait_until("PDCCH alignment", next_control(tl.now(), dl, st.fb, dpx, st.num));
      tl.transmit("retransmission grant", st.fb);
      tl.process("UE PUSCH preparation (N2)", st.n2);
      ul_data("UL retransmission " + std::to_string(i));
    }
    tl.process("gNB processing", st.g);
  }
  return Simulation{arrival, tl.now(), std::move(tl.events())};
}

Ticks oracle_hyperperiod(const UpScenario& s, const AssumptionProfile& profile) {
  return hyperperiod(s.duplex, grid_for(s.tti, profile.knobs), s.scs);
}

OracleResult worst_case(const UpScenario& s, const AssumptionProfile& profile,
                        const OracleOptions& opt) {
  const Setup st = setup(s, profile, opt);
  if (opt.resolution < 1) throw ConfigError("oracle resolution must be >= 1");
  const auto sym = st.num.symbol_duration().count();
  const int res = opt.quantize_arrivals ? 1 : opt.resolution;
  if (sym % res != 0)
    throw ConfigError("oracle resolution " + std::to_string(res) + " does not divide a " +
                      std::to_string(st.num.khz()) + " kHz symbol (" + std::to_string(sym) + " ticks)");
  const Ticks h = hyperperiod(s.duplex, st.grid, st.num);
  const auto mod_h = [&](Ticks t) { return Ticks{((t.count() % h.count()) + h.count()) % h.count()}; };

  std::set<std::int64_t> offsets;
  const std::int64_t step = sym / res;
  for (std::int64_t t = 0; t < h.count(); t += step) {
    offsets.insert(t);
    if (!opt.quantize_arrivals) offsets.insert(t + 1);
  }
  if (!opt.quantize_arrivals) {
    const Ticks pre = pre_dispatch(s, profile, st);
    const Ticks period = st.grid.period_os * st.num.symbol_duration();
    for (Ticks base{0}; base < h; base += period)
      for (int o : st.grid.offsets_os)
        offsets.insert(mod_h(base + o * st.num.symbol_duration() - pre + Ticks{1}).count());
  }

  OracleResult r;
  r.scenario = s;
  r.hyperperiod = h;
  r.worst_case = Ticks{-1};
  for (auto off : offsets) {
    auto sim = simulate(s, Ticks{off}, profile, opt);
    const Ticks lat = sim.latency();
    if (opt.keep_profile) r.per_offset.push_back({Ticks{off}, lat});
    if (lat > r.worst_case) {
      r.worst_case = lat;
      r.worst_offset = Ticks{off};
      r.trace = std::move(sim.trace);
    }
  }
  return r;
}

std::string explain(const std::vector<TimelineEvent>& trace, Ticks total) {
  std::ostringstream o;
  const Ticks origin = trace.empty() ? Ticks{0} : trace.front().start;
  for (const auto& e : trace) {
    o << format_decimals(e.start - origin, 4) << " ms  +" << format_decimals(e.end - e.start, 4)
      << " ms  " << event_kind_label(e.kind) << "  " << e.label << '\n';
  }
  o << "total " << format_decimals(total, 4) << " ms\n";
  return o.str();
}

std::string explain(const OracleResult& r) { return explain(r.trace, r.worst_case); }

}  // namespace nrlat
