#pragma once

#include <string>
#include <vector>

#include "nrlat/time.hpp"
#include "nrlat/up_model.hpp"

namespace nrlat {

enum class EventKind { wait, transmit, process };

std::string event_kind_label(EventKind k);

struct TimelineEvent {
  std::string label;
  Ticks start;
  Ticks end;
  EventKind kind;
};

struct OracleOptions {
  int resolution = 4;                  // arrival samples per symbol
  double dl_dispatch_margin_os = 1;    // lead required before a DL data occasion
  double ul_dispatch_margin_os = 0;    // lead required before an UL data occasion
  bool quantize_arrivals = false;      // sample symbol boundaries only
  bool keep_profile = false;           // fill OracleResult::per_offset
};

struct Simulation {
  Ticks arrival;
  Ticks completion;
  std::vector<TimelineEvent> trace;

  Ticks latency() const { return completion - arrival; }
};

struct OffsetSample {
  Ticks offset;
  Ticks latency;
};

struct OracleResult {
  UpScenario scenario;
  Ticks worst_case{0};
  Ticks worst_offset{0};
  Ticks hyperperiod{0};
  std::vector<TimelineEvent> trace;
  std::vector<OffsetSample> per_offset;

  double worst_case_ms() const { return to_ms(worst_case); }
};

// Walks the procedure step by step on the slot timeline. Data transmissions
// use the actual occasion grid; alignment knobs play no part here.
Simulation simulate(const UpScenario& s, Ticks arrival, const AssumptionProfile& profile,
                    const OracleOptions& opt = {});

Ticks oracle_hyperperiod(const UpScenario& s, const AssumptionProfile& profile);

// Maximum of simulate() over one hyperperiod of arrival offsets: a uniform grid
// of `resolution` points per symbol, each also probed one tick later, plus the
// point one tick after every first-dispatch deadline.
OracleResult worst_case(const UpScenario& s, const AssumptionProfile& profile,
                        const OracleOptions& opt = {});

std::string explain(const OracleResult& r);
std::string explain(const std::vector<TimelineEvent>& trace, Ticks total);

}  // namespace nrlat
