#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nrlat/compliance.hpp"
#include "nrlat/up_model.hpp"

namespace nrlat {

struct GoldenCell {
  std::string table;
  Plane plane = Plane::up;
  std::string duplex;
  std::optional<LinkMode> mode;  // UP only
  int scs_khz = 15;
  int tti = 14;
  int retx = 0;
  std::string printed;           // value exactly as published
  std::string origin;            // table, row and column it was read from

  double published_ms() const;
  std::string key() const;       // stable identifier, e.g. "up-fdd/dl/15/14/0"
};

struct GoldenTable {
  std::string name;
  std::vector<GoldenCell> cells;
};

// Throws ConfigError on malformed files, listing every problem found.
GoldenTable parse_golden(const std::string& json_text);
// Shipped tables: "up-fdd", "up-tdd", "cp".
GoldenTable builtin_golden(const std::string& name);
std::vector<GoldenTable> builtin_goldens();
GoldenTable merge(const std::vector<GoldenTable>& tables, const std::string& name);

// Value produced by the closed-form models for a golden cell.
Ticks evaluate_cell(const GoldenCell& cell, const AssumptionProfile& profile);

enum class Reachability { unknown, reachable, unreachable };

std::string reachability_label(Reachability r);

struct CellResidual {
  GoldenCell cell;
  Ticks computed{0};
  std::string computed_printed;  // at the published cell's precision
  double residual_ms = 0;        // computed - published
  bool matched = false;
  Reachability reachable = Reachability::unknown;
};

struct FitReport {
  AssumptionKnobs knobs;
  std::vector<CellResidual> cells;
  std::size_t matched = 0;
  std::vector<std::string> log;  // one line per searched knob slot

  std::size_t total() const { return cells.size(); }
  std::size_t mismatched() const { return cells.size() - matched; }
  double coverage() const { return cells.empty() ? 1.0 : double(matched) / double(cells.size()); }
};

FitReport residual_report(const AssumptionProfile& profile, const std::vector<GoldenTable>& goldens);

struct KnobCandidates {
  std::string knob;
  std::optional<int> key;        // TTI length or kHz for map-valued knobs
  std::vector<double> values;
};

using SearchSpace = std::vector<KnobCandidates>;

using CellFilter = std::function<bool(const GoldenCell&)>;

// Searches the given slots for the assignment matching the most golden cells.
// With `priority` set, matches among the selected cells count first and the
// total only breaks ties. Exhaustive when the joint space is small, otherwise
// coordinate-wise until no slot improves. Remaining ties keep the profile's
// current value, then prefer the smallest magnitude. Throws ConfigError on an
// empty space.
FitReport fit_knobs(const GoldenTable& golden, const SearchSpace& space,
                    const AssumptionProfile& profile, const CellFilter& priority = {});

// Candidate range 0..2*TTI in half symbols for alignment knobs, 0..4 for
// durations, keyed slots for every TTI/SCS present in `golden`.
SearchSpace default_search_space(const std::string& knob, const GoldenTable& golden);

struct CalibrationFamily {
  std::string name;
  std::vector<std::string> knobs;
  CellFilter selects;
};

const std::vector<CalibrationFamily>& calibration_families();

// Runs every family in order, each against its own slice of the UP goldens
// with first transmissions taking priority over retransmission rows. Passes
// repeat until the knobs stop moving (at most 8), then residuals of the result
// over `goldens` are reported.
FitReport calibrate(const AssumptionProfile& base, const std::vector<GoldenTable>& goldens);

std::string render_fit_markdown(const FitReport& r, const std::string& title);
std::string render_fit_csv(const FitReport& r);

}  // namespace nrlat
