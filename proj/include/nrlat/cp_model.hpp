#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nrlat/frame_pattern.hpp"
#include "nrlat/numerology.hpp"
#include "nrlat/time.hpp"

namespace nrlat {

enum class ScsClass { khz15_30, khz120 };

ScsClass scs_class(Numerology num);
std::string scs_class_label(ScsClass c);

struct CpStep {
  int index = 0;                   // 1-based, in procedure order
  std::string description;
  std::optional<int> ttis;         // exactly one of ttis / fixed is set
  std::optional<Ticks> fixed;
};

struct CpLedger {
  std::string duplex;              // preset name
  ScsClass scs_class;
  std::vector<CpStep> steps;

  int total_ttis() const;
  Ticks total_fixed() const;
};

// One procedure table: step descriptions plus per-SCS-class TTI counts.
// A step with no count is a fixed RRC processing step.
struct CpStepTemplate {
  std::string description;
  std::optional<int> ttis_15_30;
  std::optional<int> ttis_120;
};

struct CpProcessingAssumptions {
  std::map<ScsClass, double> ue_min_ul_timing_os{{ScsClass::khz15_30, 3},
                                                 {ScsClass::khz120, 9}};
  double rrc_processing_ms = 3.0;
  std::map<std::string, std::vector<CpStepTemplate>> procedures;  // keyed by duplex preset

  // Built-in step tables for fdd, tdd-uldl and tdd-uldldldl.
  static CpProcessingAssumptions defaults();
  // Same layout as the shipped data/cp_assumptions.json; throws ConfigError.
  static CpProcessingAssumptions from_json(const std::string& text);
};

CpLedger build_cp_ledger(const DuplexConfig& duplex, Numerology num,
                         const CpProcessingAssumptions& assumptions =
                             CpProcessingAssumptions::defaults());

// total_ttis * tti_duration + fixed part. Throws UsageError on SCS class mismatch.
Ticks cp_total(const CpLedger& ledger, Numerology num, TtiConfig tti);

struct CpCell {
  std::string duplex;
  Numerology num;
  TtiConfig tti;
  int ttis;
  Ticks tti_duration;
  Ticks fixed;
  Ticks total;
};

struct CpTable {
  std::vector<CpCell> cells;  // scs major, tti minor, per duplex in request order
};

CpTable cp_table(const std::vector<DuplexConfig>& duplexes, const std::vector<Numerology>& scs,
                 const std::vector<TtiConfig>& ttis,
                 const CpProcessingAssumptions& assumptions = CpProcessingAssumptions::defaults());

}  // namespace nrlat
