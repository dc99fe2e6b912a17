#pragma once

#include <string>
#include <vector>

#include "nrlat/calibration.hpp"
#include "nrlat/compliance.hpp"
#include "nrlat/cp_model.hpp"
#include "nrlat/timeline_oracle.hpp"
#include "nrlat/up_model.hpp"

namespace nrlat {

enum class Format { markdown, csv };

Format format_from_name(const std::string& name);

struct ScenarioConfig {
  Plane plane = Plane::up;
  std::vector<std::string> duplex{"fdd"};
  int pattern_phase = 0;
  std::vector<int> scs{15, 30, 120};
  std::vector<int> tti;                // empty: every length the duplex supports
  std::vector<LinkMode> modes{LinkMode::dl, LinkMode::ul_sr, LinkMode::ul_cg};
  int retx_max = 3;
  std::string profile;                 // file path; empty: default profile
  std::string overrides;               // JSON object of knob overrides
  Format format = Format::markdown;
  int oracle_resolution = 4;
  bool oracle = false;
  bool check = false;
  bool breakdown = false;

  std::vector<int> ttis_for(const std::string& duplex_name) const;
};

// Accepted keys: plane, duplex, pattern_phase, scs, tti, direction, ul_mode,
// retx_max, profile, overrides, format, oracle_resolution, oracle, check,
// breakdown. Throws ConfigError listing every violation.
ScenarioConfig parse_config(const std::string& text);

// Throws ConfigError when the combination is not evaluable.
void validate(const ScenarioConfig& c);

AssumptionProfile resolve_profile(const ScenarioConfig& c);

struct Report {
  std::string text;
  int exit_code = 0;
};

Report run(const ScenarioConfig& c);

std::string render_cp(const CpTable& t, Format f);
std::string render_ledger(const CpLedger& l, Format f);
std::string render_up(const std::vector<UpCell>& cells, Format f, bool breakdown,
                      const std::vector<OracleResult>* oracle = nullptr);
std::string render_verdicts(const std::vector<ComplianceVerdict>& v, Format f);
std::string render_trace(const OracleResult& r, Format f);
std::string render_offsets(const OracleResult& r);

// Configurations behind the observation tables: the FDD UP table (eMBB at
// 15 kHz, URLLC at every SCS) and the CP tables (eMBB on TDD slots, URLLC on
// mini-slots).
std::vector<EvaluatedConfig> observation_configs(const AssumptionProfile& profile);

// Configurations produced by a UP or CP sweep, tagged the same way.
std::vector<EvaluatedConfig> evaluated_configs(const std::vector<UpCell>& cells);
std::vector<EvaluatedConfig> evaluated_configs(const CpTable& table);

}  // namespace nrlat
