#include "nrlat/cp_model.hpp"

#include <json.hpp>

#include "nrlat/errors.hpp"
#include "nrlat/resources.hpp"

namespace nrlat {
namespace {

using nlohmann::json;

ScsClass class_from_key(const std::string& key) {
  if (key == "15/30") return ScsClass::khz15_30;
  if (key == "120") return ScsClass::khz120;
  throw ConfigError("unknown SCS class '" + key + "' (allowed: 15/30, 120)");
}

}  // namespace

ScsClass scs_class(Numerology num) {
  return num.scs() == Scs::khz120 ? ScsClass::khz120 : ScsClass::khz15_30;
}

std::string scs_class_label(ScsClass c) { return c == ScsClass::khz120 ? "120" : "15/30"; }

int CpLedger::total_ttis() const {
  int n = 0;
  for (const auto& s : steps) n += s.ttis.value_or(0);
  return n;
}

Ticks CpLedger::total_fixed() const {
  Ticks t{0};
  for (const auto& s : steps) t += s.fixed.value_or(Ticks{0});
  return t;
}

CpProcessingAssumptions CpProcessingAssumptions::defaults() {
  static const CpProcessingAssumptions cached = from_json(std::string(resource("cp_assumptions.json")));
  return cached;
}

CpProcessingAssumptions CpProcessingAssumptions::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("CP assumptions: ") + e.what());
  }
  CpProcessingAssumptions a;
  a.procedures.clear();
  try {
    if (doc.contains("ue_min_ul_timing_os")) {
      for (const auto& [k, v] : doc.at("ue_min_ul_timing_os").items())
        a.ue_min_ul_timing_os[class_from_key(k)] = v.get<double>();
    }
    if (doc.contains("rrc_processing_ms")) a.rrc_processing_ms = doc.at("rrc_processing_ms").get<double>();
    if (a.rrc_processing_ms < 0) throw ConfigError("rrc_processing_ms must be >= 0");
    for (const auto& [name, steps] : doc.at("procedures").items()) {
      DuplexConfig::from_name(name);
      auto& list = a.procedures[name];
      for (const auto& s : steps) {
        CpStepTemplate t;
        t.description = s.at("step").get<std::string>();
        const bool rrc = s.value("rrc_processing", false);
        if (rrc == s.contains("ttis"))
          throw ConfigError("step '" + t.description + "' needs exactly one of ttis / rrc_processing");
        if (!rrc) {
          t.ttis_15_30 = s.at("ttis").at("15/30").get<int>();
          t.ttis_120 = s.at("ttis").at("120").get<int>();
          if (*t.ttis_15_30 < 0 || *t.ttis_120 < 0)
            throw ConfigError("step '" + t.description + "' has a negative TTI count");
        }
        list.push_back(std::move(t));
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("CP assumptions: ") + e.what());
  }
  return a;
}

CpLedger build_cp_ledger(const DuplexConfig& duplex, Numerology num,
                         const CpProcessingAssumptions& assumptions) {
  const auto it = assumptions.procedures.find(duplex.name());
  if (it == assumptions.procedures.end())
    throw ConfigError("no CP procedure table for duplex '" + duplex.name() + "'");
  CpLedger ledger{duplex.name(), scs_class(num), {}};
  int index = 0;
  for (const auto& t : it->second) {
    CpStep step;
    step.index = ++index;
    step.description = t.description;
    if (t.ttis_15_30) {
      step.ttis = ledger.scs_class == ScsClass::khz120 ? *t.ttis_120 : *t.ttis_15_30;
    } else {
      step.fixed = ticks_from_ms(assumptions.rrc_processing_ms);
    }
    ledger.steps.push_back(std::move(step));
  }
  return ledger;
}

Ticks cp_total(const CpLedger& ledger, Numerology num, TtiConfig tti) {
  if (scs_class(num) != ledger.scs_class)
    throw UsageError("ledger built for " + scs_class_label(ledger.scs_class) +
                     " kHz used with " + std::to_string(num.khz()) + " kHz");
  return ledger.total_ttis() * tti_duration(num, tti) + ledger.total_fixed();
}

CpTable cp_table(const std::vector<DuplexConfig>& duplexes, const std::vector<Numerology>& scs,
                 const std::vector<TtiConfig>& ttis, const CpProcessingAssumptions& assumptions) {
  CpTable table;
  for (const auto& d : duplexes) {
    for (auto n : scs) {
      const auto ledger = build_cp_ledger(d, n, assumptions);
      for (auto t : ttis) {
        table.cells.push_back(CpCell{d.name(), n, t, ledger.total_ttis(), tti_duration(n, t),
                                     ledger.total_fixed(), cp_total(ledger, n, t)});
      }
    }
  }
  return table;
}

}  // namespace nrlat
