#include "nrlat/compliance.hpp"

#include <algorithm>
#include <sstream>

#include "nrlat/errors.hpp"

namespace nrlat {

std::string plane_label(Plane p) { return p == Plane::cp ? "CP" : "UP"; }

std::string category_label(UsageCategory c) { return c == UsageCategory::embb ? "eMBB" : "URLLC"; }

std::vector<Requirement> default_requirements() {
  return {
      {Plane::cp, UsageCategory::embb, 20.0, 10.0},
      {Plane::cp, UsageCategory::urllc, 20.0, 10.0},
      {Plane::up, UsageCategory::embb, 4.0, std::nullopt},
      {Plane::up, UsageCategory::urllc, 1.0, std::nullopt},
  };
}

std::vector<ComplianceVerdict> check(const std::vector<EvaluatedConfig>& results,
                                     const std::vector<Requirement>& requirements,
                                     MetSemantics semantics) {
  if (results.empty()) throw UsageError("compliance check needs at least one evaluated configuration");
  std::vector<ComplianceVerdict> out;
  for (const auto& req : requirements) {
    ComplianceVerdict v;
    v.requirement = req;
    bool first = true;
    bool first_ok = true;
    for (const auto& r : results) {
      if (r.plane != req.plane) continue;
      if (std::find(r.categories.begin(), r.categories.end(), req.category) == r.categories.end())
        continue;
      ++v.evaluated;
      v.overall_min_ms = first ? r.latency_ms : std::min(v.overall_min_ms, r.latency_ms);
      v.overall_max_ms = first ? r.latency_ms : std::max(v.overall_max_ms, r.latency_ms);
      first = false;
      if (r.latency_ms <= req.required_ms) {
        v.obtained_min_ms = first_ok ? r.latency_ms : std::min(v.obtained_min_ms, r.latency_ms);
        v.obtained_max_ms = first_ok ? r.latency_ms : std::max(v.obtained_max_ms, r.latency_ms);
        first_ok = false;
        v.contributing.push_back(r.label);
      }
      if (req.aspirational_ms && r.latency_ms <= *req.aspirational_ms) v.aspirational_met = true;
    }
    std::ostringstream c;
    if (v.evaluated == 0) {
      c << "no configuration evaluated";
    } else {
      v.met = semantics == MetSemantics::existential ? !v.contributing.empty()
                                                     : v.contributing.size() == v.evaluated;
      c << v.contributing.size() << " of " << v.evaluated << " configurations within "
        << req.required_ms << " ms";
    }
    v.comment = c.str();
    out.push_back(std::move(v));
  }
  return out;
}

ThresholdTag threshold_tag(double value_ms) {
  if (value_ms <= 1.0) return ThresholdTag::urllc_ok;
  if (value_ms <= 4.0) return ThresholdTag::embb_ok;
  return ThresholdTag::above;
}

std::string tag_label(ThresholdTag t) {
  switch (t) {
    case ThresholdTag::urllc_ok: return "urllc_ok";
    case ThresholdTag::embb_ok: return "embb_ok";
    case ThresholdTag::above: return "above";
  }
  return "?";
}

}  // namespace nrlat
