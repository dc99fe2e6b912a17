#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nrlat {

enum class Plane { cp, up };
enum class UsageCategory { embb, urllc };

std::string plane_label(Plane p);
std::string category_label(UsageCategory c);

struct Requirement {
  Plane plane;
  UsageCategory category;
  double required_ms;
  std::optional<double> aspirational_ms;
};

// UP eMBB 4 ms, UP URLLC 1 ms, CP 20 ms for both (10 ms aspirational).
std::vector<Requirement> default_requirements();

// One evaluated configuration, tagged with the requirements it is evidence for.
struct EvaluatedConfig {
  std::string label;
  Plane plane;
  std::vector<UsageCategory> categories;
  double latency_ms;
};

struct ComplianceVerdict {
  Requirement requirement;
  double obtained_min_ms = 0;      // over the contributing configurations
  double obtained_max_ms = 0;
  double overall_min_ms = 0;       // over every configuration evaluated for the requirement
  double overall_max_ms = 0;
  std::size_t evaluated = 0;
  bool met = false;
  bool aspirational_met = false;
  std::vector<std::string> contributing;  // configurations at or below the requirement
  std::string comment;
};

enum class MetSemantics { existential, strict };

// Throws UsageError on an empty result set.
std::vector<ComplianceVerdict> check(const std::vector<EvaluatedConfig>& results,
                                     const std::vector<Requirement>& requirements,
                                     MetSemantics semantics = MetSemantics::existential);

enum class ThresholdTag { urllc_ok, embb_ok, above };

ThresholdTag threshold_tag(double value_ms);
std::string tag_label(ThresholdTag t);

}  // namespace nrlat
