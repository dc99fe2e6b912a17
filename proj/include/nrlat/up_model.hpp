#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nrlat/compliance.hpp"
#include "nrlat/cp_model.hpp"
#include "nrlat/frame_pattern.hpp"
#include "nrlat/numerology.hpp"
#include "nrlat/time.hpp"

namespace nrlat {

enum class UlMode { scheduling_request, configured_grant };

// DL, UL with scheduling request, UL with configured grant.
enum class LinkMode { dl, ul_sr, ul_cg };

inline constexpr LinkMode kAllModes[] = {LinkMode::dl, LinkMode::ul_sr, LinkMode::ul_cg};

std::string mode_label(LinkMode m);   // "dl", "sr", "cg"
std::string mode_title(LinkMode m);   // "DL data", "UL data (SR)", "UL data (CG)"
LinkMode mode_from_name(const std::string& name);

struct UpScenario {
  Direction direction = Direction::downlink;
  std::optional<UlMode> ul_mode;
  Numerology scs{Scs::khz15};
  TtiConfig tti{14};
  DuplexConfig duplex = DuplexConfig::fdd();
  int harq_retx = 0;

  static UpScenario make(LinkMode mode, Numerology scs, TtiConfig tti,
                         DuplexConfig duplex = DuplexConfig::fdd(), int retx = 0);

  LinkMode mode() const;
  // Throws ConfigError / UnsupportedScenario.
  void validate() const;
  std::string describe() const;
};

// Symbol maps keyed by TTI length (14, 7, 4, 2) or SCS in kHz (15, 30, 120).
using SymbolMap = std::map<int, double>;

struct ProcessingProfile {
  std::map<ScsClass, SymbolMap> gnb_os;  // keyed by TTI length; 14 falls back to a knob
  SymbolMap n1_os;                       // PDSCH processing, keyed by kHz
  SymbolMap n2_os;                       // PUSCH preparation, keyed by kHz

  static ProcessingProfile defaults();
};

enum class Provenance { stated, back_fit, artifact };

std::string provenance_label(Provenance p);

struct AssumptionKnobs {
  SymbolMap dl_alignment_os;        // worst FDD wait for a DL data occasion, per TTI
  SymbolMap ul_cg_alignment_os;     // worst FDD wait for an UL data occasion, per TTI
  double sr_alignment_os = 1;       // wait for the next SR occasion
  double sr_tx_os = 1;
  SymbolMap grant_tx_os;            // UL grant PDCCH, per TTI
  SymbolMap sr_grant_alignment_os;  // wait for the grant PDCCH occasion, per TTI
  SymbolMap sr_grant_decode_os;     // UE grant handling beyond N2, per kHz
  SymbolMap tdd_sr_alignment_os;    // TDD pattern wait on the SR/grant exchange, per TTI
  double harq_feedback_os = 1;      // HARQ ACK/NACK or retransmission grant
  SymbolMap dl_harq_alignment_os;   // extra lead before a DL retransmission occasion, per TTI
  SymbolMap ul_harq_alignment_os;   // extra lead before an UL retransmission occasion, per TTI
  double gnb_14os_processing_os = 14;
  std::string minislot_placement = "default";  // default | contiguous | slot_aligned

  std::map<std::string, Provenance> provenance;
};

enum class KnobShape { scalar, per_tti, per_scs };

struct KnobSpec {
  std::string name;
  KnobShape shape;
  double AssumptionKnobs::*scalar = nullptr;
  SymbolMap AssumptionKnobs::*table = nullptr;
};

const std::vector<KnobSpec>& knob_specs();
const KnobSpec& knob_spec(const std::string& name);

// Throws ConfigError naming the knob and key when an entry is missing.
double knob_value(const AssumptionKnobs& k, const KnobSpec& spec, std::optional<int> key = {});
void set_knob(AssumptionKnobs& k, const KnobSpec& spec, std::optional<int> key, double value);

struct AssumptionProfile {
  std::string name = "default";
  std::string note;
  ProcessingProfile processing = ProcessingProfile::defaults();
  AssumptionKnobs knobs;
};

// Shipped profile, or the file named by NRLAT_PROFILE when set.
AssumptionProfile default_profile();
AssumptionProfile builtin_profile();
AssumptionProfile parse_profile(const std::string& json_text);
AssumptionProfile load_profile(const std::string& path);
std::string profile_to_json(const AssumptionProfile& p);

// Apply a JSON object of knob overrides ({"dl_alignment_os": {"4": 6}, ...}).
void apply_overrides(AssumptionKnobs& k, const std::string& json_object_text);

enum class Category { ue_processing, frame_alignment, transmission, harq, bs_processing };

std::string category_label(Category c);

struct Component {
  std::string label;
  Category category;
  Ticks duration;
};

struct LatencyResult {
  UpScenario scenario;
  std::vector<Component> components;
  Ticks total{0};
  Ticks harq_rtt{0};

  double total_ms() const { return to_ms(total); }
};

OpportunityGrid grid_for(TtiConfig tti, const AssumptionKnobs& knobs);
double gnb_processing_os(const ProcessingProfile& p, const AssumptionKnobs& k, Numerology scs,
                         TtiConfig tti);

LatencyResult up_latency(const UpScenario& s, const ProcessingProfile& p, const AssumptionKnobs& k);
Ticks harq_rtt(const UpScenario& s, const ProcessingProfile& p, const AssumptionKnobs& k);

inline LatencyResult up_latency(const UpScenario& s, const AssumptionProfile& profile) {
  return up_latency(s, profile.processing, profile.knobs);
}

struct UpCell {
  LatencyResult result;
  ThresholdTag tag;
};

// Cells ordered by mode, retx, then scs major and tti minor.
std::vector<UpCell> up_table(const std::vector<LinkMode>& modes, const std::vector<Numerology>& scs,
                             const std::vector<TtiConfig>& ttis, int max_retx,
                             const DuplexConfig& duplex, const AssumptionProfile& profile);

}  // namespace nrlat
