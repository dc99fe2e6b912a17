#include "nrlat/up_model.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nrlat/errors.hpp"
#include "nrlat/resources.hpp"

namespace nrlat {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

double lookup(const SymbolMap& m, int key, const std::string& what) {
  const auto it = m.find(key);
  if (it == m.end())
    throw ConfigError("missing entry " + std::to_string(key) + " in " + what);
  return it->second;
}

void check_symbols(double v, const std::string& what, std::vector<std::string>& errors) {
  if (!std::isfinite(v) || v < 0) {
    errors.push_back(what + " must be a non-negative number of symbols");
  } else if (std::fabs(v * 2 - std::round(v * 2)) > 1e-9) {
    errors.push_back(what + " must be a multiple of half a symbol");
  }
}

bool valid_key(KnobShape shape, int key) {
  if (shape == KnobShape::per_tti) return key == 14 || key == 7 || key == 4 || key == 2;
  if (shape == KnobShape::per_scs) return key == 15 || key == 30 || key == 120;
  return false;
}

SymbolMap parse_map(const json& j, KnobShape shape, const std::string& what,
                    std::vector<std::string>& errors) {
  SymbolMap m;
  if (!j.is_object()) {
    errors.push_back(what + " must be an object keyed by " +
                     (shape == KnobShape::per_tti ? "TTI length" : "SCS in kHz"));
    return m;
  }
  for (const auto& [k, v] : j.items()) {
    int key = 0;
    try {
      std::size_t used = 0;
      key = std::stoi(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      key = -1;
    }
    if (!valid_key(shape, key)) {
      errors.push_back(what + ": key '" + k + "' not in " +
                       (shape == KnobShape::per_tti ? "{14, 7, 4, 2}" : "{15, 30, 120}"));
      continue;
    }
    if (!v.is_number()) {
      errors.push_back(what + "." + k + " must be a number");
      continue;
    }
    check_symbols(v.get<double>(), what + "." + k, errors);
    m[key] = v.get<double>();
  }
  return m;
}

Provenance provenance_from(const std::string& s) {
  if (s == "stated") return Provenance::stated;
  if (s == "back-fit") return Provenance::back_fit;
  if (s == "artifact") return Provenance::artifact;
  throw ConfigError("unknown provenance '" + s + "' (allowed: stated, back-fit, artifact)");
}

void apply_knob_json(AssumptionKnobs& k, const json& knobs, std::vector<std::string>& errors) {
  if (!knobs.is_object()) {
    errors.push_back("knobs must be an object");
    return;
  }
  for (const auto& [name, v] : knobs.items()) {
    if (name == "minislot_placement") {
      if (!v.is_string()) {
        errors.push_back("minislot_placement must be a string");
        continue;
      }
      const auto p = v.get<std::string>();
      if (p != "default" && p != "contiguous" && p != "slot_aligned") {
        errors.push_back("minislot_placement '" + p + "' not in {default, contiguous, slot_aligned}");
        continue;
      }
      k.minislot_placement = p;
      continue;
    }
    const KnobSpec* spec = nullptr;
    for (const auto& s : knob_specs())
      if (s.name == name) spec = &s;
    if (spec == nullptr) {
      errors.push_back("unknown knob '" + name + "'");
      continue;
    }
    if (spec->shape == KnobShape::scalar) {
      if (!v.is_number()) {
        errors.push_back(name + " must be a number");
        continue;
      }
      check_symbols(v.get<double>(), name, errors);
      k.*(spec->scalar) = v.get<double>();
    } else {
      for (const auto& [key, val] : parse_map(v, spec->shape, name, errors))
        (k.*(spec->table))[key] = val;
    }
  }
}

ordered_json number(double v) {
  if (v == std::floor(v)) return static_cast<std::int64_t>(v);
  return v;
}

ordered_json map_json(const SymbolMap& m, bool descending) {
  ordered_json o = ordered_json::object();
  if (descending) {
    for (auto it = m.rbegin(); it != m.rend(); ++it) o[std::to_string(it->first)] = number(it->second);
  } else {
    for (const auto& [key, v] : m) o[std::to_string(key)] = number(v);
  }
  return o;
}

struct Walk {
  Numerology num;
  OpportunityGrid grid;
  const DuplexConfig& duplex;

  Ticks os(double symbols) const { return num.symbols(symbols); }
  Ticks tti() const { return grid.tti.length_os() * num.symbol_duration(); }

  // Worst FDD alignment from the knob plus what the TDD pattern adds on top.
  Ticks data_alignment(Direction d, double knob_os) const {
    const auto fdd = worst_gap(d, grid, DuplexConfig::fdd(), num).max_gap;
    const auto own = worst_gap(d, grid, duplex, num).max_gap;
    return os(knob_os) + (own - fdd);
  }
};

}  // namespace

std::string mode_label(LinkMode m) {
  switch (m) {
    case LinkMode::dl: return "dl";
    case LinkMode::ul_sr: return "sr";
    case LinkMode::ul_cg: return "cg";
  }
  return "?";
}

std::string mode_title(LinkMode m) {
  switch (m) {
    case LinkMode::dl: return "DL data";
    case LinkMode::ul_sr: return "UL data (SR)";
    case LinkMode::ul_cg: return "UL data (CG)";
  }
  return "?";
}

LinkMode mode_from_name(const std::string& name) {
  if (name == "dl") return LinkMode::dl;
  if (name == "sr") return LinkMode::ul_sr;
  if (name == "cg" || name == "sps") return LinkMode::ul_cg;
  throw ConfigError("unknown mode '" + name + "' (allowed: dl, sr, cg)");
}

UpScenario UpScenario::make(LinkMode mode, Numerology scs, TtiConfig tti, DuplexConfig duplex,
                            int retx) {
  UpScenario s;
  s.direction = mode == LinkMode::dl ? Direction::downlink : Direction::uplink;
  if (mode == LinkMode::ul_sr) s.ul_mode = UlMode::scheduling_request;
  if (mode == LinkMode::ul_cg) s.ul_mode = UlMode::configured_grant;
  s.scs = scs;
  s.tti = tti;
  s.duplex = std::move(duplex);
  s.harq_retx = retx;
  return s;
}

LinkMode UpScenario::mode() const {
  if (direction == Direction::downlink) return LinkMode::dl;
  return ul_mode == UlMode::scheduling_request ? LinkMode::ul_sr : LinkMode::ul_cg;
}

void UpScenario::validate() const {
  if ((direction == Direction::uplink) != ul_mode.has_value())
    throw ConfigError("ul_mode must be given for uplink scenarios and only for them");
  if (harq_retx < 0 || harq_retx > 3)
    throw ConfigError("harq_retx " + std::to_string(harq_retx) + " outside 0..3");
  if (duplex.is_tdd() && tti.length_os() == 2)
    throw UnsupportedScenario("TDD is evaluated for 14, 7 and 4 symbol TTIs only (" + describe() + ")");
}

std::string UpScenario::describe() const {
  std::ostringstream o;
  o << mode_label(mode()) << ' ' << duplex.name();
  if (duplex.phase() != 0) o << '/' << duplex.phase();
  o << ' ' << scs.khz() << "kHz " << tti.length_os() << "os retx=" << harq_retx;
  return o.str();
}

ProcessingProfile ProcessingProfile::defaults() {
  ProcessingProfile p;
  p.gnb_os[ScsClass::khz15_30] = {{7, 7}, {4, 4}, {2, 4}};
  p.gnb_os[ScsClass::khz120] = {{7, 14}, {4, 12}, {2, 10}};
  p.n1_os = {{15, 3}, {30, 4.5}, {120, 20}};
  p.n2_os = {{15, 5}, {30, 5.5}, {120, 36}};
  return p;
}

std::string provenance_label(Provenance p) {
  switch (p) {
    case Provenance::stated: return "stated";
    case Provenance::back_fit: return "back-fit";
    case Provenance::artifact: return "artifact";
  }
  return "?";
}

const std::vector<KnobSpec>& knob_specs() {
  using K = AssumptionKnobs;
  static const std::vector<KnobSpec> specs{
      {"dl_alignment_os", KnobShape::per_tti, nullptr, &K::dl_alignment_os},
      {"ul_cg_alignment_os", KnobShape::per_tti, nullptr, &K::ul_cg_alignment_os},
      {"sr_alignment_os", KnobShape::scalar, &K::sr_alignment_os, nullptr},
      {"sr_tx_os", KnobShape::scalar, &K::sr_tx_os, nullptr},
      {"grant_tx_os", KnobShape::per_tti, nullptr, &K::grant_tx_os},
      {"sr_grant_alignment_os", KnobShape::per_tti, nullptr, &K::sr_grant_alignment_os},
      {"sr_grant_decode_os", KnobShape::per_scs, nullptr, &K::sr_grant_decode_os},
      {"tdd_sr_alignment_os", KnobShape::per_tti, nullptr, &K::tdd_sr_alignment_os},
      {"harq_feedback_os", KnobShape::scalar, &K::harq_feedback_os, nullptr},
      {"dl_harq_alignment_os", KnobShape::per_tti, nullptr, &K::dl_harq_alignment_os},
      {"ul_harq_alignment_os", KnobShape::per_tti, nullptr, &K::ul_harq_alignment_os},
      {"gnb_14os_processing_os", KnobShape::scalar, &K::gnb_14os_processing_os, nullptr},
  };
  return specs;
}

const KnobSpec& knob_spec(const std::string& name) {
  for (const auto& s : knob_specs())
    if (s.name == name) return s;
  throw ConfigError("unknown knob '" + name + "'");
}

double knob_value(const AssumptionKnobs& k, const KnobSpec& spec, std::optional<int> key) {
  if (spec.shape == KnobShape::scalar) return k.*(spec.scalar);
  if (!key) throw UsageError(spec.name + " needs a key");
  return lookup(k.*(spec.table), *key, spec.name);
}

void set_knob(AssumptionKnobs& k, const KnobSpec& spec, std::optional<int> key, double value) {
  if (spec.shape == KnobShape::scalar) {
    k.*(spec.scalar) = value;
    return;
  }
  if (!key || !valid_key(spec.shape, *key)) throw UsageError(spec.name + " needs a valid key");
  (k.*(spec.table))[*key] = value;
}

AssumptionProfile parse_profile(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("profile: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("profile must be a JSON object");
  std::vector<std::string> errors;
  AssumptionProfile p;
  for (const auto& [key, v] : doc.items()) {
    if (key == "name") {
      p.name = v.get<std::string>();
    } else if (key == "_provenance" || key == "notes") {
      if (key == "_provenance") p.note = v.get<std::string>();
    } else if (key == "processing") {
      for (const auto& [pk, pv] : v.items()) {
        if (pk == "gnb_os") {
          for (const auto& [ck, cv] : pv.items()) {
            if (ck != "15/30" && ck != "120") {
              errors.push_back("processing.gnb_os: SCS class '" + ck + "' not in {15/30, 120}");
              continue;
            }
            const auto cls = ck == "120" ? ScsClass::khz120 : ScsClass::khz15_30;
            p.processing.gnb_os[cls] = parse_map(cv, KnobShape::per_tti, "processing.gnb_os." + ck, errors);
          }
        } else if (pk == "n1_os") {
          p.processing.n1_os = parse_map(pv, KnobShape::per_scs, "processing.n1_os", errors);
        } else if (pk == "n2_os") {
          p.processing.n2_os = parse_map(pv, KnobShape::per_scs, "processing.n2_os", errors);
        } else {
          errors.push_back("unknown key 'processing." + pk + "'");
        }
      }
    } else if (key == "knobs") {
      apply_knob_json(p.knobs, v, errors);
    } else if (key == "provenance") {
      for (const auto& [name, tag] : v.items()) {
        try {
          knob_spec(name);
          p.knobs.provenance[name] = provenance_from(tag.get<std::string>());
        } catch (const ConfigError& e) {
          errors.push_back(std::string("provenance: ") + e.what());
        }
      }
    } else {
      errors.push_back("unknown key '" + key + "'");
    }
  }
  if (!errors.empty()) {
    std::string msg = "invalid profile:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg, errors);
  }
  return p;
}

AssumptionProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read profile '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile(buf.str());
}

AssumptionProfile builtin_profile() {
  static const AssumptionProfile cached = parse_profile(std::string(resource("profiles/default.json")));
  return cached;
}

AssumptionProfile default_profile() {
  if (const char* env = std::getenv("NRLAT_PROFILE"); env != nullptr && *env != '\0')
    return load_profile(env);
  return builtin_profile();
}

std::string profile_to_json(const AssumptionProfile& p) {
  ordered_json o;
  o["name"] = p.name;
  if (!p.note.empty()) o["_provenance"] = p.note;
  ordered_json proc;
  proc["gnb_os"]["15/30"] = map_json(p.processing.gnb_os.count(ScsClass::khz15_30)
                                         ? p.processing.gnb_os.at(ScsClass::khz15_30)
                                         : SymbolMap{},
                                     true);
  proc["gnb_os"]["120"] = map_json(
      p.processing.gnb_os.count(ScsClass::khz120) ? p.processing.gnb_os.at(ScsClass::khz120) : SymbolMap{},
      true);
  proc["n1_os"] = map_json(p.processing.n1_os, false);
  proc["n2_os"] = map_json(p.processing.n2_os, false);
  o["processing"] = proc;
  ordered_json knobs;
  for (const auto& s : knob_specs()) {
    if (s.shape == KnobShape::scalar) {
      knobs[s.name] = number(p.knobs.*(s.scalar));
    } else {
      knobs[s.name] = map_json(p.knobs.*(s.table), s.shape == KnobShape::per_tti);
    }
  }
  knobs["minislot_placement"] = p.knobs.minislot_placement;
  o["knobs"] = knobs;
  ordered_json prov = ordered_json::object();
  for (const auto& s : knob_specs()) {
    const auto it = p.knobs.provenance.find(s.name);
    if (it != p.knobs.provenance.end()) prov[s.name] = provenance_label(it->second);
  }
  o["provenance"] = prov;
  return o.dump(2) + "\n";
}

void apply_overrides(AssumptionKnobs& k, const std::string& json_object_text) {
  json j;
  try {
    j = json::parse(json_object_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("overrides: ") + e.what());
  }
  std::vector<std::string> errors;
  apply_knob_json(k, j, errors);
  if (!errors.empty()) {
    std::string msg = "invalid overrides:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg, errors);
  }
}

std::string category_label(Category c) {
  switch (c) {
    case Category::ue_processing: return "UE processing";
    case Category::frame_alignment: return "frame alignment";
    case Category::transmission: return "TTI transmission";
    case Category::harq: return "HARQ retransmission";
    case Category::bs_processing: return "BS processing";
  }
  return "?";
}

OpportunityGrid grid_for(TtiConfig tti, const AssumptionKnobs& knobs) {
  const auto policy = knobs.minislot_placement == "default"
                          ? default_placement(tti)
                          : placement_from_name(knobs.minislot_placement);
  return occasions_for(tti, policy);
}

double gnb_processing_os(const ProcessingProfile& p, const AssumptionKnobs& k, Numerology scs,
                         TtiConfig tti) {
  const auto cls = scs_class(scs);
  const auto it = p.gnb_os.find(cls);
  if (it != p.gnb_os.end() && it->second.count(tti.length_os()))
    return it->second.at(tti.length_os());
  if (tti.length_os() == 14) return k.gnb_14os_processing_os;
  throw ConfigError("missing gNB processing for " + std::to_string(tti.length_os()) + "os at " +
                    scs_class_label(cls) + " kHz");
}

Ticks harq_rtt(const UpScenario& s, const ProcessingProfile& p, const AssumptionKnobs& k) {
  s.validate();
  const Walk w{s.scs, grid_for(s.tti, k), s.duplex};
  const int l = s.tti.length_os();
  const Ticks g = w.os(gnb_processing_os(p, k, s.scs, s.tti));
  const Ticks fb = w.os(k.harq_feedback_os);
  const auto start = worst_gap(s.direction, w.grid, s.duplex, s.scs).resume_at;
  const Ticks end = start + w.tti();
  Ticks next{0};
  if (s.direction == Direction::downlink) {
    const Ticks n1 = w.os(lookup(p.n1_os, s.scs.khz(), "n1_os"));
    const Ticks ack = next_control(end + n1, Direction::uplink, fb, s.duplex, s.scs) + fb;
    const Ticks lead = w.os(lookup(k.dl_harq_alignment_os, l, "dl_harq_alignment_os"));
    next = next_opportunity(ack + g + lead, Direction::downlink, w.grid, s.duplex, s.scs);
  } else {
    const Ticks n2 = w.os(lookup(p.n2_os, s.scs.khz(), "n2_os"));
    const Ticks grant = next_control(end + g, Direction::downlink, fb, s.duplex, s.scs) + fb;
    const Ticks lead = w.os(lookup(k.ul_harq_alignment_os, l, "ul_harq_alignment_os"));
    next = next_opportunity(grant + n2 + lead, Direction::uplink, w.grid, s.duplex, s.scs);
  }
  return next + w.tti() - end;
}

LatencyResult up_latency(const UpScenario& s, const ProcessingProfile& p, const AssumptionKnobs& k) {
  s.validate();
  const Walk w{s.scs, grid_for(s.tti, k), s.duplex};
  const int l = s.tti.length_os();
  const Ticks g = w.os(gnb_processing_os(p, k, s.scs, s.tti));
  LatencyResult r;
  r.scenario = s;
  auto add = [&r](std::string label, Category c, Ticks d) {
    r.components.push_back({std::move(label), c, d});
  };

  if (s.direction == Direction::downlink) {
    add("gNB processing", Category::bs_processing, g);
    add("DL alignment", Category::frame_alignment,
        w.data_alignment(Direction::downlink, lookup(k.dl_alignment_os, l, "dl_alignment_os")));
    add("DL data transmission", Category::transmission, w.tti());
    add("UE PDSCH processing (N1)", Category::ue_processing,
        w.os(lookup(p.n1_os, s.scs.khz(), "n1_os")));
  } else {
    if (*s.ul_mode == UlMode::scheduling_request) {
      add("SR alignment", Category::frame_alignment, w.os(k.sr_alignment_os));
      add("SR transmission", Category::transmission, w.os(k.sr_tx_os));
      add("gNB grant preparation", Category::bs_processing, g);
      add("grant alignment", Category::frame_alignment,
          w.os(lookup(k.sr_grant_alignment_os, l, "sr_grant_alignment_os")));
      add("grant transmission", Category::transmission, w.os(lookup(k.grant_tx_os, l, "grant_tx_os")));
      const double decode = lookup(k.sr_grant_decode_os, s.scs.khz(), "sr_grant_decode_os");
      if (decode > 0) add("UE grant decoding", Category::ue_processing, w.os(decode));
      if (s.duplex.is_tdd())
        add("TDD SR alignment", Category::frame_alignment,
            w.os(lookup(k.tdd_sr_alignment_os, l, "tdd_sr_alignment_os")));
    }
    add("UE PUSCH preparation (N2)", Category::ue_processing,
        w.os(lookup(p.n2_os, s.scs.khz(), "n2_os")));
    add("UL alignment", Category::frame_alignment,
        w.data_alignment(Direction::uplink, lookup(k.ul_cg_alignment_os, l, "ul_cg_alignment_os")));
    add("UL data transmission", Category::transmission, w.tti());
    add("gNB processing", Category::bs_processing, g);
  }

  if (s.harq_retx > 0) {
    r.harq_rtt = harq_rtt(s, p, k);
    for (int i = 1; i <= s.harq_retx; ++i)
      add("HARQ retransmission " + std::to_string(i), Category::harq, r.harq_rtt);
  }
  for (const auto& c : r.components) r.total += c.duration;
  return r;
}

std::vector<UpCell> up_table(const std::vector<LinkMode>& modes, const std::vector<Numerology>& scs,
                             const std::vector<TtiConfig>& ttis, int max_retx,
                             const DuplexConfig& duplex, const AssumptionProfile& profile) {
  std::vector<UpCell> cells;
  for (auto m : modes)
    for (int retx = 0; retx <= max_retx; ++retx)
      for (auto n : scs)
        for (auto t : ttis) {
          auto r = up_latency(UpScenario::make(m, n, t, duplex, retx), profile);
          const auto tag = threshold_tag(r.total_ms());
          cells.push_back({std::move(r), tag});
        }
  return cells;
}

}  // namespace nrlat
