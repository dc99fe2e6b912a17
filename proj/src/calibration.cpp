#include "nrlat/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "nrlat/errors.hpp"
#include "nrlat/resources.hpp"

namespace nrlat {
namespace {

using nlohmann::json;

constexpr std::size_t kExhaustiveLimit = 4096;

std::vector<double> half_steps(double hi) {
  std::vector<double> v;
  for (int i = 0; i <= static_cast<int>(hi * 2); ++i) v.push_back(i / 2.0);
  return v;
}

std::vector<double> whole_steps(int hi) {
  std::vector<double> v;
  for (int i = 0; i <= hi; ++i) v.push_back(i);
  return v;
}

bool is_alignment_like(const std::string& knob) {
  return knob.find("alignment") != std::string::npos || knob == "grant_tx_os";
}

struct Slot {
  const KnobSpec* spec;
  std::optional<int> key;
  std::vector<double> values;
};

struct Evaluation {
  std::size_t matched = 0;
  std::vector<bool> hits;
};

Evaluation evaluate(const GoldenTable& g, const AssumptionProfile& p) {
  Evaluation e;
  e.hits.reserve(g.cells.size());
  for (const auto& c : g.cells) {
    const bool hit = matches_printed(evaluate_cell(c, p), c.printed);
    e.hits.push_back(hit);
    e.matched += hit ? 1 : 0;
  }
  return e;
}

// True when `a` should replace the incumbent `b` at equal match count.
bool preferred(double a, double b, double current) {
  if (b == current) return false;
  if (a == current) return true;
  return std::fabs(a) < std::fabs(b);
}

}  // namespace

double GoldenCell::published_ms() const { return std::stod(printed); }

std::string GoldenCell::key() const {
  std::ostringstream o;
  o << table << '/';
  if (plane == Plane::cp) {
    o << duplex;
  } else {
    o << mode_label(*mode);
  }
  o << '/' << scs_khz << '/' << tti;
  if (plane == Plane::up) o << '/' << retx;
  return o.str();
}

GoldenTable parse_golden(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("golden table: ") + e.what());
  }
  GoldenTable t;
  std::vector<std::string> errors;
  try {
    t.name = doc.at("name").get<std::string>();
    const auto plane = doc.at("plane").get<std::string>();
    if (plane != "up" && plane != "cp") throw ConfigError("plane must be up or cp");
    const std::string table_duplex = doc.value("duplex", "");
    int i = 0;
    for (const auto& c : doc.at("cells")) {
      ++i;
      GoldenCell cell;
      cell.table = t.name;
      cell.plane = plane == "cp" ? Plane::cp : Plane::up;
      cell.duplex = c.value("duplex", table_duplex);
      cell.scs_khz = c.at("scs").get<int>();
      cell.tti = c.at("tti").get<int>();
      cell.printed = c.at("printed").get<std::string>();
      cell.origin = c.at("origin").get<std::string>();
      try {
        Numerology::from_khz(cell.scs_khz);
        TtiConfig{cell.tti};
        DuplexConfig::from_name(cell.duplex);
        if (cell.plane == Plane::up) {
          cell.mode = mode_from_name(c.at("mode").get<std::string>());
          cell.retx = c.at("retx").get<int>();
        }
        std::size_t used = 0;
        std::stod(cell.printed, &used);
        if (used != cell.printed.size()) throw ConfigError("printed value '" + cell.printed + "' is not a number");
      } catch (const std::exception& e) {
        errors.push_back("cell " + std::to_string(i) + ": " + e.what());
        continue;
      }
      t.cells.push_back(std::move(cell));
    }
  } catch (const json::exception& e) {
    errors.push_back(e.what());
  }
  if (!errors.empty()) {
    std::string msg = "invalid golden table:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg, errors);
  }
  return t;
}

GoldenTable builtin_golden(const std::string& name) {
  if (name == "up-fdd") return parse_golden(std::string(resource("golden/up_fdd.json")));
  if (name == "up-tdd") return parse_golden(std::string(resource("golden/up_tdd.json")));
  if (name == "cp") return parse_golden(std::string(resource("golden/cp.json")));
  throw ConfigError("unknown golden table '" + name + "' (allowed: up-fdd, up-tdd, cp)");
}

std::vector<GoldenTable> builtin_goldens() {
  return {builtin_golden("up-fdd"), builtin_golden("up-tdd"), builtin_golden("cp")};
}

GoldenTable merge(const std::vector<GoldenTable>& tables, const std::string& name) {
  GoldenTable out{name, {}};
  for (const auto& t : tables) out.cells.insert(out.cells.end(), t.cells.begin(), t.cells.end());
  return out;
}

Ticks evaluate_cell(const GoldenCell& cell, const AssumptionProfile& profile) {
  const auto num = Numerology::from_khz(cell.scs_khz);
  const TtiConfig tti{cell.tti};
  const auto duplex = DuplexConfig::from_name(cell.duplex);
  if (cell.plane == Plane::cp) return cp_total(build_cp_ledger(duplex, num), num, tti);
  return up_latency(UpScenario::make(*cell.mode, num, tti, duplex, cell.retx), profile).total;
}

std::string reachability_label(Reachability r) {
  switch (r) {
    case Reachability::unknown: return "not searched";
    case Reachability::reachable: return "reachable";
    case Reachability::unreachable: return "unreachable";
  }
  return "?";
}

FitReport residual_report(const AssumptionProfile& profile, const std::vector<GoldenTable>& goldens) {
  FitReport r;
  r.knobs = profile.knobs;
  for (const auto& g : goldens) {
    for (const auto& c : g.cells) {
      CellResidual cr;
      cr.cell = c;
      cr.computed = evaluate_cell(c, profile);
      cr.computed_printed = format_decimals(cr.computed, printed_decimals(c.printed));
      cr.residual_ms = to_ms(cr.computed) - c.published_ms();
      cr.matched = cr.computed_printed == c.printed;
      r.matched += cr.matched ? 1 : 0;
      r.cells.push_back(std::move(cr));
    }
  }
  return r;
}

FitReport fit_knobs(const GoldenTable& golden, const SearchSpace& space,
                    const AssumptionProfile& profile, const CellFilter& priority) {
  if (space.empty()) throw ConfigError("empty calibration search space");
  std::vector<Slot> slots;
  for (const auto& kc : space) {
    if (kc.values.empty())
      throw ConfigError("no candidates for knob " + kc.knob +
                        (kc.key ? "[" + std::to_string(*kc.key) + "]" : ""));
    Slot s{&knob_spec(kc.knob), kc.key, kc.values};
    std::sort(s.values.begin(), s.values.end());
    s.values.erase(std::unique(s.values.begin(), s.values.end()), s.values.end());
    slots.push_back(std::move(s));
  }

  AssumptionProfile work = profile;
  std::vector<double> current;
  for (auto& s : slots) {
    double v = 0;
    try {
      v = knob_value(work.knobs, *s.spec, s.key);
    } catch (const ConfigError&) {
      v = s.values.front();
      set_knob(work.knobs, *s.spec, s.key, v);
    }
    if (std::find(s.values.begin(), s.values.end(), v) == s.values.end()) {
      s.values.insert(std::upper_bound(s.values.begin(), s.values.end(), v), v);
    }
    current.push_back(v);
  }
  const std::vector<double> initial = current;

  std::vector<bool> ever(golden.cells.size(), false);
  std::vector<bool> first(golden.cells.size(), false);
  if (priority)
    for (std::size_t i = 0; i < golden.cells.size(); ++i) first[i] = priority(golden.cells[i]);
  const std::size_t weight = golden.cells.size() + 1;
  auto score = [&](const AssumptionProfile& p) {
    auto e = evaluate(golden, p);
    std::size_t prio = 0;
    for (std::size_t i = 0; i < e.hits.size(); ++i) {
      ever[i] = ever[i] || e.hits[i];
      if (e.hits[i] && first[i]) ++prio;
    }
    return prio * weight + e.matched;
  };

  std::vector<std::string> log;
  std::size_t joint = 1;
  for (const auto& s : slots) {
    joint *= s.values.size();
    if (joint > kExhaustiveLimit) break;
  }

  if (joint <= kExhaustiveLimit) {
    std::vector<std::size_t> idx(slots.size(), 0);
    std::size_t best_score = 0;
    std::vector<double> best;
    bool have = false;
    while (true) {
      std::vector<double> cand;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        cand.push_back(slots[i].values[idx[i]]);
        set_knob(work.knobs, *slots[i].spec, slots[i].key, cand.back());
      }
      const auto sc = score(work);
      bool take = !have || sc > best_score;
      if (have && sc == best_score) {
        // Lexicographic preference over slots, applied slot by slot.
        for (std::size_t i = 0; i < slots.size(); ++i) {
          if (cand[i] == best[i]) continue;
          take = preferred(cand[i], best[i], initial[i]);
          break;
        }
      }
      if (take) {
        best_score = sc;
        best = cand;
        have = true;
      }
      std::size_t i = 0;
      while (i < slots.size() && ++idx[i] == slots[i].values.size()) idx[i++] = 0;
      if (i == slots.size()) break;
    }
    current = best;
    for (std::size_t i = 0; i < slots.size(); ++i)
      set_knob(work.knobs, *slots[i].spec, slots[i].key, current[i]);
  } else {
    bool improved = true;
    for (int round = 0; improved && round < 16; ++round) {
      improved = false;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        std::size_t best_score = 0;
        double best = current[i];
        bool have = false;
        for (double v : slots[i].values) {
          set_knob(work.knobs, *slots[i].spec, slots[i].key, v);
          const auto sc = score(work);
          if (!have || sc > best_score || (sc == best_score && preferred(v, best, current[i]))) {
            best_score = sc;
            best = v;
            have = true;
          }
        }
        set_knob(work.knobs, *slots[i].spec, slots[i].key, best);
        if (best != current[i]) improved = true;
        current[i] = best;
      }
    }
  }

  FitReport r = residual_report(work, {golden});
  for (std::size_t i = 0; i < r.cells.size(); ++i)
    r.cells[i].reachable = ever[i] ? Reachability::reachable : Reachability::unreachable;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    std::ostringstream o;
    o << slots[i].spec->name;
    if (slots[i].key) o << '[' << *slots[i].key << ']';
    o << ": " << initial[i] << " -> " << current[i] << " (" << slots[i].values.size() << " candidates)";
    log.push_back(o.str());
  }
  r.log = std::move(log);
  return r;
}

SearchSpace default_search_space(const std::string& knob, const GoldenTable& golden) {
  const auto& spec = knob_spec(knob);
  std::vector<int> keys;
  for (const auto& c : golden.cells) {
    const int k = spec.shape == KnobShape::per_scs ? c.scs_khz : c.tti;
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  }
  SearchSpace out;
  if (spec.shape == KnobShape::scalar) {
    std::vector<double> values = knob == "gnb_14os_processing_os" ? whole_steps(28) : half_steps(4);
    out.push_back({knob, std::nullopt, values});
    return out;
  }
  for (int k : keys) {
    std::vector<double> values;
    if (spec.shape == KnobShape::per_scs) {
      values = whole_steps(48);
    } else if (is_alignment_like(knob)) {
      values = half_steps(2.0 * k);
    } else {
      values = half_steps(4);
    }
    out.push_back({knob, k, values});
  }
  return out;
}

const std::vector<CalibrationFamily>& calibration_families() {
  const auto up = [](const GoldenCell& c) { return c.plane == Plane::up; };
  static const std::vector<CalibrationFamily> families{
      {"gnb_14os_processing", {"gnb_14os_processing_os"},
       [up](const GoldenCell& c) {
         return up(c) && c.duplex == "fdd" && c.retx == 0 && c.tti == 14 && c.mode != LinkMode::ul_sr;
       }},
      {"dl_alignment", {"dl_alignment_os"},
       [up](const GoldenCell& c) { return up(c) && c.duplex == "fdd" && c.retx == 0 && c.mode == LinkMode::dl; }},
      {"ul_cg_alignment", {"ul_cg_alignment_os"},
       [up](const GoldenCell& c) { return up(c) && c.duplex == "fdd" && c.retx == 0 && c.mode == LinkMode::ul_cg; }},
      {"harq_feedback", {"harq_feedback_os"},
       [up](const GoldenCell& c) { return up(c) && c.retx > 0 && c.mode != LinkMode::ul_sr; }},
      {"dl_harq_alignment", {"dl_harq_alignment_os"},
       [up](const GoldenCell& c) { return up(c) && c.retx > 0 && c.mode == LinkMode::dl; }},
      {"ul_harq_alignment", {"ul_harq_alignment_os"},
       [up](const GoldenCell& c) { return up(c) && c.retx > 0 && c.mode == LinkMode::ul_cg; }},
      {"sr_timing", {"sr_alignment_os", "sr_tx_os"},
       [up](const GoldenCell& c) { return up(c) && c.duplex == "fdd" && c.mode == LinkMode::ul_sr; }},
      {"sr_grant_decode", {"sr_grant_decode_os"},
       [up](const GoldenCell& c) {
         return up(c) && c.duplex == "fdd" && c.mode == LinkMode::ul_sr && c.tti >= 7;
       }},
      {"sr_grant_alignment", {"sr_grant_alignment_os"},
       [up](const GoldenCell& c) { return up(c) && c.duplex == "fdd" && c.mode == LinkMode::ul_sr; }},
      {"tdd_sr_alignment", {"tdd_sr_alignment_os"},
       [up](const GoldenCell& c) { return up(c) && c.duplex != "fdd" && c.mode == LinkMode::ul_sr; }},
  };
  return families;
}

FitReport calibrate(const AssumptionProfile& base, const std::vector<GoldenTable>& goldens) {
  const auto all = merge(goldens, "all");
  AssumptionProfile work = base;
  std::map<std::string, Reachability> reach;
  std::vector<std::string> log;
  constexpr int kMaxPasses = 8;
  for (int pass = 1; pass <= kMaxPasses; ++pass) {
    const std::string before = profile_to_json(work);
    log.push_back("pass " + std::to_string(pass));
    for (const auto& fam : calibration_families()) {
      GoldenTable slice{fam.name, {}};
      for (const auto& c : all.cells)
        if (fam.selects(c)) slice.cells.push_back(c);
      if (slice.cells.empty()) continue;
      SearchSpace space;
      for (const auto& k : fam.knobs) {
        auto s = default_search_space(k, slice);
        space.insert(space.end(), s.begin(), s.end());
      }
      const auto fit =
          fit_knobs(slice, space, work, [](const GoldenCell& c) { return c.retx == 0; });
      work.knobs = fit.knobs;
      log.push_back(fam.name + ": " + std::to_string(fit.matched) + "/" +
                    std::to_string(fit.total()) + " cells");
      for (const auto& l : fit.log) log.push_back("  " + l);
      for (const auto& c : fit.cells) {
        auto& r = reach[c.cell.key()];
        if (c.reachable == Reachability::reachable || r == Reachability::unknown) r = c.reachable;
      }
    }
    if (profile_to_json(work) == before) break;
  }
  FitReport out = residual_report(work, goldens);
  for (auto& c : out.cells) {
    const auto it = reach.find(c.cell.key());
    c.reachable = it == reach.end() ? Reachability::unknown : it->second;
    if (c.matched) c.reachable = Reachability::reachable;
  }
  out.log = std::move(log);
  return out;
}

std::string render_fit_markdown(const FitReport& r, const std::string& title) {
  std::ostringstream o;
  o << "# " << title << "\n\n";
  o << "Matched " << r.matched << " of " << r.total() << " cells (" << format_fixed(r.coverage() * 100, 1)
    << "%) at the published precision.\n\n";
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_table;
  for (const auto& c : r.cells) {
    auto& pt = per_table[c.cell.table];
    pt.second++;
    if (c.matched) pt.first++;
  }
  o << "| table | matched | cells |\n|---|---|---|\n";
  for (const auto& [t, v] : per_table) o << "| " << t << " | " << v.first << " | " << v.second << " |\n";
  if (!r.log.empty()) {
    o << "\n## Search log\n\n```\n";
    for (const auto& l : r.log) o << l << '\n';
    o << "```\n";
  }
  o << "\n## Mismatched cells\n\n";
  if (r.mismatched() == 0) {
    o << "None.\n";
  } else {
    o << "| cell | published | computed | residual (ms) | reachability | origin |\n"
         "|---|---|---|---|---|---|\n";
    for (const auto& c : r.cells) {
      if (c.matched) continue;
      o << "| " << c.cell.key() << " | " << c.cell.printed << " | " << c.computed_printed << " | "
        << format_fixed(c.residual_ms, 4) << " | "
        << reachability_label(c.reachable) << " | " << c.cell.origin << " |\n";
    }
  }
  return o.str();
}

std::string render_fit_csv(const FitReport& r) {
  std::ostringstream o;
  o << "cell,table,published,computed,computed_ms,residual_ms,matched,reachability\n";
  for (const auto& c : r.cells) {
    o << c.cell.key() << ',' << c.cell.table << ',' << c.cell.printed << ',' << c.computed_printed
      << ',' << format_decimals(c.computed, 6) << ','
      << format_fixed(c.residual_ms, 6) << ','
      << (c.matched ? "yes" : "no") << ',' << reachability_label(c.reachable) << '\n';
  }
  return o.str();
}

}  // namespace nrlat
