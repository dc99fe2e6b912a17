#include "nrlat/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nrlat/errors.hpp"

namespace nrlat {
namespace {

using nlohmann::json;

const char* kOrdinals[] = {"1st Tx", "2nd Tx", "3rd Tx", "4th Tx"};

std::string symbols_text(Ticks t, Numerology n) {
  const auto sym = n.symbol_duration().count();
  if (t.count() % sym == 0) return std::to_string(t.count() / sym);
  return format_fixed(static_cast<double>(t.count()) / static_cast<double>(sym), 3);
}

std::string tag_letter(ThresholdTag t) {
  switch (t) {
    case ThresholdTag::urllc_ok: return "U";
    case ThresholdTag::embb_ok: return "E";
    case ThresholdTag::above: return "-";
  }
  return "?";
}

std::string breakdown_text(const LatencyResult& r) {
  std::string s;
  for (const auto& c : r.components) {
    if (!s.empty()) s += ';';
    s += c.label + '=' + symbols_text(c.duration, r.scenario.scs);
  }
  return s;
}

Ticks ticks_from_ms_approx(double ms) { return Ticks{std::llround(ms * kTicksPerMs)}; }

std::string range_text(double lo, double hi) {
  const auto a = format_significant(ticks_from_ms_approx(lo));
  const auto b = format_significant(ticks_from_ms_approx(hi));
  return a == b ? a : a + "-" + b;
}

std::vector<int> int_list(const json& v, const std::string& field, std::vector<std::string>& errors) {
  std::vector<int> out;
  if (v.is_number_integer()) {
    out.push_back(v.get<int>());
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number_integer()) {
        errors.push_back(field + ": entries must be integers");
        return {};
      }
      out.push_back(e.get<int>());
    }
  } else {
    errors.push_back(field + ": expected an integer or a list of integers");
  }
  return out;
}

std::vector<std::string> string_list(const json& v, const std::string& field,
                                     std::vector<std::string>& errors) {
  std::vector<std::string> out;
  if (v.is_string()) {
    out.push_back(v.get<std::string>());
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_string()) {
        errors.push_back(field + ": entries must be strings");
        return {};
      }
      out.push_back(e.get<std::string>());
    }
  } else {
    errors.push_back(field + ": expected a string or a list of strings");
  }
  return out;
}

bool get_bool(const json& v, const std::string& field, std::vector<std::string>& errors) {
  if (!v.is_boolean()) {
    errors.push_back(field + ": expected true or false");
    return false;
  }
  return v.get<bool>();
}

}  // namespace

Format format_from_name(const std::string& name) {
  if (name == "md" || name == "markdown") return Format::markdown;
  if (name == "csv") return Format::csv;
  throw ConfigError("format '" + name + "' not in {md, csv}");
}

std::vector<int> ScenarioConfig::ttis_for(const std::string& duplex_name) const {
  if (!tti.empty()) return tti;
  if (duplex_name == "fdd" && plane == Plane::up) return {14, 7, 4, 2};
  return {14, 7, 4};
}

ScenarioConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  ScenarioConfig c;
  std::vector<std::string> errors;
  std::string direction = "both";
  std::vector<std::string> ul_modes{"sr", "cg"};
  bool tti_given = false;
  bool duplex_given = false;

  for (const auto& [key, v] : doc.items()) {
    if (key == "plane") {
      const auto p = v.is_string() ? v.get<std::string>() : "";
      if (p == "up") {
        c.plane = Plane::up;
      } else if (p == "cp") {
        c.plane = Plane::cp;
      } else {
        errors.push_back("plane: expected one of {up, cp}");
      }
    } else if (key == "duplex") {
      duplex_given = true;
      c.duplex = string_list(v, "duplex", errors);
      for (const auto& d : c.duplex) {
        const auto& names = duplex_preset_names();
        if (std::find(names.begin(), names.end(), d) == names.end())
          errors.push_back("duplex: '" + d + "' not in {fdd, tdd-uldl, tdd-uldldldl}");
      }
    } else if (key == "pattern_phase") {
      if (!v.is_number_integer() || v.get<int>() < 0) {
        errors.push_back("pattern_phase: expected a non-negative integer");
      } else {
        c.pattern_phase = v.get<int>();
      }
    } else if (key == "scs") {
      c.scs = int_list(v, "scs", errors);
      for (int s : c.scs)
        if (s != 15 && s != 30 && s != 120)
          errors.push_back("scs: " + std::to_string(s) + " not in allowed set {15, 30, 120}");
    } else if (key == "tti") {
      tti_given = true;
      c.tti = int_list(v, "tti", errors);
      for (int t : c.tti)
        if (t != 14 && t != 7 && t != 4 && t != 2)
          errors.push_back("tti: " + std::to_string(t) + " not in allowed set {2, 4, 7, 14}");
    } else if (key == "direction") {
      direction = v.is_string() ? v.get<std::string>() : "";
      if (direction != "dl" && direction != "ul" && direction != "both")
        errors.push_back("direction: expected one of {dl, ul, both}");
    } else if (key == "ul_mode") {
      ul_modes = string_list(v, "ul_mode", errors);
      for (const auto& m : ul_modes)
        if (m != "sr" && m != "cg" && m != "sps")
          errors.push_back("ul_mode: '" + m + "' not in {sr, cg}");
    } else if (key == "retx_max") {
      if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() > 3) {
        errors.push_back("retx_max: expected an integer in 0..3");
      } else {
        c.retx_max = v.get<int>();
      }
    } else if (key == "profile") {
      if (!v.is_string()) {
        errors.push_back("profile: expected a file path");
      } else {
        c.profile = v.get<std::string>();
      }
    } else if (key == "overrides") {
      if (!v.is_object()) {
        errors.push_back("overrides: expected an object of knob values");
      } else {
        c.overrides = v.dump();
        try {
          AssumptionKnobs probe;
          apply_overrides(probe, c.overrides);
        } catch (const ConfigError& e) {
          for (const auto& p : e.problems()) errors.push_back("overrides: " + p);
          if (e.problems().empty()) errors.push_back(std::string("overrides: ") + e.what());
        }
      }
    } else if (key == "format") {
      try {
        c.format = format_from_name(v.is_string() ? v.get<std::string>() : "");
      } catch (const ConfigError& e) {
        errors.push_back(std::string("format: ") + e.what());
      }
    } else if (key == "oracle_resolution") {
      if (!v.is_number_integer() || v.get<int>() < 1 || 64 % v.get<int>() != 0) {
        errors.push_back("oracle_resolution: expected a power of two between 1 and 64");
      } else {
        c.oracle_resolution = v.get<int>();
      }
    } else if (key == "oracle") {
      c.oracle = get_bool(v, key, errors);
    } else if (key == "check") {
      c.check = get_bool(v, key, errors);
    } else if (key == "breakdown") {
      c.breakdown = get_bool(v, key, errors);
    } else {
      errors.push_back("unknown key '" + key + "'");
    }
  }

  c.modes.clear();
  if (direction == "dl" || direction == "both") c.modes.push_back(LinkMode::dl);
  if (direction == "ul" || direction == "both") {
    for (const auto& m : ul_modes) {
      const auto lm = m == "sr" ? LinkMode::ul_sr : LinkMode::ul_cg;
      if (std::find(c.modes.begin(), c.modes.end(), lm) == c.modes.end()) c.modes.push_back(lm);
    }
  }
  if (c.plane == Plane::cp && !duplex_given) c.duplex = duplex_preset_names();
  if (c.plane == Plane::cp && c.oracle)
    errors.push_back("oracle: cross-check is only available for the up plane");

  if (tti_given) {
    for (const auto& d : c.duplex)
      if (d != "fdd" && std::count(c.tti.begin(), c.tti.end(), 2) > 0)
        errors.push_back("unsupported combination: duplex " + d +
                         " with tti 2 (TDD is evaluated for 14, 7 and 4 symbols)");
  }
  for (const auto& d : c.duplex)
    if (d == "fdd" && c.pattern_phase != 0)
      errors.push_back("pattern_phase: only meaningful for TDD presets");
  for (const auto& d : c.duplex) {
    const int len = d == "tdd-uldl" ? 2 : d == "tdd-uldldldl" ? 4 : 1;
    if (d != "fdd" && c.pattern_phase >= len)
      errors.push_back("pattern_phase: " + std::to_string(c.pattern_phase) + " outside the " +
                       std::to_string(len) + "-slot pattern of " + d);
  }
  if (c.duplex.empty()) errors.push_back("duplex: at least one preset required");
  if (c.scs.empty()) errors.push_back("scs: at least one value required");
  if (tti_given && c.tti.empty()) errors.push_back("tti: at least one value required");
  if (c.modes.empty()) errors.push_back("ul_mode: at least one mode required");

  if (!errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg, errors);
  }
  return c;
}

void validate(const ScenarioConfig& c) {
  json j;
  j["plane"] = c.plane == Plane::cp ? "cp" : "up";
  j["duplex"] = c.duplex;
  j["pattern_phase"] = c.pattern_phase;
  j["scs"] = c.scs;
  if (!c.tti.empty()) j["tti"] = c.tti;
  j["retx_max"] = c.retx_max;
  j["oracle_resolution"] = c.oracle_resolution;
  parse_config(j.dump());
  if (c.modes.empty()) throw ConfigError("invalid config:\n  no direction/mode selected");
}

AssumptionProfile resolve_profile(const ScenarioConfig& c) {
  auto p = c.profile.empty() ? default_profile() : load_profile(c.profile);
  if (!c.overrides.empty()) apply_overrides(p.knobs, c.overrides);
  return p;
}

std::string render_cp(const CpTable& t, Format f) {
  std::ostringstream o;
  if (f == Format::csv) {
    o << "duplex,scs_khz,tti_os,ttis,tti_ms,fixed_ms,latency_ms,printed\n";
    for (const auto& c : t.cells)
      o << c.duplex << ',' << c.num.khz() << ',' << c.tti.length_os() << ',' << c.ttis << ','
        << format_decimals(c.tti_duration, 6) << ',' << format_decimals(c.fixed, 6) << ','
        << format_decimals(c.total, 6) << ',' << format_cp(c.total) << '\n';
    return o.str();
  }
  std::vector<std::string> duplexes;
  std::vector<int> scs, ttis;
  for (const auto& c : t.cells) {
    if (std::find(duplexes.begin(), duplexes.end(), c.duplex) == duplexes.end()) duplexes.push_back(c.duplex);
    if (std::find(scs.begin(), scs.end(), c.num.khz()) == scs.end()) scs.push_back(c.num.khz());
    if (std::find(ttis.begin(), ttis.end(), c.tti.length_os()) == ttis.end()) ttis.push_back(c.tti.length_os());
  }
  for (const auto& d : duplexes) {
    o << "## CP latency (ms), " << d << "\n\n| TTI |";
    for (int s : scs) o << ' ' << s << " kHz |";
    o << "\n|---|";
    for (std::size_t i = 0; i < scs.size(); ++i) o << "---|";
    o << '\n';
    for (int l : ttis) {
      o << "| " << l << "-symbol TTI |";
      for (int s : scs)
        for (const auto& c : t.cells)
          if (c.duplex == d && c.num.khz() == s && c.tti.length_os() == l)
            o << ' ' << format_cp(c.total) << " |";
      o << '\n';
    }
    o << '\n';
  }
  return o.str();
}

std::string render_ledger(const CpLedger& l, Format f) {
  std::ostringstream o;
  const auto cost = [](const CpStep& s) {
    return s.ttis ? std::to_string(*s.ttis) + " TTI" : format_significant(*s.fixed, 2) + " ms";
  };
  if (f == Format::csv) {
    o << "duplex,scs_class,index,description,ttis,fixed_ms\n";
    for (const auto& s : l.steps)
      o << l.duplex << ',' << scs_class_label(l.scs_class) << ',' << s.index << ',' << s.description
        << ',' << (s.ttis ? std::to_string(*s.ttis) : "") << ','
        << (s.fixed ? format_decimals(*s.fixed, 3) : "") << '\n';
    return o.str();
  }
  o << "### CP ledger, " << l.duplex << ", " << scs_class_label(l.scs_class) << " kHz\n\n";
  o << "| # | Description | Latency |\n|---|---|---|\n";
  for (const auto& s : l.steps) o << "| " << s.index << " | " << s.description << " | " << cost(s) << " |\n";
  o << "| | Total delay | " << l.total_ttis() << " TTI + " << format_significant(l.total_fixed(), 2)
    << " ms |\n\n";
  return o.str();
}

std::string render_up(const std::vector<UpCell>& cells, Format f, bool breakdown,
                      const std::vector<OracleResult>* oracle) {
  std::ostringstream o;
  if (f == Format::csv) {
    o << "duplex,mode,scs_khz,tti_os,retx,latency_ms,printed,tag";
    if (oracle) o << ",oracle_ms,oracle_minus_closed_os";
    if (breakdown) o << ",breakdown_os";
    o << '\n';
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& r = cells[i].result;
      const auto& s = r.scenario;
      o << s.duplex.name() << ',' << mode_label(s.mode()) << ',' << s.scs.khz() << ','
        << s.tti.length_os() << ',' << s.harq_retx << ',' << format_decimals(r.total, 6) << ','
        << format_significant(r.total) << ',' << tag_label(cells[i].tag);
      if (oracle) {
        const auto& w = (*oracle)[i];
        o << ',' << format_decimals(w.worst_case, 6) << ','
          << symbols_text(w.worst_case - r.total, s.scs);
      }
      if (breakdown) o << ',' << breakdown_text(r);
      o << '\n';
    }
    return o.str();
  }

  // One table per duplex; rows mode x retx, columns scs x tti.
  std::vector<std::string> duplexes;
  std::vector<std::pair<int, int>> cols;
  std::vector<std::pair<LinkMode, int>> rows;
  for (const auto& c : cells) {
    const auto& s = c.result.scenario;
    if (std::find(duplexes.begin(), duplexes.end(), s.duplex.name()) == duplexes.end())
      duplexes.push_back(s.duplex.name());
    const std::pair<int, int> col{s.scs.khz(), s.tti.length_os()};
    if (std::find(cols.begin(), cols.end(), col) == cols.end()) cols.push_back(col);
    const std::pair<LinkMode, int> row{s.mode(), s.harq_retx};
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
  }
  const auto find = [&](const std::string& d, std::pair<LinkMode, int> row,
                        std::pair<int, int> col) -> long {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& s = cells[i].result.scenario;
      if (s.duplex.name() == d && s.mode() == row.first && s.harq_retx == row.second &&
          s.scs.khz() == col.first && s.tti.length_os() == col.second)
        return static_cast<long>(i);
    }
    return -1;
  };
  const auto table = [&](const std::string& d, const std::string& title, auto cell_text) {
    o << "## " << title << ", " << d << "\n\n| Mode | Tx |";
    for (const auto& [s, l] : cols) o << ' ' << s << " kHz " << l << "os |";
    o << "\n|---|---|";
    for (std::size_t i = 0; i < cols.size(); ++i) o << "---|";
    o << '\n';
    for (const auto& row : rows) {
      o << "| " << mode_title(row.first) << " | " << kOrdinals[row.second] << " |";
      for (const auto& col : cols) {
        const long i = find(d, row, col);
        o << ' ' << (i < 0 ? std::string("n/a") : cell_text(static_cast<std::size_t>(i))) << " |";
      }
      o << '\n';
    }
    o << '\n';
  };
  for (const auto& d : duplexes) {
    table(d, "UP one-way latency (ms)", [&](std::size_t i) {
      return format_significant(cells[i].result.total) + ' ' + tag_letter(cells[i].tag);
    });
    if (oracle) {
      table(d, "Oracle worst case (ms)", [&](std::size_t i) {
        return format_significant((*oracle)[i].worst_case);
      });
      table(d, "Oracle minus closed form (symbols)", [&](std::size_t i) {
        return symbols_text((*oracle)[i].worst_case - cells[i].result.total, cells[i].result.scenario.scs);
      });
    }
  }
  o << "Tags: U = within 1 ms, E = within 4 ms, - = above 4 ms.\n";
  if (breakdown) {
    o << "\n## Breakdown (symbols)\n\n| Cell | Components | Total |\n|---|---|---|\n";
    for (const auto& c : cells) {
      const auto& r = c.result;
      o << "| " << r.scenario.describe() << " | " << breakdown_text(r) << " | "
        << symbols_text(r.total, r.scenario.scs) << " |\n";
    }
  }
  return o.str();
}

std::string render_verdicts(const std::vector<ComplianceVerdict>& v, Format f) {
  std::ostringstream o;
  if (f == Format::csv) {
    o << "plane,category,required_ms,obtained_min_ms,obtained_max_ms,overall_min_ms,overall_max_ms,"
         "obtained,met,aspirational_met,contributing,evaluated\n";
    for (const auto& x : v)
      o << plane_label(x.requirement.plane) << ',' << category_label(x.requirement.category) << ','
        << format_fixed(x.requirement.required_ms, 1) << ',' << format_fixed(x.obtained_min_ms, 6)
        << ',' << format_fixed(x.obtained_max_ms, 6) << ',' << format_fixed(x.overall_min_ms, 6)
        << ',' << format_fixed(x.overall_max_ms, 6) << ','
        << range_text(x.obtained_min_ms, x.obtained_max_ms) << ',' << (x.met ? "yes" : "no") << ','
        << (x.aspirational_met ? "yes" : "no") << ',' << x.contributing.size() << ',' << x.evaluated
        << '\n';
    return o.str();
  }
  o << "## Compliance\n\n| Plane | Category | Requirement | Obtained (ms) | Requirement met? | Comment |\n"
       "|---|---|---|---|---|---|\n";
  for (const auto& x : v) {
    o << "| " << plane_label(x.requirement.plane) << " | " << category_label(x.requirement.category)
      << " | " << format_fixed(x.requirement.required_ms, 0) << " ms";
    if (x.requirement.aspirational_ms)
      o << " (" << format_fixed(*x.requirement.aspirational_ms, 0) << " ms aspirational)";
    o << " | " << (x.contributing.empty() ? std::string("none") : range_text(x.obtained_min_ms, x.obtained_max_ms))
      << " | " << (x.met ? "Yes" : "No") << " | " << x.comment;
    if (x.requirement.aspirational_ms)
      o << "; aspirational " << (x.aspirational_met ? "reached" : "not reached");
    o << " |\n";
  }
  return o.str();
}

std::string render_trace(const OracleResult& r, Format f) {
  std::ostringstream o;
  if (f == Format::csv) {
    o << "index,kind,label,start_ms,end_ms,duration_ms\n";
    int i = 0;
    const Ticks origin = r.worst_offset;
    for (const auto& e : r.trace)
      o << ++i << ',' << event_kind_label(e.kind) << ',' << e.label << ','
        << format_decimals(e.start - origin, 6) << ',' << format_decimals(e.end - origin, 6) << ','
        << format_decimals(e.end - e.start, 6) << '\n';
    return o.str();
  }
  o << "## Oracle worst case: " << r.scenario.describe() << "\n\n";
  o << "worst offset " << format_decimals(r.worst_offset, 6) << " ms within a "
    << format_decimals(r.hyperperiod, 6) << " ms hyperperiod\n\n```\n" << explain(r) << "```\n";
  return o.str();
}

std::string render_offsets(const OracleResult& r) {
  std::ostringstream o;
  o << "offset_ms,latency_ms\n";
  for (const auto& s : r.per_offset)
    o << format_decimals(s.offset, 6) << ',' << format_decimals(s.latency, 6) << '\n';
  return o.str();
}

std::vector<EvaluatedConfig> evaluated_configs(const std::vector<UpCell>& cells) {
  std::vector<EvaluatedConfig> out;
  for (const auto& c : cells) {
    const auto& s = c.result.scenario;
    std::vector<UsageCategory> cats{UsageCategory::urllc};
    if (s.scs.scs() == Scs::khz15) cats.push_back(UsageCategory::embb);
    out.push_back({"UP " + s.describe(), Plane::up, cats, c.result.total_ms()});
  }
  return out;
}

std::vector<EvaluatedConfig> evaluated_configs(const CpTable& table) {
  std::vector<EvaluatedConfig> out;
  for (const auto& c : table.cells) {
    std::vector<UsageCategory> cats;
    if (c.tti.is_slot() && c.duplex != "fdd") cats.push_back(UsageCategory::embb);
    if (!c.tti.is_slot()) cats.push_back(UsageCategory::urllc);
    std::ostringstream label;
    label << "CP " << c.duplex << ' ' << c.num.khz() << "kHz " << c.tti.length_os() << "os";
    out.push_back({label.str(), Plane::cp, cats, to_ms(c.total)});
  }
  return out;
}

std::vector<EvaluatedConfig> observation_configs(const AssumptionProfile& profile) {
  std::vector<Numerology> scs;
  for (auto s : kAllScs) scs.emplace_back(s);
  const std::vector<TtiConfig> up_ttis{TtiConfig{14}, TtiConfig{7}, TtiConfig{4}, TtiConfig{2}};
  const std::vector<TtiConfig> cp_ttis{TtiConfig{14}, TtiConfig{7}, TtiConfig{4}};
  auto out = evaluated_configs(up_table({LinkMode::dl, LinkMode::ul_sr, LinkMode::ul_cg}, scs, up_ttis,
                                        3, DuplexConfig::fdd(), profile));
  const auto cp = evaluated_configs(cp_table(
      {DuplexConfig::fdd(), DuplexConfig::alternating(), DuplexConfig::dl_heavy()}, scs, cp_ttis));
  out.insert(out.end(), cp.begin(), cp.end());
  return out;
}

Report run(const ScenarioConfig& c) {
  Report rep;
  std::vector<Numerology> scs;
  for (int s : c.scs) scs.push_back(Numerology::from_khz(s));
  std::vector<EvaluatedConfig> evaluated;
  std::ostringstream o;

  if (c.plane == Plane::cp) {
    std::vector<DuplexConfig> duplexes;
    for (const auto& d : c.duplex) duplexes.push_back(DuplexConfig::from_name(d, c.pattern_phase));
    std::vector<TtiConfig> ttis;
    for (int t : c.ttis_for("cp")) ttis.emplace_back(t);
    const auto table = cp_table(duplexes, scs, ttis);
    o << render_cp(table, c.format);
    if (c.breakdown) {
      std::set<std::pair<std::string, ScsClass>> seen;
      for (const auto& d : duplexes)
        for (auto n : scs)
          if (seen.insert({d.name(), scs_class(n)}).second) {
            if (c.format == Format::csv) o << '\n';
            o << render_ledger(build_cp_ledger(d, n), c.format);
          }
    }
    evaluated = evaluated_configs(table);
  } else {
    const auto profile = resolve_profile(c);
    std::vector<UpCell> cells;
    for (const auto& dname : c.duplex) {
      const auto d = DuplexConfig::from_name(dname, dname == "fdd" ? 0 : c.pattern_phase);
      std::vector<TtiConfig> ttis;
      for (int t : c.ttis_for(dname)) ttis.emplace_back(t);
      std::vector<UpCell> part;
      try {
        part = up_table(c.modes, scs, ttis, c.retx_max, d, profile);
      } catch (const ConfigError& e) {
        throw ConfigError("evaluating " + dname + ": " + e.what());
      }
      cells.insert(cells.end(), part.begin(), part.end());
    }
    std::vector<OracleResult> oracle;
    if (c.oracle) {
      OracleOptions opt;
      opt.resolution = c.oracle_resolution;
      for (const auto& cell : cells) oracle.push_back(worst_case(cell.result.scenario, profile, opt));
    }
    o << render_up(cells, c.format, c.breakdown, c.oracle ? &oracle : nullptr);
    evaluated = evaluated_configs(cells);
  }

  if (c.check) {
    const auto verdicts = check(evaluated, default_requirements());
    if (c.format == Format::csv) o << '\n';
    o << (c.format == Format::markdown ? "\n" : "") << render_verdicts(verdicts, c.format);
    for (const auto& v : verdicts)
      if (v.evaluated > 0 && !v.met) rep.exit_code = 1;
  }
  rep.text = o.str();
  return rep;
}

}  // namespace nrlat
