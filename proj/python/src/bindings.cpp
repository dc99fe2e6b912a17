#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nrlat/calibration.hpp"
#include "nrlat/compliance.hpp"
#include "nrlat/cp_model.hpp"
#include "nrlat/errors.hpp"
#include "nrlat/report.hpp"
#include "nrlat/timeline_oracle.hpp"
#include "nrlat/up_model.hpp"

namespace py = pybind11;
using namespace nrlat;

namespace {

AssumptionProfile profile_from(const std::optional<std::string>& path) {
  return path ? load_profile(*path) : default_profile();
}

UpScenario scenario(const std::string& mode, int scs, int tti, const std::string& duplex, int retx,
                    int phase) {
  auto s = UpScenario::make(mode_from_name(mode), Numerology::from_khz(scs), TtiConfig(tti),
                            DuplexConfig::from_name(duplex, phase), retx);
  s.validate();
  return s;
}

py::dict latency(const std::string& mode, int scs, int tti, const std::string& duplex, int retx,
                 int phase, const std::optional<std::string>& profile) {
  const auto p = profile_from(profile);
  const auto r = up_latency(scenario(mode, scs, tti, duplex, retx, phase), p);
  py::list comps;
  for (const auto& c : r.components)
    comps.append(py::dict(py::arg("label") = c.label, py::arg("category") = category_label(c.category),
                          py::arg("ms") = to_ms(c.duration)));
  return py::dict(py::arg("total_ms") = r.total_ms(), py::arg("printed") = format_significant(r.total),
                  py::arg("harq_rtt_ms") = to_ms(r.harq_rtt),
                  py::arg("tag") = tag_label(threshold_tag(r.total_ms())), py::arg("components") = comps);
}

py::dict cp(const std::string& duplex, int scs, int tti) {
  const auto n = Numerology::from_khz(scs);
  const auto l = build_cp_ledger(DuplexConfig::from_name(duplex), n);
  const auto total = cp_total(l, n, TtiConfig(tti));
  py::list steps;
  for (const auto& s : l.steps) {
    py::dict d(py::arg("index") = s.index, py::arg("description") = s.description);
    d["ttis"] = s.ttis ? py::cast(*s.ttis) : py::none();
    d["fixed_ms"] = s.fixed ? py::cast(to_ms(*s.fixed)) : py::none();
    steps.append(d);
  }
  return py::dict(py::arg("ttis") = l.total_ttis(), py::arg("fixed_ms") = to_ms(l.total_fixed()),
                  py::arg("total_ms") = to_ms(total), py::arg("printed") = format_cp(total),
                  py::arg("steps") = steps);
}

py::dict oracle(const std::string& mode, int scs, int tti, const std::string& duplex, int retx,
                int phase, int resolution, const std::optional<std::string>& profile) {
  OracleOptions opt;
  opt.resolution = resolution;
  const auto r = worst_case(scenario(mode, scs, tti, duplex, retx, phase), profile_from(profile), opt);
  py::list trace;
  for (const auto& e : r.trace)
    trace.append(py::dict(py::arg("label") = e.label, py::arg("kind") = event_kind_label(e.kind),
                          py::arg("start_ms") = to_ms(e.start - r.worst_offset),
                          py::arg("end_ms") = to_ms(e.end - r.worst_offset)));
  return py::dict(py::arg("worst_case_ms") = r.worst_case_ms(),
                  py::arg("worst_offset_ms") = to_ms(r.worst_offset),
                  py::arg("hyperperiod_ms") = to_ms(r.hyperperiod), py::arg("trace") = trace);
}

py::list verdicts(const std::optional<std::string>& profile, bool strict) {
  const auto v = check(observation_configs(profile_from(profile)), default_requirements(),
                       strict ? MetSemantics::strict : MetSemantics::existential);
  py::list out;
  for (const auto& x : v)
    out.append(py::dict(py::arg("plane") = plane_label(x.requirement.plane),
                        py::arg("category") = category_label(x.requirement.category),
                        py::arg("required_ms") = x.requirement.required_ms,
                        py::arg("obtained_min_ms") = x.obtained_min_ms,
                        py::arg("obtained_max_ms") = x.obtained_max_ms, py::arg("met") = x.met,
                        py::arg("contributing") = x.contributing, py::arg("comment") = x.comment));
  return out;
}

py::dict residuals(const std::optional<std::string>& profile, bool fit) {
  const std::vector<GoldenTable> goldens{builtin_golden("up-fdd"), builtin_golden("up-tdd")};
  const auto p = profile_from(profile);
  const auto r = fit ? calibrate(p, goldens) : residual_report(p, goldens);
  py::list mismatches;
  for (const auto& c : r.cells)
    if (!c.matched)
      mismatches.append(py::dict(py::arg("cell") = c.cell.key(), py::arg("published") = c.cell.printed,
                                 py::arg("computed") = c.computed_printed,
                                 py::arg("residual_ms") = c.residual_ms,
                                 py::arg("reachability") = reachability_label(c.reachable)));
  return py::dict(py::arg("matched") = r.matched, py::arg("total") = r.total(),
                  py::arg("coverage") = r.coverage(), py::arg("mismatches") = mismatches);
}

py::tuple run_config(const std::string& text) {
  const auto r = run(parse_config(text));
  return py::make_tuple(r.text, r.exit_code);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Worst-case NR radio-interface latency models";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  m.def("up_latency", &latency, py::arg("mode"), py::arg("scs"), py::arg("tti"),
        py::arg("duplex") = "fdd", py::arg("retx") = 0, py::arg("phase") = 0,
        py::arg("profile") = py::none(),
        "Closed-form one-way user-plane latency with its component breakdown.");
  m.def("cp_latency", &cp, py::arg("duplex"), py::arg("scs"), py::arg("tti"),
        "Control-plane ledger and total.");
  m.def("oracle", &oracle, py::arg("mode"), py::arg("scs"), py::arg("tti"), py::arg("duplex") = "fdd",
        py::arg("retx") = 0, py::arg("phase") = 0, py::arg("resolution") = 4,
        py::arg("profile") = py::none(), "Worst case over arrival offsets, with the argmax trace.");
  m.def("threshold_tag", [](double ms) { return tag_label(threshold_tag(ms)); }, py::arg("ms"));
  m.def("check", &verdicts, py::arg("profile") = py::none(), py::arg("strict") = false,
        "Verdicts for the observation tables.");
  m.def("residuals", &residuals, py::arg("profile") = py::none(), py::arg("fit") = false,
        "Residuals against the published UP tables, optionally after calibration.");
  m.def("run_config", &run_config, py::arg("text"), "Render a report from a JSON config; returns (text, exit code).");
  m.def("profile_json", [](const std::optional<std::string>& path) { return profile_to_json(profile_from(path)); },
        py::arg("profile") = py::none());
}
