#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "viscat/analysis.hpp"
#include "viscat/process.hpp"

namespace viscat {

enum class ReportFormat { text, machine };

// Everything a single run may want to report. Sections that were not
// computed stay unset and are omitted from the output; the machine format
// keys the set ones under the fixed names axioms, commutativity, extremal,
// render_profile, chart_junk, intension, questions.
struct ReportBundle {
  std::optional<AxiomReport> axioms;
  std::optional<CommuteReport> commutativity;
  bool extremal_applicable = false;
  std::optional<ExtremalReport> knowledge_terminal;
  std::optional<ExtremalReport> system_initial;
  std::optional<GenEReport> gen_e;

  std::optional<RenderProfile> render_profile;
  std::optional<MorphismStatus> render_status;
  std::optional<ChartJunkReport> chart_junk;
  std::optional<std::string> chart_junk_skipped;
  std::optional<IntensionStatus> intension;
  std::optional<QuestionReport> questions;

  bool validation_requested() const { return axioms.has_value(); }

  bool pass() const {
    if (axioms && !axioms->pass()) return false;
    if (commutativity && !commutativity->pass) return false;
    if (knowledge_terminal && !knowledge_terminal->pass()) return false;
    if (system_initial && !system_initial->pass()) return false;
    if (gen_e && !gen_e->pass()) return false;
    return true;
  }
};

inline ReportBundle bundle_validation(const ValidationReport& v) {
  ReportBundle b;
  b.axioms = v.axioms;
  b.commutativity = v.commutativity;
  b.extremal_applicable = v.knowledge_terminal.has_value();
  b.knowledge_terminal = v.knowledge_terminal;
  b.system_initial = v.system_initial;
  b.gen_e = v.gen_e;
  return b;
}

namespace report_detail {

using json = nlohmann::ordered_json;

inline json to_json(const CommuteFailure& f) {
  json j;
  if (!f.equality_name.empty()) j["name"] = f.equality_name;
  j["left_path"] = f.left.steps;
  j["right_path"] = f.right.steps;
  j["witness"] = f.witness;
  j["via_left"] = f.via_left;
  j["via_right"] = f.via_right;
  return j;
}

inline json to_json(const ExtremalReport& r) {
  json j;
  j["object"] = r.object;
  j["kind"] = to_string(r.kind);
  j["status"] = r.pass() ? "pass" : "fail";
  j["unreachable"] = r.unreachable;
  json fails = json::array();
  for (const auto& f : r.disagreements) fails.push_back(to_json(f));
  j["disagreements"] = fails;
  return j;
}

inline json to_json(const MorphismStatus& s) {
  json j;
  j["monic"] = s.monic;
  j["epic"] = s.epic;
  j["endic"] = s.endic;
  j["isic"] = s.isic;
  j["mode"] = to_string(s.mode);
  if (s.monic_witness) j["monic_witness"] = *s.monic_witness;
  if (s.epic_witness) j["epic_witness"] = *s.epic_witness;
  return j;
}

inline std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

inline std::string describe_path(const Path& p) { return format_path(p); }

inline void text_failures(std::ostream& os, const std::vector<CommuteFailure>& fails) {
  for (const auto& f : fails) {
    os << "  ";
    if (!f.equality_name.empty()) os << f.equality_name << ": ";
    os << "FAIL " << describe_path(f.left) << " vs " << describe_path(f.right)
       << " at element " << f.witness << " (" << f.via_left << " vs " << f.via_right
       << ")\n";
  }
}

}  // namespace report_detail

inline std::string emit_report(const ReportBundle& b, ReportFormat format) {
  using report_detail::json;
  if (format == ReportFormat::machine) {
    json doc;
    doc["result"] = b.pass() ? "pass" : "fail";
    if (b.axioms) {
      const AxiomReport& a = *b.axioms;
      json j;
      j["status"] = a.pass() ? "pass" : "fail";
      j["identity"] = a.identity_ok ? "pass" : "fail";
      j["maps"] = a.maps_ok ? "pass" : "fail";
      j["associativity"] = a.associativity_ok ? "pass" : "fail";
      json fails = json::array();
      for (const auto& f : a.failures) {
        fails.push_back(
            json{{"axiom", f.axiom}, {"subject", f.subject}, {"detail", f.detail}});
      }
      j["failures"] = fails;
      doc["axioms"] = j;
    }
    if (b.commutativity) {
      json j;
      j["status"] = b.commutativity->pass ? "pass" : "fail";
      j["pairs_checked"] = b.commutativity->pairs_checked;
      json fails = json::array();
      for (const auto& f : b.commutativity->failures) {
        fails.push_back(report_detail::to_json(f));
      }
      j["failures"] = fails;
      doc["commutativity"] = j;
    }
    if (b.validation_requested()) {
      if (b.extremal_applicable) {
        json j;
        bool ok = b.knowledge_terminal->pass() && b.system_initial->pass();
        j["status"] = ok ? "pass" : "fail";
        j["terminal"] = report_detail::to_json(*b.knowledge_terminal);
        j["initial"] = report_detail::to_json(*b.system_initial);
        doc["extremal"] = j;
      } else {
        doc["extremal"] = "skipped";
      }
    }
    if (b.gen_e) {
      json j;
      j["status"] = b.gen_e->pass() ? "pass" : "fail";
      json fails = json::array();
      for (const auto& f : b.gen_e->failures) {
        fails.push_back(json{
            {"element", f.element}, {"expected", f.expected}, {"actual", f.actual}});
      }
      j["failures"] = fails;
      j["unparsable"] = b.gen_e->unparsable;
      doc["gen_e"] = j;
    }
    if (b.render_profile) {
      const RenderProfile& p = *b.render_profile;
      json j;
      json sens;
      sens["value"] = p.sensitivity.sensitive;
      sens["mode"] = to_string(p.sensitivity.mode);
      if (p.sensitivity.indistinct_measures) {
        sens["witness"] = json::array({p.sensitivity.indistinct_measures->first,
                                       p.sensitivity.indistinct_measures->second});
      } else if (p.sensitivity.collision) {
        sens["witness"] = json::array(
            {p.sensitivity.collision->first, p.sensitivity.collision->second});
      }
      j["sensitive"] = sens;
      json red;
      red["value"] = p.redundancy.non_redundant;
      red["mode"] = to_string(p.redundancy.mode);
      if (p.redundancy.coinciding_reads) {
        red["witness"] = json::array({p.redundancy.coinciding_reads->first,
                                      p.redundancy.coinciding_reads->second});
      } else if (p.redundancy.unhit_mark) {
        red["witness"] = *p.redundancy.unhit_mark;
      }
      j["non_redundant"] = red;
      j["non_ambiguous"] = p.non_ambiguous;
      j["literal"] = p.literal;
      j["strictly_literal"] = p.strictly_literal;
      if (p.decode) {
        json table;
        for (const auto& [src, dst] : p.decode->pairs()) table[src] = dst;
        j["decode"] = json{{"id", p.decode->id()}, {"table", table}};
      } else {
        j["decode"] = nullptr;
      }
      if (b.render_status) j["classification"] = report_detail::to_json(*b.render_status);
      doc["render_profile"] = j;
    }
    if (b.chart_junk) {
      const ChartJunkReport& c = *b.chart_junk;
      json j;
      j["arbitrary_junk"] = c.arbitrary_junk;
      json groups = json::array();
      for (const auto& g : c.redundant_groups) {
        groups.push_back(
            json{{"source", g.schema_source}, {"layout_elements", g.layout_elements}});
      }
      j["redundant_groups"] = groups;
      j["rules_consistent"] = c.rules_consistent;
      json fails = json::array();
      for (const auto& f : c.rules_failures) {
        fails.push_back(json{{"schema_element", f.schema_element},
                             {"layout_element", f.layout_element},
                             {"reason", f.reason}});
      }
      j["rules_failures"] = fails;
      doc["chart_junk"] = j;
    } else if (b.chart_junk_skipped) {
      doc["chart_junk"] = json{{"status", "skipped"}, {"reason", *b.chart_junk_skipped}};
    }
    if (b.intension) doc["intension"] = to_string(*b.intension);
    if (b.questions) {
      json j;
      j["answerable"] = b.questions->answerable;
      j["raised_unanswered"] = b.questions->raised_unanswered;
      j["unparsable"] = b.questions->unparsable;
      doc["questions"] = j;
    }
    return doc.dump(2) + "\n";
  }

  std::ostringstream os;
  if (b.axioms) {
    os << "axioms: " << (b.axioms->pass() ? "PASS" : "FAIL") << '\n';
    for (const auto& f : b.axioms->failures) {
      os << "  " << f.axiom << " (" << f.subject << "): " << f.detail << '\n';
    }
  }
  if (b.commutativity) {
    os << "commutativity: " << (b.commutativity->pass ? "PASS" : "FAIL") << " ("
       << b.commutativity->pairs_checked << " path pairs checked)\n";
    report_detail::text_failures(os, b.commutativity->failures);
  }
  if (b.validation_requested()) {
    if (b.extremal_applicable) {
      auto line = [&](const ExtremalReport& r) {
        os << "  " << to_string(r.kind) << " object '" << r.object
           << "': " << (r.pass() ? "PASS" : "FAIL") << '\n';
        for (const auto& u : r.unreachable) {
          os << "    no path for object '" << u << "'\n";
        }
        report_detail::text_failures(os, r.disagreements);
      };
      os << "extremal:\n";
      line(*b.knowledge_terminal);
      line(*b.system_initial);
    } else {
      os << "extremal: skipped (full process shape not bound)\n";
    }
  }
  if (b.gen_e) {
    os << "gen_E agreement: " << (b.gen_e->pass() ? "PASS" : "FAIL") << '\n';
    for (const auto& f : b.gen_e->failures) {
      os << "  element " << f.element << ": declared gen_E gives " << f.actual
         << ", template erasure gives " << f.expected << '\n';
    }
    if (!b.gen_e->unparsable.empty()) {
      os << "  checked as declared only (not predicate-shaped): "
         << report_detail::join(b.gen_e->unparsable, ", ") << '\n';
    }
  }
  if (b.render_profile) {
    const RenderProfile& p = *b.render_profile;
    os << "render profile:\n";
    os << "  sensitive: " << (p.sensitivity.sensitive ? "yes" : "no") << " ("
       << to_string(p.sensitivity.mode) << ")";
    if (p.sensitivity.indistinct_measures) {
      os << " — measures '" << p.sensitivity.indistinct_measures->first << "' and '"
         << p.sensitivity.indistinct_measures->second
         << "' become indistinguishable after render";
    } else if (p.sensitivity.collision) {
      os << " — render collapses '" << p.sensitivity.collision->first << "' and '"
         << p.sensitivity.collision->second << "'";
    }
    os << '\n';
    os << "  non-redundant: " << (p.redundancy.non_redundant ? "yes" : "no") << " ("
       << to_string(p.redundancy.mode) << ")";
    if (p.redundancy.coinciding_reads) {
      os << " — reads '" << p.redundancy.coinciding_reads->first << "' and '"
         << p.redundancy.coinciding_reads->second << "' coincide after render";
    } else if (p.redundancy.unhit_mark) {
      os << " — mark '" << *p.redundancy.unhit_mark << "' is not produced by render";
    }
    os << '\n';
    os << "  non-ambiguous: " << (p.non_ambiguous ? "yes" : "no");
    if (p.decode) os << " (decode: " << p.decode->id() << ")";
    os << '\n';
    os << "  literal: " << (p.literal ? (p.strictly_literal ? "yes (strictly)" : "yes") : "no")
       << '\n';
    if (b.render_status) {
      const MorphismStatus& s = *b.render_status;
      os << "  render is" << (s.monic ? "" : " not") << " monic,"
         << (s.epic ? "" : " not") << " epic," << (s.endic ? "" : " not")
         << " endic," << (s.isic ? "" : " not") << " isic (" << to_string(s.mode)
         << ")\n";
    }
  }
  if (b.chart_junk) {
    const ChartJunkReport& c = *b.chart_junk;
    os << "chart junk:\n";
    os << "  arbitrary: "
       << (c.arbitrary_junk.empty() ? "(none)"
                                    : report_detail::join(c.arbitrary_junk, ", "))
       << '\n';
    if (c.redundant_groups.empty()) {
      os << "  schema-derived redundancy: (none)\n";
    } else {
      os << "  schema-derived redundancy:\n";
      for (const auto& g : c.redundant_groups) {
        os << "    " << g.schema_source << " -> { "
           << report_detail::join(g.layout_elements, " ") << " }\n";
      }
    }
    os << "  rules consistency: " << (c.rules_consistent ? "PASS" : "FAIL") << '\n';
    for (const auto& f : c.rules_failures) {
      os << "    " << f.reason << '\n';
    }
  } else if (b.chart_junk_skipped) {
    os << "chart junk: skipped (" << *b.chart_junk_skipped << ")\n";
  }
  if (b.intension) {
    os << "intension: " << to_string(*b.intension);
    if (*b.intension == IntensionStatus::extension_only) {
      os << " (a data-driven representation; without a schema level it supports "
            "neither interrogation nor generalization)";
    }
    os << '\n';
  }
  if (b.questions) {
    os << "questions:\n";
    os << "  answerable: "
       << (b.questions->answerable.empty()
               ? "(none)"
               : report_detail::join(b.questions->answerable, " "))
       << '\n';
    os << "  raised but unanswered: "
       << (b.questions->raised_unanswered.empty()
               ? "(none)"
               : report_detail::join(b.questions->raised_unanswered, " "))
       << '\n';
  }
  if (b.validation_requested()) {
    os << "result: " << (b.pass() ? "PASS" : "FAIL") << '\n';
  }
  return os.str();
}

struct PathsReport {
  std::string from;
  std::string to;
  std::vector<Path> paths;
  bool agree = true;
  std::vector<CommuteFailure> failures;
};

inline std::string emit_paths_report(const PathsReport& r, ReportFormat format) {
  using report_detail::json;
  if (format == ReportFormat::machine) {
    json doc;
    doc["result"] = r.agree ? "pass" : "fail";
    json j;
    j["from"] = r.from;
    j["to"] = r.to;
    json paths = json::array();
    for (const auto& p : r.paths) paths.push_back(p.steps);
    j["paths"] = paths;
    j["status"] = r.agree ? "pass" : "fail";
    json fails = json::array();
    for (const auto& f : r.failures) fails.push_back(report_detail::to_json(f));
    j["failures"] = fails;
    doc["paths"] = j;
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "paths " << r.from << " -> " << r.to << " (" << r.paths.size() << "):\n";
  for (const auto& p : r.paths) {
    os << "  " << format_path(p) << '\n';
  }
  if (r.paths.size() < 2) {
    os << "nothing to compare\n";
  } else if (r.agree) {
    os << "all parallel compositions agree\n";
  } else {
    os << "parallel compositions disagree:\n";
    report_detail::text_failures(os, r.failures);
  }
  return os.str();
}

}  // namespace viscat
