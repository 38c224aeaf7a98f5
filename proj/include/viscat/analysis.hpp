#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "viscat/process.hpp"

namespace viscat {

// Sensitivity: distinct measurements necessarily yield distinct
// representations. With declared alternate measures the check is the
// quantified categorical one; otherwise it falls back to the set-level
// reading (render injective). The mode is always recorded.
struct SensitivityReport {
  bool sensitive = false;
  StatusMode mode = StatusMode::set_level;
  // Categorical witness: distinct measures whose composites with render agree.
  std::optional<std::pair<std::string, std::string>> indistinct_measures;
  // Set-level witness: domain elements collapsed by render.
  std::optional<std::pair<std::string, std::string>> collision;
};

inline SensitivityReport sensitivity_report(const ProcessModel& p) {
  SensitivityReport report;
  const FiniteMap& render = p.morphism_of(MorphismRole::render);
  if (!p.alt_measures().empty()) {
    report.mode = StatusMode::categorical;
    report.sensitive = true;
    std::vector<std::string> ids{*p.morphism_id(MorphismRole::measure)};
    ids.insert(ids.end(), p.alt_measures().begin(), p.alt_measures().end());
    for (std::size_t i = 0; i < ids.size() && report.sensitive; ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        const FiniteMap& m1 = p.diagram().morphism(ids[i]);
        const FiniteMap& m2 = p.diagram().morphism(ids[j]);
        if (!maps_equal(m1, m2) &&
            maps_equal(compose(render, m1), compose(render, m2))) {
          report.sensitive = false;
          report.indistinct_measures = {ids[i], ids[j]};
          break;
        }
      }
    }
    return report;
  }
  MapClassification c = classify_map(render);
  report.sensitive = c.injective;
  report.collision = c.collision;
  return report;
}

// Redundancy: one aspect of the data reaches the reader through more than one
// channel, so distinct reads of the same representation can coincide after
// render. Categorical over declared alternate reads; set-level fallback is
// render surjectivity.
struct RedundancyReport {
  bool non_redundant = false;
  StatusMode mode = StatusMode::set_level;
  std::optional<std::pair<std::string, std::string>> coinciding_reads;
  std::optional<std::string> unhit_mark;
};

inline RedundancyReport redundancy_report(const ProcessModel& p) {
  RedundancyReport report;
  const FiniteMap& render = p.morphism_of(MorphismRole::render);
  if (!p.alt_reads().empty()) {
    report.mode = StatusMode::categorical;
    report.non_redundant = true;
    std::vector<std::string> ids{*p.morphism_id(MorphismRole::read)};
    ids.insert(ids.end(), p.alt_reads().begin(), p.alt_reads().end());
    for (std::size_t i = 0; i < ids.size() && report.non_redundant; ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        const FiniteMap& r1 = p.diagram().morphism(ids[i]);
        const FiniteMap& r2 = p.diagram().morphism(ids[j]);
        if (!maps_equal(r1, r2) &&
            maps_equal(compose(r1, render), compose(r2, render))) {
          report.non_redundant = false;
          report.coinciding_reads = {ids[i], ids[j]};
          break;
        }
      }
    }
    return report;
  }
  MapClassification c = classify_map(render);
  report.non_redundant = c.surjective;
  report.unhit_mark = c.missed;
  return report;
}

// The Table-2 profile of the render morphism. literal means render is
// endomorphic (Data and Representation are the same object); render being the
// identity is reported separately as strictly_literal. decode is present
// exactly when render is bijective.
struct RenderProfile {
  MapClassification classification;
  bool literal = false;
  bool strictly_literal = false;
  bool non_ambiguous = false;
  std::optional<FiniteMap> decode;
  SensitivityReport sensitivity;
  RedundancyReport redundancy;
};

inline RenderProfile profile_render(const ProcessModel& p) {
  const FiniteMap& render = p.morphism_of(MorphismRole::render);
  RenderProfile profile;
  profile.classification = classify_map(render);
  profile.literal = profile.classification.endomorphic;
  profile.strictly_literal =
      profile.literal && maps_equal(render, identity_map(render.dom()));
  profile.non_ambiguous = profile.classification.bijective;
  if (profile.non_ambiguous) profile.decode = inverse(render);
  profile.sensitivity = sensitivity_report(p);
  profile.redundancy = redundancy_report(p);
  return profile;
}

// Chart junk in the narrow sense: a Layout element with no derivation from
// any Schema component. Schema-derived redundancy is a derivation source
// shared by two or more Layout elements. Neither finding is scored or judged.
struct RedundantGroup {
  std::string schema_source;
  std::vector<std::string> layout_elements;

  bool operator==(const RedundantGroup&) const = default;
};

struct RulesFailure {
  std::string schema_element;
  std::string layout_element;  // rules(schema_element)
  std::string reason;
};

struct ChartJunkReport {
  std::vector<std::string> arbitrary_junk;
  std::vector<RedundantGroup> redundant_groups;
  bool rules_consistent = true;
  std::vector<RulesFailure> rules_failures;
};

inline ChartJunkReport detect_chart_junk(const ProcessModel& p) {
  if (!p.intension_bound()) {
    fail(ErrorKind::NoIntension,
         "chart junk analysis requires the intension roles to be bound");
  }
  if (!p.derivations()) {
    fail(ErrorKind::MissingDerivations,
         "chart junk analysis requires a derivation annotation; declare a "
         "'derive { }' block (it may be empty)");
  }
  const std::map<std::string, std::string>& derivation = *p.derivations();
  const FiniteSet& layout = p.object_of(ObjectRole::Layout);
  const FiniteSet& schema = p.object_of(ObjectRole::Schema);
  const FiniteMap& rules = p.morphism_of(MorphismRole::rules);

  ChartJunkReport report;
  for (const auto& elem : layout.elements()) {
    if (!derivation.count(elem)) report.arbitrary_junk.push_back(elem);
  }

  for (const auto& source : schema.elements()) {
    std::vector<std::string> derived;
    for (const auto& elem : layout.elements()) {
      auto it = derivation.find(elem);
      if (it != derivation.end() && it->second == source) derived.push_back(elem);
    }
    if (derived.size() >= 2) {
      report.redundant_groups.push_back(RedundantGroup{source, std::move(derived)});
    }
  }

  // rules must pick, for every schema component, a layout element that
  // derives back from that same component.
  for (const auto& s : schema.elements()) {
    const std::string& l = rules.apply(s);
    auto it = derivation.find(l);
    if (it == derivation.end()) {
      report.rules_consistent = false;
      report.rules_failures.push_back(
          RulesFailure{s, l, "rules(" + s + ") = " + l + " has no derivation"});
    } else if (it->second != s) {
      report.rules_consistent = false;
      report.rules_failures.push_back(RulesFailure{
          s, l, "rules(" + s + ") = " + l + " derives from '" + it->second + "'"});
    }
  }
  return report;
}

}  // namespace viscat
