#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "viscat/analysis.hpp"

using namespace viscat;

namespace {

void require_error(ErrorKind kind, const std::function<void()>& fn) {
  try {
    fn();
    FAIL("expected an error of kind " << to_string(kind));
  } catch (const Error& e) {
    REQUIRE(e.kind() == kind);
  }
}

// An extension-only model around a given render map. System doubles as the
// Data object with an identity measure; the read collapses everything.
ProcessModel render_model(const FiniteSet& data, const FiniteSet& repr,
                          const std::vector<std::pair<std::string, std::string>>& pairs) {
  Diagram d;
  d.add_object(data);
  if (repr.id() != data.id()) d.add_object(repr);
  FiniteSet evo = make_set("Evo", {"seen"});
  d.add_object(evo);

  std::vector<std::pair<std::string, std::string>> id_pairs;
  for (const auto& e : data.elements()) id_pairs.emplace_back(e, e);
  d.add_morphism(make_map("measure", data, data, id_pairs));
  FiniteMap render = make_map("render", data, repr, pairs);
  d.add_morphism(render);
  std::vector<std::pair<std::string, std::string>> read_pairs;
  for (const auto& e : repr.elements()) read_pairs.emplace_back(e, "seen");
  FiniteMap read = make_map("read", repr, evo, read_pairs);
  d.add_morphism(read);
  FiniteMap understanding = compose(read, render);
  std::vector<std::pair<std::string, std::string>> u_pairs;
  for (const auto& [src, dst] : understanding.pairs()) u_pairs.emplace_back(src, dst);
  d.add_morphism(make_map("understanding", data, evo, u_pairs));

  RoleBindings roles;
  roles.objects = {{ObjectRole::System, data.id()},
                   {ObjectRole::Data, data.id()},
                   {ObjectRole::Representation, repr.id()},
                   {ObjectRole::Evocation, "Evo"}};
  roles.morphisms = {{MorphismRole::measure, "measure"},
                     {MorphismRole::render, "render"},
                     {MorphismRole::read, "read"},
                     {MorphismRole::understanding, "understanding"}};
  return build_process(std::move(d), std::move(roles));
}

struct Expected {
  bool sensitive, non_redundant, non_ambiguous, literal;
};

void check_profile(const RenderProfile& p, Expected e) {
  REQUIRE(p.sensitivity.sensitive == e.sensitive);
  REQUIRE(p.redundancy.non_redundant == e.non_redundant);
  REQUIRE(p.non_ambiguous == e.non_ambiguous);
  REQUIRE(p.literal == e.literal);
  REQUIRE(p.decode.has_value() == e.non_ambiguous);
}

}  // namespace

TEST_CASE("a printed table of the data: identity render") {
  FiniteSet data = make_set("Table", {"r1", "r2"});
  ProcessModel model = render_model(data, data, {{"r1", "r1"}, {"r2", "r2"}});
  RenderProfile p = profile_render(model);
  check_profile(p, {true, true, true, true});
  REQUIRE(p.strictly_literal);
  REQUIRE(maps_equal(*p.decode, identity_map(data)));
}

TEST_CASE("a render collapsing two data elements is ambiguous") {
  FiniteSet data = make_set("D", {"d1", "d2"});
  FiniteSet repr = make_set("R", {"m"});
  ProcessModel model = render_model(data, repr, {{"d1", "m"}, {"d2", "m"}});
  RenderProfile p = profile_render(model);
  check_profile(p, {false, true, false, false});
  REQUIRE(p.sensitivity.collision ==
          std::pair<std::string, std::string>{"d1", "d2"});
}

TEST_CASE("a bijective non-endomorphic render") {
  FiniteSet data = make_set("D", {"d1", "d2"});
  FiniteSet repr = make_set("R", {"m1", "m2"});
  ProcessModel model = render_model(data, repr, {{"d1", "m1"}, {"d2", "m2"}});
  check_profile(profile_render(model), {true, true, true, false});
}

TEST_CASE("the realizable rows of the morphism-property table") {
  FiniteSet two = make_set("D", {"a", "b"});
  FiniteSet three = make_set("R3", {"x", "y", "z"});
  FiniteSet twoR = make_set("R2", {"x", "y"});
  FiniteSet one = make_set("R1", {"x"});

  // Non-endomorphic: monic only, epic only, isic, neither.
  check_profile(profile_render(render_model(two, three, {{"a", "x"}, {"b", "y"}})),
                {true, false, false, false});
  check_profile(profile_render(render_model(two, one, {{"a", "x"}, {"b", "x"}})),
                {false, true, false, false});
  check_profile(profile_render(render_model(two, twoR, {{"a", "y"}, {"b", "x"}})),
                {true, true, true, false});
  check_profile(profile_render(render_model(two, twoR, {{"a", "x"}, {"b", "x"}})),
                {false, false, false, false});

  // Endomorphic: only isic and neither are realizable over finite sets.
  check_profile(profile_render(render_model(two, two, {{"a", "b"}, {"b", "a"}})),
                {true, true, true, true});
  check_profile(profile_render(render_model(two, two, {{"a", "a"}, {"b", "a"}})),
                {false, false, false, true});
}

TEST_CASE("endomap collapse: injective iff surjective iff bijective (sizes <= 4)") {
  // This is what makes the endomorphic monic-only and epic-only columns
  // unrealizable over finite carriers.
  for (std::size_t n = 0; n <= 4; ++n) {
    FiniteSet s = make_set("S", oracle::element_names(n));
    for (const auto& table : oracle::all_tables(n, n)) {
      MapClassification cls = classify_map(oracle::map_from_table("f", s, s, table));
      REQUIRE(cls.injective == cls.surjective);
      REQUIRE(cls.bijective == cls.injective);
    }
  }
}

TEST_CASE("sensitivity upgrades to categorical mode with alternate measures") {
  ProcessModel bar = fixtures::model("sensitivity_bar.viscat");
  SensitivityReport s1 = sensitivity_report(bar);
  REQUIRE(s1.sensitive);
  REQUIRE(s1.mode == StatusMode::categorical);

  ProcessModel text = fixtures::model("sensitivity_text.viscat");
  SensitivityReport s2 = sensitivity_report(text);
  REQUIRE(!s2.sensitive);
  REQUIRE(s2.mode == StatusMode::categorical);
  REQUIRE(s2.indistinct_measures ==
          std::pair<std::string, std::string>{"measure_test1", "measure_test2"});

  // Without alternates the report falls back to the set-level reading.
  FiniteSet data = make_set("D", {"d1", "d2"});
  FiniteSet repr = make_set("R", {"m1", "m2"});
  SensitivityReport s3 = sensitivity_report(
      render_model(data, repr, {{"d1", "m1"}, {"d2", "m2"}}));
  REQUIRE(s3.sensitive);
  REQUIRE(s3.mode == StatusMode::set_level);
}

TEST_CASE("redundancy: two reads that coincide after render") {
  ProcessModel fig11 = fixtures::model("fig11_redundancy.viscat");
  RedundancyReport r = redundancy_report(fig11);
  REQUIRE(!r.non_redundant);
  REQUIRE(r.mode == StatusMode::categorical);
  REQUIRE(r.coinciding_reads ==
          std::pair<std::string, std::string>{"read_by_size", "read_by_shade"});

  // The two reads really are distinct maps.
  const FiniteMap& by_size = fig11.diagram().morphism("read_by_size");
  const FiniteMap& by_shade = fig11.diagram().morphism("read_by_shade");
  REQUIRE(!maps_equal(by_size, by_shade));
  const FiniteMap& render = fig11.morphism_of(MorphismRole::render);
  REQUIRE(maps_equal(compose(by_size, render), compose(by_shade, render)));
}

TEST_CASE("redundancy set-level fallback: unhit marks") {
  FiniteSet data = make_set("D", {"d1"});
  FiniteSet repr = make_set("R", {"m1", "m2"});
  RedundancyReport r = redundancy_report(render_model(data, repr, {{"d1", "m1"}}));
  REQUIRE(!r.non_redundant);
  REQUIRE(r.mode == StatusMode::set_level);
  REQUIRE(r.unhit_mark == std::optional<std::string>{"m2"});

  FiniteSet repr1 = make_set("R1", {"m1"});
  RedundancyReport ok = redundancy_report(render_model(data, repr1, {{"d1", "m1"}}));
  REQUIRE(ok.non_redundant);
  REQUIRE(ok.mode == StatusMode::set_level);
}

TEST_CASE("chart junk triptych") {
  ChartJunkReport plain = detect_chart_junk(fixtures::model("fig12a_plain.viscat"));
  REQUIRE(plain.arbitrary_junk.empty());
  REQUIRE(plain.redundant_groups.empty());
  REQUIRE(plain.rules_consistent);

  ChartJunkReport junk =
      detect_chart_junk(fixtures::model("fig12b_arbitrary_junk.viscat"));
  REQUIRE(junk.arbitrary_junk == std::vector<std::string>{"decoration"});
  REQUIRE(junk.redundant_groups.empty());
  REQUIRE(junk.rules_consistent);

  ChartJunkReport face = detect_chart_junk(fixtures::model("fig12c_schema_face.viscat"));
  REQUIRE(face.arbitrary_junk.empty());
  REQUIRE(face.redundant_groups.size() == 1);
  REQUIRE(face.redundant_groups[0].schema_source == "instances");
  REQUIRE(face.redundant_groups[0].layout_elements ==
          std::vector<std::string>{"points", "face"});
  REQUIRE(face.rules_consistent);
}

TEST_CASE("junk and derivation-level redundancy are independent") {
  // Redundancy without junk and junk without redundancy both exist.
  ChartJunkReport junk_only =
      detect_chart_junk(fixtures::model("fig12b_arbitrary_junk.viscat"));
  REQUIRE((!junk_only.arbitrary_junk.empty() && junk_only.redundant_groups.empty()));
  ChartJunkReport redundancy_only =
      detect_chart_junk(fixtures::model("fig12c_schema_face.viscat"));
  REQUIRE((redundancy_only.arbitrary_junk.empty() &&
           !redundancy_only.redundant_groups.empty()));
}

TEST_CASE("chart junk preconditions: intension and supplied derivations") {
  require_error(ErrorKind::NoIntension, [] {
    detect_chart_junk(fixtures::model("extension_only.viscat"));
  });

  // Intension bound but no derive block: distinguished from an empty one.
  ProcessModel golden = fixtures::model("golden.viscat");
  ProcessModel no_derive = build_process(golden.diagram(), golden.roles());
  require_error(ErrorKind::MissingDerivations,
                [&] { detect_chart_junk(no_derive); });

  ProcessModel empty_derive = build_process(
      golden.diagram(), golden.roles(), std::map<std::string, std::string>{});
  ChartJunkReport all_junk = detect_chart_junk(empty_derive);
  REQUIRE(all_junk.arbitrary_junk == std::vector<std::string>{"x_axis", "bars"});
  REQUIRE(!all_junk.rules_consistent);
}

TEST_CASE("rules must pick a layout element that derives back to its source") {
  ProcessModel golden = fixtures::model("golden.viscat");
  // Swap the derivation sources; rules(student) = x_axis now derives from mark.
  std::map<std::string, std::string> swapped = {{"x_axis", "mark"},
                                                {"bars", "student"}};
  ProcessModel model = build_process(golden.diagram(), golden.roles(), swapped);
  ChartJunkReport report = detect_chart_junk(model);
  REQUIRE(report.arbitrary_junk.empty());
  REQUIRE(!report.rules_consistent);
  REQUIRE(report.rules_failures.size() == 2);
  REQUIRE(report.rules_failures[0].schema_element == "student");
  REQUIRE(report.rules_failures[0].layout_element == "x_axis");
}

TEST_CASE("decode recovers the data exactly when render is bijective") {
  ProcessModel golden = fixtures::model("golden.viscat");
  RenderProfile p = profile_render(golden);
  REQUIRE(p.decode.has_value());
  const FiniteMap& render = golden.morphism_of(MorphismRole::render);
  REQUIRE(maps_equal(compose(*p.decode, render), identity_map(render.dom())));
  REQUIRE(maps_equal(compose(render, *p.decode), identity_map(render.cod())));
}

TEST_CASE("isic renders are sensitive, non-redundant, and non-ambiguous") {
  for (const auto& name : fixtures::corpus()) {
    viscat::ParseResult parsed = fixtures::parse(name);
    if (!parsed.ok() || !parsed.process) continue;
    RenderProfile p = profile_render(*parsed.process);
    if (p.classification.bijective && p.sensitivity.mode == StatusMode::set_level &&
        p.redundancy.mode == StatusMode::set_level) {
      REQUIRE(p.sensitivity.sensitive);
      REQUIRE(p.redundancy.non_redundant);
      REQUIRE(p.non_ambiguous);
    }
  }
}
