#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "fixtures.hpp"
#include "viscat/process.hpp"

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

// A minimal extension core System -> Data -> Representation -> Evocation,
// one element each.
struct CoreParts {
  Diagram diagram;
  RoleBindings roles;
};

CoreParts tiny_core() {
  FiniteSet sys = make_set("Sys", {"s"});
  FiniteSet data = make_set("D", {"d"});
  FiniteSet repr = make_set("R", {"r"});
  FiniteSet evo = make_set("E", {"e"});
  Diagram d = build_diagram(
      {sys, data, repr, evo},
      {make_map("measure", sys, data, {{"s", "d"}}),
       make_map("render", data, repr, {{"d", "r"}}),
       make_map("read", repr, evo, {{"r", "e"}}),
       make_map("understanding", data, evo, {{"d", "e"}})});
  RoleBindings roles;
  roles.objects = {{ObjectRole::System, "Sys"},
                   {ObjectRole::Data, "D"},
                   {ObjectRole::Representation, "R"},
                   {ObjectRole::Evocation, "E"}};
  roles.morphisms = {{MorphismRole::measure, "measure"},
                     {MorphismRole::render, "render"},
                     {MorphismRole::read, "read"},
                     {MorphismRole::understanding, "understanding"}};
  return {std::move(d), std::move(roles)};
}

}  // namespace

TEST_CASE("role signatures match the process diagram") {
  REQUIRE(signature_of(MorphismRole::raises).dom == ObjectRole::Schema);
  REQUIRE(signature_of(MorphismRole::raises).cod == ObjectRole::Question);
  REQUIRE(signature_of(MorphismRole::infers).dom == ObjectRole::Evocation);
  REQUIRE(signature_of(MorphismRole::infers).cod == ObjectRole::Knowledge);
  REQUIRE(signature_of(MorphismRole::op_desc).dom == ObjectRole::System);
  REQUIRE(signature_of(MorphismRole::op_desc).cod == ObjectRole::Schema);
  REQUIRE(signature_of(MorphismRole::op_know).dom == ObjectRole::Question);
  REQUIRE(signature_of(MorphismRole::op_know).cod == ObjectRole::Knowledge);
  REQUIRE(signature_of(MorphismRole::truth).dom == ObjectRole::System);
  REQUIRE(signature_of(MorphismRole::truth).cod == ObjectRole::Knowledge);
}

TEST_CASE("the golden fixture binds all 8 objects and 14 morphisms") {
  ProcessModel model = fixtures::model("golden.viscat");
  REQUIRE(model.full_shape());
  REQUIRE(model.intension_bound());

  // Every bound morphism has the dom/cod its role demands.
  for (MorphismRole role : kMorphismRoles) {
    const FiniteMap& m = model.morphism_of(role);
    RoleSignature sig = signature_of(role);
    REQUIRE(m.dom().id() == *model.object_id(sig.dom));
    REQUIRE(m.cod().id() == *model.object_id(sig.cod));
  }
}

TEST_CASE("validate_process passes the golden fixture") {
  ProcessModel model = fixtures::model("golden.viscat");
  ValidationReport report = validate_process(model);
  REQUIRE(report.axioms.pass());
  REQUIRE(report.commutativity.pass);
  REQUIRE(report.knowledge_terminal.has_value());
  REQUIRE(report.knowledge_terminal->pass());
  REQUIRE(report.system_initial->pass());
  REQUIRE(report.gen_e.has_value());
  REQUIRE(report.gen_e->pass());
  REQUIRE(report.pass());
}

TEST_CASE("a corrupted understanding fails by name with an element witness") {
  ProcessModel model = fixtures::model("golden_bad_understanding.viscat");
  ValidationReport report = validate_process(model);
  REQUIRE(!report.pass());
  bool named = false;
  for (const auto& f : report.commutativity.failures) {
    if (f.equality_name == "understanding = read∘render") {
      named = true;
      REQUIRE(f.witness == "Beth");
    }
  }
  REQUIRE(named);
}

TEST_CASE("extension-only models are first-class") {
  ProcessModel model = fixtures::model("extension_only.viscat");
  REQUIRE(!model.intension_bound());
  REQUIRE(!model.full_shape());
  REQUIRE(intension_status(model) == IntensionStatus::extension_only);

  ValidationReport report = validate_process(model);
  REQUIRE(report.pass());
  // Extremal checks are skipped without the full shape; axioms and
  // commutativity still ran.
  REQUIRE(!report.knowledge_terminal.has_value());
  REQUIRE(!report.gen_e.has_value());
  REQUIRE(report.commutativity.pairs_checked > 0);

  REQUIRE(intension_status(fixtures::model("golden.viscat")) == IntensionStatus::full);
}

TEST_CASE("build_process rejects partial intension and bad signatures") {
  CoreParts parts = tiny_core();

  // Schema bound but Layout/Question missing.
  {
    Diagram d = parts.diagram;
    d.add_object(make_set("Sch", {"c"}));
    d.add_morphism(make_map("gen_D", d.object("D"), d.object("Sch"), {{"d", "c"}}));
    RoleBindings roles = parts.roles;
    roles.objects[ObjectRole::Schema] = "Sch";
    roles.morphisms[MorphismRole::gen_D] = "gen_D";
    require_error(ErrorKind::PartialIntension, [&] { build_process(d, roles); });
  }

  // A role bound to a morphism with the wrong boundary.
  {
    RoleBindings roles = parts.roles;
    roles.morphisms[MorphismRole::render] = "read";
    require_error(ErrorKind::SignatureMismatch,
                  [&] { build_process(parts.diagram, roles); });
  }

  // Missing core role.
  {
    RoleBindings roles = parts.roles;
    roles.morphisms.erase(MorphismRole::understanding);
    require_error(ErrorKind::MissingRole,
                  [&] { build_process(parts.diagram, roles); });
  }

  // Unresolved ids.
  {
    RoleBindings roles = parts.roles;
    roles.objects[ObjectRole::System] = "Ghost";
    require_error(ErrorKind::UnknownObject,
                  [&] { build_process(parts.diagram, roles); });
  }

  // Alternates must share the primary's boundary.
  {
    require_error(ErrorKind::SignatureMismatch, [&] {
      build_process(parts.diagram, parts.roles, std::nullopt, {"render"}, {});
    });
  }

  // Derivations need the intension and must name layout/schema elements.
  {
    require_error(ErrorKind::NoIntension, [&] {
      build_process(parts.diagram, parts.roles,
                    std::map<std::string, std::string>{{"r", "d"}}, {}, {});
    });
  }
}

TEST_CASE("required_equalities filters to the bound roles") {
  REQUIRE(required_equalities(fixtures::model("golden.viscat")).size() == 7);

  std::vector<EqualityAssertion> ext =
      required_equalities(fixtures::model("extension_only.viscat"));
  REQUIRE(ext.size() == 1);
  REQUIRE(ext[0].name == "understanding = read∘render");
  REQUIRE(ext[0].lhs.steps == std::vector<std::string>{"understanding"});
  REQUIRE(ext[0].rhs.steps == std::vector<std::string>{"render", "read"});

  REQUIRE(required_equalities(ProcessModel{}).empty());
}

TEST_CASE("the seven canonical equalities generate every parallel-path pair") {
  // On the golden fixture the generic path check finds no disagreeing pair,
  // so no parallel pair escapes the canonical seven plus composition.
  ProcessModel model = fixtures::model("golden.viscat");
  CommuteReport generic = check_commutativity(model.core());
  REQUIRE(generic.pass);
  REQUIRE(generic.pairs_checked >= 7);
}

TEST_CASE("if validation passes, every System->Knowledge path equals truth") {
  ProcessModel model = fixtures::model("golden.viscat");
  REQUIRE(validate_process(model).pass());
  const FiniteMap& truth = model.morphism_of(MorphismRole::truth);
  std::vector<Path> paths =
      enumerate_paths(model.core(), *model.object_id(ObjectRole::System),
                      *model.object_id(ObjectRole::Knowledge),
                      model.core().morphisms().size());
  REQUIRE(paths.size() >= 2);
  bool direct = false;
  bool through_understanding = false;
  for (const auto& p : paths) {
    REQUIRE(maps_equal(compose_path(model.core(), p), truth));
    if (p.steps == std::vector<std::string>{"truth"}) direct = true;
    if (p.steps == std::vector<std::string>{"measure", "understanding", "infers"}) {
      through_understanding = true;
    }
  }
  REQUIRE(direct);
  REQUIRE(through_understanding);
}

TEST_CASE("atom parsing and template erasure") {
  auto atom = parse_atom("best_mark(Alan)");
  REQUIRE(atom.has_value());
  REQUIRE(atom->predicate == "best_mark");
  REQUIRE(atom->arguments == std::vector<std::string>{"Alan"});
  REQUIRE(generalize_evocation(*atom).rendered() == "best_mark(_)");

  REQUIRE(generalize_evocation(std::string("average_mark(> 70)")).rendered() ==
          "average_mark(_)");
  REQUIRE(generalize_evocation(std::string("p(a,b)")).rendered() == "p(_,_)");

  // Idempotent in effect: erasing an already-hole-only form is stable.
  QuestionTemplate t = generalize_evocation(std::string("best_mark(_)"));
  REQUIRE(generalize_evocation(t.rendered()) == t);

  REQUIRE(!parse_atom("\"Alan performed the best\"").has_value());
  REQUIRE(!parse_atom("plain_token").has_value());
  REQUIRE(!parse_atom("p()").has_value());
  REQUIRE(!parse_atom("(odd)").has_value());
  REQUIRE(!parse_atom("p(a))").has_value());
  require_error(ErrorKind::UnparsableAtom,
                [] { generalize_evocation(std::string("not an atom")); });
}

TEST_CASE("gen_E must agree with template erasure on parsable atoms") {
  REQUIRE(check_gen_e_agreement(fixtures::model("golden.viscat")).pass());

  // Retarget gen_E away from the erasure of one atom.
  ProcessModel golden = fixtures::model("golden.viscat");
  Diagram d = golden.diagram();
  Diagram retargeted;
  for (const auto& obj : d.objects()) retargeted.add_object(obj);
  for (const auto& m : d.morphisms()) {
    if (m.id() != "gen_E") {
      retargeted.add_morphism(m);
    } else {
      retargeted.add_morphism(make_map(
          "gen_E", m.dom(), m.cod(),
          {{"best_mark(Alan)", "average_mark(_)"},
           {"average_mark(> 70)", "average_mark(_)"}}));
    }
  }
  ProcessModel bad = build_process(retargeted, golden.roles(), golden.derivations());
  GenEReport report = check_gen_e_agreement(bad);
  REQUIRE(!report.pass());
  REQUIRE(report.failures.size() == 1);
  REQUIRE(report.failures[0].element == "best_mark(Alan)");
  REQUIRE(report.failures[0].expected == "best_mark(_)");
  REQUIRE(report.failures[0].actual == "average_mark(_)");

  // The failure also shows up in full validation.
  ValidationReport v = validate_process(bad);
  REQUIRE(!v.pass());
  REQUIRE(v.gen_e.has_value());
  REQUIRE(!v.gen_e->pass());
}

TEST_CASE("answerable questions: image of raises meets image of answers") {
  QuestionReport golden = answerable_questions(fixtures::model("golden.viscat"));
  REQUIRE(golden.answerable ==
          std::vector<std::string>{"best_mark(_)", "average_mark(_)"});
  REQUIRE(golden.raised_unanswered.empty());
  REQUIRE(golden.unparsable.empty());

  require_error(ErrorKind::NoIntension, [] {
    answerable_questions(fixtures::model("extension_only.viscat"));
  });
}

TEST_CASE("a layout that cannot answer a raised question is reported") {
  // Reroute answers so nothing answers best_mark(_).
  ProcessModel golden = fixtures::model("golden.viscat");
  Diagram d = golden.diagram();
  Diagram rerouted;
  for (const auto& obj : d.objects()) rerouted.add_object(obj);
  for (const auto& m : d.morphisms()) {
    if (m.id() != "answers") {
      rerouted.add_morphism(m);
    } else {
      rerouted.add_morphism(make_map("answers", m.dom(), m.cod(),
                                     {{"x_axis", "average_mark(_)"},
                                      {"bars", "average_mark(_)"}}));
    }
  }
  ProcessModel pie = build_process(rerouted, golden.roles(), golden.derivations());
  QuestionReport report = answerable_questions(pie);
  REQUIRE(report.answerable == std::vector<std::string>{"average_mark(_)"});
  REQUIRE(report.raised_unanswered == std::vector<std::string>{"best_mark(_)"});
}

TEST_CASE("an all-empty full model is a valid degenerate category") {
  Diagram d;
  std::vector<std::string> ids = {"Sys", "D", "Sch", "R", "L", "E", "Q", "K"};
  for (const auto& id : ids) d.add_object(make_set(id, {}));
  auto empty_map = [&](const std::string& id, const std::string& dom,
                       const std::string& cod) {
    d.add_morphism(make_map(id, d.object(dom), d.object(cod), {}));
  };
  empty_map("measure", "Sys", "D");
  empty_map("render", "D", "R");
  empty_map("read", "R", "E");
  empty_map("understanding", "D", "E");
  empty_map("gen_D", "D", "Sch");
  empty_map("gen_R", "R", "L");
  empty_map("gen_E", "E", "Q");
  empty_map("rules", "Sch", "L");
  empty_map("answers", "L", "Q");
  empty_map("raises", "Sch", "Q");
  empty_map("infers", "E", "K");
  empty_map("op_desc", "Sys", "Sch");
  empty_map("op_know", "Q", "K");
  empty_map("truth", "Sys", "K");

  RoleBindings roles;
  roles.objects = {{ObjectRole::System, "Sys"},     {ObjectRole::Data, "D"},
                   {ObjectRole::Schema, "Sch"},     {ObjectRole::Representation, "R"},
                   {ObjectRole::Layout, "L"},       {ObjectRole::Evocation, "E"},
                   {ObjectRole::Question, "Q"},     {ObjectRole::Knowledge, "K"}};
  for (MorphismRole r : kMorphismRoles) roles.morphisms[r] = to_string(r);

  ProcessModel model =
      build_process(d, roles, std::map<std::string, std::string>{});
  REQUIRE(model.full_shape());
  REQUIRE(validate_process(model).pass());
  QuestionReport questions = answerable_questions(model);
  REQUIRE(questions.answerable.empty());
  REQUIRE(questions.raised_unanswered.empty());
}
