#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "viscat/diagram.hpp"

namespace viscat {

// The eight objects and fourteen morphisms of the visualization-process
// category. The two arrows the literature writes as plain "Op" are split by
// position: op_desc (System -> Schema, the descriptive abstraction) and
// op_know (Question -> Knowledge, operationalization).
enum class ObjectRole {
  System,
  Data,
  Schema,
  Representation,
  Layout,
  Evocation,
  Question,
  Knowledge,
};

enum class MorphismRole {
  measure,        // System -> Data
  render,         // Data -> Representation
  read,           // Representation -> Evocation
  understanding,  // Data -> Evocation
  gen_D,          // Data -> Schema
  gen_R,          // Representation -> Layout
  gen_E,          // Evocation -> Question
  rules,          // Schema -> Layout
  answers,        // Layout -> Question
  raises,         // Schema -> Question
  infers,         // Evocation -> Knowledge
  op_desc,        // System -> Schema
  op_know,        // Question -> Knowledge
  truth,          // System -> Knowledge
};

inline constexpr std::array<ObjectRole, 8> kObjectRoles = {
    ObjectRole::System,         ObjectRole::Data,     ObjectRole::Schema,
    ObjectRole::Representation, ObjectRole::Layout,   ObjectRole::Evocation,
    ObjectRole::Question,       ObjectRole::Knowledge,
};

inline constexpr std::array<MorphismRole, 14> kMorphismRoles = {
    MorphismRole::measure, MorphismRole::render,  MorphismRole::read,
    MorphismRole::understanding, MorphismRole::gen_D, MorphismRole::gen_R,
    MorphismRole::gen_E,   MorphismRole::rules,   MorphismRole::answers,
    MorphismRole::raises,  MorphismRole::infers,  MorphismRole::op_desc,
    MorphismRole::op_know, MorphismRole::truth,
};

inline const char* to_string(ObjectRole r) {
  switch (r) {
    case ObjectRole::System: return "System";
    case ObjectRole::Data: return "Data";
    case ObjectRole::Schema: return "Schema";
    case ObjectRole::Representation: return "Representation";
    case ObjectRole::Layout: return "Layout";
    case ObjectRole::Evocation: return "Evocation";
    case ObjectRole::Question: return "Question";
    case ObjectRole::Knowledge: return "Knowledge";
  }
  return "?";
}

inline const char* to_string(MorphismRole r) {
  switch (r) {
    case MorphismRole::measure: return "measure";
    case MorphismRole::render: return "render";
    case MorphismRole::read: return "read";
    case MorphismRole::understanding: return "understanding";
    case MorphismRole::gen_D: return "gen_D";
    case MorphismRole::gen_R: return "gen_R";
    case MorphismRole::gen_E: return "gen_E";
    case MorphismRole::rules: return "rules";
    case MorphismRole::answers: return "answers";
    case MorphismRole::raises: return "raises";
    case MorphismRole::infers: return "infers";
    case MorphismRole::op_desc: return "op_desc";
    case MorphismRole::op_know: return "op_know";
    case MorphismRole::truth: return "truth";
  }
  return "?";
}

inline std::optional<ObjectRole> object_role_from(std::string_view name) {
  for (ObjectRole r : kObjectRoles) {
    if (name == to_string(r)) return r;
  }
  return std::nullopt;
}

inline std::optional<MorphismRole> morphism_role_from(std::string_view name) {
  for (MorphismRole r : kMorphismRoles) {
    if (name == to_string(r)) return r;
  }
  return std::nullopt;
}

struct RoleSignature {
  ObjectRole dom;
  ObjectRole cod;
};

inline RoleSignature signature_of(MorphismRole r) {
  switch (r) {
    case MorphismRole::measure: return {ObjectRole::System, ObjectRole::Data};
    case MorphismRole::render: return {ObjectRole::Data, ObjectRole::Representation};
    case MorphismRole::read: return {ObjectRole::Representation, ObjectRole::Evocation};
    case MorphismRole::understanding: return {ObjectRole::Data, ObjectRole::Evocation};
    case MorphismRole::gen_D: return {ObjectRole::Data, ObjectRole::Schema};
    case MorphismRole::gen_R: return {ObjectRole::Representation, ObjectRole::Layout};
    case MorphismRole::gen_E: return {ObjectRole::Evocation, ObjectRole::Question};
    case MorphismRole::rules: return {ObjectRole::Schema, ObjectRole::Layout};
    case MorphismRole::answers: return {ObjectRole::Layout, ObjectRole::Question};
    case MorphismRole::raises: return {ObjectRole::Schema, ObjectRole::Question};
    case MorphismRole::infers: return {ObjectRole::Evocation, ObjectRole::Knowledge};
    case MorphismRole::op_desc: return {ObjectRole::System, ObjectRole::Schema};
    case MorphismRole::op_know: return {ObjectRole::Question, ObjectRole::Knowledge};
    case MorphismRole::truth: return {ObjectRole::System, ObjectRole::Knowledge};
  }
  return {ObjectRole::System, ObjectRole::System};
}

struct RoleBindings {
  std::map<ObjectRole, std::string> objects;
  std::map<MorphismRole, std::string> morphisms;

  bool operator==(const RoleBindings&) const = default;
};

// ---- question/atom structure ----

// An unsaturated predicate, rendered as predicate(_,...,_).
struct QuestionTemplate {
  std::string predicate;
  std::size_t arity = 1;

  std::string rendered() const {
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < arity; ++i) {
      if (i) out += ",";
      out += "_";
    }
    out += ")";
    return out;
  }

  bool operator==(const QuestionTemplate&) const = default;
};

// A ground predicate such as best_mark(Alan); arguments are opaque and may be
// comparison terms such as "> 70".
struct EvocationAtom {
  std::string predicate;
  std::vector<std::string> arguments;

  bool operator==(const EvocationAtom&) const = default;
};

// Parses tokens of the shape predicate(arg, ...). The predicate is a bare
// identifier; arguments are split on top-level commas and trimmed. Tokens of
// any other shape (including quoted tokens) yield nullopt.
inline std::optional<EvocationAtom> parse_atom(std::string_view token) {
  std::size_t open = token.find('(');
  if (open == 0 || open == std::string_view::npos) return std::nullopt;
  if (token.back() != ')') return std::nullopt;
  std::string_view pred = token.substr(0, open);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    char c = pred[i];
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
              (i > 0 && c >= '0' && c <= '9');
    if (!ok) return std::nullopt;
  }
  std::string_view inner = token.substr(open + 1, token.size() - open - 2);
  if (inner.empty()) return std::nullopt;

  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };

  EvocationAtom atom;
  atom.predicate = std::string(pred);
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= inner.size(); ++i) {
    if (i == inner.size() || (inner[i] == ',' && depth == 0)) {
      std::string_view arg = trim(inner.substr(start, i - start));
      if (arg.empty()) return std::nullopt;
      atom.arguments.emplace_back(arg);
      start = i + 1;
    } else if (inner[i] == '(') {
      ++depth;
    } else if (inner[i] == ')') {
      if (--depth < 0) return std::nullopt;
    }
  }
  if (depth != 0) return std::nullopt;
  return atom;
}

// The element-level action of gen_E: replace every argument with a hole.
inline QuestionTemplate generalize_evocation(const EvocationAtom& atom) {
  return QuestionTemplate{atom.predicate, atom.arguments.size()};
}

inline QuestionTemplate generalize_evocation(const std::string& token) {
  auto atom = parse_atom(token);
  if (!atom) {
    fail(ErrorKind::UnparsableAtom,
         "token '" + token + "' does not have the shape predicate(args)", token);
  }
  return generalize_evocation(*atom);
}

// ---- the process model ----

namespace detail {

inline constexpr std::array<ObjectRole, 3> kIntensionObjects = {
    ObjectRole::Schema, ObjectRole::Layout, ObjectRole::Question};

inline constexpr std::array<MorphismRole, 6> kIntensionMorphisms = {
    MorphismRole::gen_D, MorphismRole::gen_R,   MorphismRole::gen_E,
    MorphismRole::rules, MorphismRole::answers, MorphismRole::raises};

}  // namespace detail

// A diagram with the Fig.-7 roles bound. Alternates (counterfactual measures
// and reads, quantified over by the sensitivity and redundancy analyses) live
// in the full diagram but are excluded from core(), which is what the axiom,
// commutativity, and extremal checks see.
class ProcessModel {
 public:
  ProcessModel() = default;

  const Diagram& diagram() const { return diagram_; }
  const Diagram& core() const { return core_; }
  const RoleBindings& roles() const { return roles_; }

  bool has(ObjectRole r) const { return roles_.objects.count(r) > 0; }
  bool has(MorphismRole r) const { return roles_.morphisms.count(r) > 0; }

  std::optional<std::string> object_id(ObjectRole r) const {
    auto it = roles_.objects.find(r);
    if (it == roles_.objects.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::string> morphism_id(MorphismRole r) const {
    auto it = roles_.morphisms.find(r);
    if (it == roles_.morphisms.end()) return std::nullopt;
    return it->second;
  }

  const FiniteSet& object_of(ObjectRole r) const {
    auto id = object_id(r);
    if (!id) {
      fail(ErrorKind::MissingRole,
           std::string("role '") + to_string(r) + "' is not bound", to_string(r));
    }
    return diagram_.object(*id);
  }

  const FiniteMap& morphism_of(MorphismRole r) const {
    auto id = morphism_id(r);
    if (!id) {
      fail(ErrorKind::MissingRole,
           std::string("role '") + to_string(r) + "' is not bound", to_string(r));
    }
    return diagram_.morphism(*id);
  }

  bool intension_bound() const { return intension_bound_; }

  // All 8 object roles and all 14 morphism roles bound.
  bool full_shape() const {
    return roles_.objects.size() == kObjectRoles.size() &&
           roles_.morphisms.size() == kMorphismRoles.size();
  }

  const std::optional<std::map<std::string, std::string>>& derivations() const {
    return derivations_;
  }
  const std::vector<std::string>& alt_measures() const { return alt_measures_; }
  const std::vector<std::string>& alt_reads() const { return alt_reads_; }

  bool operator==(const ProcessModel& other) const {
    return diagram_ == other.diagram_ && roles_ == other.roles_ &&
           derivations_ == other.derivations_ &&
           alt_measures_ == other.alt_measures_ && alt_reads_ == other.alt_reads_;
  }
  bool operator!=(const ProcessModel& other) const { return !(*this == other); }

  friend ProcessModel build_process(Diagram diagram, RoleBindings roles,
                                    std::optional<std::map<std::string, std::string>> derivations,
                                    std::vector<std::string> alt_measures,
                                    std::vector<std::string> alt_reads);

 private:
  Diagram diagram_;
  Diagram core_;
  RoleBindings roles_;
  std::optional<std::map<std::string, std::string>> derivations_;
  std::vector<std::string> alt_measures_;
  std::vector<std::string> alt_reads_;
  bool intension_bound_ = false;
};

inline ProcessModel build_process(
    Diagram diagram, RoleBindings roles,
    std::optional<std::map<std::string, std::string>> derivations = std::nullopt,
    std::vector<std::string> alt_measures = {},
    std::vector<std::string> alt_reads = {}) {
  for (const auto& [role, id] : roles.objects) {
    if (!diagram.has_object(id)) {
      fail(ErrorKind::UnknownObject,
           std::string("role '") + to_string(role) + "' is bound to unknown object '" +
               id + "'",
           to_string(role));
    }
  }
  for (const auto& [role, id] : roles.morphisms) {
    if (!diagram.has_morphism(id)) {
      fail(ErrorKind::UnknownMorphism,
           std::string("role '") + to_string(role) +
               "' is bound to unknown morphism '" + id + "'",
           to_string(role));
    }
  }

  // The extension core is always required; the intensional trio and the
  // knowledge side are optional extensions of it.
  for (ObjectRole r : {ObjectRole::System, ObjectRole::Data,
                       ObjectRole::Representation, ObjectRole::Evocation}) {
    if (!roles.objects.count(r)) {
      fail(ErrorKind::MissingRole,
           std::string("object role '") + to_string(r) + "' must be bound",
           to_string(r));
    }
  }
  for (MorphismRole r : {MorphismRole::measure, MorphismRole::render,
                         MorphismRole::read, MorphismRole::understanding}) {
    if (!roles.morphisms.count(r)) {
      fail(ErrorKind::MissingRole,
           std::string("morphism role '") + to_string(r) + "' must be bound",
           to_string(r));
    }
  }

  // Schema, Layout, Question and their six incident morphisms are
  // all-or-nothing.
  bool any_intension = false;
  bool all_intension = true;
  std::string missing;
  for (ObjectRole r : detail::kIntensionObjects) {
    if (roles.objects.count(r)) {
      any_intension = true;
    } else {
      all_intension = false;
      if (missing.empty()) missing = to_string(r);
    }
  }
  for (MorphismRole r : detail::kIntensionMorphisms) {
    if (roles.morphisms.count(r)) {
      any_intension = true;
    } else {
      all_intension = false;
      if (missing.empty()) missing = to_string(r);
    }
  }
  if (any_intension && !all_intension) {
    fail(ErrorKind::PartialIntension,
         "intension roles are all-or-nothing; '" + missing + "' is missing",
         missing);
  }

  // Every bound morphism role needs its endpoint object roles bound, with
  // matching objects.
  for (const auto& [role, id] : roles.morphisms) {
    RoleSignature sig = signature_of(role);
    for (ObjectRole endpoint : {sig.dom, sig.cod}) {
      if (!roles.objects.count(endpoint)) {
        fail(ErrorKind::SignatureMismatch,
             std::string("morphism role '") + to_string(role) +
                 "' requires object role '" + to_string(endpoint) + "' to be bound",
             to_string(role));
      }
    }
    const FiniteMap& m = diagram.morphism(id);
    const std::string& want_dom = roles.objects.at(sig.dom);
    const std::string& want_cod = roles.objects.at(sig.cod);
    if (m.dom().id() != want_dom || m.cod().id() != want_cod) {
      fail(ErrorKind::SignatureMismatch,
           std::string("role '") + to_string(role) + "' expects a morphism " +
               to_string(sig.dom) + " -> " + to_string(sig.cod) + " ('" + want_dom +
               "' -> '" + want_cod + "') but '" + id + "' maps '" + m.dom().id() +
               "' -> '" + m.cod().id() + "'",
           to_string(role));
    }
  }

  auto check_alternates = [&](const std::vector<std::string>& ids, MorphismRole like) {
    RoleSignature sig = signature_of(like);
    const std::string& want_dom = roles.objects.at(sig.dom);
    const std::string& want_cod = roles.objects.at(sig.cod);
    for (const auto& id : ids) {
      if (!diagram.has_morphism(id)) {
        fail(ErrorKind::UnknownMorphism,
             "alternate for '" + std::string(to_string(like)) +
                 "' names unknown morphism '" + id + "'",
             id);
      }
      const FiniteMap& m = diagram.morphism(id);
      if (m.dom().id() != want_dom || m.cod().id() != want_cod) {
        fail(ErrorKind::SignatureMismatch,
             "alternate '" + id + "' must map '" + want_dom + "' -> '" + want_cod +
                 "' like '" + to_string(like) + "' but maps '" + m.dom().id() +
                 "' -> '" + m.cod().id() + "'",
             id);
      }
    }
  };
  check_alternates(alt_measures, MorphismRole::measure);
  check_alternates(alt_reads, MorphismRole::read);

  if (derivations) {
    if (!any_intension) {
      fail(ErrorKind::NoIntension,
           "derivations require the intension roles (Schema, Layout, Question)");
    }
    const FiniteSet& layout = diagram.object(roles.objects.at(ObjectRole::Layout));
    const FiniteSet& schema = diagram.object(roles.objects.at(ObjectRole::Schema));
    for (const auto& [layout_elem, schema_elem] : *derivations) {
      if (!layout.contains(layout_elem)) {
        fail(ErrorKind::ElementNotInDomain,
             "derivation names '" + layout_elem +
                 "', which is not an element of the Layout object '" + layout.id() +
                 "'",
             layout_elem);
      }
      if (!schema.contains(schema_elem)) {
        fail(ErrorKind::ElementNotInDomain,
             "derivation source '" + schema_elem +
                 "' is not an element of the Schema object '" + schema.id() + "'",
             schema_elem);
      }
    }
  }

  ProcessModel model;
  model.roles_ = std::move(roles);
  model.derivations_ = std::move(derivations);
  model.alt_measures_ = std::move(alt_measures);
  model.alt_reads_ = std::move(alt_reads);
  model.intension_bound_ = any_intension;

  // Alternates that also hold a primary role stay in the core.
  std::set<std::string> bound;
  for (const auto& [role, id] : model.roles_.morphisms) bound.insert(id);
  std::vector<std::string> exclude;
  for (const auto& id : model.alt_measures_) {
    if (!bound.count(id)) exclude.push_back(id);
  }
  for (const auto& id : model.alt_reads_) {
    if (!bound.count(id)) exclude.push_back(id);
  }
  model.core_ = diagram.excluding(exclude);
  model.diagram_ = std::move(diagram);
  return model;
}

// The canonical commute assertions read off Fig. 7, filtered to the bound
// roles. The generic parallel-path check subsumes them; they are kept
// explicit so failures can name the equations.
inline std::vector<EqualityAssertion> required_equalities(const ProcessModel& p) {
  struct Template {
    const char* name;
    std::vector<MorphismRole> lhs;  // application order
    std::vector<MorphismRole> rhs;
  };
  using R = MorphismRole;
  static const std::vector<Template> kTemplates = {
      {"understanding = read∘render", {R::understanding}, {R::render, R::read}},
      {"raises = answers∘rules", {R::raises}, {R::rules, R::answers}},
      {"gen_R∘render = rules∘gen_D", {R::render, R::gen_R}, {R::gen_D, R::rules}},
      {"gen_E∘read = answers∘gen_R", {R::read, R::gen_E}, {R::gen_R, R::answers}},
      {"op_desc = gen_D∘measure", {R::op_desc}, {R::measure, R::gen_D}},
      {"infers = op_know∘gen_E", {R::infers}, {R::gen_E, R::op_know}},
      {"truth = infers∘understanding∘measure",
       {R::truth},
       {R::measure, R::understanding, R::infers}},
  };

  std::vector<EqualityAssertion> out;
  for (const auto& t : kTemplates) {
    bool applicable = true;
    auto resolve = [&](const std::vector<MorphismRole>& roles) {
      std::vector<std::string> steps;
      for (MorphismRole r : roles) {
        auto id = p.morphism_id(r);
        if (!id) {
          applicable = false;
          return steps;
        }
        steps.push_back(*id);
      }
      return steps;
    };
    std::vector<std::string> lhs = resolve(t.lhs);
    std::vector<std::string> rhs = resolve(t.rhs);
    if (!applicable) continue;
    out.push_back(EqualityAssertion{t.name, p.core().make_path(lhs),
                                    p.core().make_path(rhs)});
  }
  return out;
}

enum class IntensionStatus { full, extension_only };

inline const char* to_string(IntensionStatus s) {
  return s == IntensionStatus::full ? "full" : "extension_only";
}

// Full means Schema/Layout/Question and their morphisms are bound. Without
// them the model is a data-driven representation: it can evoke understanding
// but supports neither interrogation nor generalization.
inline IntensionStatus intension_status(const ProcessModel& p) {
  return p.intension_bound() ? IntensionStatus::full : IntensionStatus::extension_only;
}

struct GenEFailure {
  std::string element;
  std::string expected;  // rendered template erasure
  std::string actual;    // value of the bound gen_E map
};

struct GenEReport {
  std::vector<GenEFailure> failures;
  std::vector<std::string> unparsable;  // checked as declared only

  bool pass() const { return failures.empty(); }
};

// Checks that the bound gen_E map acts as template erasure on every Evocation
// element that parses as an atom. Non-conforming tokens degrade to
// declared-map-only checking and are listed, not failed.
inline GenEReport check_gen_e_agreement(const ProcessModel& p) {
  GenEReport report;
  const FiniteMap& gen_e = p.morphism_of(MorphismRole::gen_E);
  for (const auto& element : gen_e.dom().elements()) {
    auto atom = parse_atom(element);
    if (!atom) {
      report.unparsable.push_back(element);
      continue;
    }
    std::string expected = generalize_evocation(*atom).rendered();
    const std::string& actual = gen_e.apply(element);
    if (actual != expected) {
      report.failures.push_back(GenEFailure{element, expected, actual});
    }
  }
  return report;
}

struct QuestionReport {
  // Question elements, in declared order.
  std::vector<std::string> answerable;         // raised by Schema and answered by Layout
  std::vector<std::string> raised_unanswered;  // Layout inadequacy
  std::vector<std::string> unparsable;         // listed tokens without template shape
};

// Image of raises intersected with image of answers; the leftover raised
// questions indicate a Layout that cannot answer what the Schema asks.
inline QuestionReport answerable_questions(const ProcessModel& p) {
  if (!p.intension_bound()) {
    fail(ErrorKind::NoIntension,
         "answerable questions require the intension roles to be bound");
  }
  const FiniteMap& raises = p.morphism_of(MorphismRole::raises);
  const FiniteMap& answers = p.morphism_of(MorphismRole::answers);
  const FiniteSet& question = p.object_of(ObjectRole::Question);

  std::vector<bool> raised(question.size(), false);
  std::vector<bool> answered(question.size(), false);
  for (std::size_t t : raises.table()) raised[t] = true;
  for (std::size_t t : answers.table()) answered[t] = true;

  QuestionReport report;
  for (std::size_t i = 0; i < question.size(); ++i) {
    const std::string& token = question.elements()[i];
    if (raised[i] && answered[i]) {
      report.answerable.push_back(token);
    } else if (raised[i]) {
      report.raised_unanswered.push_back(token);
    }
    if ((raised[i] || answered[i]) && !parse_atom(token)) {
      report.unparsable.push_back(token);
    }
  }
  return report;
}

struct ValidationReport {
  AxiomReport axioms;
  CommuteReport commutativity;  // generic pairs, declared equalities, canonical equations
  std::optional<ExtremalReport> knowledge_terminal;
  std::optional<ExtremalReport> system_initial;
  std::optional<GenEReport> gen_e;

  bool pass() const {
    if (!axioms.pass() || !commutativity.pass) return false;
    if (knowledge_terminal && !knowledge_terminal->pass()) return false;
    if (system_initial && !system_initial->pass()) return false;
    if (gen_e && !gen_e->pass()) return false;
    return true;
  }
};

// Axioms, commutativity (with the canonical equations named), the
// terminal/initial checks when the full Fig.-7 shape is bound, and gen_E
// agreement when the intension is bound. All run on core(), so declared
// alternates do not register as commute failures.
inline ValidationReport validate_process(const ProcessModel& p,
                                         std::size_t max_len = 0) {
  ValidationReport report;
  const Diagram& core = p.core();
  report.axioms = check_axioms(core);
  // The canonical equations run first so their named failures lead the list.
  for (const auto& eq : required_equalities(p)) {
    detail::compare_parallel(core, eq.lhs, eq.rhs, eq.name, report.commutativity);
  }
  CommuteReport generic = check_commutativity(core, max_len);
  report.commutativity.pass = report.commutativity.pass && generic.pass;
  report.commutativity.pairs_checked += generic.pairs_checked;
  report.commutativity.failures.insert(report.commutativity.failures.end(),
                                       generic.failures.begin(),
                                       generic.failures.end());
  if (p.full_shape()) {
    report.knowledge_terminal = check_extremal(
        core, *p.object_id(ObjectRole::Knowledge), ExtremalKind::terminal, max_len);
    report.system_initial = check_extremal(
        core, *p.object_id(ObjectRole::System), ExtremalKind::initial, max_len);
  }
  if (p.intension_bound()) {
    report.gen_e = check_gen_e_agreement(p);
  }
  return report;
}

struct DiagramValidation {
  AxiomReport axioms;
  CommuteReport commutativity;

  bool pass() const { return axioms.pass() && commutativity.pass; }
};

// For spec files with no role bindings: the axiom and commutativity checks
// still apply to the bare diagram.
inline DiagramValidation validate_diagram(const Diagram& d, std::size_t max_len = 0) {
  return DiagramValidation{check_axioms(d), check_commutativity(d, max_len)};
}

}  // namespace viscat
