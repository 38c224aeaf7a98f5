#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "viscat/process.hpp"

namespace viscat {

// The declarative spec DSL. Line-oriented, '#' starts a comment:
//
//   object <Id> { e1 e2 ... }
//   morphism <id> : <Obj> -> <Obj> { e -> e', ... }
//   derive { layout_elem <- schema_elem, ... }
//   role <RoleName> = <id>
//   alt_measure <id>
//   alt_read <id>
//   equal <id> = <id> . <id> [. <id> ...]   # composition, read right to left
//
// Elements are whitespace-separated tokens. A token may be quoted
// ("Alan performed the best") or carry a parenthesised argument list
// (best_mark(_), average_mark(> 70)); whitespace is significant only inside
// quotes or parentheses. Ids are bare identifiers.

struct SpecSource {
  std::string text;
  std::string origin = "<stdin>";
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity = Severity::error;
  std::string message;
  std::size_t line = 1;
  std::size_t column = 1;
};

struct ParseResult {
  std::optional<ProcessModel> process;  // set when role bindings are present
  std::optional<Diagram> diagram;       // set for bare diagrams
  std::vector<Diagnostic> diagnostics;

  bool ok() const {
    for (const auto& d : diagnostics) {
      if (d.severity == Severity::error) return false;
    }
    return true;
  }

  const Diagram& any_diagram() const {
    return process ? process->diagram() : *diagram;
  }
};

namespace dsl_detail {

struct Pos {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Located {
  std::string token;
  Pos pos;
};

struct ObjectDecl {
  std::string id;
  Pos pos;
  std::vector<Located> elements;
};

struct MorphismDecl {
  std::string id;
  Pos pos;
  Located dom, cod;
  std::vector<std::pair<Located, Located>> pairs;
};

struct DerivePair {
  Located layout_elem;
  Located schema_elem;
};

struct RoleDecl {
  Located role;
  Located target;
};

struct AltDecl {
  bool is_measure = true;
  Located id;
};

struct EqualDecl {
  Pos pos;
  Located lhs;
  std::vector<Located> rhs;  // as written, composition order (right to left)
};

class Scanner {
 public:
  explicit Scanner(const std::string& text) : text_(text) {}

  bool at_end() const { return pos_ >= text_.size(); }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  Pos here() const { return {line_, col_}; }

  void advance() {
    if (at_end()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  void skip_line() {
    while (!at_end() && peek() != '\n') advance();
    if (!at_end()) advance();
  }

  struct State {
    std::size_t pos, line, col;
  };
  State save() const { return {pos_, line_, col_}; }
  void restore(State s) {
    pos_ = s.pos;
    line_ = s.line;
    col_ = s.col;
  }

  static bool word_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string scan_word() {
    std::string w;
    while (!at_end() && word_char(peek())) {
      w += peek();
      advance();
    }
    return w;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

inline bool is_keyword(const std::string& w) {
  return w == "object" || w == "morphism" || w == "derive" || w == "role" ||
         w == "alt_measure" || w == "alt_read" || w == "equal";
}

class Parser {
 public:
  Parser(const SpecSource& src) : sc_(src.text) {}

  ParseResult run() {
    parse_document();
    return analyze();
  }

 private:
  struct Abort {};  // unwinds to the statement loop for resynchronisation

  void error(Pos pos, std::string message) {
    diagnostics_.push_back(
        Diagnostic{Severity::error, std::move(message), pos.line, pos.column});
  }
  void warn(Pos pos, std::string message) {
    diagnostics_.push_back(
        Diagnostic{Severity::warning, std::move(message), pos.line, pos.column});
  }
  [[noreturn]] void abort_statement(Pos pos, std::string message) {
    error(pos, std::move(message));
    throw Abort{};
  }

  // ---- token level ----

  void expect_char(char c, const char* context) {
    sc_.skip_ws();
    if (sc_.peek() != c) {
      abort_statement(sc_.here(), std::string("expected '") + c + "' " + context);
    }
    sc_.advance();
  }

  void expect_seq(const char* seq, const char* context) {
    sc_.skip_ws();
    for (std::size_t i = 0; seq[i]; ++i) {
      if (sc_.peek(i) != seq[i]) {
        abort_statement(sc_.here(),
                        std::string("expected '") + seq + "' " + context);
      }
    }
    for (std::size_t i = 0; seq[i]; ++i) sc_.advance();
  }

  Located expect_word(const char* what) {
    sc_.skip_ws();
    Pos pos = sc_.here();
    if (!Scanner::word_start(sc_.peek())) {
      abort_statement(pos, std::string("expected ") + what);
    }
    return Located{sc_.scan_word(), pos};
  }

  Located expect_element() {
    sc_.skip_ws();
    Pos pos = sc_.here();
    if (sc_.at_end()) abort_statement(pos, "expected element token, found end of file");
    std::string token;
    if (sc_.peek() == '"') {
      token += '"';
      sc_.advance();
      while (!sc_.at_end() && sc_.peek() != '"' && sc_.peek() != '\n') {
        token += sc_.peek();
        sc_.advance();
      }
      if (sc_.peek() != '"') {
        abort_statement(pos, "unterminated quoted token");
      }
      token += '"';
      sc_.advance();
      return Located{token, pos};
    }
    int depth = 0;
    while (!sc_.at_end()) {
      char c = sc_.peek();
      if (c == '\r' || c == '\n') break;
      // Whitespace and punctuation only terminate a token outside parentheses,
      // so average_mark(> 70) is a single element.
      if (depth == 0 &&
          (c == ' ' || c == '\t' || c == '#' || c == ',' || c == '{' || c == '}' ||
           (c == '-' && sc_.peek(1) == '>') || (c == '<' && sc_.peek(1) == '-'))) {
        break;
      }
      if (c == '(') ++depth;
      if (c == ')' && depth > 0) --depth;
      token += c;
      sc_.advance();
    }
    if (token.empty()) {
      abort_statement(pos, std::string("expected element token, found '") +
                               sc_.peek() + "'");
    }
    return Located{token, pos};
  }

  // ---- statements ----

  void parse_document() {
    while (true) {
      sc_.skip_ws();
      if (sc_.at_end()) return;
      Pos pos = sc_.here();
      if (!Scanner::word_start(sc_.peek())) {
        error(pos, std::string("expected a statement keyword, found '") +
                       sc_.peek() + "'");
        synchronize();
        continue;
      }
      std::string word = sc_.scan_word();
      try {
        if (word == "object") {
          parse_object();
        } else if (word == "morphism") {
          parse_morphism();
        } else if (word == "derive") {
          parse_derive(pos);
        } else if (word == "role") {
          parse_role();
        } else if (word == "alt_measure" || word == "alt_read") {
          alts_.push_back(AltDecl{word == "alt_measure", expect_word("a morphism id")});
        } else if (word == "equal") {
          parse_equal(pos);
        } else {
          error(pos, "unknown statement '" + word + "'");
          synchronize();
        }
      } catch (const Abort&) {
        synchronize();
      }
    }
  }

  void synchronize() {
    sc_.skip_line();
    while (!sc_.at_end()) {
      sc_.skip_ws();
      Scanner::State mark = sc_.save();
      if (Scanner::word_start(sc_.peek()) && is_keyword(sc_.scan_word())) {
        sc_.restore(mark);
        return;
      }
      sc_.restore(mark);
      sc_.skip_line();
    }
  }

  void parse_object() {
    Located id = expect_word("an object id");
    expect_char('{', "to open the element list");
    ObjectDecl decl;
    decl.id = id.token;
    decl.pos = id.pos;
    while (true) {
      sc_.skip_ws();
      if (sc_.peek() == '}') {
        sc_.advance();
        break;
      }
      if (sc_.at_end()) {
        abort_statement(id.pos, "unterminated object block for '" + id.token + "'");
      }
      decl.elements.push_back(expect_element());
    }
    objects_.push_back(std::move(decl));
  }

  void parse_morphism() {
    Located id = expect_word("a morphism id");
    expect_char(':', "after the morphism id");
    MorphismDecl decl;
    decl.id = id.token;
    decl.pos = id.pos;
    decl.dom = expect_word("the domain object id");
    expect_seq("->", "between domain and codomain");
    decl.cod = expect_word("the codomain object id");
    expect_char('{', "to open the mapping table");
    while (true) {
      sc_.skip_ws();
      if (sc_.peek() == '}') {
        sc_.advance();
        break;
      }
      if (sc_.at_end()) {
        abort_statement(id.pos, "unterminated mapping table for '" + id.token + "'");
      }
      Located src = expect_element();
      expect_seq("->", "between a source and its image");
      Located dst = expect_element();
      decl.pairs.emplace_back(std::move(src), std::move(dst));
      sc_.skip_ws();
      if (sc_.peek() == ',') sc_.advance();
    }
    morphisms_.push_back(std::move(decl));
  }

  void parse_derive(Pos pos) {
    derive_seen_ = true;
    if (!derive_pos_) derive_pos_ = pos;
    expect_char('{', "to open the derivation list");
    while (true) {
      sc_.skip_ws();
      if (sc_.peek() == '}') {
        sc_.advance();
        break;
      }
      if (sc_.at_end()) abort_statement(pos, "unterminated derive block");
      Located layout_elem = expect_element();
      expect_seq("<-", "between a layout element and its schema source");
      Located schema_elem = expect_element();
      derive_pairs_.push_back(DerivePair{std::move(layout_elem), std::move(schema_elem)});
      sc_.skip_ws();
      if (sc_.peek() == ',') sc_.advance();
    }
  }

  void parse_role() {
    Located role = expect_word("a role name");
    expect_char('=', "after the role name");
    Located target = expect_word("an object or morphism id");
    roles_.push_back(RoleDecl{std::move(role), std::move(target)});
  }

  void parse_equal(Pos pos) {
    EqualDecl decl;
    decl.pos = pos;
    decl.lhs = expect_word("a morphism id");
    expect_char('=', "after the left-hand side");
    while (true) {
      decl.rhs.push_back(expect_word("a morphism id"));
      sc_.skip_ws();
      if (sc_.peek() == '.') {
        sc_.advance();
        continue;
      }
      break;
    }
    equals_.push_back(std::move(decl));
  }

  // ---- semantic assembly ----

  ParseResult analyze() {
    ParseResult result;
    Diagram d;
    std::map<std::string, Pos> object_pos;
    std::map<std::string, Pos> morphism_pos;

    for (const auto& decl : objects_) {
      if (object_pos.count(decl.id)) {
        error(decl.pos, "duplicate object id '" + decl.id + "'");
        continue;
      }
      object_pos.emplace(decl.id, decl.pos);
      std::vector<std::string> elements;
      std::set<std::string> seen;
      bool good = true;
      for (const auto& e : decl.elements) {
        if (!valid_element_token(e.token)) {
          error(e.pos, "malformed element token '" + e.token + "'");
          good = false;
        } else if (!seen.insert(e.token).second) {
          error(e.pos, "duplicate element '" + e.token + "' in object '" +
                           decl.id + "'");
          good = false;
        } else {
          elements.push_back(e.token);
        }
      }
      if (good) d.add_object(FiniteSet(decl.id, std::move(elements)));
    }

    for (const auto& decl : morphisms_) {
      if (morphism_pos.count(decl.id)) {
        error(decl.pos, "duplicate morphism id '" + decl.id + "'");
        continue;
      }
      morphism_pos.emplace(decl.id, decl.pos);
      bool good = true;
      if (!d.has_object(decl.dom.token)) {
        error(decl.dom.pos, "unknown object '" + decl.dom.token + "'");
        good = false;
      }
      if (!d.has_object(decl.cod.token)) {
        error(decl.cod.pos, "unknown object '" + decl.cod.token + "'");
        good = false;
      }
      if (!good) continue;
      const FiniteSet& dom = d.object(decl.dom.token);
      const FiniteSet& cod = d.object(decl.cod.token);
      std::set<std::string> mapped;
      std::vector<std::pair<std::string, std::string>> pairs;
      for (const auto& [src, dst] : decl.pairs) {
        if (!dom.contains(src.token)) {
          error(src.pos, "source '" + src.token + "' is not an element of '" +
                             dom.id() + "'");
          good = false;
        } else if (!mapped.insert(src.token).second) {
          error(src.pos, "source '" + src.token + "' mapped more than once");
          good = false;
        }
        if (!cod.contains(dst.token)) {
          error(dst.pos, "target '" + dst.token + "' is not an element of '" +
                             cod.id() + "'");
          good = false;
        }
        if (good) pairs.emplace_back(src.token, dst.token);
      }
      for (const auto& e : dom.elements()) {
        if (!mapped.count(e)) {
          error(decl.pos, "morphism '" + decl.id + "' is not total: no image for '" +
                              e + "'");
          good = false;
        }
      }
      if (!good) continue;
      d.add_morphism(make_map(decl.id, dom, cod, pairs));
    }

    for (const auto& decl : equals_) {
      std::string name = decl.lhs.token + " =";
      bool good = true;
      for (const auto& step : decl.rhs) {
        name += (name.back() == '=' ? " " : "∘") + step.token;
      }
      auto check = [&](const Located& id) {
        if (!d.has_morphism(id.token)) {
          error(id.pos, "equality names unknown morphism '" + id.token + "'");
          good = false;
        }
      };
      check(decl.lhs);
      for (const auto& step : decl.rhs) check(step);
      if (!good) continue;
      std::vector<std::string> rhs_steps;
      for (auto it = decl.rhs.rbegin(); it != decl.rhs.rend(); ++it) {
        rhs_steps.push_back(it->token);  // written right to left
      }
      try {
        d.add_equality(EqualityAssertion{name, Path{{decl.lhs.token}, "", ""},
                                         Path{rhs_steps, "", ""}});
      } catch (const Error& e) {
        error(decl.pos, e.what());
      }
    }

    RoleBindings bindings;
    std::map<std::string, Pos> role_pos;
    for (const auto& decl : roles_) {
      auto object_role = object_role_from(decl.role.token);
      auto morphism_role = morphism_role_from(decl.role.token);
      if (!object_role && !morphism_role) {
        error(decl.role.pos, "unknown role name '" + decl.role.token + "'");
        continue;
      }
      if (!role_pos.emplace(decl.role.token, decl.role.pos).second) {
        error(decl.role.pos, "role '" + decl.role.token + "' bound twice");
        continue;
      }
      if (object_role) {
        if (!d.has_object(decl.target.token)) {
          error(decl.target.pos, "role '" + decl.role.token +
                                     "' bound to unknown object '" +
                                     decl.target.token + "'");
          continue;
        }
        bindings.objects[*object_role] = decl.target.token;
      } else {
        if (!d.has_morphism(decl.target.token)) {
          error(decl.target.pos, "role '" + decl.role.token +
                                     "' bound to unknown morphism '" +
                                     decl.target.token + "'");
          continue;
        }
        bindings.morphisms[*morphism_role] = decl.target.token;
      }
    }

    std::optional<std::map<std::string, std::string>> derivations;
    std::map<std::string, Pos> token_pos;
    if (derive_seen_) {
      derivations.emplace();
      for (const auto& pair : derive_pairs_) {
        if (derivations->count(pair.layout_elem.token)) {
          error(pair.layout_elem.pos, "layout element '" + pair.layout_elem.token +
                                          "' derived twice");
          continue;
        }
        (*derivations)[pair.layout_elem.token] = pair.schema_elem.token;
        token_pos.emplace(pair.layout_elem.token, pair.layout_elem.pos);
        token_pos.emplace(pair.schema_elem.token, pair.schema_elem.pos);
      }
    }

    std::vector<std::string> alt_measures, alt_reads;
    for (const auto& alt : alts_) {
      if (!d.has_morphism(alt.id.token)) {
        error(alt.id.pos, std::string(alt.is_measure ? "alt_measure" : "alt_read") +
                              " names unknown morphism '" + alt.id.token + "'");
        continue;
      }
      (alt.is_measure ? alt_measures : alt_reads).push_back(alt.id.token);
      token_pos.emplace(alt.id.token, alt.id.pos);
    }

    const bool has_roles = !roles_.empty();
    if (!has_roles) {
      if (derive_seen_) {
        error(*derive_pos_, "a derive block requires role bindings");
      }
      for (const auto& alt : alts_) {
        error(alt.id.pos, "alternates require role bindings");
      }
    }

    result.diagnostics = diagnostics_;
    if (!result.ok()) return result;

    // Warnings never block.
    auto unused_warnings = [&]() {
      for (const auto& obj : d.objects()) {
        bool used = false;
        for (const auto& m : d.morphisms()) {
          if (m.dom().id() == obj.id() || m.cod().id() == obj.id()) {
            used = true;
            break;
          }
        }
        if (!used) {
          for (const auto& [role, id] : bindings.objects) {
            if (id == obj.id()) {
              used = true;
              break;
            }
          }
        }
        if (!used) {
          warn(object_pos.at(obj.id()), "object '" + obj.id() +
                                            "' is not used by any morphism or role");
        }
      }
    };

    unused_warnings();
    if (!has_roles) {
      result.diagnostics = diagnostics_;
      result.diagram = std::move(d);
      return result;
    }

    try {
      ProcessModel model = build_process(std::move(d), std::move(bindings),
                                         std::move(derivations),
                                         std::move(alt_measures), std::move(alt_reads));
      result.diagnostics = diagnostics_;
      result.process = std::move(model);
    } catch (const Error& e) {
      Pos pos{1, 1};
      const std::string& subject = e.subject();
      if (auto it = role_pos.find(subject); it != role_pos.end()) {
        pos = it->second;
      } else if (auto it2 = morphism_pos.find(subject); it2 != morphism_pos.end()) {
        pos = it2->second;
      } else if (auto it3 = object_pos.find(subject); it3 != object_pos.end()) {
        pos = it3->second;
      } else if (auto it4 = token_pos.find(subject); it4 != token_pos.end()) {
        pos = it4->second;
      } else if (!roles_.empty()) {
        pos = roles_.front().role.pos;
      }
      error(pos, e.what());
      result.diagnostics = diagnostics_;
    }
    return result;
  }

  Scanner sc_;
  std::vector<Diagnostic> diagnostics_;
  std::vector<ObjectDecl> objects_;
  std::vector<MorphismDecl> morphisms_;
  std::vector<DerivePair> derive_pairs_;
  std::vector<RoleDecl> roles_;
  std::vector<AltDecl> alts_;
  std::vector<EqualDecl> equals_;
  bool derive_seen_ = false;
  std::optional<Pos> derive_pos_;
};

}  // namespace dsl_detail

inline ParseResult parse_spec(const SpecSource& src) {
  return dsl_detail::Parser(src).run();
}

namespace dsl_detail {

inline void write_objects_and_morphisms(std::ostream& os, const Diagram& d) {
  for (const auto& obj : d.objects()) {
    os << "object " << obj.id() << " {";
    for (const auto& e : obj.elements()) os << ' ' << e;
    os << " }\n";
  }
  if (!d.objects().empty() && !d.morphisms().empty()) os << '\n';
  for (const auto& m : d.morphisms()) {
    os << "morphism " << m.id() << " : " << m.dom().id() << " -> " << m.cod().id()
       << " {";
    bool first = true;
    for (const auto& [src, dst] : m.pairs()) {
      os << (first ? " " : ", ") << src << " -> " << dst;
      first = false;
    }
    os << " }\n";
  }
}

inline void write_equalities(std::ostream& os, const Diagram& d) {
  if (d.equalities().empty()) return;
  os << '\n';
  for (const auto& eq : d.equalities()) {
    // Only single-morphism left-hand sides are expressible in the grammar,
    // which is all the parser can produce.
    os << "equal " << eq.lhs.steps.front() << " =";
    for (auto it = eq.rhs.steps.rbegin(); it != eq.rhs.steps.rend(); ++it) {
      os << (it == eq.rhs.steps.rbegin() ? " " : " . ") << *it;
    }
    os << '\n';
  }
}

}  // namespace dsl_detail

// Canonical form: objects, morphisms, derivations, roles, alternates,
// equalities; elements in declared order. parse(serialize(m)) == m.
inline std::string serialize_spec(const Diagram& d) {
  std::ostringstream os;
  dsl_detail::write_objects_and_morphisms(os, d);
  dsl_detail::write_equalities(os, d);
  return os.str();
}

inline std::string serialize_spec(const ProcessModel& model) {
  std::ostringstream os;
  dsl_detail::write_objects_and_morphisms(os, model.diagram());
  if (model.derivations()) {
    os << "\nderive {";
    bool first = true;
    for (const auto& [layout_elem, schema_elem] : *model.derivations()) {
      os << (first ? " " : ", ") << layout_elem << " <- " << schema_elem;
      first = false;
    }
    os << " }\n";
  }
  os << '\n';
  for (ObjectRole r : kObjectRoles) {
    if (auto id = model.object_id(r)) {
      os << "role " << to_string(r) << " = " << *id << '\n';
    }
  }
  for (MorphismRole r : kMorphismRoles) {
    if (auto id = model.morphism_id(r)) {
      os << "role " << to_string(r) << " = " << *id << '\n';
    }
  }
  for (const auto& id : model.alt_measures()) os << "alt_measure " << id << '\n';
  for (const auto& id : model.alt_reads()) os << "alt_read " << id << '\n';
  dsl_detail::write_equalities(os, model.diagram());
  return os.str();
}

}  // namespace viscat
