#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "viscat/finset.hpp"

namespace viscat {

// Morphism ids in application order: steps[0] is applied first, so the path
// [render, read] composes to read∘render.
struct Path {
  std::vector<std::string> steps;
  std::string source;
  std::string target;

  bool operator==(const Path&) const = default;
};

// A named assertion that two parallel paths compose to the same map. The
// name carries the human-readable equation, e.g. "understanding = read∘render".
struct EqualityAssertion {
  std::string name;
  Path lhs;
  Path rhs;

  bool operator==(const EqualityAssertion&) const = default;
};

// A labeled multigraph of finite sets and total maps. Objects and morphisms
// keep declaration order; parallel edges are allowed; ids are unique per kind.
class Diagram {
 public:
  void add_object(FiniteSet obj) {
    if (obj_index_.count(obj.id())) {
      fail(ErrorKind::DuplicateId, "duplicate object id '" + obj.id() + "'",
           obj.id());
    }
    obj_index_.emplace(obj.id(), objects_.size());
    objects_.push_back(std::move(obj));
  }

  void add_morphism(FiniteMap f) {
    if (mor_index_.count(f.id())) {
      fail(ErrorKind::DuplicateId, "duplicate morphism id '" + f.id() + "'",
           f.id());
    }
    resolve_boundary(f, f.dom(), "domain");
    resolve_boundary(f, f.cod(), "codomain");
    mor_index_.emplace(f.id(), morphisms_.size());
    morphisms_.push_back(std::move(f));
  }

  void add_equality(EqualityAssertion eq) {
    Path lhs = make_path(eq.lhs.steps);
    Path rhs = make_path(eq.rhs.steps);
    if (lhs.source != rhs.source || lhs.target != rhs.target) {
      fail(ErrorKind::DanglingEquality,
           "equality '" + eq.name + "' relates paths with different endpoints ('" +
               lhs.source + "' -> '" + lhs.target + "' vs '" + rhs.source +
               "' -> '" + rhs.target + "')");
    }
    eq.lhs = std::move(lhs);
    eq.rhs = std::move(rhs);
    equalities_.push_back(std::move(eq));
  }

  const std::vector<FiniteSet>& objects() const { return objects_; }
  const std::vector<FiniteMap>& morphisms() const { return morphisms_; }
  const std::vector<EqualityAssertion>& equalities() const { return equalities_; }

  bool has_object(const std::string& id) const { return obj_index_.count(id) > 0; }
  bool has_morphism(const std::string& id) const { return mor_index_.count(id) > 0; }

  const FiniteSet& object(const std::string& id) const {
    auto it = obj_index_.find(id);
    if (it == obj_index_.end()) {
      fail(ErrorKind::UnknownObject, "unknown object '" + id + "'", id);
    }
    return objects_[it->second];
  }

  const FiniteMap& morphism(const std::string& id) const {
    auto it = mor_index_.find(id);
    if (it == mor_index_.end()) {
      fail(ErrorKind::UnknownMorphism, "unknown morphism '" + id + "'", id);
    }
    return morphisms_[it->second];
  }

  // Builds a Path from morphism ids, deriving and checking the endpoints.
  Path make_path(const std::vector<std::string>& steps) const {
    if (steps.empty()) {
      fail(ErrorKind::DanglingEquality, "a composition path needs at least one morphism");
    }
    for (const auto& s : steps) {
      if (!has_morphism(s)) {
        fail(ErrorKind::DanglingEquality,
             "path mentions unknown morphism '" + s + "'", s);
      }
    }
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
      const FiniteMap& a = morphism(steps[i]);
      const FiniteMap& b = morphism(steps[i + 1]);
      if (a.cod().id() != b.dom().id()) {
        fail(ErrorKind::NonComposable,
             "path step '" + steps[i + 1] + "' does not follow '" + steps[i] +
                 "': cod = '" + a.cod().id() + "', dom = '" + b.dom().id() + "'");
      }
    }
    return Path{steps, morphism(steps.front()).dom().id(),
                morphism(steps.back()).cod().id()};
  }

  // A copy without the listed morphisms. Used to keep declared alternates
  // (counterfactual measures/reads) out of the commutativity checks.
  Diagram excluding(const std::vector<std::string>& morphism_ids) const {
    std::set<std::string> drop(morphism_ids.begin(), morphism_ids.end());
    Diagram out;
    for (const auto& o : objects_) out.add_object(o);
    for (const auto& m : morphisms_) {
      if (!drop.count(m.id())) out.add_morphism(m);
    }
    for (const auto& eq : equalities_) out.add_equality(eq);
    return out;
  }

  bool operator==(const Diagram& other) const {
    if (objects_.size() != other.objects_.size() ||
        morphisms_.size() != other.morphisms_.size() ||
        equalities_ != other.equalities_) {
      return false;
    }
    for (std::size_t i = 0; i < objects_.size(); ++i) {
      // Strict structural equality including declared element order, so that
      // serialized round trips are bit-faithful.
      if (objects_[i].id() != other.objects_[i].id() ||
          objects_[i].elements() != other.objects_[i].elements()) {
        return false;
      }
    }
    for (std::size_t i = 0; i < morphisms_.size(); ++i) {
      const FiniteMap& a = morphisms_[i];
      const FiniteMap& b = other.morphisms_[i];
      if (a.id() != b.id() || a.dom().id() != b.dom().id() ||
          a.cod().id() != b.cod().id() || a.pairs() != b.pairs()) {
        return false;
      }
    }
    return true;
  }
  bool operator!=(const Diagram& other) const { return !(*this == other); }

 private:
  void resolve_boundary(const FiniteMap& f, const FiniteSet& boundary,
                        const char* which) const {
    auto it = obj_index_.find(boundary.id());
    if (it == obj_index_.end() || objects_[it->second] != boundary) {
      fail(ErrorKind::UnknownObject,
           "morphism '" + f.id() + "': " + which + " '" + boundary.id() +
               "' does not resolve to an object of the diagram",
           boundary.id());
    }
  }

  std::vector<FiniteSet> objects_;
  std::vector<FiniteMap> morphisms_;
  std::vector<EqualityAssertion> equalities_;
  std::unordered_map<std::string, std::size_t> obj_index_;
  std::unordered_map<std::string, std::size_t> mor_index_;
};

inline Diagram build_diagram(std::vector<FiniteSet> objects,
                             std::vector<FiniteMap> morphisms,
                             std::vector<EqualityAssertion> equalities = {}) {
  Diagram d;
  for (auto& o : objects) d.add_object(std::move(o));
  for (auto& m : morphisms) d.add_morphism(std::move(m));
  for (auto& eq : equalities) d.add_equality(std::move(eq));
  return d;
}

// All simple paths from -> to of length <= max_len, in lexicographic order of
// the morphism-id sequence. Simple means no object is revisited; each
// endomorphic edge may be traversed at most once. The identity path is
// implicit and never enumerated.
inline std::vector<Path> enumerate_paths(const Diagram& d, const std::string& from,
                                         const std::string& to,
                                         std::size_t max_len) {
  d.object(from);
  d.object(to);

  std::vector<const FiniteMap*> sorted;
  sorted.reserve(d.morphisms().size());
  for (const auto& m : d.morphisms()) sorted.push_back(&m);
  std::sort(sorted.begin(), sorted.end(),
            [](const FiniteMap* a, const FiniteMap* b) { return a->id() < b->id(); });

  std::vector<Path> out;
  std::vector<std::string> steps;
  std::set<std::string> visited{from};
  std::set<std::string> used_endos;

  auto dfs = [&](auto&& self, const std::string& at) -> void {
    if (steps.size() >= max_len) return;
    for (const FiniteMap* m : sorted) {
      if (m->dom().id() != at) continue;
      const std::string& next = m->cod().id();
      const bool endo = next == at;
      if (endo) {
        if (used_endos.count(m->id())) continue;
        used_endos.insert(m->id());
      } else {
        if (visited.count(next)) continue;
        visited.insert(next);
      }
      steps.push_back(m->id());
      if (next == to) out.push_back(Path{steps, from, to});
      self(self, next);
      steps.pop_back();
      if (endo) {
        used_endos.erase(m->id());
      } else {
        visited.erase(next);
      }
    }
  };
  dfs(dfs, from);
  return out;
}

// Folds compose over the steps; the empty path yields the identity on the
// source object.
inline FiniteMap compose_path(const Diagram& d, const Path& p) {
  if (p.steps.empty()) return identity_map(d.object(p.source));
  FiniteMap acc = d.morphism(p.steps.front());
  for (std::size_t i = 1; i < p.steps.size(); ++i) {
    acc = compose(d.morphism(p.steps[i]), acc);
  }
  return acc;
}

inline std::string format_path(const Path& p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    if (i) os << ", ";
    os << p.steps[i];
  }
  os << ']';
  return os.str();
}

struct CommuteFailure {
  std::string equality_name;  // empty for anonymous parallel-path pairs
  Path left;
  Path right;
  std::string witness;   // element of the shared source object
  std::string via_left;  // value of the left composite at the witness
  std::string via_right;
};

struct CommuteReport {
  bool pass = true;
  std::size_t pairs_checked = 0;
  std::vector<CommuteFailure> failures;
};

namespace detail {

inline void compare_parallel(const Diagram& d, const Path& a, const Path& b,
                             const std::string& name, CommuteReport& report) {
  FiniteMap fa = compose_path(d, a);
  FiniteMap fb = compose_path(d, b);
  ++report.pairs_checked;
  if (auto witness = first_disagreement(fa, fb)) {
    report.pass = false;
    report.failures.push_back(CommuteFailure{name, a, b, *witness,
                                             fa.apply(*witness), fb.apply(*witness)});
  }
}

}  // namespace detail

// Composes and compares every pair of parallel simple paths between every
// ordered object pair, plus all declared equalities. max_len = 0 uses the
// number of morphisms, which is exact for acyclic diagrams.
inline CommuteReport check_commutativity(const Diagram& d, std::size_t max_len = 0) {
  if (max_len == 0) max_len = std::max<std::size_t>(d.morphisms().size(), 1);
  CommuteReport report;
  for (const auto& src : d.objects()) {
    for (const auto& dst : d.objects()) {
      std::vector<Path> paths = enumerate_paths(d, src.id(), dst.id(), max_len);
      for (std::size_t i = 0; i < paths.size(); ++i) {
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
          detail::compare_parallel(d, paths[i], paths[j], "", report);
        }
      }
    }
  }
  for (const auto& eq : d.equalities()) {
    detail::compare_parallel(d, eq.lhs, eq.rhs, eq.name, report);
  }
  return report;
}

struct AxiomFailure {
  std::string axiom;  // "identity" | "maps" | "associativity"
  std::string subject;
  std::string detail;
};

struct AxiomReport {
  bool identity_ok = true;
  bool maps_ok = true;
  bool associativity_ok = true;
  std::vector<AxiomFailure> failures;

  bool pass() const { return identity_ok && maps_ok && associativity_ok; }
};

// Re-verifies the category axioms on the diagram as data: (1) the identity
// laws hold for every object against every incident morphism, (2) every
// morphism is a total single-valued map into its codomain, (3) composition is
// associative on all composable triples present. (2) can only fail for maps
// fabricated through FiniteMap::unchecked; such maps are excluded from the
// other two checks rather than composed.
inline AxiomReport check_axioms(const Diagram& d) {
  AxiomReport report;

  std::vector<const FiniteMap*> valid;
  for (const auto& m : d.morphisms()) {
    std::string why;
    if (!d.has_object(m.dom().id()) || d.object(m.dom().id()) != m.dom()) {
      why = "domain does not resolve to a diagram object";
    } else if (!d.has_object(m.cod().id()) || d.object(m.cod().id()) != m.cod()) {
      why = "codomain does not resolve to a diagram object";
    } else if (m.table().size() != m.dom().size()) {
      why = "table is not total over the domain";
    } else if (!m.well_formed()) {
      why = "table maps outside the codomain";
    }
    if (why.empty()) {
      valid.push_back(&m);
    } else {
      report.maps_ok = false;
      report.failures.push_back(AxiomFailure{"maps", m.id(), why});
    }
  }

  for (const auto& obj : d.objects()) {
    FiniteMap id = identity_map(obj);
    for (const FiniteMap* m : valid) {
      if (m->dom().id() == obj.id() && !maps_equal(compose(*m, id), *m)) {
        report.identity_ok = false;
        report.failures.push_back(
            AxiomFailure{"identity", m->id(),
                         "'" + m->id() + "'∘" + id.id() + " differs from '" +
                             m->id() + "'"});
      }
      if (m->cod().id() == obj.id() && !maps_equal(compose(id, *m), *m)) {
        report.identity_ok = false;
        report.failures.push_back(
            AxiomFailure{"identity", m->id(),
                         id.id() + "∘'" + m->id() + "' differs from '" +
                             m->id() + "'"});
      }
    }
  }

  for (const FiniteMap* f : valid) {
    for (const FiniteMap* g : valid) {
      if (g->dom().id() != f->cod().id()) continue;
      for (const FiniteMap* h : valid) {
        if (h->dom().id() != g->cod().id()) continue;
        FiniteMap left = compose(compose(*h, *g), *f);
        FiniteMap right = compose(*h, compose(*g, *f));
        if (auto witness = first_disagreement(left, right)) {
          report.associativity_ok = false;
          report.failures.push_back(AxiomFailure{
              "associativity", f->id() + ", " + g->id() + ", " + h->id(),
              "(h∘g)∘f and h∘(g∘f) differ at '" + *witness + "'"});
        }
      }
    }
  }
  return report;
}

enum class StatusMode { set_level, categorical };

inline const char* to_string(StatusMode m) {
  return m == StatusMode::set_level ? "set-level" : "categorical";
}

struct MorphismStatus {
  bool monic = false;
  bool epic = false;
  bool endic = false;
  bool isic = false;
  StatusMode mode = StatusMode::set_level;
  std::optional<std::string> monic_witness;
  std::optional<std::string> epic_witness;
};

// Set-level mode reads the flags off the function table (monic = injective,
// epic = surjective, isic = bijective). Categorical mode quantifies only over
// the morphisms declared in the diagram — a closed-world reading — so the two
// modes may legitimately disagree on sparse diagrams; the mode is recorded in
// the result.
inline MorphismStatus categorical_status(const Diagram& d, const std::string& id,
                                         StatusMode mode) {
  const FiniteMap& f = d.morphism(id);
  MorphismStatus s;
  s.mode = mode;
  s.endic = f.dom() == f.cod();

  if (mode == StatusMode::set_level) {
    MapClassification c = classify_map(f);
    s.monic = c.injective;
    s.epic = c.surjective;
    s.isic = c.bijective;
    if (c.collision) {
      s.monic_witness = "elements '" + c.collision->first + "' and '" +
                        c.collision->second + "' share the image '" +
                        f.apply(c.collision->first) + "'";
    }
    if (c.missed) {
      s.epic_witness = "codomain element '" + *c.missed + "' is never hit";
    }
    return s;
  }

  std::vector<const FiniteMap*> into_dom;
  std::vector<const FiniteMap*> out_of_cod;
  for (const auto& g : d.morphisms()) {
    if (g.cod().id() == f.dom().id()) into_dom.push_back(&g);
    if (g.dom().id() == f.cod().id()) out_of_cod.push_back(&g);
  }

  s.monic = true;
  for (std::size_t i = 0; i < into_dom.size() && s.monic; ++i) {
    for (std::size_t j = i + 1; j < into_dom.size(); ++j) {
      const FiniteMap& g1 = *into_dom[i];
      const FiniteMap& g2 = *into_dom[j];
      if (g1.dom().id() != g2.dom().id()) continue;
      if (!maps_equal(g1, g2) && maps_equal(compose(f, g1), compose(f, g2))) {
        s.monic = false;
        s.monic_witness = "f∘g agrees for the distinct morphisms '" +
                          g1.id() + "' and '" + g2.id() + "'";
        break;
      }
    }
  }

  s.epic = true;
  for (std::size_t i = 0; i < out_of_cod.size() && s.epic; ++i) {
    for (std::size_t j = i + 1; j < out_of_cod.size(); ++j) {
      const FiniteMap& g1 = *out_of_cod[i];
      const FiniteMap& g2 = *out_of_cod[j];
      if (g1.cod().id() != g2.cod().id()) continue;
      if (!maps_equal(g1, g2) && maps_equal(compose(g1, f), compose(g2, f))) {
        s.epic = false;
        s.epic_witness = "g∘f agrees for the distinct morphisms '" +
                         g1.id() + "' and '" + g2.id() + "'";
        break;
      }
    }
  }

  // Isic in the closed world: some declared morphism inverts f on both sides.
  s.isic = false;
  for (const auto& g : d.morphisms()) {
    if (g.dom().id() != f.cod().id() || g.cod().id() != f.dom().id()) continue;
    if (maps_equal(compose(g, f), identity_map(f.dom())) &&
        maps_equal(compose(f, g), identity_map(f.cod()))) {
      s.isic = true;
      break;
    }
  }
  return s;
}

enum class ExtremalKind { terminal, initial };

inline const char* to_string(ExtremalKind k) {
  return k == ExtremalKind::terminal ? "terminal" : "initial";
}

struct ExtremalReport {
  ExtremalKind kind = ExtremalKind::terminal;
  std::string object;
  std::vector<std::string> unreachable;
  std::vector<CommuteFailure> disagreements;

  bool pass() const { return unreachable.empty() && disagreements.empty(); }
};

// Terminal: every other object has at least one path to obj and all its
// parallel paths to obj compose equally. Initial is the dual.
inline ExtremalReport check_extremal(const Diagram& d, const std::string& obj,
                                     ExtremalKind kind, std::size_t max_len = 0) {
  d.object(obj);
  if (max_len == 0) max_len = std::max<std::size_t>(d.morphisms().size(), 1);
  ExtremalReport report;
  report.kind = kind;
  report.object = obj;
  for (const auto& other : d.objects()) {
    if (other.id() == obj) continue;
    std::vector<Path> paths =
        kind == ExtremalKind::terminal
            ? enumerate_paths(d, other.id(), obj, max_len)
            : enumerate_paths(d, obj, other.id(), max_len);
    if (paths.empty()) {
      report.unreachable.push_back(other.id());
      continue;
    }
    CommuteReport local;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      for (std::size_t j = i + 1; j < paths.size(); ++j) {
        detail::compare_parallel(d, paths[i], paths[j], "", local);
      }
    }
    report.disagreements.insert(report.disagreements.end(), local.failures.begin(),
                                local.failures.end());
  }
  return report;
}

}  // namespace viscat
