#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "viscat/error.hpp"

namespace viscat {

// Element tokens are compared by exact string equality; no quotienting is
// performed. A token is either bare or quoted ("..."), which is how
// multi-word entries such as knowledge statements are carried; the quotes are
// part of the token. Bare tokens admit spaces only inside parentheses, so
// predicate atoms like average_mark(> 70) are single tokens.
inline bool valid_element_token(std::string_view token) {
  if (token.empty()) return false;
  for (unsigned char c : token) {
    if (c < 0x20 || c == 0x7f) return false;
  }
  if (token.size() >= 2 && token.front() == '"' && token.back() == '"') {
    return token.find('"', 1) == token.size() - 1;
  }
  int depth = 0;
  for (char c : token) {
    if (c == '"') return false;
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (depth > 0) --depth;
    } else if (c == ' ' && depth == 0) {
      return false;
    }
  }
  return true;
}

// A named, ordered collection of distinct element tokens. Order is preserved
// exactly as declared and drives every deterministic listing; it never
// affects equality.
class FiniteSet {
 public:
  FiniteSet() = default;

  FiniteSet(std::string id, std::vector<std::string> elements)
      : id_(std::move(id)), elements_(std::move(elements)) {
    if (id_.empty()) fail(ErrorKind::EmptyIdentifier, "object id must be non-empty");
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      const std::string& e = elements_[i];
      if (!valid_element_token(e)) {
        fail(ErrorKind::BadToken,
             "malformed element token '" + e + "' in object '" + id_ + "'", e);
      }
      if (!index_.emplace(e, i).second) {
        fail(ErrorKind::DuplicateElement,
             "duplicate element '" + e + "' in object '" + id_ + "'", e);
      }
    }
  }

  const std::string& id() const { return id_; }
  const std::vector<std::string>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const std::string& name) const { return find(name).has_value(); }

  // Same id and same elements; declared order is presentation only.
  bool operator==(const FiniteSet& other) const {
    if (id_ != other.id_ || elements_.size() != other.elements_.size()) return false;
    for (const auto& e : elements_) {
      if (!other.contains(e)) return false;
    }
    return true;
  }
  bool operator!=(const FiniteSet& other) const { return !(*this == other); }

 private:
  std::string id_;
  std::vector<std::string> elements_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline FiniteSet make_set(std::string id, std::vector<std::string> elements) {
  return FiniteSet(std::move(id), std::move(elements));
}

// A total function between two finite sets. The table is stored positionally:
// table()[i] is the codomain index of the image of dom().elements()[i].
// Names are metadata; operator== compares dom, cod, and table only.
class FiniteMap {
 public:
  FiniteMap() = default;

  // Bypasses validation. Exists so tests can fabricate corrupted tables for
  // the axiom re-checker; every other path must go through make_map.
  static FiniteMap unchecked(std::string id, FiniteSet dom, FiniteSet cod,
                             std::vector<std::size_t> table) {
    FiniteMap m;
    m.id_ = std::move(id);
    m.dom_ = std::move(dom);
    m.cod_ = std::move(cod);
    m.table_ = std::move(table);
    return m;
  }

  const std::string& id() const { return id_; }
  const FiniteSet& dom() const { return dom_; }
  const FiniteSet& cod() const { return cod_; }
  const std::vector<std::size_t>& table() const { return table_; }

  // Structurally sound: total over dom with every image inside cod. Only
  // unchecked() can produce a map for which this is false.
  bool well_formed() const {
    if (table_.size() != dom_.size()) return false;
    for (std::size_t t : table_) {
      if (t >= cod_.size()) return false;
    }
    return true;
  }

  const std::string& apply(const std::string& x) const {
    auto i = dom_.find(x);
    if (!i) {
      fail(ErrorKind::ElementNotInDomain,
           "'" + x + "' is not an element of the domain '" + dom_.id() +
               "' of morphism '" + id_ + "'",
           x);
    }
    return cod_.elements()[table_[*i]];
  }

  // The mapping as (source, target) pairs in domain order.
  std::vector<std::pair<std::string, std::string>> pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(dom_.size());
    for (std::size_t i = 0; i < dom_.size(); ++i) {
      out.emplace_back(dom_.elements()[i], cod_.elements()[table_[i]]);
    }
    return out;
  }

  bool operator==(const FiniteMap& other) const;
  bool operator!=(const FiniteMap& other) const { return !(*this == other); }

 private:
  std::string id_;
  FiniteSet dom_;
  FiniteSet cod_;
  std::vector<std::size_t> table_;
};

inline FiniteMap make_map(
    std::string id, const FiniteSet& dom, const FiniteSet& cod,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  if (id.empty()) fail(ErrorKind::EmptyIdentifier, "morphism id must be non-empty");
  std::vector<std::size_t> table(dom.size(), 0);
  std::vector<bool> seen(dom.size(), false);
  for (const auto& [src, dst] : pairs) {
    auto si = dom.find(src);
    if (!si) {
      fail(ErrorKind::SourceNotInDomain,
           "morphism '" + id + "': source '" + src +
               "' is not an element of domain '" + dom.id() + "'",
           src);
    }
    if (seen[*si]) {
      fail(ErrorKind::DuplicateSource,
           "morphism '" + id + "': source '" + src + "' mapped more than once",
           src);
    }
    auto di = cod.find(dst);
    if (!di) {
      fail(ErrorKind::TargetNotInCodomain,
           "morphism '" + id + "': target '" + dst +
               "' is not an element of codomain '" + cod.id() + "'",
           dst);
    }
    seen[*si] = true;
    table[*si] = *di;
  }
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (!seen[i]) {
      fail(ErrorKind::MissingSource,
           "morphism '" + id + "' is not total: no image for '" +
               dom.elements()[i] + "'",
           dom.elements()[i]);
    }
  }
  return FiniteMap::unchecked(std::move(id), dom, cod, std::move(table));
}

inline FiniteMap identity_map(const FiniteSet& a) {
  std::vector<std::size_t> table(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) table[i] = i;
  return FiniteMap::unchecked("1_" + a.id(), a, a, std::move(table));
}

// g after f, read right to left: (g∘f)(x) = g(f(x)).
inline FiniteMap compose(const FiniteMap& g, const FiniteMap& f) {
  if (f.cod() != g.dom()) {
    fail(ErrorKind::NonComposable,
         "cannot compose '" + g.id() + "' after '" + f.id() + "': cod(" +
             f.id() + ") = '" + f.cod().id() + "' but dom(" + g.id() + ") = '" +
             g.dom().id() + "'");
  }
  std::vector<std::size_t> table(f.dom().size());
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    // f.cod() and g.dom() are equal sets but may order elements differently.
    const std::string& mid = f.cod().elements()[f.table()[i]];
    table[i] = g.table()[*g.dom().find(mid)];
  }
  return FiniteMap::unchecked(g.id() + "∘" + f.id(), f.dom(), g.cod(),
                              std::move(table));
}

inline bool maps_equal(const FiniteMap& f, const FiniteMap& g) {
  if (f.dom() != g.dom() || f.cod() != g.cod()) return false;
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    const std::string& x = f.dom().elements()[i];
    if (f.cod().elements()[f.table()[i]] != g.apply(x)) return false;
  }
  return true;
}

inline bool FiniteMap::operator==(const FiniteMap& other) const {
  return maps_equal(*this, other);
}

// First domain element (in declared order) on which f and g disagree.
// Requires equal domains.
inline std::optional<std::string> first_disagreement(const FiniteMap& f,
                                                     const FiniteMap& g) {
  for (const auto& x : f.dom().elements()) {
    if (f.apply(x) != g.apply(x)) return x;
  }
  return std::nullopt;
}

struct MapClassification {
  bool injective = false;
  bool surjective = false;
  bool bijective = false;
  bool endomorphic = false;
  // Witnesses, first in declared element order: two domain elements sharing
  // an image; a codomain element never hit.
  std::optional<std::pair<std::string, std::string>> collision;
  std::optional<std::string> missed;
};

inline MapClassification classify_map(const FiniteMap& f) {
  MapClassification c;
  std::vector<std::optional<std::size_t>> hit_by(f.cod().size());
  c.injective = true;
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    std::size_t t = f.table()[i];
    if (hit_by[t]) {
      if (c.injective) {
        c.injective = false;
        c.collision = {f.dom().elements()[*hit_by[t]], f.dom().elements()[i]};
      }
    } else {
      hit_by[t] = i;
    }
  }
  c.surjective = true;
  for (std::size_t t = 0; t < f.cod().size(); ++t) {
    if (!hit_by[t]) {
      c.surjective = false;
      c.missed = f.cod().elements()[t];
      break;
    }
  }
  c.bijective = c.injective && c.surjective;
  c.endomorphic = f.dom() == f.cod();
  return c;
}

inline FiniteMap inverse(const FiniteMap& f) {
  MapClassification c = classify_map(f);
  if (!c.bijective) {
    std::ostringstream msg;
    msg << "morphism '" << f.id() << "' is not bijective";
    if (c.collision) {
      msg << ": elements '" << c.collision->first << "' and '"
          << c.collision->second << "' share an image";
    } else if (c.missed) {
      msg << ": codomain element '" << *c.missed << "' is never hit";
    }
    fail(ErrorKind::NotBijective, msg.str(), f.id());
  }
  std::vector<std::size_t> table(f.cod().size());
  for (std::size_t i = 0; i < f.dom().size(); ++i) table[f.table()[i]] = i;
  return FiniteMap::unchecked(f.id() + "⁻¹", f.cod(), f.dom(),
                              std::move(table));
}

}  // namespace viscat
