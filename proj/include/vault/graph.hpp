#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "vault/term.hpp"

namespace vault {

// Wildcard-or-concrete match over one triple. Empty optional = wildcard.
struct TriplePattern {
  std::optional<Iri> subject;
  std::optional<Iri> predicate;
  std::optional<Term> object;

  bool matches(const Triple& t) const;
};

// In-memory triple set with two indexes: the primary set keeps canonical
// (S, P, O) order, so iteration equals serialization order; a secondary
// (P, O) -> subjects map serves object lookups (incoming edges).
class Graph {
public:
  Graph() = default;

  bool insert(Triple t);
  bool contains(const Triple& t) const;

  // Deletes every triple with subject s, plus every triple (x, p, s) whose
  // predicate p is in incoming_predicates. Returns the number removed.
  std::size_t remove_subject(const Iri& s, std::span<const Iri> incoming_predicates);

  // Matching triples in canonical (S, P, O) order.
  std::vector<Triple> scan(const TriplePattern& p) const;

  std::size_t size() const { return spo_.size(); }
  bool empty() const { return spo_.empty(); }

  auto begin() const { return spo_.begin(); }
  auto end() const { return spo_.end(); }

  friend bool operator==(const Graph& a, const Graph& b) { return a.spo_ == b.spo_; }

private:
  struct SubjectKey {
    const std::string* canon;
  };
  struct TripleLess {
    using is_transparent = void;
    bool operator()(const Triple& a, const Triple& b) const { return a < b; }
    bool operator()(const Triple& a, const SubjectKey& k) const {
      return a.subject.canonical() < *k.canon;
    }
    bool operator()(const SubjectKey& k, const Triple& a) const {
      return *k.canon < a.subject.canonical();
    }
  };

  void erase_indexed(const Triple& t);

  std::set<Triple, TripleLess> spo_;
  std::map<std::pair<std::string, std::string>, std::set<Iri>> pos_;
};

}  // namespace vault
