#include "vault/graph.hpp"

namespace vault {

bool TriplePattern::matches(const Triple& t) const {
  if (subject && !(*subject == t.subject)) return false;
  if (predicate && !(*predicate == t.predicate)) return false;
  if (object && !(*object == t.object)) return false;
  return true;
}

bool Graph::insert(Triple t) {
  auto [it, fresh] = spo_.insert(std::move(t));
  if (fresh) {
    pos_[{it->predicate.canonical(), it->object.canonical()}].insert(it->subject);
  }
  return fresh;
}

bool Graph::contains(const Triple& t) const { return spo_.count(t) > 0; }

void Graph::erase_indexed(const Triple& t) {
  auto key = std::make_pair(t.predicate.canonical(), t.object.canonical());
  auto it = pos_.find(key);
  if (it != pos_.end()) {
    it->second.erase(t.subject);
    if (it->second.empty()) pos_.erase(it);
  }
  spo_.erase(t);
}

std::size_t Graph::remove_subject(const Iri& s, std::span<const Iri> incoming_predicates) {
  std::vector<Triple> doomed;

  SubjectKey key{&s.canonical()};
  for (auto it = spo_.lower_bound(key); it != spo_.end() && it->subject == s; ++it) {
    doomed.push_back(*it);
  }

  for (const Iri& p : incoming_predicates) {
    auto pit = pos_.find(std::make_pair(p.canonical(), s.canonical()));
    if (pit == pos_.end()) continue;
    for (const Iri& subj : pit->second) {
      if (subj == s) continue;  // already collected above
      doomed.push_back(Triple{subj, p, Term(s)});
    }
  }

  for (const Triple& t : doomed) erase_indexed(t);
  return doomed.size();
}

std::vector<Triple> Graph::scan(const TriplePattern& p) const {
  std::vector<Triple> out;

  if (p.subject) {
    SubjectKey key{&p.subject->canonical()};
    for (auto it = spo_.lower_bound(key); it != spo_.end() && it->subject == *p.subject; ++it) {
      if (p.matches(*it)) out.push_back(*it);
    }
    return out;
  }

  if (p.predicate && p.object) {
    auto pit = pos_.find(std::make_pair(p.predicate->canonical(), p.object->canonical()));
    if (pit == pos_.end()) return out;
    for (const Iri& subj : pit->second) {
      out.push_back(Triple{subj, *p.predicate, *p.object});
    }
    return out;
  }

  for (const Triple& t : spo_) {
    if (p.matches(t)) out.push_back(t);
  }
  return out;
}

}  // namespace vault
