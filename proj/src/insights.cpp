#include <algorithm>

#include "vault/query.hpp"
#include "vault/views.hpp"

namespace vault {

namespace {

bool is_document(const Graph& closure, const Vocabulary& v, const Iri& d) {
  return closure.contains(Triple{d, rdf::type(), Term(v.document)});
}

}  // namespace

std::vector<Iri> expired_documents(const Vocabulary& v, const Graph& g,
                                   std::span<const Rule> rules, const Date& today) {
  Graph closure = inference_closure(g, rules);
  std::set<Iri> hits;
  for (const Triple& t : closure.scan(TriplePattern{std::nullopt, v.expires, std::nullopt})) {
    if (!t.object.is_literal() || !t.object.literal().is_date()) continue;
    auto e = Date::parse(t.object.literal().lexical());
    if (*e < today && is_document(closure, v, t.subject)) hits.insert(t.subject);
  }
  return {hits.begin(), hits.end()};
}

std::vector<std::pair<Iri, Date>> expiring_within(const Vocabulary& v, const Graph& g,
                                                  std::span<const Rule> rules,
                                                  const Date& today, long window_days) {
  if (window_days < 1) {
    throw InvalidWindow("window must be at least 1 day, got " + std::to_string(window_days));
  }
  Graph closure = inference_closure(g, rules);
  auto bound = today.to_days() + std::chrono::days(window_days);

  std::set<std::pair<std::string, std::string>> seen;
  std::vector<std::pair<Iri, Date>> out;
  for (const Triple& t : closure.scan(TriplePattern{std::nullopt, v.expires, std::nullopt})) {
    if (!t.object.is_literal() || !t.object.literal().is_date()) continue;
    auto e = Date::parse(t.object.literal().lexical());
    if (e->to_days() < today.to_days() || e->to_days() > bound) continue;
    if (!is_document(closure, v, t.subject)) continue;
    if (seen.emplace(t.subject.canonical(), e->str()).second) out.emplace_back(t.subject, *e);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  return out;
}

std::vector<std::pair<Iri, Iri>> duplicate_documents(const Vocabulary& v, const Graph& g,
                                                     std::span<const Rule> rules) {
  Graph closure = inference_closure(g, rules);

  std::set<Iri> docs;
  for (const Triple& t :
       closure.scan(TriplePattern{std::nullopt, rdf::type(), Term(v.document)})) {
    docs.insert(t.subject);
  }

  struct Facts {
    std::set<Iri> owners;
    std::set<Iri> issuers;
    std::set<Iri> classes;  // most specific
  };
  std::map<Iri, Facts> facts;
  for (const Iri& d : docs) {
    Facts f;
    for (const Triple& t : closure.scan(TriplePattern{std::nullopt, v.owns, Term(d)})) {
      f.owners.insert(t.subject);
    }
    for (const Triple& t : closure.scan(TriplePattern{std::nullopt, v.issues, Term(d)})) {
      f.issuers.insert(t.subject);
    }
    f.classes = most_specific_doc_classes(v, closure, d);
    facts.emplace(d, std::move(f));
  }

  auto intersects = [](const std::set<Iri>& a, const std::set<Iri>& b) {
    for (const Iri& x : a) {
      if (b.count(x)) return true;
    }
    return false;
  };

  std::vector<std::pair<Iri, Iri>> out;
  for (auto i = facts.begin(); i != facts.end(); ++i) {
    for (auto j = std::next(i); j != facts.end(); ++j) {
      const Facts& a = i->second;
      const Facts& b = j->second;
      if (!intersects(a.owners, b.owners)) continue;
      if (a.classes.empty() || a.classes != b.classes) continue;
      if (a.issuers.empty() || b.issuers.empty()) continue;
      if (intersects(a.issuers, b.issuers)) continue;  // "different PAs"
      out.emplace_back(i->first, j->first);
    }
  }
  return out;
}

std::vector<Triple> derive_status(const Graph& g, std::span<const Rule> rules) {
  Graph closure = inference_closure(g, rules);
  std::vector<Triple> out;
  for (const Triple& t : closure) {
    if (!g.contains(t)) out.push_back(t);
  }
  return out;
}

}  // namespace vault
