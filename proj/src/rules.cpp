#include "vault/query.hpp"

namespace vault {

namespace {

std::optional<Triple> instantiate(const QueryPattern& head, const Binding& b) {
  auto resolve = [&](const PatternTerm& pt) -> std::optional<Term> {
    if (const auto* t = std::get_if<Term>(&pt)) return *t;
    auto it = b.find(std::get<Variable>(pt).name);
    if (it == b.end()) return std::nullopt;
    return it->second;
  };
  auto s = resolve(head.subject);
  auto p = resolve(head.predicate);
  auto o = resolve(head.object);
  // a variable bound to a literal cannot stand as subject or predicate
  if (!s || !p || !o || !s->is_iri() || !p->is_iri()) return std::nullopt;
  return Triple{s->iri(), p->iri(), *o};
}

}  // namespace

Graph inference_closure(const Graph& g, std::span<const Rule> rules) {
  Graph out = g;
  bool changed = true;
  while (changed) {
    changed = false;

    // subclass typing; transitivity falls out of the fixpoint iteration
    for (const Triple& sc :
         out.scan(TriplePattern{std::nullopt, rdfs::subclass_of(), std::nullopt})) {
      if (!sc.object.is_iri()) continue;
      for (const Triple& inst :
           out.scan(TriplePattern{std::nullopt, rdf::type(), Term(sc.subject)})) {
        if (out.insert(Triple{inst.subject, rdf::type(), sc.object})) changed = true;
      }
    }

    for (const Rule& r : rules) {
      for (const Binding& b : match_patterns(out, r.body)) {
        auto t = instantiate(r.head, b);
        if (t && out.insert(std::move(*t))) changed = true;
      }
    }
  }
  return out;
}

std::string default_rules_text(const Vocabulary& v) {
  auto line = [](const Triple& t) {
    return t.subject.canonical() + " " + t.predicate.canonical() + " " +
           t.object.canonical() + " .\n";
  };
  Iri marriage_cert(v.ns + "MarriageCertificate");

  std::string out;
  out += "# Document taxonomy.\n";
  for (const Triple& t : v.bootstrap()) out += line(t);
  out += line(Triple{marriage_cert, rdfs::subclass_of(), Term(v.personal_document)});
  out += "\n";
  out += "# A marriage certificate in the wallet marks its owner as married.\n";
  out += "?d " + rdf::type().canonical() + " " + marriage_cert.canonical() + " & ?c " +
         v.owns.canonical() + " ?d => ?c " + v.civil_status.canonical() + " \"married\"\n";
  return out;
}

}  // namespace vault
