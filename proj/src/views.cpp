#include "vault/views.hpp"

#include <map>

namespace vault {

std::vector<Triple> profile_to_triples(const Vocabulary& v, const CitizenProfile& p) {
  std::vector<Triple> out;
  out.push_back(Triple{p.iri, rdf::type(), Term(v.citizen)});
  auto add = [&](const Iri& prop, const std::optional<std::string>& value) {
    if (value) out.push_back(Triple{p.iri, prop, Term(Literal(*value))});
  };
  add(v.name, p.name);
  add(v.surname, p.surname);
  add(v.citizenship, p.citizenship);
  add(v.address, p.address);
  add(v.civil_status, p.civil_status);
  add(v.email, p.email);
  return out;
}

namespace {

// Single-valued plain string property; throws Malformed on violations.
std::optional<std::string> string_prop(const Graph& g, const Iri& subject, const Iri& prop) {
  auto hits = g.scan(TriplePattern{subject, prop, std::nullopt});
  if (hits.empty()) return std::nullopt;
  if (hits.size() > 1) {
    throw ViewError(ViewError::Kind::Malformed,
                    "property " + prop.canonical() + " of " + subject.canonical() +
                        " is multi-valued");
  }
  const Term& o = hits.front().object;
  if (!o.is_literal() || !o.literal().is_string()) {
    throw ViewError(ViewError::Kind::Malformed,
                    "property " + prop.canonical() + " of " + subject.canonical() +
                        " is not a plain string");
  }
  return o.literal().lexical();
}

std::optional<Date> date_prop(const Graph& g, const Iri& subject, const Iri& prop) {
  auto hits = g.scan(TriplePattern{subject, prop, std::nullopt});
  if (hits.empty()) return std::nullopt;
  if (hits.size() > 1) {
    throw ViewError(ViewError::Kind::Malformed,
                    "property " + prop.canonical() + " of " + subject.canonical() +
                        " is multi-valued");
  }
  const Term& o = hits.front().object;
  if (!o.is_literal() || !o.literal().is_date()) {
    throw ViewError(ViewError::Kind::Malformed,
                    "property " + prop.canonical() + " of " + subject.canonical() +
                        " is not an xsd:date");
  }
  return Date::parse(o.literal().lexical());
}

}  // namespace

CitizenProfile triples_to_profile(const Vocabulary& v, const Graph& g, const Iri& cid) {
  if (!g.contains(Triple{cid, rdf::type(), Term(v.citizen)})) {
    throw ViewError(ViewError::Kind::NotACitizen,
                    cid.canonical() + " has no citizen type triple");
  }
  CitizenProfile p{cid, {}, {}, {}, {}, {}, {}};
  p.name = string_prop(g, cid, v.name);
  p.surname = string_prop(g, cid, v.surname);
  p.citizenship = string_prop(g, cid, v.citizenship);
  p.address = string_prop(g, cid, v.address);
  p.civil_status = string_prop(g, cid, v.civil_status);
  p.email = string_prop(g, cid, v.email);
  return p;
}

bool is_hex_hash(std::string_view s) {
  if (s.size() != 64) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

std::set<Iri> document_classes(const Vocabulary& v, const Graph& g) {
  // reverse subclass edges, then walk down from Document
  std::map<Iri, std::set<Iri>> children;
  for (const Triple& t : g.scan(TriplePattern{std::nullopt, rdfs::subclass_of(), std::nullopt})) {
    if (t.object.is_iri()) children[t.object.iri()].insert(t.subject);
  }
  std::set<Iri> out{v.document};
  std::vector<Iri> work{v.document};
  while (!work.empty()) {
    Iri cur = work.back();
    work.pop_back();
    auto it = children.find(cur);
    if (it == children.end()) continue;
    for (const Iri& child : it->second) {
      if (out.insert(child).second) work.push_back(child);
    }
  }
  return out;
}

namespace {

// Is `a` a strict descendant of `b` over subClassOf edges (a != b, a reaches b)?
bool reaches(const Graph& g, const Iri& from, const Iri& to) {
  std::set<Iri> seen{from};
  std::vector<Iri> work{from};
  while (!work.empty()) {
    Iri cur = work.back();
    work.pop_back();
    if (cur == to) return true;
    for (const Triple& t : g.scan(TriplePattern{cur, rdfs::subclass_of(), std::nullopt})) {
      if (t.object.is_iri() && seen.insert(t.object.iri()).second) {
        work.push_back(t.object.iri());
      }
    }
  }
  return false;
}

bool strictly_below(const Graph& g, const Iri& a, const Iri& b) {
  if (a == b) return false;
  return reaches(g, a, b) && !reaches(g, b, a);
}

}  // namespace

std::set<Iri> most_specific_doc_classes(const Vocabulary& v, const Graph& g, const Iri& doc) {
  std::set<Iri> doc_classes = document_classes(v, g);
  std::set<Iri> types;
  for (const Triple& t : g.scan(TriplePattern{doc, rdf::type(), std::nullopt})) {
    if (t.object.is_iri() && doc_classes.count(t.object.iri())) types.insert(t.object.iri());
  }
  std::set<Iri> minimal;
  for (const Iri& t : types) {
    bool has_lower = false;
    for (const Iri& u : types) {
      if (strictly_below(g, u, t)) {
        has_lower = true;
        break;
      }
    }
    if (!has_lower) minimal.insert(t);
  }
  return minimal;
}

DocumentMeta document_meta(const Vocabulary& v, const Graph& g, const Iri& doc) {
  auto specific = most_specific_doc_classes(v, g, doc);
  if (specific.empty()) {
    throw ViewError(ViewError::Kind::NotADocument,
                    doc.canonical() + " has no document class");
  }
  if (specific.size() > 1) {
    throw ViewError(ViewError::Kind::Malformed,
                    doc.canonical() + " has multiple most-specific classes");
  }

  auto owners = g.scan(TriplePattern{std::nullopt, v.owns, Term(doc)});
  if (owners.size() != 1) {
    throw ViewError(ViewError::Kind::Malformed,
                    doc.canonical() + " must have exactly one owner");
  }
  auto issuers = g.scan(TriplePattern{std::nullopt, v.issues, Term(doc)});
  if (issuers.size() > 1) {
    throw ViewError(ViewError::Kind::Malformed,
                    doc.canonical() + " has multiple issuers");
  }

  auto required = [&](const Iri& prop) {
    auto value = string_prop(g, doc, prop);
    if (!value) {
      throw ViewError(ViewError::Kind::Malformed,
                      doc.canonical() + " is missing " + prop.canonical());
    }
    return *value;
  };

  DocumentMeta m{doc,
                 *specific.begin(),
                 owners.front().subject,
                 issuers.empty() ? std::optional<Iri>{} : std::optional<Iri>{issuers.front().subject},
                 string_prop(g, doc, v.title).value_or(""),
                 required(v.file_name),
                 required(v.media_type),
                 required(v.hash_value),
                 date_prop(g, doc, v.issued_on),
                 date_prop(g, doc, v.expires)};
  if (!is_hex_hash(m.hash_value)) {
    throw ViewError(ViewError::Kind::Malformed,
                    doc.canonical() + " hash value is not 64-char lowercase hex");
  }
  return m;
}

}  // namespace vault
