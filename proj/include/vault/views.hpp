#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "vault/date.hpp"
#include "vault/graph.hpp"
#include "vault/vocab.hpp"

namespace vault {

class ViewError : public std::runtime_error {
public:
  enum class Kind { NotACitizen, NotADocument, Malformed };

  ViewError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

// A citizen's personal record. Every field beyond the IRI is optional; the
// graph carries whatever subset the citizen chose to publish.
struct CitizenProfile {
  Iri iri;
  std::optional<std::string> name;
  std::optional<std::string> surname;
  std::optional<std::string> citizenship;
  std::optional<std::string> address;
  std::optional<std::string> civil_status;
  std::optional<std::string> email;

  friend bool operator==(const CitizenProfile& a, const CitizenProfile& b) = default;
};

std::vector<Triple> profile_to_triples(const Vocabulary& v, const CitizenProfile& p);

// Inverse of profile_to_triples over the subject triples of cid. Throws
// NotACitizen when the type triple is absent, Malformed when a profile
// property is multi-valued or not a plain string.
CitizenProfile triples_to_profile(const Vocabulary& v, const Graph& g, const Iri& cid);

struct DocumentMeta {
  Iri iri;
  Iri doc_class;
  Iri owner;
  std::optional<Iri> issuer;
  std::string title;
  std::string file_name;
  std::string media_type;
  std::string hash_value;
  std::optional<Date> issued_on;
  std::optional<Date> expires;
};

DocumentMeta document_meta(const Vocabulary& v, const Graph& g, const Iri& doc);

bool is_hex_hash(std::string_view s);

// vocab.document plus every class reaching it transitively over the
// rdfs:subClassOf edges asserted in g.
std::set<Iri> document_classes(const Vocabulary& v, const Graph& g);

// Among doc's asserted types that are document classes, those with no other
// asserted type strictly below them in the subclass order.
std::set<Iri> most_specific_doc_classes(const Vocabulary& v, const Graph& g, const Iri& doc);

}  // namespace vault
