#pragma once

#include <string>
#include <vector>

#include "vault/term.hpp"

namespace vault {

namespace rdf {
const Iri& type();
}
namespace rdfs {
const Iri& subclass_of();
}

// The class and property IRIs every module agrees on. The namespace prefix is
// configurable; all fields are minted from it at construction.
struct Vocabulary {
  static constexpr const char* kDefaultNamespace = "http://portfolio.det.uvigo.es/ns#";

  explicit Vocabulary(std::string namespace_prefix = kDefaultNamespace);

  std::string ns;

  // classes
  Iri citizen;
  Iri public_administration;
  Iri document;
  Iri national_document;
  Iri international_document;
  Iri regional_document;
  Iri personal_document;

  // relations
  Iri issues;
  Iri owns;

  // citizen properties
  Iri name;
  Iri surname;
  Iri citizenship;
  Iri address;
  Iri civil_status;
  Iri email;

  // document properties
  Iri title;
  Iri file_name;
  Iri media_type;
  Iri hash_value;
  Iri expires;
  Iri issued_on;

  bool is_citizen_property(const Iri& p) const;
  bool is_document_property(const Iri& p) const;

  // The four subclass declarations the store always carries.
  std::vector<Triple> bootstrap() const;
};

}  // namespace vault
