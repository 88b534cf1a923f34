#include "vault/vocab.hpp"

namespace vault {

namespace rdf {
const Iri& type() {
  static const Iri iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
  return iri;
}
}  // namespace rdf

namespace rdfs {
const Iri& subclass_of() {
  static const Iri iri("http://www.w3.org/2000/01/rdf-schema#subClassOf");
  return iri;
}
}  // namespace rdfs

Vocabulary::Vocabulary(std::string namespace_prefix)
    : ns(std::move(namespace_prefix)),
      citizen(ns + "Citizen"),
      public_administration(ns + "PublicAdministration"),
      document(ns + "Document"),
      national_document(ns + "NationalDocument"),
      international_document(ns + "InternationalDocument"),
      regional_document(ns + "RegionalDocument"),
      personal_document(ns + "PersonalDocument"),
      issues(ns + "issues"),
      owns(ns + "owns"),
      name(ns + "name"),
      surname(ns + "surname"),
      citizenship(ns + "citizenship"),
      address(ns + "address"),
      civil_status(ns + "civilStatus"),
      email(ns + "email"),
      title(ns + "title"),
      file_name(ns + "fileName"),
      media_type(ns + "mediaType"),
      hash_value(ns + "hashValue"),
      expires(ns + "expires"),
      issued_on(ns + "issuedOn") {}

bool Vocabulary::is_citizen_property(const Iri& p) const {
  return p == name || p == surname || p == citizenship || p == address ||
         p == civil_status || p == email;
}

bool Vocabulary::is_document_property(const Iri& p) const {
  return p == title || p == file_name || p == media_type || p == hash_value ||
         p == expires || p == issued_on;
}

std::vector<Triple> Vocabulary::bootstrap() const {
  std::vector<Triple> out;
  for (const Iri* sub : {&national_document, &international_document,
                         &regional_document, &personal_document}) {
    out.push_back(Triple{*sub, rdfs::subclass_of(), Term(document)});
  }
  return out;
}

}  // namespace vault
