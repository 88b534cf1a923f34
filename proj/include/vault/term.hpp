#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <variant>

namespace vault {

// Absolute IRI. Validation is shallow: a scheme followed by a colon, no
// whitespace or angle brackets anywhere. The canonical form is the value
// wrapped in angle brackets, and all ordering runs over canonical forms so
// that sorting terms componentwise agrees with sorting serialized lines
// bytewise.
class Iri {
public:
  explicit Iri(std::string value);
  static bool valid(std::string_view v);

  const std::string& value() const { return value_; }
  const std::string& canonical() const { return canon_; }

  friend bool operator==(const Iri& a, const Iri& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Iri& a, const Iri& b) {
    return a.canon_ <=> b.canon_;
  }

private:
  std::string value_;
  std::string canon_;
};

namespace xsd {
const Iri& string_type();
const Iri& date_type();
}  // namespace xsd

// Escapes a lexical form for placement between double quotes: backslash,
// quote, newline, carriage return and tab get two-character escapes, other
// control bytes (and 0x7F) become \u00XX.
std::string escape_literal(std::string_view lexical);

// Typed literal. xsd:string is the default datatype and stays implicit in the
// canonical form; xsd:date lexical forms are validated on construction.
class Literal {
public:
  explicit Literal(std::string lexical);
  Literal(std::string lexical, Iri datatype);

  const std::string& lexical() const { return lexical_; }
  const Iri& datatype() const { return datatype_; }
  const std::string& canonical() const { return canon_; }
  bool is_string() const;
  bool is_date() const;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.canon_ == b.canon_;
  }
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
    return a.canon_ <=> b.canon_;
  }

private:
  std::string lexical_;
  Iri datatype_;
  std::string canon_;
};

class Term {
public:
  Term(Iri iri) : v_(std::move(iri)) {}        // NOLINT: implicit by design
  Term(Literal lit) : v_(std::move(lit)) {}    // NOLINT

  bool is_iri() const { return std::holds_alternative<Iri>(v_); }
  bool is_literal() const { return std::holds_alternative<Literal>(v_); }
  const Iri& iri() const { return std::get<Iri>(v_); }
  const Literal& literal() const { return std::get<Literal>(v_); }

  // The canonical form is injective across both alternatives (IRIs start
  // with '<', literals with '"'), so it doubles as the identity.
  const std::string& canonical() const {
    return is_iri() ? iri().canonical() : literal().canonical();
  }

  friend bool operator==(const Term& a, const Term& b) {
    return a.canonical() == b.canonical();
  }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    return a.canonical() <=> b.canonical();
  }

private:
  std::variant<Iri, Literal> v_;
};

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  friend bool operator==(const Triple& a, const Triple& b) {
    return a.subject == b.subject && a.predicate == b.predicate && a.object == b.object;
  }
  friend std::strong_ordering operator<=>(const Triple& a, const Triple& b) {
    if (auto c = a.subject <=> b.subject; c != 0) return c;
    if (auto c = a.predicate <=> b.predicate; c != 0) return c;
    return a.object <=> b.object;
  }
};

}  // namespace vault
