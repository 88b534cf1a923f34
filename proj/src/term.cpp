#include "vault/term.hpp"

#include <cstdio>
#include <stdexcept>

#include "vault/date.hpp"

namespace vault {

bool Iri::valid(std::string_view v) {
  if (v.empty()) return false;
  std::size_t colon = std::string_view::npos;
  for (std::size_t i = 0; i < v.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(v[i]);
    if (c <= 0x20 || c == 0x7F || c == '<' || c == '>' || c == '"') return false;
    if (c == ':' && colon == std::string_view::npos) colon = i;
    if ((c == '/' || c == '?' || c == '#') && colon == std::string_view::npos) return false;
  }
  // need a scheme: at least one character before the first colon
  return colon != std::string_view::npos && colon > 0;
}

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (!valid(value_)) throw std::invalid_argument("invalid IRI: " + value_);
  canon_.reserve(value_.size() + 2);
  canon_ += '<';
  canon_ += value_;
  canon_ += '>';
}

namespace xsd {
const Iri& string_type() {
  static const Iri iri("http://www.w3.org/2001/XMLSchema#string");
  return iri;
}
const Iri& date_type() {
  static const Iri iri("http://www.w3.org/2001/XMLSchema#date");
  return iri;
}
}  // namespace xsd

std::string escape_literal(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size());
  for (unsigned char c : lexical) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

namespace {
std::string literal_canonical(const std::string& lexical, const Iri& datatype) {
  std::string out;
  out += '"';
  out += escape_literal(lexical);
  out += '"';
  if (!(datatype == xsd::string_type())) {
    out += "^^";
    out += datatype.canonical();
  }
  return out;
}
}  // namespace

Literal::Literal(std::string lexical) : Literal(std::move(lexical), xsd::string_type()) {}

Literal::Literal(std::string lexical, Iri datatype)
    : lexical_(std::move(lexical)), datatype_(std::move(datatype)) {
  if (datatype_ == xsd::date_type() && !Date::parse(lexical_)) {
    throw std::invalid_argument("invalid xsd:date lexical form: " + lexical_);
  }
  canon_ = literal_canonical(lexical_, datatype_);
}

bool Literal::is_string() const { return datatype_ == xsd::string_type(); }
bool Literal::is_date() const { return datatype_ == xsd::date_type(); }

}  // namespace vault
