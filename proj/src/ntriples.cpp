#include "vault/ntriples.hpp"

#include <optional>

#include "scan_util.hpp"
#include "vault/fsutil.hpp"

namespace vault {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

std::string triple_line(const Triple& t) {
  std::string out;
  out += t.subject.canonical();
  out += ' ';
  out += t.predicate.canonical();
  out += ' ';
  out += t.object.canonical();
  out += " .";
  return out;
}

std::string serialize(const Graph& g) {
  std::string out;
  for (const Triple& t : g) {
    out += triple_line(t);
    out += '\n';
  }
  return out;
}

namespace {

class LineParser {
public:
  LineParser(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  [[noreturn]] void fail(std::size_t offset, const std::string& msg) const {
    throw ParseError(line_no_, offset + 1, msg);
  }

  void skip_ws() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
  }

  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return line_[pos_]; }
  std::size_t pos() const { return pos_; }

  Iri parse_iri() {
    reject_unsupported();
    if (at_end() || peek() != '<') fail(pos_, "expected IRI");
    try {
      return Iri(detail::scan_iriref(line_, pos_));
    } catch (const detail::ScanError& e) {
      fail(e.offset, e.message);
    }
  }

  Term parse_object() {
    reject_unsupported();
    if (at_end()) fail(pos_, "expected object term");
    if (peek() == '<') return Term(parse_iri());
    if (peek() != '"') fail(pos_, "expected object term");
    std::size_t start = pos_;
    std::string lexical;
    try {
      lexical = detail::scan_quoted(line_, pos_);
    } catch (const detail::ScanError& e) {
      fail(e.offset, e.message);
    }
    if (!at_end() && peek() == '@') fail(pos_, "language tags are not supported");
    if (!at_end() && peek() == '^') {
      ++pos_;
      if (at_end() || peek() != '^') fail(pos_ - 1, "expected ^^ before datatype");
      ++pos_;
      Iri datatype = parse_iri();
      try {
        return Term(Literal(std::move(lexical), std::move(datatype)));
      } catch (const std::invalid_argument& e) {
        fail(start, e.what());
      }
    }
    return Term(Literal(std::move(lexical)));
  }

  void expect_dot_and_end() {
    skip_ws();
    if (at_end() || peek() != '.') fail(pos_, "expected '.' after object");
    ++pos_;
    skip_ws();
    if (!at_end()) fail(pos_, "unexpected trailing characters");
  }

private:
  void reject_unsupported() {
    if (pos_ + 1 < line_.size() && line_[pos_] == '_' && line_[pos_ + 1] == ':') {
      fail(pos_, "blank nodes are not supported");
    }
  }

  std::string_view line_;
  std::size_t pos_ = 0;
  std::size_t line_no_;
};

}  // namespace

Graph parse_ntriples(std::string_view text) {
  Graph g;
  std::size_t line_no = 0;
  std::size_t cursor = 0;
  while (cursor < text.size()) {
    std::size_t eol = text.find('\n', cursor);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(cursor)
                                : text.substr(cursor, eol - cursor);
    cursor = (eol == std::string_view::npos) ? text.size() : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    LineParser lp(line, line_no);
    lp.skip_ws();
    if (lp.at_end() || lp.peek() == '#') continue;

    Iri subject = lp.parse_iri();
    lp.skip_ws();
    Iri predicate = lp.parse_iri();
    lp.skip_ws();
    Term object = lp.parse_object();
    lp.expect_dot_and_end();
    g.insert(Triple{std::move(subject), std::move(predicate), std::move(object)});
  }
  return g;
}

void save(const Graph& g, const std::filesystem::path& p) {
  write_file_atomic(p, serialize(g));
}

Graph load(const std::filesystem::path& p) {
  return parse_ntriples(read_file_or_throw(p));
}

}  // namespace vault
