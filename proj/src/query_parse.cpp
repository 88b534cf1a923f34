#include <cctype>
#include <optional>
#include <set>

#include "scan_util.hpp"
#include "vault/query.hpp"

namespace vault {

QueryParseError::QueryParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

RuleParseError::RuleParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

struct Tok {
  enum Kind {
    KVar, KIri, KLit, KWord, KLBrace, KRBrace, KLParen, KRParen,
    KDot, KAmp, KArrow, KCmp, KEnd
  };
  Kind kind = KEnd;
  std::size_t offset = 0;
  std::string word;          // KVar name or KWord text
  std::optional<Term> term;  // KIri / KLit
  Cmp cmp = Cmp::Eq;
};

// Both grammars share one token stream. The single ambiguity is '<': inside
// FILTER(...) it is a comparator, elsewhere it opens an IRI; the parser says
// which via cmp_context.
class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Tok next(bool cmp_context) {
    skip_ws();
    Tok t;
    t.offset = pos_;
    if (pos_ >= text_.size()) {
      t.kind = Tok::KEnd;
      return t;
    }
    char c = text_[pos_];
    switch (c) {
      case '{': ++pos_; t.kind = Tok::KLBrace; return t;
      case '}': ++pos_; t.kind = Tok::KRBrace; return t;
      case '(': ++pos_; t.kind = Tok::KLParen; return t;
      case ')': ++pos_; t.kind = Tok::KRParen; return t;
      case '.': ++pos_; t.kind = Tok::KDot; return t;
      case '&': ++pos_; t.kind = Tok::KAmp; return t;
      case '?': return lex_var(t);
      case '"': return lex_literal(t);
      case '<':
        if (cmp_context) {
          ++pos_;
          t.kind = Tok::KCmp;
          t.cmp = take('=') ? Cmp::Le : Cmp::Lt;
          return t;
        }
        return lex_iri(t);
      case '>':
        ++pos_;
        t.kind = Tok::KCmp;
        t.cmp = take('=') ? Cmp::Ge : Cmp::Gt;
        return t;
      case '=':
        ++pos_;
        if (take('>')) {
          t.kind = Tok::KArrow;
        } else {
          t.kind = Tok::KCmp;
          t.cmp = Cmp::Eq;
        }
        return t;
      case '!':
        ++pos_;
        if (!take('=')) throw detail::ScanError{t.offset, "expected != "};
        t.kind = Tok::KCmp;
        t.cmp = Cmp::Ne;
        return t;
      default:
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_word(t);
        throw detail::ScanError{pos_, std::string("unknown token '") + c + "'"};
    }
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool take(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Tok lex_var(Tok t) {
    ++pos_;
    std::string name;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        name += c;
        ++pos_;
      } else {
        break;
      }
    }
    if (name.empty()) throw detail::ScanError{t.offset, "expected variable name after '?'"};
    t.kind = Tok::KVar;
    t.word = std::move(name);
    return t;
  }

  Tok lex_iri(Tok t) {
    t.kind = Tok::KIri;
    t.term = Term(Iri(detail::scan_iriref(text_, pos_)));
    return t;
  }

  Tok lex_literal(Tok t) {
    std::string lexical = detail::scan_quoted(text_, pos_);
    if (pos_ < text_.size() && text_[pos_] == '@') {
      throw detail::ScanError{pos_, "language tags are not supported"};
    }
    t.kind = Tok::KLit;
    if (pos_ + 1 < text_.size() && text_[pos_] == '^' && text_[pos_ + 1] == '^') {
      pos_ += 2;
      if (pos_ >= text_.size() || text_[pos_] != '<') {
        throw detail::ScanError{pos_, "expected datatype IRI after ^^"};
      }
      Iri datatype(detail::scan_iriref(text_, pos_));
      try {
        t.term = Term(Literal(std::move(lexical), std::move(datatype)));
      } catch (const std::invalid_argument& e) {
        throw detail::ScanError{t.offset, e.what()};
      }
    } else {
      t.term = Term(Literal(std::move(lexical)));
    }
    return t;
  }

  Tok lex_word(Tok t) {
    std::string w;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        w += c;
        ++pos_;
      } else {
        break;
      }
    }
    t.kind = Tok::KWord;
    t.word = std::move(w);
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

class QueryParser {
public:
  explicit QueryParser(std::string_view text) : text_(text), lex_(text) { advance(); }

  Query parse() {
    expect_word("SELECT");
    Query q;
    std::vector<std::size_t> var_offsets;
    while (cur_.kind == Tok::KVar) {
      q.select_vars.push_back(cur_.word);
      var_offsets.push_back(cur_.offset);
      advance();
    }
    if (q.select_vars.empty()) fail(cur_.offset, "expected at least one select variable");
    expect_word("WHERE");
    expect(Tok::KLBrace, "expected '{'");
    if (cur_.kind == Tok::KRBrace) fail(cur_.offset, "empty pattern list");

    q.patterns.push_back(parse_pattern());
    bool in_filters = false;
    while (cur_.kind == Tok::KDot) {
      advance();
      if (cur_.kind == Tok::KWord && cur_.word == "FILTER") {
        in_filters = true;
        q.filters.push_back(parse_filter());
      } else if (in_filters) {
        fail(cur_.offset, "patterns must precede filters");
      } else {
        q.patterns.push_back(parse_pattern());
      }
    }
    expect(Tok::KRBrace, "expected '}'");
    expect(Tok::KEnd, "unexpected trailing characters");

    check_vars(q, var_offsets);
    return q;
  }

private:
  void advance(bool cmp_context = false) {
    try {
      cur_ = lex_.next(cmp_context);
    } catch (const detail::ScanError& e) {
      fail(e.offset, e.message);
    }
  }

  [[noreturn]] void fail(std::size_t offset, const std::string& msg) {
    auto [line, col] = line_col(text_, offset);
    throw QueryParseError(line, col, msg);
  }

  void expect(Tok::Kind kind, const std::string& msg) {
    if (cur_.kind != kind) fail(cur_.offset, msg);
    advance();
  }

  void expect_word(const std::string& w) {
    if (cur_.kind != Tok::KWord || cur_.word != w) fail(cur_.offset, "expected " + w);
    advance();
  }

  PatternTerm parse_pattern_term(bool allow_literal) {
    if (cur_.kind == Tok::KVar) {
      Variable v{cur_.word};
      advance();
      return v;
    }
    if (cur_.kind == Tok::KIri) {
      Term t = *cur_.term;
      advance();
      return t;
    }
    if (cur_.kind == Tok::KLit) {
      if (!allow_literal) fail(cur_.offset, "literal not allowed in this position");
      Term t = *cur_.term;
      advance();
      return t;
    }
    fail(cur_.offset, "expected variable, IRI or literal");
  }

  QueryPattern parse_pattern() {
    QueryPattern p{parse_pattern_term(false), parse_pattern_term(false),
                   parse_pattern_term(true)};
    return p;
  }

  FilterOperand parse_operand() {
    if (cur_.kind == Tok::KVar) {
      FilterOperand op{FilterOperand::Kind::Var, cur_.word, {}};
      filter_var_offsets_.emplace_back(cur_.word, cur_.offset);
      advance(true);
      return op;
    }
    if (cur_.kind == Tok::KLit) {
      FilterOperand op{FilterOperand::Kind::Lit, {}, {*cur_.term}};
      advance(true);
      return op;
    }
    if (cur_.kind == Tok::KWord && cur_.word == "NOW") {
      advance(true);
      if (cur_.kind != Tok::KLParen) fail(cur_.offset, "expected ( after NOW");
      advance(true);
      if (cur_.kind != Tok::KRParen) fail(cur_.offset, "expected ) after NOW(");
      advance(true);
      return FilterOperand{FilterOperand::Kind::Now, {}, {}};
    }
    fail(cur_.offset, "expected variable, literal or NOW()");
  }

  Filter parse_filter() {
    advance();  // over FILTER
    if (cur_.kind != Tok::KLParen) fail(cur_.offset, "expected ( after FILTER");
    advance(true);
    Filter f{parse_operand(), Cmp::Eq, FilterOperand{FilterOperand::Kind::Now, {}, {}}};
    if (cur_.kind != Tok::KCmp) fail(cur_.offset, "expected comparison operator");
    f.op = cur_.cmp;
    advance(true);
    f.rhs = parse_operand();
    if (cur_.kind != Tok::KRParen) fail(cur_.offset, "expected )");
    advance();
    return f;
  }

  void check_vars(const Query& q, const std::vector<std::size_t>& select_offsets) {
    std::set<std::string> pattern_vars;
    for (const QueryPattern& p : q.patterns) {
      for (const PatternTerm* pt : {&p.subject, &p.predicate, &p.object}) {
        if (const auto* v = std::get_if<Variable>(pt)) pattern_vars.insert(v->name);
      }
    }
    for (std::size_t i = 0; i < q.select_vars.size(); ++i) {
      if (!pattern_vars.count(q.select_vars[i])) {
        fail(select_offsets[i], "select variable ?" + q.select_vars[i] +
                                    " does not occur in any pattern");
      }
    }
    for (const auto& [name, offset] : filter_var_offsets_) {
      if (!pattern_vars.count(name)) {
        fail(offset, "filter variable ?" + name + " does not occur in any pattern");
      }
    }
  }

  std::string_view text_;
  Lexer lex_;
  Tok cur_;
  std::vector<std::pair<std::string, std::size_t>> filter_var_offsets_;
};

// Rules-file line: either a ground triple (optionally '.'-terminated) or
// `tp ( & tp )* => tp`.
class RuleLineParser {
public:
  RuleLineParser(std::string_view line, std::size_t line_no)
      : line_no_(line_no), lex_(line) {
    advance();
  }

  void parse_into(RuleSet& out) {
    std::vector<QueryPattern> body{parse_pattern()};
    if (cur_.kind == Tok::KEnd || cur_.kind == Tok::KDot) {
      if (cur_.kind == Tok::KDot) {
        advance();
        if (cur_.kind != Tok::KEnd) fail("unexpected trailing characters");
      }
      out.axioms.push_back(to_ground(body.front()));
      return;
    }
    while (cur_.kind == Tok::KAmp) {
      advance();
      body.push_back(parse_pattern());
    }
    if (cur_.kind != Tok::KArrow) fail("expected '&', '=>' or end of line");
    advance();
    QueryPattern head = parse_pattern();
    if (cur_.kind == Tok::KDot) advance();
    if (cur_.kind != Tok::KEnd) fail("unexpected trailing characters");

    std::set<std::string> body_vars;
    for (const QueryPattern& p : body) {
      for (const PatternTerm* pt : {&p.subject, &p.predicate, &p.object}) {
        if (const auto* v = std::get_if<Variable>(pt)) body_vars.insert(v->name);
      }
    }
    for (const PatternTerm* pt : {&head.subject, &head.predicate, &head.object}) {
      if (const auto* v = std::get_if<Variable>(pt)) {
        if (!body_vars.count(v->name)) {
          fail("head variable ?" + v->name + " is not bound in the body");
        }
      }
    }
    out.rules.push_back(Rule{std::move(body), std::move(head)});
  }

private:
  void advance() {
    try {
      cur_ = lex_.next(false);
    } catch (const detail::ScanError& e) {
      throw RuleParseError(line_no_, e.message);
    }
  }

  [[noreturn]] void fail(const std::string& msg) { throw RuleParseError(line_no_, msg); }

  PatternTerm parse_pattern_term(bool allow_literal) {
    if (cur_.kind == Tok::KVar) {
      Variable v{cur_.word};
      advance();
      return v;
    }
    if (cur_.kind == Tok::KIri || (allow_literal && cur_.kind == Tok::KLit)) {
      Term t = *cur_.term;
      advance();
      return t;
    }
    fail("expected variable, IRI or literal");
  }

  QueryPattern parse_pattern() {
    return QueryPattern{parse_pattern_term(false), parse_pattern_term(false),
                        parse_pattern_term(true)};
  }

  Triple to_ground(const QueryPattern& p) {
    const auto* s = std::get_if<Term>(&p.subject);
    const auto* pr = std::get_if<Term>(&p.predicate);
    const auto* o = std::get_if<Term>(&p.object);
    if (!s || !pr || !o) fail("axiom line must be ground (no variables)");
    return Triple{s->iri(), pr->iri(), *o};
  }

  std::size_t line_no_;
  Lexer lex_;
  Tok cur_;
};

}  // namespace

Query parse_query(std::string_view text) { return QueryParser(text).parse(); }

RuleSet parse_rules(std::string_view text) {
  RuleSet out;
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

    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;

    RuleLineParser(line, line_no).parse_into(out);
  }
  return out;
}

}  // namespace vault
