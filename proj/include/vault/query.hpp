#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vault/date.hpp"
#include "vault/graph.hpp"
#include "vault/vocab.hpp"

namespace vault {

struct Variable {
  std::string name;

  friend bool operator==(const Variable& a, const Variable& b) { return a.name == b.name; }
};

// One position of a pattern: a variable or a concrete term.
using PatternTerm = std::variant<Variable, Term>;

struct QueryPattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
};

enum class Cmp { Lt, Le, Eq, Ne, Ge, Gt };

struct FilterOperand {
  enum class Kind { Var, Lit, Now };
  Kind kind;
  std::string var;       // Kind::Var
  std::vector<Term> lit; // Kind::Lit, single element (vector dodges no-default-ctor)
};

struct Filter {
  FilterOperand lhs;
  Cmp op;
  FilterOperand rhs;
};

// SELECT ?v+ WHERE { tp ( . tp )* ( . FILTER(expr) )* }
struct Query {
  std::vector<std::string> select_vars;
  std::vector<QueryPattern> patterns;
  std::vector<Filter> filters;
};

class QueryParseError : public std::runtime_error {
public:
  QueryParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

Query parse_query(std::string_view text);

// Horn rule: body patterns conjoined, one head pattern, head vars bound by
// the body (no value invention, so forward chaining terminates).
struct Rule {
  std::vector<QueryPattern> body;
  QueryPattern head;
};

class RuleParseError : public std::runtime_error {
public:
  RuleParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// A rules file holds ground axiom lines (taxonomy declarations) and rule
// lines `tp ( & tp )* => tp`.
struct RuleSet {
  std::vector<Triple> axioms;
  std::vector<Rule> rules;
};

RuleSet parse_rules(std::string_view text);

std::string default_rules_text(const Vocabulary& v);

using Binding = std::map<std::string, Term>;

// Smallest superset of g closed under transitive subclass typing and the
// given rules; forward chaining to fixpoint. g itself is untouched.
Graph inference_closure(const Graph& g, std::span<const Rule> rules);

// All solutions of the basic graph pattern over g (no closure, no filters,
// no projection). Building block shared by select and the rule engine.
std::vector<Binding> match_patterns(const Graph& g, std::span<const QueryPattern> patterns);

// Full query evaluation over the inference closure: filters applied (NOW()
// evaluates to `now`), projected to select_vars, de-duplicated, and ordered
// by canonical term serialization var-by-var.
std::vector<Binding> select(const Graph& g, const Query& q, std::span<const Rule> rules,
                            const Date& now);

class InvalidWindow : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

std::vector<Iri> expired_documents(const Vocabulary& v, const Graph& g,
                                   std::span<const Rule> rules, const Date& today);

std::vector<std::pair<Iri, Date>> expiring_within(const Vocabulary& v, const Graph& g,
                                                  std::span<const Rule> rules,
                                                  const Date& today, long window_days);

std::vector<std::pair<Iri, Iri>> duplicate_documents(const Vocabulary& v, const Graph& g,
                                                     std::span<const Rule> rules);

// Rule-derived facts only: closure minus g. The base graph is never mutated.
std::vector<Triple> derive_status(const Graph& g, std::span<const Rule> rules);

}  // namespace vault
