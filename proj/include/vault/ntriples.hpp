#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vault/graph.hpp"

namespace vault {

// Position-carrying parse failure. Lines and columns are 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

std::string triple_line(const Triple& t);

// Canonical serialization: one line per triple in (S, P, O) canonical order,
// single spaces, ` .` terminator, trailing newline. The empty graph is the
// empty string. Graph equality is byte equality of this form.
std::string serialize(const Graph& g);

// Strict subset parser: IRIs and typed literals only. Blank nodes and
// language tags are rejected with a position. Blank lines and lines starting
// with `#` are skipped.
Graph parse_ntriples(std::string_view text);

void save(const Graph& g, const std::filesystem::path& p);
Graph load(const std::filesystem::path& p);

}  // namespace vault
