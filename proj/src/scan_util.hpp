#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace vault::detail {

// Offset-tagged scan failure; callers translate offsets into line/column.
struct ScanError {
  std::size_t offset;
  std::string message;
};

void append_utf8(std::string& out, uint32_t cp);

// pos must sit on '<'. Returns the IRI value (brackets stripped, validated)
// and leaves pos just past '>'.
std::string scan_iriref(std::string_view text, std::size_t& pos);

// pos must sit on '"'. Returns the unescaped lexical form and leaves pos just
// past the closing quote.
std::string scan_quoted(std::string_view text, std::size_t& pos);

}  // namespace vault::detail
