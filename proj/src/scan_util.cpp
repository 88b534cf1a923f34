#include "scan_util.hpp"

#include "vault/term.hpp"

namespace vault::detail {

void append_utf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::string scan_iriref(std::string_view text, std::size_t& pos) {
  std::size_t start = pos;
  ++pos;  // over '<'
  std::string value;
  while (true) {
    if (pos >= text.size()) throw ScanError{start, "unterminated IRI"};
    char c = text[pos];
    if (c == '>') {
      ++pos;
      break;
    }
    if (c == '<' || c == '"' || static_cast<unsigned char>(c) <= 0x20) {
      throw ScanError{pos, "illegal character in IRI"};
    }
    value += c;
    ++pos;
  }
  if (!Iri::valid(value)) throw ScanError{start, "invalid IRI: <" + value + ">"};
  return value;
}

namespace {
int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

std::string scan_quoted(std::string_view text, std::size_t& pos) {
  std::size_t start = pos;
  ++pos;  // over '"'
  std::string lexical;
  while (true) {
    if (pos >= text.size()) throw ScanError{start, "unterminated literal"};
    char c = text[pos];
    if (c == '"') {
      ++pos;
      return lexical;
    }
    if (c != '\\') {
      lexical += c;
      ++pos;
      continue;
    }
    // escape sequence
    std::size_t esc = pos;
    ++pos;
    if (pos >= text.size()) throw ScanError{esc, "dangling escape"};
    char e = text[pos];
    ++pos;
    switch (e) {
      case '\\': lexical += '\\'; break;
      case '"': lexical += '"'; break;
      case 'n': lexical += '\n'; break;
      case 'r': lexical += '\r'; break;
      case 't': lexical += '\t'; break;
      case 'u': {
        if (pos + 4 > text.size()) throw ScanError{esc, "truncated \\u escape"};
        uint32_t cp = 0;
        for (int i = 0; i < 4; ++i) {
          int d = hex_digit(text[pos + i]);
          if (d < 0) throw ScanError{esc, "bad hex digit in \\u escape"};
          cp = cp * 16 + static_cast<uint32_t>(d);
        }
        pos += 4;
        append_utf8(lexical, cp);
        break;
      }
      default:
        throw ScanError{esc, std::string("unknown escape \\") + e};
    }
  }
}

}  // namespace vault::detail
