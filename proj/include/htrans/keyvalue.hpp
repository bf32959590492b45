#pragma once

// Line-oriented `key = value value ...` files, shared by surface
// descriptions and run configs. `#` starts a comment; blank lines are
// ignored; keys may appear once. Every token keeps its 1-based position so
// that later validation can point at it.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace htrans {

struct Token {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct KeyValueEntry {
  Token key;
  std::vector<Token> values; // at least one
};

/// Throws ParseError on a malformed line, an empty value, or a repeated key.
std::vector<KeyValueEntry> parse_key_values(std::string_view text);

/// Whole-token finite decimal number; ParseError at the token otherwise.
double parse_number(const Token &token);
/// Whole-token integer; ParseError at the token otherwise.
long long parse_integer(const Token &token);

/// Reads a file; throws std::runtime_error if it cannot be opened.
std::string read_text_file(const std::string &path);

} // namespace htrans
