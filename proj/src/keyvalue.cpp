#include "htrans/keyvalue.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "htrans/error.hpp"

namespace htrans {

namespace {

bool key_start(char c) { return c >= 'a' && c <= 'z'; }

bool key_char(char c) {
  return key_start(c) || (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
}

bool blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

} // namespace

std::vector<KeyValueEntry> parse_key_values(std::string_view text) {
  std::vector<KeyValueEntry> entries;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }

    std::size_t i = 0;
    const auto col = [&] { return i + 1; };
    const auto skip = [&] {
      while (i < line.size() && blank(line[i])) {
        ++i;
      }
    };
    skip();
    if (i == line.size()) {
      continue;
    }
    if (!key_start(line[i])) {
      throw ParseError(line_no, col(), "expected a key (lower-case letter)");
    }
    KeyValueEntry entry;
    entry.key.line = line_no;
    entry.key.column = col();
    while (i < line.size() && key_char(line[i])) {
      entry.key.text.push_back(line[i++]);
    }
    skip();
    if (i == line.size() || line[i] != '=') {
      throw ParseError(line_no, col(), "expected '=' after key '" + entry.key.text + "'");
    }
    ++i;
    while (true) {
      skip();
      if (i == line.size()) {
        break;
      }
      Token token;
      token.line = line_no;
      token.column = col();
      while (i < line.size() && !blank(line[i])) {
        token.text.push_back(line[i++]);
      }
      entry.values.push_back(std::move(token));
    }
    if (entry.values.empty()) {
      throw ParseError(line_no, col(), "missing value for key '" + entry.key.text + "'");
    }
    if (!seen.insert(entry.key.text).second) {
      throw ParseError(entry.key.line, entry.key.column, "duplicate key '" + entry.key.text + "'");
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

double parse_number(const Token &token) {
  double value = 0.0;
  const char *first = token.text.data();
  const char *last = first + token.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError(token.line, token.column, "expected a finite number, got '" + token.text + "'");
  }
  return value;
}

long long parse_integer(const Token &token) {
  long long value = 0;
  const char *first = token.text.data();
  const char *last = first + token.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(token.line, token.column, "expected an integer, got '" + token.text + "'");
  }
  return value;
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

} // namespace htrans
