#include "htrans/surface_file.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "htrans/error.hpp"
#include "htrans/keyvalue.hpp"

namespace htrans {

namespace {

using Entries = std::map<std::string, const KeyValueEntry *>;

void expect_count(const KeyValueEntry &e, std::size_t first, std::size_t count, const std::string &what) {
  const std::size_t have = e.values.size() - first;
  if (have != count) {
    const Token &at = have > count ? e.values[first + count] : e.values.back();
    throw ParseError(at.line, at.column,
                     "'" + e.key.text + "' expects " + what + " (" + std::to_string(count) + " value" +
                         (count == 1 ? "" : "s") + "), got " + std::to_string(have));
  }
}

std::vector<double> numbers(const KeyValueEntry &e, std::size_t first) {
  std::vector<double> out;
  for (std::size_t i = first; i < e.values.size(); ++i) {
    out.push_back(parse_number(e.values[i]));
  }
  return out;
}

double scalar(const KeyValueEntry &e) {
  expect_count(e, 0, 1, "a number");
  return parse_number(e.values[0]);
}

Interval interval(const KeyValueEntry &e) {
  expect_count(e, 0, 2, "<lo> <hi>");
  const Interval r{parse_number(e.values[0]), parse_number(e.values[1])};
  if (!(r.lo < r.hi)) {
    throw ParseError(e.values[1].line, e.values[1].column, "'" + e.key.text + "' needs lo < hi");
  }
  return r;
}

FunctionCurve curve(const KeyValueEntry &e, Interval domain) {
  const Token &form = e.values[0];
  const std::string &name = form.text;
  if (name == "constant") {
    expect_count(e, 1, 1, "constant <c>");
    return FunctionCurve::constant(parse_number(e.values[1]), domain);
  }
  if (name == "linear") {
    expect_count(e, 1, 2, "linear <m> <n>");
    const auto c = numbers(e, 1);
    return FunctionCurve::linear(c[0], c[1], domain);
  }
  if (name == "quadratic") {
    expect_count(e, 1, 3, "quadratic <c2> <c1> <c0>");
    const auto c = numbers(e, 1);
    return FunctionCurve::quadratic(c[0], c[1], c[2], domain);
  }
  if (name == "polynomial") {
    if (e.values.size() < 2) {
      throw ParseError(form.line, form.column, "polynomial needs at least one coefficient");
    }
    return FunctionCurve::polynomial(numbers(e, 1), domain);
  }
  if (name == "scherk-log-cos") {
    expect_count(e, 1, 2, "scherk-log-cos <a> <scale>");
    const auto c = numbers(e, 1);
    if (c[0] == 0.0) {
      throw ParseError(e.values[1].line, e.values[1].column, "scherk-log-cos needs a != 0");
    }
    // the curve must stay inside one period where cos(a t) != 0
    const double limit = std::numbers::pi / (2.0 * std::abs(c[0]));
    if (!(domain.lo > -limit && domain.hi < limit)) {
      throw ParseError(form.line, form.column,
                       "scherk-log-cos domain must lie inside (-pi/(2|a|), pi/(2|a|))");
    }
    return FunctionCurve::log_cos(c[0], c[1], domain);
  }
  if (name == "spline") {
    if (e.values.size() < 5) {
      throw ParseError(form.line, form.column, "spline needs at least 4 coefficients");
    }
    return FunctionCurve::spline(UniformCubicSpline(domain, numbers(e, 1)));
  }
  throw ParseError(form.line, form.column, "unknown curve form '" + name + "'");
}

const KeyValueEntry &require(const Entries &entries, const std::string &key, const std::string &kind,
                             std::size_t last_line) {
  const auto it = entries.find(key);
  if (it == entries.end()) {
    throw ParseError(last_line + 1, 1, "missing key '" + key + "' for kind " + kind);
  }
  return *it->second;
}

} // namespace

Surface parse_surface(std::string_view text) {
  const std::vector<KeyValueEntry> list = parse_key_values(text);
  Entries entries;
  std::size_t last_line = 0;
  for (const KeyValueEntry &e : list) {
    entries[e.key.text] = &e;
    last_line = std::max(last_line, e.key.line);
  }
  const auto kind_it = entries.find("kind");
  if (kind_it == entries.end()) {
    throw ParseError(last_line + 1, 1, "missing key 'kind'");
  }
  const KeyValueEntry &kind_entry = *kind_it->second;
  expect_count(kind_entry, 0, 1, "one kind");
  const std::string kind = kind_entry.values[0].text;

  static const std::map<std::string, std::set<std::string>> allowed = {
      {"type1", {"kind", "u", "v", "f", "g"}},
      {"type2", {"kind", "u", "v", "f", "g"}},
      {"hemisphere", {"kind", "u", "v", "center", "radius"}},
      {"horosphere", {"kind", "u", "v", "height"}},
      {"vertical-plane", {"kind", "u", "v", "slope", "offset"}},
  };
  const auto kind_keys = allowed.find(kind);
  if (kind_keys == allowed.end()) {
    const Token &t = kind_entry.values[0];
    throw ParseError(t.line, t.column, "unknown kind '" + kind + "'");
  }
  for (const KeyValueEntry &e : list) {
    if (!kind_keys->second.contains(e.key.text)) {
      throw ParseError(e.key.line, e.key.column, "unknown key '" + e.key.text + "' for kind " + kind);
    }
  }

  const auto domain = [&]() {
    return Rect{interval(require(entries, "u", kind, last_line)), interval(require(entries, "v", kind, last_line))};
  };

  try {
    if (kind == "type1" || kind == "type2") {
      const Rect d = domain();
      const TranslationKind tk = kind == "type1" ? TranslationKind::TypeI : TranslationKind::TypeII;
      if (tk == TranslationKind::TypeII && !(d.v.lo > 0.0)) {
        const Token &t = entries.at("v")->values[0];
        throw ParseError(t.line, t.column, "type2 needs v (the height z) inside z > 0");
      }
      return TranslationSurface(tk, curve(require(entries, "f", kind, last_line), d.u),
                                curve(require(entries, "g", kind, last_line), d.v), d);
    }
    if (kind == "hemisphere") {
      const KeyValueEntry &c = require(entries, "center", kind, last_line);
      expect_count(c, 0, 2, "<cx> <cy>");
      Hemisphere h;
      h.cx = parse_number(c.values[0]);
      h.cy = parse_number(c.values[1]);
      const KeyValueEntry &r = require(entries, "radius", kind, last_line);
      h.radius = scalar(r);
      if (!(h.radius > 0.0)) {
        throw ParseError(r.values[0].line, r.values[0].column, "radius must be positive");
      }
      if (entries.contains("u") || entries.contains("v")) {
        h.domain = domain();
      } else {
        const double half = h.radius / std::sqrt(2.0);
        h.domain = Rect{{h.cx - half, h.cx + half}, {h.cy - half, h.cy + half}};
      }
      return h;
    }
    if (kind == "horosphere") {
      Horosphere h;
      const KeyValueEntry &c = require(entries, "height", kind, last_line);
      h.height = scalar(c);
      if (!(h.height > 0.0)) {
        throw ParseError(c.values[0].line, c.values[0].column, "height must be positive");
      }
      h.domain = domain();
      return h;
    }
    VerticalPlane p;
    p.slope = scalar(require(entries, "slope", kind, last_line));
    p.offset = scalar(require(entries, "offset", kind, last_line));
    p.domain = domain();
    if (!(p.domain.v.lo > 0.0)) {
      const Token &t = entries.at("v")->values[0];
      throw ParseError(t.line, t.column, "vertical-plane needs v (the height z) inside z > 0");
    }
    return p;
  } catch (const ParseError &) {
    throw;
  } catch (const std::exception &e) {
    // validation failures from the surface constructors
    throw ParseError(kind_entry.key.line, kind_entry.key.column, e.what());
  }
}

Surface load_surface(const std::string &path) {
  return parse_surface(read_text_file(path));
}

} // namespace htrans
