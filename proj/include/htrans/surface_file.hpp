#pragma once

// Surface description files. Grammar (one `key = values` per line, `#`
// comments):
//
//   kind   = type1 | type2 | hemisphere | horosphere | vertical-plane
//   u      = <lo> <hi>                 parameter domain, first coordinate
//   v      = <lo> <hi>                 parameter domain, second coordinate
//   f      = <curve>                   type1 / type2, defined on u
//   g      = <curve>                   type1 / type2, defined on v
//   center = <cx> <cy>                 hemisphere
//   radius = <r>                       hemisphere
//   height = <c>                       horosphere
//   slope  = <m>                       vertical-plane
//   offset = <n>                       vertical-plane
//
//   <curve> = constant <c>
//           | linear <m> <n>                   m t + n
//           | quadratic <c2> <c1> <c0>         c2 t^2 + c1 t + c0
//           | polynomial <c0> <c1> ...         ascending powers
//           | scherk-log-cos <a> <scale>       scale log|cos(a t)|
//           | spline <c0> ... <ck>             uniform cubic B-spline, k >= 3
//
// u and v are required except for hemispheres, which default to the square
// inscribed in their boundary disc.

#include <string>
#include <string_view>

#include "htrans/surfaces.hpp"

namespace htrans {

/// Throws ParseError (line:column) on any syntax or validation problem.
Surface parse_surface(std::string_view text);

/// parse_surface on a file's contents; std::runtime_error if unreadable.
Surface load_surface(const std::string &path);

} // namespace htrans
