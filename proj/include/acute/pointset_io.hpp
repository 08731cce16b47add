#pragma once

#include "acute/pointset.hpp"

#include <iosfwd>
#include <string>

namespace acute {

// acuteset-pointset v1
// dim=<d> count=<N> scalar=<int|rat|f64> raw=<0|1>
// then N rows of d whitespace-separated coordinates.
std::string format_pointset(const PointSet& X);
void write_pointset(const PointSet& X, const std::string& path);

// Errors name the offending line.
PointSet parse_pointset(std::istream& in, const std::string& source = "<input>");
PointSet read_pointset(const std::string& path);

// "3", "-5/3", "0.25", "1e-3": decimal text is converted exactly, not through a double.
Rational parse_exact_decimal(std::string_view s);
// Angles: "1.2", "pi", "3pi/4", "3*pi/4", "pi/2-0.3".
double parse_angle(std::string_view s);

}  // namespace acute
