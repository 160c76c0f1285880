#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "turnpike/errors.hpp"
#include "turnpike/grid.hpp"
#include "turnpike/wavecore.hpp"

namespace turnpike {

enum class DatumKind { sine, linear, zero, file };

inline DatumKind parse_datum_kind(std::string_view s) {
  if (s == "sine") return DatumKind::sine;
  if (s == "linear") return DatumKind::linear;
  if (s == "zero") return DatumKind::zero;
  if (s == "file") return DatumKind::file;
  throw InvalidInput("unknown datum '" + std::string(s) + "' (sine|linear|zero|file)");
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline double parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidInput("not a number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace detail

/// Parses a decimal or an exact ratio "p/q". A ratio is a single correctly
/// rounded division of the two parsed values, so "24/25" is the double
/// nearest to 24/25.
inline double parse_real(std::string_view s) {
  s = detail::trim(s);
  auto const slash = s.find('/');
  if (slash == std::string_view::npos) return detail::parse_double(s);
  double const num = detail::parse_double(s.substr(0, slash));
  double const den = detail::parse_double(s.substr(slash + 1));
  if (den == 0.0) throw InvalidInput("zero denominator in '" + std::string(s) + "'");
  return num / den;
}

/// y0 = 4 sin(pi x / 2), y1 = 0.
inline InitialData sine_datum(std::size_t m) {
  using std::numbers::pi;
  return InitialData::create(
      GridFunction::sample(0.0, 1.0, m, [](double x) { return 4.0 * std::sin(pi * x / 2.0); }),
      GridFunction::zeros(0.0, 1.0, m),
      GridFunction::sample(0.0, 1.0, m, [](double x) { return 2.0 * pi * std::cos(pi * x / 2.0); }));
}

/// y0 = slope x, y1 = 0 (a steady state).
inline InitialData linear_datum(std::size_t m, double slope = 1.0) {
  return InitialData::create(
      GridFunction::sample(0.0, 1.0, m, [slope](double x) { return slope * x; }),
      GridFunction::zeros(0.0, 1.0, m),
      GridFunction::sample(0.0, 1.0, m, [slope](double) { return slope; }));
}

inline InitialData zero_datum(std::size_t m) {
  return InitialData::create(GridFunction::zeros(0.0, 1.0, m), GridFunction::zeros(0.0, 1.0, m),
                             GridFunction::zeros(0.0, 1.0, m));
}

/// Reads CSV with header `x,y0,dy0,y1` (or `x,y0,y1`, in which case dy0 is
/// obtained by finite differences). Rows must sit on the midpoints of a
/// uniform partition of (0,1).
inline InitialData read_datum_csv(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open datum file " + path);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty datum file " + path);
  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.emplace_back(detail::trim(c));
  }
  bool const with_dy0 = cols == std::vector<std::string>{"x", "y0", "dy0", "y1"};
  if (!with_dy0 && cols != std::vector<std::string>{"x", "y0", "y1"}) {
    throw InvalidInput("datum header must be x,y0,dy0,y1 or x,y0,y1");
  }
  std::vector<double> x, y0, dy0, y1;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) row.push_back(detail::parse_double(c));
    if (row.size() != cols.size()) {
      throw InvalidInput("datum line " + std::to_string(lineno) + ": wrong field count");
    }
    x.push_back(row[0]);
    y0.push_back(row[1]);
    if (with_dy0) {
      dy0.push_back(row[2]);
      y1.push_back(row[3]);
    } else {
      y1.push_back(row[2]);
    }
  }
  std::size_t const m = x.size();
  if (m == 0) throw InvalidInput("datum file has no rows");
  for (std::size_t j = 0; j < m; ++j) {
    double const expect = (double(j) + 0.5) / double(m);
    if (std::abs(x[j] - expect) > 1e-9) {
      throw InvalidInput("datum row " + std::to_string(j) + " is not at the midpoint " +
                         std::to_string(expect));
    }
  }
  std::optional<GridFunction> d;
  if (with_dy0) d = GridFunction(0.0, 1.0, std::move(dy0));
  return InitialData::create(GridFunction(0.0, 1.0, std::move(y0)),
                             GridFunction(0.0, 1.0, std::move(y1)), std::move(d));
}

inline InitialData load_datum(DatumKind kind, std::size_t m, std::string const& path = {}) {
  if (m == 0) throw InvalidInput("m must be positive");
  switch (kind) {
    case DatumKind::sine: return sine_datum(m);
    case DatumKind::linear: return linear_datum(m, 1.0);
    case DatumKind::zero: return zero_datum(m);
    case DatumKind::file:
      if (path.empty()) throw InvalidInput("datum=file requires a path");
      return read_datum_csv(path);
  }
  throw InvalidInput("unknown datum");
}

}  // namespace turnpike
