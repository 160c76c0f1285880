#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "turnpike/errors.hpp"

namespace turnpike {

/// Real function on (lo, hi) sampled at the midpoints lo + (j + 1/2) h of a
/// uniform partition into size() cells.
///
/// Midpoints never coincide with integer times, so a function with jumps at
/// integers is sampled without ambiguity, and shifting the interval by any
/// integer multiple of h maps samples onto samples.
class GridFunction {
 public:
  GridFunction() = default;

  GridFunction(double lo, double hi, std::vector<double> values)
      : lo_(lo), hi_(hi), values_(std::move(values)) {
    if (values_.empty()) throw InvalidInput("GridFunction: needs at least one sample");
    if (!(hi_ > lo_)) throw InvalidInput("GridFunction: empty interval");
    for (double v : values_) {
      if (!std::isfinite(v)) throw NumericalFailure("GridFunction: non-finite sample");
    }
  }

  /// Samples `f` at the `cells` midpoints of (lo, hi).
  template <typename Fn>
  static GridFunction sample(double lo, double hi, std::size_t cells, Fn&& f) {
    if (cells == 0) throw InvalidInput("GridFunction: needs at least one sample");
    std::vector<double> v(cells);
    double const h = (hi - lo) / static_cast<double>(cells);
    for (std::size_t j = 0; j < cells; ++j) v[j] = f(lo + (static_cast<double>(j) + 0.5) * h);
    return GridFunction(lo, hi, std::move(v));
  }

  static GridFunction zeros(double lo, double hi, std::size_t cells) {
    if (cells == 0) throw InvalidInput("GridFunction: needs at least one sample");
    return GridFunction(lo, hi, std::vector<double>(cells, 0.0));
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double length() const { return hi_ - lo_; }
  std::size_t size() const { return values_.size(); }
  double step() const { return length() / static_cast<double>(size()); }
  double point(std::size_t j) const { return lo_ + (static_cast<double>(j) + 0.5) * step(); }

  double operator[](std::size_t j) const { return values_[j]; }
  std::span<double const> values() const { return values_; }

  /// Equal length and equal sample count.
  bool congruent_with(GridFunction const& other) const {
    return size() == other.size() && std::abs(length() - other.length()) <= 1e-12 * length();
  }

  /// Congruent and offset by a whole number of cells.
  bool aligned_with(GridFunction const& other) const {
    if (!congruent_with(other)) return false;
    double const cells = (other.lo_ - lo_) / step();
    return std::abs(cells - std::round(cells)) <= 1e-9;
  }

  GridFunction relocated(double new_lo) const {
    GridFunction g = *this;
    g.lo_ = new_lo;
    g.hi_ = new_lo + length();
    return g;
  }

  GridFunction scaled(double c) const {
    GridFunction g = *this;
    for (double& v : g.values_) v *= c;
    return g;
  }

  /// Pointwise combination a*this + b*other; the result lives on this grid.
  GridFunction combined(double a, GridFunction const& other, double b) const {
    require_congruent(other);
    GridFunction g = *this;
    for (std::size_t j = 0; j < size(); ++j) g.values_[j] = a * values_[j] + b * other.values_[j];
    return g;
  }

  GridFunction operator+(GridFunction const& o) const { return combined(1.0, o, 1.0); }
  GridFunction operator-(GridFunction const& o) const { return combined(1.0, o, -1.0); }

  double max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Midpoint-rule integral.
  double integral() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s * step();
  }

  /// Midpoint-rule L2 norm.
  double l2_norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s * step());
  }

  void require_congruent(GridFunction const& other) const {
    if (!congruent_with(other)) {
      std::ostringstream os;
      os << "incongruent grids: (" << lo_ << ", " << hi_ << ") x " << size() << " vs ("
         << other.lo_ << ", " << other.hi_ << ") x " << other.size();
      throw GridMismatch(os.str());
    }
  }

 private:
  double lo_ = 0.0;
  double hi_ = 1.0;
  std::vector<double> values_{0.0};
};

/// Midpoint-rule running integral: result[j] approximates the integral of
/// `g` from lo to point(j).
inline std::vector<double> running_integral(GridFunction const& g) {
  std::vector<double> out(g.size());
  double const h = g.step();
  double acc = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    out[j] = acc + 0.5 * h * g[j];
    acc += h * g[j];
  }
  return out;
}

}  // namespace turnpike
