#pragma once

// Traveling-wave representation of the Neumann-controlled string
//
//   y_tt = y_xx on (0,1),  y(t,0) = 0,  y_x(t,1) = u(t),
//
// written as y(t,x) = alpha(t+x) - alpha(t-x). Everything is carried by
// alpha' sampled at midpoints on length-2 windows (-1+2k, 1+2k). Window 0 is
// fixed by the initial data; each further window follows from
//
//   alpha'(s + 2) = -alpha'(s) + u(s + 1),
//
// which on the midpoint grid is a sample-by-sample affine update with no
// interpolation.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "turnpike/control.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/grid.hpp"

namespace turnpike {

/// Number of length-2 windows n for an even horizon T = 2n, n >= 1.
inline std::size_t windows_for_horizon(double T) {
  if (!std::isfinite(T) || T < 2.0 || std::floor(T) != T || std::fmod(T, 2.0) != 0.0) {
    throw InvalidHorizon("horizon must be T = 2n with n >= 1, got " + std::to_string(T));
  }
  return static_cast<std::size_t>(T / 2.0);
}

/// Central differences with second-order one-sided stencils at the ends.
inline GridFunction finite_difference_derivative(GridFunction const& f) {
  std::size_t const m = f.size();
  double const h = f.step();
  std::vector<double> d(m, 0.0);
  if (m == 1) return GridFunction(f.lo(), f.hi(), d);
  if (m == 2) {
    d[0] = d[1] = (f[1] - f[0]) / h;
    return GridFunction(f.lo(), f.hi(), d);
  }
  for (std::size_t j = 1; j + 1 < m; ++j) d[j] = (f[j + 1] - f[j - 1]) / (2.0 * h);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d[m - 1] = (3.0 * f[m - 1] - 4.0 * f[m - 2] + f[m - 3]) / (2.0 * h);
  return GridFunction(f.lo(), f.hi(), d);
}

/// Initial position y0 (with y0(0) = 0), its derivative, and initial velocity
/// y1, all on the midpoint grid of (0,1) with m cells.
class InitialData {
 public:
  /// Validates the data. When `dy0` is absent it is obtained by finite
  /// differences of `y0`.
  static InitialData create(GridFunction y0, GridFunction y1,
                            std::optional<GridFunction> dy0 = std::nullopt) {
    auto on_unit = [](GridFunction const& g) {
      return std::abs(g.lo()) <= 1e-14 && std::abs(g.hi() - 1.0) <= 1e-14;
    };
    if (!on_unit(y0) || !on_unit(y1)) throw GridMismatch("initial data must live on (0,1)");
    y0.require_congruent(y1);
    GridFunction d = dy0 ? std::move(*dy0) : finite_difference_derivative(y0);
    if (!on_unit(d)) throw GridMismatch("dy0 must live on (0,1)");
    d.require_congruent(y1);

    double const h = y0.step();
    double const left = y0.size() >= 2 ? 1.5 * y0[0] - 0.5 * y0[1] : y0[0] - 0.5 * h * d[0];
    double const tol = 10.0 * h * d.max_abs();
    if (std::abs(left) > tol) {
      throw InvalidInput("y0(0) = 0 violated: extrapolated boundary value " + std::to_string(left));
    }
    return InitialData(std::move(y0), std::move(d), std::move(y1));
  }

  GridFunction const& y0() const { return y0_; }
  GridFunction const& dy0() const { return dy0_; }
  GridFunction const& y1() const { return y1_; }
  std::size_t samples_per_unit() const { return y0_.size(); }

 private:
  InitialData(GridFunction y0, GridFunction dy0, GridFunction y1)
      : y0_(std::move(y0)), dy0_(std::move(dy0)), y1_(std::move(y1)) {}

  GridFunction y0_;
  GridFunction dy0_;
  GridFunction y1_;
};

/// F = alpha' on (-1,1):
///   F(t) = (y0'(-t) - y1(-t)) / 2 on (-1,0),  (y0'(t) + y1(t)) / 2 on [0,1).
inline GridFunction build_F(InitialData const& init) {
  GridFunction const& dy0 = init.dy0();
  GridFunction const& y1 = init.y1();
  dy0.require_congruent(y1);
  std::size_t const m = dy0.size();
  std::vector<double> v(2 * m);
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t const mirror = m - 1 - j;  // -t for t in (-1,0)
    v[j] = 0.5 * (dy0[mirror] - y1[mirror]);
    v[m + j] = 0.5 * (dy0[j] + y1[j]);
  }
  return GridFunction(-1.0, 1.0, std::move(v));
}

struct AlphaWindow0 {
  GridFunction alpha;  ///< alpha itself (not its derivative) on (-1,1)
  double c0 = 0.0;     ///< alpha(0-) = alpha(0+)
};

/// alpha on (-1,1) with C0 = -1/2 int_0^1 y1, using midpoint antiderivatives.
inline AlphaWindow0 build_alpha_window0(InitialData const& init) {
  GridFunction const& y0 = init.y0();
  std::size_t const m = y0.size();
  double const c0 = -0.5 * init.y1().integral();
  std::vector<double> const Y1 = running_integral(init.y1());
  std::vector<double> v(2 * m);
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t const mirror = m - 1 - j;
    v[j] = 0.5 * (-y0[mirror] + Y1[mirror]) + c0;
    v[m + j] = 0.5 * (y0[j] + Y1[j]) + c0;
  }
  return {GridFunction(-1.0, 1.0, std::move(v)), c0};
}

/// alpha' on (-1, 2K+1) as K+1 windows, window k on (-1+2k, 1+2k).
class AlphaProfile {
 public:
  AlphaProfile(std::vector<GridFunction> windows, bool truncated = false)
      : windows_(std::move(windows)), truncated_(truncated) {
    if (windows_.empty()) throw InvalidInput("AlphaProfile: needs at least one window");
    for (std::size_t k = 0; k < windows_.size(); ++k) {
      windows_[0].require_congruent(windows_[k]);
      if (std::abs(windows_[k].lo() - (2.0 * static_cast<double>(k) - 1.0)) > 1e-12) {
        throw GridMismatch("AlphaProfile: window " + std::to_string(k) + " misplaced");
      }
    }
    if (windows_[0].size() % 2 != 0) throw GridMismatch("AlphaProfile: odd window sample count");
  }

  std::size_t window_count() const { return windows_.size(); }
  GridFunction const& window(std::size_t k) const { return windows_.at(k); }
  std::vector<GridFunction> const& windows() const { return windows_; }
  std::size_t samples_per_unit() const { return windows_[0].size() / 2; }
  std::size_t samples_per_window() const { return windows_[0].size(); }
  double step() const { return windows_[0].step(); }
  bool truncated() const { return truncated_; }

  /// Last time at which the state is fully determined.
  double horizon() const { return 2.0 * static_cast<double>(windows_.size() - 1); }

  std::size_t total_samples() const { return windows_.size() * samples_per_window(); }

  /// Sample with global index g, located at -1 + (g + 1/2) h.
  double sample(std::size_t g) const {
    std::size_t const w = samples_per_window();
    return windows_[g / w][g % w];
  }

 private:
  std::vector<GridFunction> windows_;
  bool truncated_ = false;
};

/// Runs the boundary recursion window by window.
inline AlphaProfile propagate_alpha(GridFunction const& F, ControlSignal const& u) {
  if (std::abs(F.lo() + 1.0) > 1e-12 || std::abs(F.hi() - 1.0) > 1e-12) {
    throw GridMismatch("propagate_alpha: F must live on (-1,1)");
  }
  F.require_congruent(u.window(0));
  std::vector<GridFunction> w;
  w.reserve(u.window_count() + 1);
  w.push_back(F);
  for (std::size_t k = 0; k < u.window_count(); ++k) {
    GridFunction const& prev = w.back();
    GridFunction const& uk = u.window(k);
    std::vector<double> next(prev.size());
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] = -prev[i] + uk[i];
    double const lo = 2.0 * static_cast<double>(k + 1) - 1.0;
    w.emplace_back(lo, lo + 2.0, std::move(next));
  }
  return AlphaProfile(std::move(w), u.truncated());
}

struct StateSnapshot {
  double t = 0.0;
  GridFunction y;   ///< position
  GridFunction yx;  ///< spatial derivative
  GridFunction yt;  ///< velocity
};

/// Grid index p with t = p h; throws unless t is a node of the alpha grid
/// inside [0, horizon].
inline std::size_t time_index(AlphaProfile const& alpha, double t) {
  double const m = static_cast<double>(alpha.samples_per_unit());
  double const scaled = t * m;
  double const p = std::round(scaled);
  if (std::abs(scaled - p) > 1e-9 * std::max(1.0, std::abs(scaled))) {
    throw InvalidInput("time " + std::to_string(t) + " is not on the grid (multiple of 1/m)");
  }
  if (t < -1e-12 || p > alpha.horizon() * m) {
    throw InvalidInput("time " + std::to_string(t) + " outside [0, " +
                       std::to_string(alpha.horizon()) + "]");
  }
  return static_cast<std::size_t>(p);
}

/// y_x = alpha'(t+x) + alpha'(t-x), y_t = alpha'(t+x) - alpha'(t-x),
/// y by midpoint accumulation of y_x from y(0) = 0.
inline StateSnapshot evaluate_state_at(AlphaProfile const& alpha, std::size_t p) {
  std::size_t const m = alpha.samples_per_unit();
  if (p > static_cast<std::size_t>(alpha.horizon()) * m) {
    throw InvalidInput("evaluate_state: time index beyond horizon");
  }
  std::vector<double> yx(m), yt(m);
  for (std::size_t i = 0; i < m; ++i) {
    double const fwd = alpha.sample(p + m + i);      // t + x_i
    double const bwd = alpha.sample(p + m - 1 - i);  // t - x_i
    yx[i] = fwd + bwd;
    yt[i] = fwd - bwd;
  }
  GridFunction yx_g(0.0, 1.0, std::move(yx));
  std::vector<double> y = running_integral(yx_g);
  double const t = static_cast<double>(p) / static_cast<double>(m);
  return {t, GridFunction(0.0, 1.0, std::move(y)), std::move(yx_g),
          GridFunction(0.0, 1.0, std::move(yt))};
}

inline StateSnapshot evaluate_state(AlphaProfile const& alpha, double t) {
  return evaluate_state_at(alpha, time_index(alpha, t));
}

/// E(t) = int_0^1 y_x^2 + y_t^2 dx = 2 int_{t-1}^{t+1} alpha'^2, midpoint rule.
inline double energy_at(AlphaProfile const& alpha, std::size_t p) {
  std::size_t const m = alpha.samples_per_unit();
  if (p > static_cast<std::size_t>(alpha.horizon()) * m) {
    throw InvalidInput("energy: time index beyond horizon");
  }
  double s = 0.0;
  for (std::size_t g = p; g < p + 2 * m; ++g) {
    double const a = alpha.sample(g);
    s += a * a;
  }
  return 2.0 * s * alpha.step();
}

inline double energy(AlphaProfile const& alpha, double t) {
  return energy_at(alpha, time_index(alpha, t));
}

/// Energy of a snapshot by direct quadrature of y_x^2 + y_t^2.
inline double snapshot_energy(StateSnapshot const& s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.yx.size(); ++i) acc += s.yx[i] * s.yx[i] + s.yt[i] * s.yt[i];
  return acc * s.yx.step();
}

/// Boundary trace y_x(s, 1) = alpha'(s+1) + alpha'(s-1) at the control samples.
inline ControlSignal boundary_trace(AlphaProfile const& alpha) {
  std::vector<GridFunction> w;
  for (std::size_t k = 0; k + 1 < alpha.window_count(); ++k) {
    GridFunction const& a = alpha.window(k);
    GridFunction const& b = alpha.window(k + 1);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i] + b[i];
    double const lo = 2.0 * static_cast<double>(k);
    w.emplace_back(lo, lo + 2.0, std::move(v));
  }
  return ControlSignal(std::move(w), alpha.truncated());
}

}  // namespace turnpike
