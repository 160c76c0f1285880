#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "turnpike/errors.hpp"
#include "turnpike/grid.hpp"

namespace turnpike {

enum class ControlKind { generic, hum, finite, infinite, feedback };

inline char const* to_string(ControlKind k) {
  switch (k) {
    case ControlKind::generic: return "generic";
    case ControlKind::hum: return "HUM";
    case ControlKind::finite: return "finite";
    case ControlKind::infinite: return "infinite";
    case ControlKind::feedback: return "feedback";
  }
  return "generic";
}

/// Closed-form provenance of a control. For kind == finite the base profiles
/// f_plus, f_minus (window k = z^k f_plus + z^-k f_minus) are kept.
struct ControlMeta {
  ControlKind kind = ControlKind::generic;
  double lambda = 1.0;
  double z = -1.0;
  std::optional<GridFunction> f_plus;
  std::optional<GridFunction> f_minus;
  bool truncation_capped = false;
};

/// Boundary control u on (0, 2K) stored as K congruent windows, window k on
/// (2k, 2k + 2). `truncated` marks an infinite-horizon control cut after K
/// windows; otherwise the horizon is T = 2K.
class ControlSignal {
 public:
  ControlSignal(std::vector<GridFunction> windows, bool truncated = false,
                std::optional<ControlMeta> meta = std::nullopt)
      : windows_(std::move(windows)), truncated_(truncated), meta_(std::move(meta)) {
    if (windows_.empty()) throw InvalidInput("ControlSignal: needs at least one window");
    for (std::size_t k = 0; k < windows_.size(); ++k) {
      windows_[0].require_congruent(windows_[k]);
      if (std::abs(windows_[k].lo() - 2.0 * static_cast<double>(k)) > 1e-12 ||
          std::abs(windows_[k].length() - 2.0) > 1e-12) {
        throw GridMismatch("ControlSignal: window " + std::to_string(k) + " is not (2k, 2k+2)");
      }
    }
    if (windows_[0].size() % 2 != 0) {
      throw GridMismatch("ControlSignal: window sample count must be even");
    }
  }

  std::size_t window_count() const { return windows_.size(); }
  GridFunction const& window(std::size_t k) const { return windows_.at(k); }
  std::vector<GridFunction> const& windows() const { return windows_; }
  std::size_t samples_per_unit() const { return windows_[0].size() / 2; }
  double step() const { return windows_[0].step(); }

  /// Right end of the represented interval (T, or 2K when truncated).
  double horizon() const { return 2.0 * static_cast<double>(windows_.size()); }
  bool truncated() const { return truncated_; }
  std::optional<ControlMeta> const& meta() const { return meta_; }

  /// Sample `i` of window `k`, i.e. u at 2k + (i + 1/2) h.
  double at(std::size_t k, std::size_t i) const { return windows_[k][i]; }

  /// a*this + b*other with congruent windows; metadata is dropped.
  ControlSignal combined(double a, ControlSignal const& other, double b) const {
    if (other.window_count() != window_count()) {
      throw GridMismatch("ControlSignal: window count mismatch");
    }
    std::vector<GridFunction> w;
    w.reserve(windows_.size());
    for (std::size_t k = 0; k < windows_.size(); ++k) {
      w.push_back(windows_[k].combined(a, other.windows_[k], b));
    }
    return ControlSignal(std::move(w), truncated_);
  }

  /// u + c, e.g. the physical boundary value sigma + u of a shifted problem.
  ControlSignal offset(double c) const {
    std::vector<GridFunction> w;
    w.reserve(windows_.size());
    for (auto const& win : windows_) {
      std::vector<double> v(win.values().begin(), win.values().end());
      for (double& x : v) x += c;
      w.emplace_back(win.lo(), win.hi(), std::move(v));
    }
    return ControlSignal(std::move(w), truncated_);
  }

  double l2_norm() const {
    double s = 0.0;
    for (auto const& w : windows_) s += w.l2_norm() * w.l2_norm();
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (auto const& w : windows_) m = std::max(m, w.max_abs());
    return m;
  }

 private:
  std::vector<GridFunction> windows_;
  bool truncated_ = false;
  std::optional<ControlMeta> meta_;
};

}  // namespace turnpike
