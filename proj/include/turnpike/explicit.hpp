#pragma once

// Closed-form optimal controls for
//
//   J(u) = int_0^T (1 - lambda) y_x(t,0)^2 + lambda u(t)^2 dt,
//
// with exact null-controllability at T = 2n (or no terminal constraint when
// T is infinite). The per-window ratio of every optimal solution is the root
// z in [-1,0] of lambda z^2 + (4 - 2 lambda) z + lambda.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "turnpike/control.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/grid.hpp"
#include "turnpike/wavecore.hpp"

namespace turnpike {

/// Objective weight lambda together with its decay ratio z.
struct Weight {
  double lambda = 1.0;
  double z = -1.0;
};

inline void require_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidInput("lambda must lie in [0,1], got " + std::to_string(lambda));
  }
}

inline Weight weight_from_lambda(double lambda) {
  require_lambda(lambda);
  // Denominator stays >= 1 on [0,1], so no cancellation near lambda = 1.
  double const z = -lambda / (2.0 - lambda + 2.0 * std::sqrt(1.0 - lambda));
  return {lambda, z};
}

/// Inverse of weight_from_lambda on (-1, 0].
inline double lambda_from_z(double z) {
  if (!(z > -1.0 && z <= 0.0)) {
    throw InvalidInput("z must lie in (-1,0], got " + std::to_string(z));
  }
  double const d = 1.0 - z;
  return -4.0 * z / (d * d);
}

inline double char_poly(double lambda, double z) {
  return lambda * z * z + (4.0 - 2.0 * lambda) * z + lambda;
}

/// Number of windows K with |z|^K <= 1e-14, capped at 200.
struct Truncation {
  std::size_t windows = 1;
  bool capped = false;
};

inline Truncation default_truncation(double z) {
  constexpr std::size_t kCap = 200;
  double const a = std::abs(z);
  if (a == 0.0) return {1, false};
  if (a >= 1.0) return {kCap, true};
  double const k = std::ceil(std::log(1e-14) / std::log(a));
  if (k > static_cast<double>(kCap)) return {kCap, true};
  return {std::max<std::size_t>(1, static_cast<std::size_t>(k)), false};
}

namespace detail {

inline ControlSignal windows_from_coefficients(GridFunction const& F,
                                               std::vector<double> const& coef, bool truncated,
                                               ControlMeta meta) {
  std::vector<GridFunction> w;
  w.reserve(coef.size());
  for (std::size_t k = 0; k < coef.size(); ++k) {
    w.push_back(F.scaled(coef[k]).relocated(2.0 * static_cast<double>(k)));
  }
  return ControlSignal(std::move(w), truncated, std::move(meta));
}

}  // namespace detail

/// Minimal-norm exact control (lambda = 1): u(t + 2k) = (-1)^k F(t - 1) / n.
inline ControlSignal hum_control(InitialData const& init, double T) {
  std::size_t const n = windows_for_horizon(T);
  GridFunction const F = build_F(init);
  std::vector<double> coef(n);
  for (std::size_t k = 0; k < n; ++k) coef[k] = (k % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(n);
  ControlMeta meta;
  meta.kind = ControlKind::hum;
  meta.lambda = 1.0;
  meta.z = -1.0;
  return detail::windows_from_coefficients(F, coef, false, std::move(meta));
}

/// Optimal control for T = 2n: window k = z^k f+ + z^-k f-, with
///   f+ = (1+z)/(1-z^2n) F(.-1),  f- = (1+1/z)/(1-z^-2n) F(.-1).
/// lambda = 1 is delegated to hum_control; lambda = 0 gives F(.-1) on the
/// first window and zero afterwards.
inline ControlSignal finite_horizon_control(InitialData const& init, double lambda, double T) {
  require_lambda(lambda);
  std::size_t const n = windows_for_horizon(T);
  if (lambda == 1.0) return hum_control(init, T);

  GridFunction const F = build_F(init);
  Weight const w = weight_from_lambda(lambda);
  ControlMeta meta;
  meta.kind = ControlKind::finite;
  meta.lambda = lambda;
  meta.z = w.z;

  std::vector<double> coef(n, 0.0);
  if (lambda == 0.0) {
    coef[0] = 1.0;
    meta.f_plus = F;
    meta.f_minus = F.scaled(0.0);
    return detail::windows_from_coefficients(F, coef, false, std::move(meta));
  }

  double const z = w.z;
  double const z2n = std::pow(z, 2.0 * static_cast<double>(n));
  meta.f_plus = F.scaled((1.0 + z) / (1.0 - z2n));
  meta.f_minus = F.scaled((1.0 + 1.0 / z) / (1.0 - 1.0 / z2n));
  // z^-k f- rewritten as -(1+z) z^(2n-1-k) / (1 - z^2n) F to avoid z^-k.
  for (std::size_t k = 0; k < n; ++k) {
    double const grow = std::pow(z, static_cast<double>(2 * n - 1 - k));
    coef[k] = (1.0 + z) * (std::pow(z, static_cast<double>(k)) - grow) / (1.0 - z2n);
  }
  return detail::windows_from_coefficients(F, coef, false, std::move(meta));
}

/// Infinite-horizon optimal control truncated after K windows:
/// u(t + 2k) = z^k (1 + z) F(t - 1).
inline ControlSignal infinite_horizon_control(InitialData const& init, double lambda,
                                              std::size_t K) {
  require_lambda(lambda);
  if (lambda == 1.0) throw InvalidInput("infinite horizon requires lambda < 1");
  if (K == 0) throw InvalidInput("infinite horizon needs K >= 1 windows");
  GridFunction const F = build_F(init);
  Weight const w = weight_from_lambda(lambda);
  ControlMeta meta;
  meta.kind = ControlKind::infinite;
  meta.lambda = lambda;
  meta.z = w.z;
  meta.truncation_capped = default_truncation(w.z).capped && K >= 200;

  std::vector<double> coef(K, 0.0);
  if (lambda == 0.0) {
    coef[0] = 1.0;
  } else {
    double zk = 1.0;
    for (std::size_t k = 0; k < K; ++k) {
      coef[k] = zk * (1.0 + w.z);
      zk *= w.z;
    }
  }
  return detail::windows_from_coefficients(F, coef, true, std::move(meta));
}

/// Velocity feedback gain kappa in y_x(t,1) = kappa y_t(t,1).
inline double feedback_gain(Weight const& w) {
  require_lambda(w.lambda);
  return (w.z + 1.0) / (w.z - 1.0);
}

struct ClosedLoop {
  AlphaProfile alpha;
  ControlSignal control;
};

/// Simulates y_x(t,1) = kappa y_t(t,1) for K windows. At each boundary sample
/// the condition a+ + a- = kappa (a+ - a-) is solved for the outgoing wave a+.
inline ClosedLoop simulate_feedback(GridFunction const& F, double kappa, std::size_t K) {
  if (K == 0) throw InvalidInput("simulate_feedback: K >= 1 required");
  if (kappa == 1.0) throw NumericalFailure("feedback gain 1 has no outgoing solution");
  double const reflect = (1.0 + kappa) / (kappa - 1.0);
  std::vector<GridFunction> a;
  std::vector<GridFunction> u;
  a.push_back(F);
  for (std::size_t k = 0; k < K; ++k) {
    GridFunction const& prev = a.back();
    std::vector<double> next(prev.size()), uk(prev.size());
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next[i] = reflect * prev[i];
      uk[i] = next[i] + prev[i];
    }
    double const lo = 2.0 * static_cast<double>(k);
    a.emplace_back(lo + 1.0, lo + 3.0, std::move(next));
    u.emplace_back(lo, lo + 2.0, std::move(uk));
  }
  ControlMeta meta;
  meta.kind = ControlKind::feedback;
  return {AlphaProfile(std::move(a), true), ControlSignal(std::move(u), true, std::move(meta))};
}

/// The weight whose infinite-horizon control matches the HUM control for
/// horizon T on the first window: z = 2/T - 1.
inline Weight similarity_weight(double T) {
  windows_for_horizon(T);
  double const z = 2.0 / T - 1.0;
  return {lambda_from_z(z), z};
}

/// Data relative to the steady state sigma x: y0 - sigma x, y0' - sigma, y1.
inline InitialData steady_state_shift(InitialData const& init, double sigma) {
  if (sigma == 0.0) return init;
  GridFunction const& y0 = init.y0();
  std::vector<double> s0(y0.size()), sd(y0.size());
  for (std::size_t j = 0; j < y0.size(); ++j) {
    s0[j] = y0[j] - sigma * y0.point(j);
    sd[j] = init.dy0()[j] - sigma;
  }
  return InitialData::create(GridFunction(0.0, 1.0, std::move(s0)), init.y1(),
                             GridFunction(0.0, 1.0, std::move(sd)));
}

/// Adds the steady state sigma x back onto a snapshot of the shifted problem.
inline StateSnapshot unshift(StateSnapshot s, double sigma) {
  if (sigma == 0.0) return s;
  std::vector<double> y(s.y.size()), yx(s.yx.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    y[j] = s.y[j] + sigma * s.y.point(j);
    yx[j] = s.yx[j] + sigma;
  }
  s.y = GridFunction(0.0, 1.0, std::move(y));
  s.yx = GridFunction(0.0, 1.0, std::move(yx));
  return s;
}

}  // namespace turnpike
