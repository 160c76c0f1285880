#pragma once

// Finite-mode version of the abstract optimality system for a skew-adjoint
// generator A with BB* sharing its eigenvectors. On each mode the multiplier
// h(t) = <p(t), phi> solves
//
//   h'' = l h + 2 a h',   l = |a|^2 + ((1 - lambda) / lambda) b,
//
// with h'(0) = y0 + a h(0) and h'(T) = a h(T); the state is y = h' - a h and
// the control coefficient is ((1 - lambda) / lambda) sqrt(b) h.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "turnpike/certify.hpp"
#include "turnpike/errors.hpp"

namespace turnpike {

using complex = std::complex<double>;

struct ModeSpec {
  complex a;       ///< eigenvalue of A, purely imaginary
  double b = 1.0;  ///< eigenvalue of BB*
  double lambda = 0.5;
  complex y0;      ///< initial-state coefficient
};

struct ModeSolution {
  complex delta_minus;
  complex delta_plus;
  complex u_coef;  ///< weight of exp(delta_minus t)
  complex v_coef;  ///< weight of exp(delta_plus t)
  /// v exp(delta_plus T): the growing part written as w exp(-delta_plus (T - t))
  /// stays bounded for large T.
  complex w_coef;
  double T = 0.0;

  complex p(double t) const {
    return u_coef * std::exp(delta_minus * t) + w_coef * std::exp(-delta_plus * (T - t));
  }
  complex dp(double t) const {
    return u_coef * delta_minus * std::exp(delta_minus * t) +
           w_coef * delta_plus * std::exp(-delta_plus * (T - t));
  }
};

inline double mode_l(ModeSpec const& mode) {
  return std::norm(mode.a) + (1.0 - mode.lambda) / mode.lambda * mode.b;
}

inline void validate_mode(ModeSpec const& mode) {
  if (mode.a.real() != 0.0) throw InvalidInput("mode eigenvalue of A must be purely imaginary");
  if (!(mode.lambda > 0.0 && mode.lambda < 1.0)) throw InvalidInput("mode lambda must lie in (0,1)");
  if (!(mode.b > 0.0)) throw InvalidInput("mode eigenvalue of BB* must be positive");
}

/// Roots of z^2 - 2 a z - l as (delta_minus, delta_plus), ordered by real part.
inline std::pair<complex, complex> modal_roots(ModeSpec const& mode) {
  validate_mode(mode);
  double const l = mode_l(mode);
  if (!(l > 0.0)) throw InvalidInput("modal_roots: l must be positive");
  complex const disc = std::sqrt(mode.a * mode.a + l);
  complex r1 = mode.a - disc;
  complex r2 = mode.a + disc;
  if (r1.real() > r2.real()) std::swap(r1, r2);
  if (!(r1.real() < 0.0 && r2.real() > 0.0)) {
    throw NumericalFailure("modal_roots: roots do not split across the imaginary axis");
  }
  return {r1, r2};
}

/// Solves the two boundary conditions for (u, w) with w = v exp(delta_plus T):
///   u (dm - a) + w (dp - a) e^{-dp T}           = y0
///   u (dm - a) e^{dm T} + w (dp - a)             = 0
inline ModeSolution solve_mode_bvp(ModeSpec const& mode, double T) {
  if (!(T > 0.0)) throw InvalidInput("solve_mode_bvp: T must be positive");
  auto const [dm, dp] = modal_roots(mode);
  complex const a = mode.a;
  complex const em = std::exp(dm * T);
  complex const ep = std::exp(-dp * T);
  complex const m11 = dm - a, m12 = (dp - a) * ep;
  complex const m21 = (dm - a) * em, m22 = dp - a;
  complex const det = m11 * m22 - m12 * m21;
  double const scale = std::abs(m11 * m22) + std::abs(m12 * m21);
  if (!(std::abs(det) > 1e-14 * scale)) throw NumericalFailure("solve_mode_bvp: singular system");
  complex const u = (mode.y0 * m22) / det;
  complex const w = (-m21 * mode.y0) / det;
  ModeSolution s;
  s.delta_minus = dm;
  s.delta_plus = dp;
  s.u_coef = u;
  s.w_coef = w;
  s.v_coef = w * std::exp(-dp * T);
  s.T = T;
  return s;
}

/// State coefficient y = h' - a h.
inline complex mode_state(ModeSpec const& mode, ModeSolution const& s, double t) {
  return s.dp(t) - mode.a * s.p(t);
}

struct ModalRun {
  CertificateReport report;
  std::vector<double> times;
  std::vector<double> p_norm;
  std::vector<double> bound;
};

/// Checks ‖p(t)‖ <= e^{-w t} (sum |u_k|^2)^{1/2} + e^{-w (T-t)} (sum |w_k|^2)^{1/2}
/// on `samples` equispaced times, plus y(0) = y0 and y(T) = 0 per mode.
///
/// The decay rate used is w = min(omega, min_k |Re delta_k^-|, min_k Re delta_k^+);
/// for a = i theta the roots are i theta +- sqrt(((1-lambda)/lambda) b), so modes
/// with ((1-lambda)/lambda) b < omega^2 cannot support omega and are counted in
/// the `modes_below_omega` detail.
///
/// Sub-residuals are reported in units of their tolerances (inequality
/// 1e-12 relative, states 1e-9), so the report tolerance is 1.
inline ModalRun modal_turnpike_check(std::vector<ModeSpec> const& modes, double T, double omega,
                                     std::size_t samples = 1000) {
  constexpr double kIneqTol = 1e-12;
  constexpr double kStateTol = 1e-9;
  if (modes.empty()) throw InvalidInput("modal_turnpike_check: no modes");
  if (!(omega > 0.0)) throw InvalidInput("modal_turnpike_check: omega must be positive");
  if (samples < 2) throw InvalidInput("modal_turnpike_check: need at least 2 samples");
  double const lambda = modes.front().lambda;
  for (auto const& m : modes) {
    if (m.lambda != lambda) throw InvalidInput("modal_turnpike_check: inconsistent lambda");
    if (m.b < omega * omega) throw InvalidInput("modal_turnpike_check: mode with b < omega^2");
  }

  std::vector<ModeSolution> sols;
  sols.reserve(modes.size());
  double rate = omega;
  std::size_t below = 0;
  double y0_norm = 0.0, u_norm = 0.0, w_norm = 0.0;
  for (auto const& m : modes) {
    sols.push_back(solve_mode_bvp(m, T));
    auto const& s = sols.back();
    double const r = std::min(-s.delta_minus.real(), s.delta_plus.real());
    if (r < omega) ++below;
    rate = std::min(rate, r);
    y0_norm += std::norm(m.y0);
    u_norm += std::norm(s.u_coef);
    w_norm += std::norm(s.w_coef);
  }
  y0_norm = std::sqrt(y0_norm);
  u_norm = std::sqrt(u_norm);
  w_norm = std::sqrt(w_norm);
  double const yscale = y0_norm > 0.0 ? y0_norm : 1.0;

  double init_err = 0.0, term = 0.0;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    init_err += std::norm(mode_state(modes[k], sols[k], 0.0) - modes[k].y0);
    term += std::norm(mode_state(modes[k], sols[k], T));
  }
  init_err = std::sqrt(init_err) / yscale;
  term = std::sqrt(term) / yscale;

  ModalRun run;
  double const c = (1.0 - lambda) / lambda;
  double violation = 0.0;
  double control_peak = 0.0;
  double const bscale = u_norm + w_norm > 0.0 ? u_norm + w_norm : 1.0;
  for (std::size_t j = 0; j < samples; ++j) {
    double const t = T * double(j) / double(samples - 1);
    double pn = 0.0, ctrl = 0.0;
    for (std::size_t k = 0; k < modes.size(); ++k) {
      double const hk = std::norm(sols[k].p(t));
      pn += hk;
      ctrl += c * c * modes[k].b * hk;
    }
    pn = std::sqrt(pn);
    double const bound = std::exp(-rate * t) * u_norm + std::exp(-rate * (T - t)) * w_norm;
    violation = std::max(violation, (pn - bound) / bscale);
    control_peak = std::max(control_peak, std::sqrt(ctrl));
    run.times.push_back(t);
    run.p_norm.push_back(pn);
    run.bound.push_back(bound);
  }
  violation = std::max(0.0, violation);

  double const r =
      std::max({violation / kIneqTol, init_err / kStateTol, term / kStateTol});
  run.report = make_report(CertificateKind::turnpike, r, 1.0,
                           {{"lambda", lambda},
                            {"T", T},
                            {"omega", omega},
                            {"decay_rate_used", rate},
                            {"modes_below_omega", double(below)},
                            {"inequality_violation", violation},
                            {"initial_state_error", init_err},
                            {"terminal_state_norm", term},
                            {"u_coef_norm", u_norm},
                            {"v_scaled_norm", w_norm},
                            {"control_peak", control_peak}});
  return run;
}

}  // namespace turnpike
