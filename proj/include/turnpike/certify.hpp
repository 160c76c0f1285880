#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "turnpike/control.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/explicit.hpp"
#include "turnpike/grid.hpp"
#include "turnpike/wavecore.hpp"

namespace turnpike {

enum class CertificateKind { terminal, euler_lagrange, decay, turnpike, similarity, cost };

inline char const* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::terminal: return "terminal";
    case CertificateKind::euler_lagrange: return "euler_lagrange";
    case CertificateKind::decay: return "decay";
    case CertificateKind::turnpike: return "turnpike";
    case CertificateKind::similarity: return "similarity";
    case CertificateKind::cost: return "cost";
  }
  return "cost";
}

struct CertificateReport {
  CertificateKind kind = CertificateKind::cost;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::vector<std::pair<std::string, double>> details;

  /// First detail with the given label, or NaN.
  double detail(std::string const& label) const {
    for (auto const& [l, v] : details) {
      if (l == label) return v;
    }
    return std::numeric_limits<double>::quiet_NaN();
  }
};

inline CertificateReport make_report(CertificateKind kind, double residual, double tolerance,
                                     std::vector<std::pair<std::string, double>> details = {}) {
  return {kind, residual <= tolerance, residual, tolerance, std::move(details)};
}

/// Default tolerances: exact grid identities and midpoint-quadrature integrals.
struct Tolerances {
  double exact = 1e-10;
  double quadrature = 1e-5;
};

/// J = int_0^T (1 - lambda)(y_x(t,0) - sigma)^2 + lambda u^2 with
/// y_x(t,0) = 2 alpha'(t), midpoint rule. `u` is the control, i.e. the
/// boundary value minus sigma.
inline double cost(AlphaProfile const& alpha, ControlSignal const& u, double lambda,
                   double sigma = 0.0) {
  require_lambda(lambda);
  if (alpha.window_count() != u.window_count() + 1) {
    throw GridMismatch("cost: alpha spans " + std::to_string(alpha.window_count()) +
                       " windows, control " + std::to_string(u.window_count()));
  }
  alpha.window(0).require_congruent(u.window(0));
  std::size_t const m = alpha.samples_per_unit();
  double const h = alpha.step();
  double track = 0.0;
  std::size_t const end = m + 2 * m * u.window_count();  // (0,T) in alpha indices
  for (std::size_t g = m; g < end; ++g) {
    double const d = 2.0 * alpha.sample(g) - sigma;
    track += d * d;
  }
  double effort = 0.0;
  for (auto const& w : u.windows()) {
    for (double v : w.values()) effort += v * v;
  }
  return h * ((1.0 - lambda) * track + lambda * effort);
}

/// Relative agreement of a cost with a reference value.
inline CertificateReport check_cost(double J, double J_reference, double tol) {
  double const scale = std::max(std::abs(J_reference), std::numeric_limits<double>::min());
  double const r = J_reference == 0.0 && J == 0.0 ? 0.0 : std::abs(J - J_reference) / scale;
  return make_report(CertificateKind::cost, r, tol, {{"J", J}, {"J_reference", J_reference}});
}

namespace detail {

inline double relative_scale(double window0) { return window0 > 0.0 ? window0 : 1.0; }

}  // namespace detail

/// alpha' must vanish on (T-1, T+1); residual relative to max |window 0|.
inline CertificateReport check_terminal(AlphaProfile const& alpha, double T, double tol) {
  std::size_t const n = windows_for_horizon(T);
  if (alpha.window_count() < n + 1) {
    throw InvalidInput("check_terminal: alpha does not reach T + 1");
  }
  double const w0 = alpha.window(0).max_abs();
  double const last = alpha.window(n).max_abs();
  double const r = last / detail::relative_scale(w0);
  return make_report(CertificateKind::terminal, r, tol,
                     {{"T", T}, {"max_abs_final_window", last}, {"max_abs_window0", w0}});
}

/// max |lambda a(s+2) + (4 - 2 lambda) a(s) + lambda a(s-2)| over interior
/// windows, relative to max |window 0|.
inline CertificateReport euler_lagrange_residual(AlphaProfile const& alpha, double lambda,
                                                 double tol) {
  require_lambda(lambda);
  std::size_t const K = alpha.window_count();
  if (K < 3) throw InvalidInput("euler_lagrange_residual: needs at least 3 windows");
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < K; ++k) {
    GridFunction const& prev = alpha.window(k - 1);
    GridFunction const& mid = alpha.window(k);
    GridFunction const& next = alpha.window(k + 1);
    for (std::size_t i = 0; i < mid.size(); ++i) {
      double const r = lambda * next[i] + (4.0 - 2.0 * lambda) * mid[i] + lambda * prev[i];
      worst = std::max(worst, std::abs(r));
    }
  }
  double const w0 = alpha.window(0).max_abs();
  return make_report(CertificateKind::euler_lagrange, worst / detail::relative_scale(w0), tol,
                     {{"lambda", lambda}, {"max_abs_identity", worst}, {"windows", double(K)}});
}

/// Geometric decay of an infinite-horizon profile. Both checks are scaled by
/// window 0: |‖w_k‖ - |z| ‖w_{k-1}‖| / ‖w_0‖ and |E(2k) - z^2k E(0)| / E(0).
/// Raw ratios of windows above 1e-6 ‖w_0‖ are reported alongside.
inline CertificateReport check_decay(AlphaProfile const& alpha, double z, double tol) {
  double const n0 = alpha.window(0).l2_norm();
  if (n0 == 0.0) {
    return make_report(CertificateKind::decay, 0.0, tol, {{"degenerate", 1.0}});
  }
  double const az = std::abs(z);
  double norm_res = 0.0;
  double ratio_res = 0.0;
  double energy_res = 0.0;
  double prev = n0;
  double const e0 = energy_at(alpha, 0);
  std::size_t const m = alpha.samples_per_unit();
  double z2k = 1.0;
  for (std::size_t k = 1; k < alpha.window_count(); ++k) {
    double const nk = alpha.window(k).l2_norm();
    norm_res = std::max(norm_res, std::abs(nk - az * prev) / n0);
    if (prev >= 1e-6 * n0) ratio_res = std::max(ratio_res, std::abs(nk / prev - az));
    prev = nk;
    z2k *= z * z;
    double const ek = energy_at(alpha, 2 * k * m);
    energy_res = std::max(energy_res, std::abs(ek - z2k * e0) / e0);
  }
  double const r = std::max(norm_res, energy_res);
  return make_report(CertificateKind::decay, r, tol,
                     {{"z", z},
                      {"window_norm_residual", norm_res},
                      {"energy_ratio_residual", energy_res},
                      {"raw_ratio_residual", ratio_res},
                      {"windows", double(alpha.window_count())}});
}

/// Per-window turnpike envelope for T = 2n:
///   ‖w_k‖ <= (|z|^k + |z|^(n-k)) ‖w_0‖ / (1 - |z|^2n),  k = 0..n.
/// The literal bound E(t) <= c1 exp(-mu t (T - t)) E(0) is only evaluated at
/// t = 2k and reported, together with the smallest mu consistent with c1.
inline CertificateReport check_turnpike(AlphaProfile const& alpha, double T, double z,
                                        double c1, double mu, double tol) {
  std::size_t const n = windows_for_horizon(T);
  if (alpha.window_count() != n + 1) throw GridMismatch("check_turnpike: horizon mismatch");
  double const az = std::abs(z);
  if (!(az < 1.0)) throw InvalidInput("check_turnpike: requires |z| < 1 (lambda < 1)");
  double const n0 = alpha.window(0).l2_norm();
  if (n0 == 0.0) return make_report(CertificateKind::turnpike, 0.0, tol, {{"degenerate", 1.0}});

  double const C = 1.0 / (1.0 - std::pow(az, 2.0 * double(n)));
  double violation = 0.0;
  double mid_ratio = 0.0;
  double mid_envelope = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    double const ratio = alpha.window(k).l2_norm() / n0;
    double const env = C * (std::pow(az, double(k)) + std::pow(az, double(n - k)));
    violation = std::max(violation, ratio - env);
    if (k == n / 2) {
      mid_ratio = ratio;
      mid_envelope = env;
    }
  }

  std::size_t const m = alpha.samples_per_unit();
  double const e0 = energy_at(alpha, 0);
  double literal_violation = 0.0;
  double mu_fit = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < n; ++k) {
    double const t = 2.0 * double(k);
    double const ek = energy_at(alpha, 2 * k * m);
    literal_violation = std::max(literal_violation, ek / e0 - c1 * std::exp(-mu * t * (T - t)));
    if (ek > 0.0) mu_fit = std::min(mu_fit, std::log(c1 * e0 / ek) / (t * (T - t)));
  }

  std::vector<std::pair<std::string, double>> details{
      {"z", z},
      {"envelope_constant", C},
      {"mid_window_ratio", mid_ratio},
      {"mid_window_envelope", mid_envelope},
      {"decay_rate_per_time", az > 0.0 ? -std::log(az) / 2.0 : std::numeric_limits<double>::infinity()},
      {"literal_c1", c1},
      {"literal_mu", mu},
      {"literal_max_violation", literal_violation}};
  if (std::isfinite(mu_fit)) details.emplace_back("literal_mu_fit", mu_fit);
  return make_report(CertificateKind::turnpike, std::max(0.0, violation), tol, std::move(details));
}

/// With z = 2/T - 1:
///   (a) HUM control and infinite-horizon control agree on (0,2);
///   (b) ‖u_hum - u_inf‖ on window k equals |1 - |z|^k| ‖u_inf‖ on (0,2);
///   (c) ‖u_hum - u_inf‖ on window k <= |1 - |z|^k| (2/T)(‖y0'‖ + ‖y1‖).
/// The same norms with the finite-horizon control at this weight in place of
/// the HUM control are reported but not asserted.
/// The residual is the largest sub-residual measured in units of its own
/// tolerance, so the report tolerance is 1.
inline CertificateReport check_similarity(InitialData const& init, double T,
                                          double tol_window0 = 1e-12,
                                          double tol_identity = 1e-8) {
  std::size_t const n = windows_for_horizon(T);
  Weight const w = similarity_weight(T);
  ControlSignal const hum = hum_control(init, T);
  ControlSignal const fin = finite_horizon_control(init, w.lambda, T);
  ControlSignal const inf =
      w.lambda == 0.0 ? infinite_horizon_control(init, 0.0, n) : infinite_horizon_control(init, w.lambda, n);

  double const scale = std::max(hum.window(0).max_abs(), std::numeric_limits<double>::min());
  double const a_res = (hum.window(0) - inf.window(0)).max_abs() / scale;

  double const base = inf.window(0).l2_norm();
  double const data_norm = init.dy0().l2_norm() + init.y1().l2_norm();
  double const az = std::abs(w.z);
  double b_res = 0.0;
  double c_violation = 0.0;
  double c_violation_finite = 0.0;
  std::vector<std::pair<std::string, double>> details{{"T", T}, {"lambda", w.lambda}, {"z", w.z},
                                                      {"window0_residual", a_res}};
  for (std::size_t k = 0; k < n; ++k) {
    double const gap = std::abs(1.0 - std::pow(az, double(k)));
    double const lhs = (hum.window(k) - inf.window(k)).l2_norm();
    double const lhs_fin = (fin.window(k) - inf.window(k)).l2_norm();
    double const identity = gap * base;
    double const bound = gap * (2.0 / T) * data_norm;
    b_res = std::max(b_res, std::abs(lhs - identity) / (base > 0.0 ? base : 1.0));
    double const bscale = data_norm > 0.0 ? data_norm : 1.0;
    c_violation = std::max(c_violation, (lhs - bound) / bscale);
    c_violation_finite = std::max(c_violation_finite, (lhs_fin - bound) / bscale);
    std::string const key = "k" + std::to_string(k) + "_";
    details.emplace_back(key + "hum_gap", lhs);
    details.emplace_back(key + "identity", identity);
    details.emplace_back(key + "finite_gap", lhs_fin);
    details.emplace_back(key + "bound", bound);
  }
  details.emplace_back("window_identity_residual", b_res);
  details.emplace_back("bound_violation_hum", std::max(0.0, c_violation));
  details.emplace_back("bound_violation_finite", std::max(0.0, c_violation_finite));

  double r = std::max(a_res / tol_window0, b_res / tol_identity);
  if (c_violation > tol_identity) r = std::max(r, c_violation / tol_identity);
  return make_report(CertificateKind::similarity, r, 1.0, std::move(details));
}

}  // namespace turnpike
