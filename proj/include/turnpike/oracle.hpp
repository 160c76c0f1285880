#pragma once

// Brute-force optimal control by finite-dimensional quadratic programming.
//
// With unit wave speed and midpoint sampling, the samples {s + 2k} of alpha'
// form closed classes: the recursion a_{k+1} = -a_k + u_k never mixes them and
// the midpoint-rule objective is a sum over classes. Each class is a small
// equality-constrained QP in the window values a_1..a_n, solved here through
// its KKT system. Nothing from the closed-form controls is used.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <optional>
#include <string>
#include <vector>

#include "turnpike/control.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/explicit.hpp"
#include "turnpike/grid.hpp"
#include "turnpike/wavecore.hpp"

namespace turnpike {

/// Which half of window 0 the class starts in. For a class starting in
/// (-1,0) the tracked samples lying in (0,T) are a_1..a_n; for one starting in
/// (0,1) they are a_0..a_{n-1}.
enum class ClassFamily { negative_half, positive_half };

/// Per-class QP: minimize 1/2 a'Ha + g'a + c over a = (a_1..a_n), subject to
/// a_n = 0 when `terminal`. Costs carry the midpoint weight h = 1.
struct CharacteristicClassQP {
  double a0 = 0.0;
  std::size_t n = 1;
  double lambda = 1.0;
  bool terminal = true;
  ClassFamily family = ClassFamily::negative_half;
  Eigen::MatrixXd H;
  Eigen::VectorXd g;
  double constant = 0.0;
};

/// Cost per class: sum_k 4(1 - lambda) a_k^2 over tracked k plus
/// lambda sum_{k<n} (a_{k+1} + a_k)^2.
inline CharacteristicClassQP assemble_class_qp(double a0, double lambda, std::size_t n,
                                               bool terminal,
                                               ClassFamily family = ClassFamily::negative_half) {
  require_lambda(lambda);
  if (n == 0) throw InvalidInput("assemble_class_qp: n >= 1 required");
  CharacteristicClassQP qp;
  qp.a0 = a0;
  qp.n = n;
  qp.lambda = lambda;
  qp.terminal = terminal;
  qp.family = family;
  qp.H = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  qp.g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));

  double const track = 4.0 * (1.0 - lambda);
  // unknown a_k sits at index k - 1
  std::size_t const first = family == ClassFamily::negative_half ? 1 : 0;
  std::size_t const last = family == ClassFamily::negative_half ? n : n - 1;
  for (std::size_t k = first; k <= last; ++k) {
    if (k == 0) {
      qp.constant += track * a0 * a0;
    } else {
      qp.H(Eigen::Index(k - 1), Eigen::Index(k - 1)) += 2.0 * track;
    }
  }
  // lambda (a_{k+1} + a_k)^2 for k = 0..n-1
  qp.constant += lambda * a0 * a0;
  qp.H(0, 0) += 2.0 * lambda;
  qp.g(0) += 2.0 * lambda * a0;
  for (std::size_t k = 1; k < n; ++k) {
    auto const i = Eigen::Index(k - 1);
    qp.H(i, i) += 2.0 * lambda;
    qp.H(i + 1, i + 1) += 2.0 * lambda;
    qp.H(i, i + 1) += 2.0 * lambda;
    qp.H(i + 1, i) += 2.0 * lambda;
  }
  return qp;
}

/// Full KKT matrix [[H, c'], [c, 0]] (or just H without terminal constraint).
inline Eigen::MatrixXd kkt_matrix(CharacteristicClassQP const& qp) {
  auto const n = Eigen::Index(qp.n);
  if (!qp.terminal) return qp.H;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + 1, n + 1);
  K.topLeftCorner(n, n) = qp.H;
  K(n, n - 1) = 1.0;
  K(n - 1, n) = 1.0;
  return K;
}

inline Eigen::VectorXd kkt_rhs(CharacteristicClassQP const& qp) {
  auto const n = Eigen::Index(qp.n);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(qp.terminal ? n + 1 : n);
  r.head(n) = -qp.g;
  return r;
}

struct KKTSolution {
  std::vector<double> a;   ///< a_1..a_n
  double multiplier = 0.0;  ///< terminal multiplier (0 without constraint)
  double stationarity = 0.0;  ///< max |H a + g + c' nu|
};

/// Direct LU with partial pivoting of the KKT system.
inline KKTSolution solve_kkt(CharacteristicClassQP const& qp) {
  Eigen::MatrixXd const K = kkt_matrix(qp);
  Eigen::VectorXd const rhs = kkt_rhs(qp);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
  if (!(lu.rcond() >= 1e-14)) {
    throw NumericalFailure("solve_kkt: singular KKT system");
  }
  Eigen::VectorXd const x = lu.solve(rhs);
  if (!x.allFinite()) throw NumericalFailure("solve_kkt: non-finite solution");

  auto const n = Eigen::Index(qp.n);
  KKTSolution s;
  s.a.assign(x.data(), x.data() + n);
  Eigen::VectorXd grad = qp.H * x.head(n) + qp.g;
  if (qp.terminal) {
    s.multiplier = x(n);
    grad(n - 1) += s.multiplier;
  }
  s.stationarity = grad.cwiseAbs().maxCoeff();
  return s;
}

/// Objective value of a class at a = (a_1..a_n).
inline double class_cost(CharacteristicClassQP const& qp, std::vector<double> const& a) {
  Eigen::Map<Eigen::VectorXd const> x(a.data(), Eigen::Index(a.size()));
  return 0.5 * x.dot(qp.H * x) + qp.g.dot(x) + qp.constant;
}

/// Optimal control for T = 2n rebuilt class by class from F = alpha' on (-1,1).
inline ControlSignal oracle_optimal_control(GridFunction const& F, double lambda, double T) {
  std::size_t const n = windows_for_horizon(T);
  require_lambda(lambda);
  std::size_t const cells = F.size();
  std::size_t const m = cells / 2;
  std::vector<std::vector<double>> u(n, std::vector<double>(cells));
  for (std::size_t i = 0; i < cells; ++i) {
    ClassFamily const fam = i < m ? ClassFamily::negative_half : ClassFamily::positive_half;
    auto const qp = assemble_class_qp(F[i], lambda, n, true, fam);
    auto const sol = solve_kkt(qp);
    double prev = F[i];
    for (std::size_t k = 0; k < n; ++k) {
      u[k][i] = sol.a[k] + prev;
      prev = sol.a[k];
    }
  }
  std::vector<GridFunction> w;
  w.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    double const lo = 2.0 * double(k);
    w.emplace_back(lo, lo + 2.0, std::move(u[k]));
  }
  return ControlSignal(std::move(w));
}

inline ControlSignal oracle_optimal_control(InitialData const& init, double lambda, double T) {
  return oracle_optimal_control(build_F(init), lambda, T);
}

/// Truncated free-endpoint class problem (all of a_1..a_K tracked).
inline std::vector<double> oracle_infinite_horizon(double a0, double lambda, std::size_t K) {
  if (K == 0) throw InvalidInput("oracle_infinite_horizon: K >= 1 required");
  if (lambda >= 1.0) throw InvalidInput("oracle_infinite_horizon: lambda < 1 required");
  auto const qp = assemble_class_qp(a0, lambda, K, false, ClassFamily::negative_half);
  return solve_kkt(qp).a;
}

/// Writes the KKT system of one class as CSV: one row per equation,
/// columns k0..kN then rhs.
inline void write_kkt_csv(CharacteristicClassQP const& qp, std::string const& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open " + path);
  Eigen::MatrixXd const K = kkt_matrix(qp);
  Eigen::VectorXd const r = kkt_rhs(qp);
  out << std::setprecision(17);
  for (Eigen::Index j = 0; j < K.cols(); ++j) out << "k" << j << ",";
  out << "rhs\n";
  for (Eigen::Index i = 0; i < K.rows(); ++i) {
    for (Eigen::Index j = 0; j < K.cols(); ++j) out << K(i, j) << ",";
    out << r(i) << "\n";
  }
}

}  // namespace turnpike
