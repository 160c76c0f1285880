#pragma once

// Orchestration behind the `turnpike` command-line tool. Kept in a header so
// the test suite can drive complete runs without spawning processes.

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "turnpike/certify.hpp"
#include "turnpike/datum.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/explicit.hpp"
#include "turnpike/io.hpp"
#include "turnpike/modal.hpp"
#include "turnpike/oracle.hpp"
#include "turnpike/wavecore.hpp"

namespace turnpike::cli {

enum class Command { explicit_control, simulate, certify, oracle, similarity, modal };

inline Command parse_command(std::string const& s) {
  if (s == "explicit") return Command::explicit_control;
  if (s == "simulate") return Command::simulate;
  if (s == "certify") return Command::certify;
  if (s == "oracle") return Command::oracle;
  if (s == "similarity") return Command::similarity;
  if (s == "modal") return Command::modal;
  throw InvalidInput("unknown command '" + s + "'");
}

enum ExitCode : int { kOk = 0, kCertificateFailed = 1, kInvalidConfig = 2, kNumericalFailure = 3 };

struct RunConfig {
  Command command = Command::certify;
  double lambda = 1.0;
  std::optional<double> T = 20.0;  ///< nullopt: infinite horizon
  std::optional<std::size_t> K;    ///< truncation; automatic when absent
  std::size_t m = 512;
  DatumKind datum = DatumKind::sine;
  std::string datum_path;
  double sigma = 0.0;
  std::string out_dir = ".";
  Tolerances tol;
  std::string dump_kkt;
  std::string modes_path;
  double omega = 1.0;
};

/// Parses "inf" or an even integer (ratios accepted).
inline std::optional<double> parse_horizon(std::string const& s) {
  if (s == "inf" || s == "infinity") return std::nullopt;
  double const T = parse_real(s);
  windows_for_horizon(T);
  return T;
}

inline void validate(RunConfig const& c) {
  require_lambda(c.lambda);
  if (c.m == 0) throw InvalidInput("--m must be positive");
  if (c.command == Command::modal) {
    if (!(c.lambda > 0.0 && c.lambda < 1.0)) throw InvalidInput("modal requires lambda in (0,1)");
    if (!c.T || !(*c.T > 0.0)) throw InvalidInput("modal requires a finite T > 0");
    return;
  }
  if (c.T) windows_for_horizon(*c.T);
  if (!c.T && c.lambda >= 1.0) throw InvalidInput("infinite horizon requires lambda < 1");
  if (c.K && *c.K == 0) throw InvalidInput("--K must be positive");
  if (c.datum == DatumKind::file && c.datum_path.empty()) {
    throw InvalidInput("--datum file requires --datum-file");
  }
  if (!(c.tol.exact > 0.0) || !(c.tol.quadrature > 0.0)) throw InvalidInput("tolerances must be positive");
  if ((c.command == Command::oracle || c.command == Command::similarity) && !c.T) {
    throw InvalidInput("this command needs a finite even --T");
  }
}

namespace detail {

inline std::string out_path(RunConfig const& c, std::string const& name) {
  return (std::filesystem::path(c.out_dir) / name).string();
}

inline std::size_t truncation(RunConfig const& c) {
  return c.K ? *c.K : default_truncation(weight_from_lambda(c.lambda).z).windows;
}

inline ControlSignal solve(RunConfig const& c, InitialData const& init) {
  if (c.T) return finite_horizon_control(init, c.lambda, *c.T);
  return infinite_horizon_control(init, c.lambda, truncation(c));
}

inline int write_reports(RunConfig const& c, std::string const& name,
                         std::vector<CertificateReport> const& reports, std::ostream& log) {
  nlohmann::json arr = nlohmann::json::array();
  bool ok = true;
  for (auto const& r : reports) {
    arr.push_back(to_json(r));
    ok = ok && r.pass;
    log << (r.pass ? "PASS " : "FAIL ") << to_string(r.kind) << " residual=" << format_real(r.residual)
        << " tol=" << format_real(r.tolerance) << '\n';
  }
  write_json(out_path(c, name), {{"schema", kSchemaVersion}, {"reports", arr}});
  return ok ? kOk : kCertificateFailed;
}

inline int run_explicit(RunConfig const& c, InitialData const& init, std::ostream& log) {
  ControlSignal const u = solve(c, init);
  write_control_csv(out_path(c, "control.csv"), u);
  write_json(out_path(c, "control_meta.json"), control_meta_json(u));
  auto const meta = u.meta().value_or(ControlMeta{});
  log << "kind=" << to_string(meta.kind) << " lambda=" << format_real(meta.lambda)
      << " z=" << format_real(meta.z) << " windows=" << u.window_count()
      << " max|u|=" << format_real(u.max_abs()) << '\n';
  return kOk;
}

inline int run_simulate(RunConfig const& c, InitialData const& init, std::ostream& log) {
  ControlSignal const u = solve(c, init);
  AlphaProfile const alpha = propagate_alpha(build_F(init), u);
  std::size_t const m = alpha.samples_per_unit();
  std::size_t const last = static_cast<std::size_t>(alpha.horizon()) * m;

  write_control_csv(out_path(c, "control.csv"), u);
  write_control_csv(out_path(c, "boundary_trace.csv"), boundary_trace(alpha).offset(c.sigma));

  {
    std::ofstream e(out_path(c, "energy.csv"), std::ios::binary);
    if (!e) throw InvalidInput("cannot write energy.csv");
    e << "t,E\n";
    for (std::size_t p = 0; p <= last; ++p) {
      e << format_real(double(p) / double(m)) << ',' << format_real(energy_at(alpha, p)) << '\n';
    }
  }
  {
    // Surface of y_x(t,x); blank line between time slices for gnuplot's splot.
    std::ofstream s(out_path(c, "dxy.csv"), std::ios::binary);
    if (!s) throw InvalidInput("cannot write dxy.csv");
    s << "t,x,yx\n";
    std::size_t const tstride = std::max<std::size_t>(1, m / 16);
    std::size_t const xstride = std::max<std::size_t>(1, m / 32);
    for (std::size_t p = 0; p <= last; p += tstride) {
      StateSnapshot const snap = unshift(evaluate_state_at(alpha, p), c.sigma);
      for (std::size_t i = 0; i < m; i += xstride) {
        s << format_real(snap.t) << ',' << format_real(snap.yx.point(i)) << ','
          << format_real(snap.yx[i]) << '\n';
      }
      s << '\n';
    }
  }
  std::size_t const mid = (last / (2 * m)) * m;
  write_snapshot_csv(out_path(c, "snapshot_start.csv"), unshift(evaluate_state_at(alpha, 0), c.sigma));
  write_snapshot_csv(out_path(c, "snapshot_mid.csv"), unshift(evaluate_state_at(alpha, mid), c.sigma));
  write_snapshot_csv(out_path(c, "snapshot_end.csv"), unshift(evaluate_state_at(alpha, last), c.sigma));

  log << "E(0)=" << format_real(energy_at(alpha, 0))
      << " E(" << format_real(double(mid) / double(m)) << ")=" << format_real(energy_at(alpha, mid))
      << " E(" << format_real(alpha.horizon()) << ")=" << format_real(energy_at(alpha, last)) << '\n';
  return kOk;
}

inline int run_certify(RunConfig const& c, InitialData const& init, std::ostream& log) {
  ControlSignal const u = solve(c, init);
  GridFunction const F = build_F(init);
  AlphaProfile const alpha = propagate_alpha(F, u);
  Weight const w = weight_from_lambda(c.lambda);
  std::vector<CertificateReport> reports;
  if (c.T) {
    reports.push_back(check_terminal(alpha, *c.T, c.tol.exact));
    if (alpha.window_count() >= 3) reports.push_back(euler_lagrange_residual(alpha, c.lambda, c.tol.exact));
    if (c.lambda < 1.0) reports.push_back(check_turnpike(alpha, *c.T, w.z, 1.0, 0.0, c.tol.exact));
    ControlSignal const ref = oracle_optimal_control(F, c.lambda, *c.T);
    double const J = cost(alpha, u, c.lambda);
    double const J_ref = cost(propagate_alpha(F, ref), ref, c.lambda);
    reports.push_back(check_cost(J, J_ref, c.tol.exact));
    if (c.datum == DatumKind::sine && c.lambda == 1.0 && c.sigma == 0.0) {
      double const pi2 = std::numbers::pi * std::numbers::pi;
      reports.push_back(check_cost(J, 2.0 * pi2 / *c.T, c.tol.quadrature));
    }
  } else {
    if (alpha.window_count() >= 3) reports.push_back(euler_lagrange_residual(alpha, c.lambda, c.tol.exact));
    reports.push_back(check_decay(alpha, w.z, c.tol.exact));
  }
  return write_reports(c, "certificates.json", reports, log);
}

inline int run_oracle(RunConfig const& c, InitialData const& init, std::ostream& log) {
  GridFunction const F = build_F(init);
  double const T = *c.T;
  if (!c.dump_kkt.empty()) {
    std::size_t const i = F.size() / 2;
    write_kkt_csv(assemble_class_qp(F[i], c.lambda, windows_for_horizon(T), true,
                                    ClassFamily::positive_half),
                  c.dump_kkt);
  }
  ControlSignal const oracle = oracle_optimal_control(F, c.lambda, T);
  ControlSignal const closed = finite_horizon_control(init, c.lambda, T);
  write_control_csv(out_path(c, "oracle_control.csv"), oracle);

  double const scale = closed.max_abs() > 0.0 ? closed.max_abs() : 1.0;
  double const dev = oracle.combined(1.0, closed, -1.0).max_abs() / scale;
  double const J_o = cost(propagate_alpha(F, oracle), oracle, c.lambda);
  double const J_c = cost(propagate_alpha(F, closed), closed, c.lambda);
  auto const dev_report =
      make_report(CertificateKind::cost, dev, 1e-9, {{"max_samplewise_deviation", dev}});
  auto const cost_report = check_cost(J_o, J_c, 1e-12);
  return write_reports(c, "oracle_report.json", {dev_report, cost_report}, log);
}

inline int run_similarity(RunConfig const& c, InitialData const& init, std::ostream& log) {
  Weight const w = similarity_weight(*c.T);
  log << "T=" << format_real(*c.T) << " lambda=" << format_real(w.lambda) << " z=" << format_real(w.z)
      << '\n';
  auto const r = check_similarity(init, *c.T);
  log << "window0_residual=" << format_real(r.detail("window0_residual")) << '\n';
  return write_reports(c, "similarity.json", {r}, log);
}

inline std::vector<ModeSpec> default_modes(double lambda) {
  std::vector<ModeSpec> modes;
  for (int k = 1; k <= 5; ++k) modes.push_back({complex(0.0, double(k)), 1.0, lambda, complex(1.0 / k, 0.0)});
  return modes;
}

inline int run_modal(RunConfig const& c, std::ostream& log) {
  double lambda = c.lambda;
  double T = *c.T;
  double omega = c.omega;
  std::vector<ModeSpec> modes;
  if (c.modes_path.empty()) {
    modes = default_modes(lambda);
  } else {
    std::ifstream in(c.modes_path);
    if (!in) throw InvalidInput("cannot open " + c.modes_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (nlohmann::json::exception const& e) {
      throw InvalidInput(std::string("malformed modes file: ") + e.what());
    }
    nlohmann::json arr = j;
    if (j.is_object()) {
      lambda = j.value("lambda", lambda);
      T = j.value("T", T);
      omega = j.value("omega", omega);
      arr = j.at("modes");
    }
    if (!arr.is_array()) throw InvalidInput("modes must be a JSON array");
    for (auto const& e : arr) {
      modes.push_back({complex(0.0, e.at("a_im").get<double>()), e.at("b").get<double>(), lambda,
                       complex(e.value("y0_re", 0.0), e.value("y0_im", 0.0))});
    }
  }
  ModalRun const run = modal_turnpike_check(modes, T, omega);
  {
    std::ofstream out(out_path(c, "modal_pnorm.csv"), std::ios::binary);
    if (!out) throw InvalidInput("cannot write modal_pnorm.csv");
    out << "t,p_norm,bound\n";
    for (std::size_t j = 0; j < run.times.size(); ++j) {
      out << format_real(run.times[j]) << ',' << format_real(run.p_norm[j]) << ','
          << format_real(run.bound[j]) << '\n';
    }
  }
  return write_reports(c, "modal.json", {run.report}, log);
}

}  // namespace detail

/// Runs one command; returns the process exit code
/// (0 pass, 1 certificate failure, 2 invalid config, 3 numerical failure).
inline int run(RunConfig const& config, std::ostream& log, std::ostream& err) {
  try {
    validate(config);
    std::filesystem::create_directories(config.out_dir);
    if (config.command == Command::modal) return detail::run_modal(config, log);

    InitialData const raw = load_datum(config.datum, config.m, config.datum_path);
    InitialData const init = steady_state_shift(raw, config.sigma);
    switch (config.command) {
      case Command::explicit_control: return detail::run_explicit(config, init, log);
      case Command::simulate: return detail::run_simulate(config, init, log);
      case Command::certify: return detail::run_certify(config, init, log);
      case Command::oracle: return detail::run_oracle(config, init, log);
      case Command::similarity: return detail::run_similarity(config, init, log);
      case Command::modal: break;
    }
    return kInvalidConfig;
  } catch (InvalidInput const& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (nlohmann::json::exception const& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (std::filesystem::filesystem_error const& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (std::exception const& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace turnpike::cli
