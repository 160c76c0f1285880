#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"
#include "turnpike/certify.hpp"
#include "turnpike/control.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/grid.hpp"
#include "turnpike/wavecore.hpp"

namespace turnpike {

inline constexpr int kSchemaVersion = 1;

/// Shortest round-trip decimal form (17 significant digits).
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::ofstream open_out(std::string const& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  return out;
}

}  // namespace detail

/// `t,value`, one row per midpoint sample.
inline void write_grid_csv(std::ostream& out, GridFunction const& g) {
  out << "t,value\n";
  for (std::size_t j = 0; j < g.size(); ++j) out << format_real(g.point(j)) << ',' << format_real(g[j]) << '\n';
}

/// `t,u` over the whole control horizon.
inline void write_control_csv(std::ostream& out, ControlSignal const& u) {
  out << "t,u\n";
  for (auto const& w : u.windows()) {
    for (std::size_t j = 0; j < w.size(); ++j) out << format_real(w.point(j)) << ',' << format_real(w[j]) << '\n';
  }
}

/// `x,y,yx,yt`.
inline void write_snapshot_csv(std::ostream& out, StateSnapshot const& s) {
  out << "x,y,yx,yt\n";
  for (std::size_t j = 0; j < s.y.size(); ++j) {
    out << format_real(s.y.point(j)) << ',' << format_real(s.y[j]) << ',' << format_real(s.yx[j])
        << ',' << format_real(s.yt[j]) << '\n';
  }
}

inline void write_grid_csv(std::string const& path, GridFunction const& g) {
  auto out = detail::open_out(path);
  write_grid_csv(out, g);
}
inline void write_control_csv(std::string const& path, ControlSignal const& u) {
  auto out = detail::open_out(path);
  write_control_csv(out, u);
}
inline void write_snapshot_csv(std::string const& path, StateSnapshot const& s) {
  auto out = detail::open_out(path);
  write_snapshot_csv(out, s);
}

/// Non-finite numbers have no JSON literal; they are written as strings.
inline nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline nlohmann::json to_json(CertificateReport const& r) {
  nlohmann::json details = nlohmann::json::array();
  for (auto const& [label, value] : r.details) {
    details.push_back({{"label", label}, {"value", json_number(value)}});
  }
  return {{"schema", kSchemaVersion},
          {"kind", to_string(r.kind)},
          {"pass", r.pass},
          {"residual", json_number(r.residual)},
          {"tolerance", json_number(r.tolerance)},
          {"details", details}};
}

/// {kind, lambda, z, T or K, f_plus_norm, f_minus_norm}.
inline nlohmann::json control_meta_json(ControlSignal const& u) {
  nlohmann::json j{{"schema", kSchemaVersion}};
  ControlMeta const meta = u.meta().value_or(ControlMeta{});
  j["kind"] = to_string(meta.kind);
  j["lambda"] = json_number(meta.lambda);
  j["z"] = json_number(meta.z);
  if (u.truncated()) {
    j["K"] = u.window_count();
    j["truncation_capped"] = meta.truncation_capped;
  } else {
    j["T"] = static_cast<long long>(u.horizon());
  }
  j["f_plus_norm"] = meta.f_plus ? json_number(meta.f_plus->l2_norm()) : nlohmann::json(nullptr);
  j["f_minus_norm"] = meta.f_minus ? json_number(meta.f_minus->l2_norm()) : nlohmann::json(nullptr);
  return j;
}

inline void write_json(std::string const& path, nlohmann::json const& j) {
  auto out = detail::open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace turnpike
