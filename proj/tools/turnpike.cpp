#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "turnpike/cli.hpp"

int main(int argc, char** argv) {
  using namespace turnpike;
  using namespace turnpike::cli;

  CLI::App app{"Optimal Neumann boundary control of the 1D wave equation"};
  std::string command;
  std::string lambda;
  std::string horizon;
  std::size_t K = 0;
  std::size_t m = 512;
  std::string datum = "sine";
  std::string datum_file;
  std::string sigma = "0";
  char const* env_out = std::getenv("TURNPIKE_OUT");
  std::string out = env_out ? env_out : "turnpike_out";
  double tol_exact = 1e-10;
  double tol_quad = 1e-5;
  std::string dump_kkt;
  std::string modes;
  double omega = 1.0;

  app.add_option("command", command, "explicit | simulate | certify | oracle | similarity | modal")
      ->required();
  app.add_option("--lambda", lambda, "objective weight in [0,1]; ratios like 24/25 accepted (default 1; 1/2 for modal)");
  app.add_option("--T", horizon, "even horizon T = 2n, or inf (default 20; 10 for modal)");
  app.add_option("--K", K, "window count for the infinite horizon (default: automatic)");
  app.add_option("--m", m, "samples per unit time/space");
  app.add_option("--datum", datum, "sine | linear | zero | file");
  app.add_option("--datum-file", datum_file, "CSV with columns x,y0,dy0,y1");
  app.add_option("--sigma", sigma, "steady-state slope to track");
  app.add_option("--out", out, "output directory (default $TURNPIKE_OUT or turnpike_out)");
  app.add_option("--tol-exact", tol_exact, "tolerance for exact grid identities");
  app.add_option("--tol-quad", tol_quad, "tolerance for quadrature-based integrals");
  app.add_option("--dump-kkt", dump_kkt, "oracle: write one class's KKT system to this CSV");
  app.add_option("--modes", modes, "modal: JSON mode batch");
  app.add_option("--omega", omega, "modal: decay rate to certify");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kInvalidConfig;
  }

  RunConfig config;
  try {
    config.command = parse_command(command);
    bool const modal = config.command == Command::modal;
    config.lambda = lambda.empty() ? (modal ? 0.5 : 1.0) : parse_real(lambda);
    if (horizon.empty()) {
      config.T = modal ? 10.0 : 20.0;
    } else {
      config.T = modal ? std::optional<double>(parse_real(horizon)) : parse_horizon(horizon);
    }
    if (K > 0) config.K = K;
    config.m = m;
    config.datum = parse_datum_kind(datum);
    config.datum_path = datum_file;
    config.sigma = parse_real(sigma);
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidConfig;
  }
  config.out_dir = out;
  config.tol.exact = tol_exact;
  config.tol.quadrature = tol_quad;
  config.dump_kkt = dump_kkt;
  config.modes_path = modes;
  config.omega = omega;

  return run(config, std::cout, std::cerr);
}
