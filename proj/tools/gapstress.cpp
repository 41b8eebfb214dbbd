// Command-line front end: constants | field | boundary | blowup | convergence.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "gapstress/harness.hpp"

namespace hs = gapstress::harness;

namespace {

struct RawOptions {
  double r = 1.0;
  double eps = 1e-3;
  double tol = 1e-10;
  std::string grid;
  std::string theta;
  std::string eps_list;
  std::string out;
  std::string format = "csv";
  std::string star = "consistent";
};

void add_common(CLI::App* sub, RawOptions& o) {
  sub->add_option("--r", o.r, "hole radius")->capture_default_str();
  sub->add_option("--eps", o.eps, "gap width")->capture_default_str();
  sub->add_option("--tol", o.tol, "absolute series tail tolerance")->capture_default_str();
  sub->add_option("--out", o.out, "output path (default: standard output)");
  sub->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

hs::RunConfig to_config(const RawOptions& o) {
  hs::RunConfig cfg;
  cfg.r = o.r;
  cfg.eps = o.eps;
  cfg.tol = o.tol;
  cfg.out = o.out;
  cfg.format = o.format == "json" ? hs::Format::json : hs::Format::csv;
  cfg.star = o.star == "as-defined" ? hs::StarConstant::as_defined : hs::StarConstant::consistent;
  if (!o.grid.empty()) cfg.grid = hs::GridSpec::parse(o.grid);
  if (!o.theta.empty()) cfg.theta = hs::ThetaSpec::parse(o.theta, "--theta");
  if (!o.eps_list.empty()) cfg.eps_list = hs::parse_eps_list(o.eps_list);
  cfg.max_terms = hs::default_max_terms();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stress between two nearly touching circular holes under uniform normal load"};
  app.require_subcommand(1);
  RawOptions o;

  auto* constants = app.add_subcommand("constants", "I0, P(s), K(s) and the geometry as JSON");
  add_common(constants, o);

  auto* field = app.add_subcommand("field", "exact and singular stress on a Cartesian grid");
  add_common(field, o);
  field->add_option("--grid", o.grid, "x0:x1:nx,y0:y1:ny (default: gap grid)");
  field->add_option("--star-constant", o.star, "consistent or as-defined")
      ->check(CLI::IsMember({"consistent", "as-defined"}));

  auto* boundary = app.add_subcommand("boundary", "hoop stress and q(s, theta) along the boundary");
  add_common(boundary, o);
  boundary->add_option("--theta", o.theta, "t0:t1:nt (default 0:pi:181)");

  auto* blowup = app.add_subcommand("blowup", "max stress versus eps and the log-log slope");
  add_common(blowup, o);
  blowup->add_option("--eps-list", o.eps_list, "comma-separated eps values")->required();
  blowup->add_option("--grid", o.grid, "fixed grid instead of the per-eps gap grid");
  blowup->add_option("--star-constant", o.star, "consistent or as-defined")
      ->check(CLI::IsMember({"consistent", "as-defined"}));

  auto* convergence = app.add_subcommand("convergence", "boundary traction residual versus N");
  add_common(convergence, o);
  convergence->add_option("--theta", o.theta, "t0:t1:nt (default 0:pi:33)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hs::kExitUsage;
  }

  try {
    const hs::RunConfig cfg = to_config(o);
    if (constants->parsed()) return hs::cmd_constants(cfg);
    if (field->parsed()) return hs::cmd_field(cfg);
    if (boundary->parsed()) return hs::cmd_boundary(cfg);
    if (blowup->parsed()) return hs::cmd_blowup(cfg);
    if (convergence->parsed()) return hs::cmd_convergence(cfg);
  } catch (const hs::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return hs::kExitUsage;
  } catch (const gapstress::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return hs::kExitUsage;
  } catch (const gapstress::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return hs::kExitNumerical;
  }
  return hs::kExitUsage;
}
