// Batch driver: lssem {solve|study|condnum} [options]

#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "lssem/cli.hpp"

namespace {

struct RawFlags {
  std::string out;
  std::string mode = "p";
  std::string basis = "legendre";
  std::string precond = "block";
  std::string eps = "0.1";
  std::string W = "8";
  std::string poly;
};

void add_common(CLI::App& sub, lssem::cli::RunConfig& cfg, RawFlags& raw) {
  sub.add_option("--example", cfg.example,
                 "example1..example4, or manufactured (with --poly)")
      ->capture_default_str();
  sub.add_option("--epsilon", raw.eps, "layer parameter(s), comma separated, increasing")
      ->capture_default_str();
  sub.add_option("--W", raw.W, "polynomial order(s), comma separated, increasing")
      ->capture_default_str();
  sub.add_option("--mode", raw.mode, "p (one element) or hp (N = round(cn W))")
      ->check(CLI::IsMember({"p", "hp"}))
      ->capture_default_str();
  sub.add_option("--cn", cfg.cn, "hp proportionality constant")->capture_default_str();
  sub.add_option("--basis", raw.basis, "legendre or monomial")
      ->check(CLI::IsMember({"legendre", "monomial"}))
      ->capture_default_str();
  sub.add_option("--stop", cfg.stop, "tol (relative) or paper (C sqrt(ln W)/W)")
      ->check(CLI::IsMember({"tol", "paper"}))
      ->capture_default_str();
  sub.add_option("--tol", cfg.tol, "relative tolerance mu")->capture_default_str();
  sub.add_option("--C", cfg.C, "constant of the paper stopping rule")->capture_default_str();
  sub.add_option("--max-iters", cfg.max_iters, "PCG iteration cap (0: 20 * dim)")
      ->capture_default_str();
  sub.add_option("--quad-order", cfg.quad_order, "GLL nodes per element (0: 2W+2)")
      ->capture_default_str();
  sub.add_option("--out", raw.out, "CSV output path (default: stdout)");
  sub.add_option("--svg", cfg.svg, "SVG plot path (study only)");
  sub.add_option("--precond", raw.precond, "block, jacobi or identity")
      ->check(CLI::IsMember({"block", "jacobi", "identity"}))
      ->capture_default_str();
  sub.add_option("--seed", cfg.seed, "Lanczos start-vector seed")->capture_default_str();
  sub.add_option("--poly", raw.poly, "manufactured solution coefficients c0,c1,...");
  sub.add_option("--convection", cfg.convection, "manufactured: convection coefficient");
  sub.add_option("--reaction", cfg.reaction, "manufactured: reaction coefficient");
  sub.add_option_function<std::vector<double>>(
         "--domain",
         [&cfg](const std::vector<double>& d) {
           cfg.left = d.at(0);
           cfg.right = d.at(1);
         },
         "manufactured: left,right")
      ->delimiter(',')
      ->expected(2);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace lssem::cli;

  CLI::App app{"Least-squares spectral element solver for 1D singularly perturbed problems"};
  app.require_subcommand(1);

  RunConfig cfg;
  RawFlags raw;

  std::map<std::string, CLI::App*> subs;
  subs["solve"] = app.add_subcommand("solve", "solve one instance, write solution samples");
  subs["study"] = app.add_subcommand("study", "convergence study over W (and eps)");
  subs["condnum"] = app.add_subcommand("condnum", "condition number estimates");
  for (auto& [name, sub] : subs) add_common(*sub, cfg, raw);
  subs["study"]->add_flag("--timing", cfg.timing, "add wall_time_seconds column");
  subs["study"]->add_flag("--kappa", cfg.kappa, "add a kappa estimate per row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    cfg.mode = lssem::parse_mode(raw.mode);
    cfg.basis = lssem::parse_basis(raw.basis);
    cfg.precond = lssem::parse_precond(raw.precond);
    cfg.eps = parse_double_list(raw.eps);
    cfg.W = parse_int_list(raw.W);
    cfg.poly = parse_double_list(raw.poly);
    const std::string& out = raw.out;

    std::ofstream file;
    if (!out.empty()) {
      file.open(out);
      if (!file) throw UsageError("cannot open --out path '" + out + "'");
    }
    std::ostream& csv = out.empty() ? std::cout : static_cast<std::ostream&>(file);
    std::ostream& log = out.empty() ? std::cerr : std::cout;

    if (subs["solve"]->parsed()) return cmd_solve(cfg, csv, log);
    if (subs["study"]->parsed()) return cmd_study(cfg, csv, log);
    return cmd_condnum(cfg, csv, log);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  }
}
