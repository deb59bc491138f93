// lq-sweep: solve | check | compare for linear-quadratic problems with
// coupled endpoint conditions.  Exit codes: 0 ok, 2 invalid input, 3
// numerical breakdown, 4 declared tolerance violated, 1 anything else.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lqsweep/errors.hpp"
#include "lqsweep/hamiltonian.hpp"
#include "lqsweep/oracle.hpp"
#include "lqsweep/oracle_compare.hpp"
#include "lqsweep/problem.hpp"
#include "lqsweep/sweep.hpp"
#include "lqsweep/zakhar_itkin.hpp"

namespace {

using nlohmann::ordered_json;

struct RunConfig {
  std::string problem_path;
  std::string method = "sweep";
  std::string fundamental = "direct";
  int steps = 2000;
  int oracle_n = 2000;
  std::string out_dir = ".";
  double tol_symmetry = 1e-6;
  double tol_bc = 1e-6;
  double tol_compare_cost = 1e-3;
  // extensions with acceptance-grade defaults; documented in the README
  double tol_duality = 1e-6;
  double tol_traj = 2e-3;
  double tol_x0 = 1e-8;
  double tol_cross = 1e-6;
};

lqsweep::Method parse_method(const std::string& s) {
  if (s == "sweep") return lqsweep::Method::Sweep;
  if (s == "augmented") return lqsweep::Method::Augmented;
  if (s == "feedback") return lqsweep::Method::Feedback;
  throw lqsweep::ParseError("unknown method: " + s);
}

lqsweep::Fundamental parse_fundamental(const std::string& s) {
  if (s == "direct") return lqsweep::Fundamental::Direct;
  if (s == "zakhar-itkin") return lqsweep::Fundamental::ZakharItkin;
  if (s == "stationary") return lqsweep::Fundamental::Stationary;
  throw lqsweep::ParseError("unknown fundamental: " + s);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json vec_json(const lqsweep::Matrix& col) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < col.rows(); ++i) a.push_back(col(i, 0));
  return a;
}

ordered_json report_json(const lqsweep::Solution& s, const RunConfig& cfg) {
  ordered_json diag;
  diag["d_symmetry"] = s.diagnostics.d_symmetry;
  diag["symplectic_max"] = s.diagnostics.symplectic_max;
  diag["bc_residual"] = s.diagnostics.bc_residual;
  diag["dynamics_residual"] = s.diagnostics.dynamics_residual;
  diag["duality_gap"] = s.diagnostics.duality_gap;
  ordered_json r;
  r["x0"] = vec_json(s.x0);
  r["nu"] = vec_json(s.nu);
  r["cost"] = s.cost;
  r["diagnostics"] = diag;
  r["method"] = cfg.method;
  r["fundamental"] = cfg.fundamental;
  r["steps"] = cfg.steps;
  return r;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw lqsweep::ParseError("cannot write " + path.string());
  out << body;
  if (!out.flush()) throw lqsweep::ParseError("cannot write " + path.string());
}

std::string trajectory_csv(const lqsweep::Solution& s) {
  const int n = s.x.empty() ? 0 : s.x.front().rows();
  const int m = s.u.empty() ? 0 : s.u.front().rows();
  std::string body = "t";
  for (int j = 1; j <= n; ++j) body += ", x" + std::to_string(j);
  for (int j = 1; j <= m; ++j) body += ", u" + std::to_string(j);
  for (int j = 1; j <= n; ++j) body += ", lambda" + std::to_string(j);
  body += "\n";
  for (int i = 0; i <= s.grid.steps; ++i) {
    body += fmt17(s.grid.node(i));
    for (int j = 0; j < n; ++j) body += ", " + fmt17(s.x[i](j, 0));
    for (int j = 0; j < m; ++j) body += ", " + fmt17(s.u[i](j, 0));
    for (int j = 0; j < n; ++j) body += ", " + fmt17(s.lambda[i](j, 0));
    body += "\n";
  }
  return body;
}

// Prints findings; returns false when any is an error.
bool run_validation(const lqsweep::LqProblem& p) {
  const lqsweep::ValidationReport rep = lqsweep::validate(p);
  for (const auto& f : rep.findings) {
    std::cerr << (f.severity == lqsweep::Severity::Error ? "error: "
                                                         : "warning: ")
              << f.message << "\n";
  }
  return rep.ok;
}

lqsweep::LqProblem load_and_validate(const RunConfig& cfg, bool* ok) {
  lqsweep::LqProblem p = lqsweep::load_problem(cfg.problem_path);
  *ok = run_validation(p);
  return p;
}

int cmd_solve(const RunConfig& cfg) {
  bool ok = false;
  const lqsweep::LqProblem p = load_and_validate(cfg, &ok);
  if (!ok) return 2;

  lqsweep::PipelineOptions opts;
  opts.method = parse_method(cfg.method);
  opts.fundamental = parse_fundamental(cfg.fundamental);
  opts.steps = cfg.steps;
  const lqsweep::PipelineResult res = lqsweep::solve_pipeline(p, opts);

  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path out(cfg.out_dir);
  write_file(out / "trajectory.csv", trajectory_csv(res.solution));
  write_file(out / "report.json",
             report_json(res.solution, cfg).dump(2) + "\n");

  const auto& d = res.solution.diagnostics;
  int rc = 0;
  if (d.d_symmetry > cfg.tol_symmetry) {
    std::cerr << "tolerance violation: d_symmetry " << d.d_symmetry << " > "
              << cfg.tol_symmetry << "\n";
    rc = 4;
  }
  if (d.bc_residual > cfg.tol_bc) {
    std::cerr << "tolerance violation: bc_residual " << d.bc_residual << " > "
              << cfg.tol_bc << "\n";
    rc = 4;
  }
  return rc;
}

int cmd_check(const RunConfig& cfg) {
  bool ok = false;
  const lqsweep::LqProblem p = load_and_validate(cfg, &ok);
  std::cout << "validation: " << (ok ? "ok" : "failed") << "\n";
  if (!ok) return 2;

  const lqsweep::Grid grid(p.t0, p.tau, cfg.steps);
  const lqsweep::Matrix h0 = lqsweep::assemble_h(p, p.t0);
  std::cout << "hamiltonian_residual = " << lqsweep::hamiltonian_residual(h0)
            << "\n";

  const lqsweep::BlockTrajectory direct = lqsweep::fundamental_direct(p, grid);
  lqsweep::BlockTrajectory factored{grid, {}};
  for (const auto& s : lqsweep::integrate_psi_w_v(p, grid))
    factored.blocks.push_back(lqsweep::blocks_from_factors(s));

  double sympl_direct = 0.0;
  double sympl_factored = 0.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < direct.blocks.size(); ++i) {
    const auto& a = direct.blocks[i];
    const auto& b = factored.blocks[i];
    sympl_direct = std::max(sympl_direct, lqsweep::symplectic_residual(a));
    sympl_factored = std::max(sympl_factored, lqsweep::symplectic_residual(b));
    double d = (a.phi11 - b.phi11).max_abs();
    d = std::max(d, (a.phi12 - b.phi12).max_abs());
    d = std::max(d, (a.phi21 - b.phi21).max_abs());
    d = std::max(d, (a.phi22 - b.phi22).max_abs());
    cross = std::max(cross, d);
  }
  const lqsweep::SweepSystem sys =
      lqsweep::build_sweep_system(p, direct.at_tau());
  const double dsym = lqsweep::sweep_symmetry_residual(sys);
  const lqsweep::ValidationReport rep = lqsweep::validate(p);

  std::cout << "symplectic_max[direct] = " << sympl_direct << "\n";
  std::cout << "symplectic_max[zakhar-itkin] = " << sympl_factored << "\n";
  std::cout << "cross_block_distance = " << cross << "\n";
  std::cout << "d_symmetry = " << dsym << "\n";
  if (rep.gramian_min_eig)
    std::cout << "gramian_min_eig = " << *rep.gramian_min_eig << "\n";
  else
    std::cout << "gramian_min_eig = unavailable\n";

  int rc = 0;
  if (sympl_direct > cfg.tol_symmetry || sympl_factored > cfg.tol_symmetry) {
    std::cerr << "tolerance violation: symplectic residual exceeds "
              << cfg.tol_symmetry << "\n";
    rc = 4;
  }
  if (cross > cfg.tol_cross) {
    std::cerr << "tolerance violation: cross-method block distance " << cross
              << " > " << cfg.tol_cross << "\n";
    rc = 4;
  }
  if (dsym > cfg.tol_symmetry) {
    std::cerr << "tolerance violation: d_symmetry " << dsym << " > "
              << cfg.tol_symmetry << "\n";
    rc = 4;
  }
  return rc;
}

int cmd_compare(const RunConfig& cfg) {
  bool ok = false;
  const lqsweep::LqProblem p = load_and_validate(cfg, &ok);
  if (!ok) return 2;

  lqsweep::PipelineOptions opts;
  opts.method = lqsweep::Method::Sweep;
  opts.fundamental = parse_fundamental(cfg.fundamental);
  opts.steps = cfg.steps;
  const lqsweep::PipelineResult sweep = lqsweep::solve_pipeline(p, opts);

  opts.method = lqsweep::Method::Augmented;
  const lqsweep::PipelineResult aug = lqsweep::solve_pipeline(p, opts);

  const lqsweep::OracleSolution osol = lqsweep::oracle_solve(p, cfg.oracle_n);
  const lqsweep::CompareReport cmp = lqsweep::compare(sweep.solution, osol);
  const double x0_diff =
      (sweep.solution.x0 - aug.solution.x0).max_abs();

  RunConfig sweep_cfg = cfg;
  sweep_cfg.method = "sweep";
  ordered_json pairwise;
  pairwise["sweep_vs_oracle_cost_rel"] = cmp.cost_rel_diff;
  pairwise["sweep_vs_augmented_x0"] = x0_diff;
  pairwise["x_sup_diff"] = cmp.x_sup_diff;
  pairwise["u_sup_diff"] = cmp.u_sup_diff;
  ordered_json doc;
  doc["sweep"] = report_json(sweep.solution, sweep_cfg);
  doc["augmented"] = {{"x0", vec_json(aug.solution.x0)},
                      {"nu", vec_json(aug.solution.nu)}};
  doc["oracle"] = {{"cost", osol.cost}};
  doc["pairwise"] = pairwise;

  std::filesystem::create_directories(cfg.out_dir);
  write_file(std::filesystem::path(cfg.out_dir) / "compare.json",
             doc.dump(2) + "\n");

  int rc = 0;
  auto fail = [&rc](const std::string& what, double got, double tol) {
    std::cerr << "tolerance violation: " << what << " " << got << " > " << tol
              << "\n";
    rc = 4;
  };
  if (cmp.cost_rel_diff > cfg.tol_compare_cost)
    fail("sweep_vs_oracle_cost_rel", cmp.cost_rel_diff, cfg.tol_compare_cost);
  if (x0_diff > cfg.tol_x0) fail("sweep_vs_augmented_x0", x0_diff, cfg.tol_x0);
  if (cmp.x_sup_diff > cfg.tol_traj)
    fail("x_sup_diff", cmp.x_sup_diff, cfg.tol_traj);
  if (cmp.u_sup_diff > cfg.tol_traj)
    fail("u_sup_diff", cmp.u_sup_diff, cfg.tol_traj);
  if (sweep.solution.diagnostics.duality_gap > cfg.tol_duality)
    fail("duality_gap", sweep.solution.diagnostics.duality_gap,
         cfg.tol_duality);
  return rc;
}

void add_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--problem", cfg.problem_path, "problem JSON file")
      ->required();
  sub->add_option("--method", cfg.method, "sweep | augmented | feedback")
      ->check(CLI::IsMember({"sweep", "augmented", "feedback"}));
  sub->add_option("--fundamental", cfg.fundamental,
                  "direct | zakhar-itkin | stationary")
      ->check(CLI::IsMember({"direct", "zakhar-itkin", "stationary"}));
  sub->add_option("--steps", cfg.steps, "integration grid panels (>= 10)")
      ->check(CLI::Range(10, 100000000));
  sub->add_option("--oracle-n", cfg.oracle_n, "oracle discretization panels")
      ->check(CLI::Range(10, 100000000));
  sub->add_option("--out", cfg.out_dir, "output directory");
  sub->add_option("--tol-symmetry", cfg.tol_symmetry, "D symmetry tolerance");
  sub->add_option("--tol-bc", cfg.tol_bc, "boundary residual tolerance");
  sub->add_option("--tol-compare-cost", cfg.tol_compare_cost,
                  "oracle cost relative tolerance");
  sub->add_option("--tol-duality", cfg.tol_duality, "duality gap tolerance");
  sub->add_option("--tol-traj", cfg.tol_traj,
                  "trajectory sup-distance tolerance");
  sub->add_option("--tol-x0", cfg.tol_x0, "x0 agreement tolerance");
  sub->add_option("--tol-cross", cfg.tol_cross,
                  "cross-method block distance tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear-quadratic solver for coupled endpoint conditions"};
  app.require_subcommand(1);
  RunConfig cfg;
  CLI::App* solve = app.add_subcommand("solve", "solve and write outputs");
  CLI::App* check = app.add_subcommand("check", "structure diagnostics");
  CLI::App* compare = app.add_subcommand("compare", "sweep vs augmented vs oracle");
  add_options(solve, cfg);
  add_options(check, cfg);
  add_options(compare, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(cfg);
    if (check->parsed()) return cmd_check(cfg);
    if (compare->parsed()) return cmd_compare(cfg);
    return 2;
  } catch (const lqsweep::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lqsweep::ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lqsweep::PreconditionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lqsweep::OutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lqsweep::SingularMatrix& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const lqsweep::NonFiniteState& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const lqsweep::NotHurwitz& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
