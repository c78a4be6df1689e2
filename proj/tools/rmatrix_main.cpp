#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "rmatrix/bialgebra.hpp"
#include "rmatrix/dialgebra.hpp"
#include "rmatrix/factorization.hpp"
#include "rmatrix/io.hpp"
#include "rmatrix/lax_flows.hpp"
#include "rmatrix/liealg.hpp"
#include "rmatrix/toda.hpp"

using namespace rmatrix;

namespace {

double tolerance_scale() {
  if (const char* env = std::getenv("RMATRIX_TOL_OVERRIDE")) {
    const double scale = std::atof(env);
    if (scale > 0.0) return scale;
  }
  return 1.0;
}

json check_entry(double value, double tol, bool pass) {
  return json{{"value", value}, {"tolerance", tol}, {"pass", pass}};
}

void emit(const json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    atomic_write_file(out_path, text);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CommonOpts {
  std::string out;
  std::uint64_t seed = 0;
};

int run_verify(const std::string& algebra_path, const std::string& r_path, double c,
               bool dump_structure, const CommonOpts& common) {
  const double scale = tolerance_scale();
  const auto algebra = load_algebra_file(algebra_path);

  json report;
  report["command"] = "verify";
  report["seed"] = common.seed;
  report["tolerance_scale"] = scale;
  report["algebra"] = {{"name", algebra->name()},
                       {"dim", algebra->dim()},
                       {"matrix_size", algebra->matrix_size()}};

  bool pass = true;
  json checks;
  {
    const double tol = 1e-12 * scale;
    const double jacobi = algebra->jacobi_residual();
    checks["algebra_jacobi"] = check_entry(jacobi, tol, jacobi <= tol);
    pass = pass && jacobi <= tol;
  }

  if (dump_structure) {
    json c_tensor = json::array();
    for (const auto& ck : algebra->structure()) c_tensor.push_back(matrix_to_json(ck));
    report["structure_constants"] = std::move(c_tensor);
    report["pairing_gram"] = matrix_to_json(algebra->gram());
  }

  if (!r_path.empty()) {
    const auto r = load_r_endomorphism_file(r_path, algebra);
    report["c"] = c;

    const auto mcybe = mcybe_residual(r, c);
    const double mcybe_tol = 1e-12 * scale;
    checks["mcybe"] = check_entry(mcybe.max_residual, mcybe_tol,
                                  mcybe.max_residual <= mcybe_tol);
    checks["mcybe"]["worst_pair"] = {mcybe.worst_pair[0], mcybe.worst_pair[1]};
    pass = pass && mcybe.max_residual <= mcybe_tol;

    const double jacobi = jacobi_residual_r(r);
    const double jacobi_tol = 1e-12 * scale;
    checks["jacobi"] = check_entry(jacobi, jacobi_tol, jacobi <= jacobi_tol);
    pass = pass && jacobi <= jacobi_tol;

    if (algebra->gram_invertible()) {
      const double skew_res = skew_adjoint_residual(r);
      checks["skew_adjoint"] = {{"value", skew_res}, {"is_skew", is_skew_adjoint(r)}};
    }

    // involution of the spectral invariants at seeded random states
    const int casimirs = algebra->matrix_size() - 1;
    if (casimirs >= 2) {
      std::vector<PolynomialObservable> hams;
      for (int l = 1; l <= casimirs; ++l)
        hams.push_back(PolynomialObservable::trace_power(l));
      const double inv = involution_scan(r, hams, 50, common.seed);
      const double inv_tol = 1e-9 * scale;
      checks["involution"] = check_entry(inv, inv_tol, inv <= inv_tol);
      checks["involution"]["samples"] = 50;
      pass = pass && inv <= inv_tol;
    }
  }

  report["checks"] = std::move(checks);
  report["pass"] = pass;
  emit(report, common.out);
  return pass ? 0 : 1;
}

int run_verify_bialgebra(const std::string& algebra_path, const std::string& r_path,
                         const CommonOpts& common) {
  const double scale = tolerance_scale();
  const auto algebra = load_algebra_file(algebra_path);
  const auto r = load_tensor_r_file(r_path, algebra);

  const auto rep = classify(r);
  json report;
  report["command"] = "verify-bialgebra";
  report["seed"] = common.seed;
  report["tolerance_scale"] = scale;
  report["algebra"] = {{"name", algebra->name()},
                       {"dim", algebra->dim()},
                       {"matrix_size", algebra->matrix_size()}};

  bool pass = true;
  json checks;
  const double sym_tol = 1e-8 * scale;
  checks["sym_ad_invariance"] =
      check_entry(rep.sym_invariance, sym_tol, rep.sym_invariance <= sym_tol);
  pass = pass && rep.sym_invariance <= sym_tol;

  checks["schouten_norm"] = {{"value", rep.schouten_norm}};
  checks["rr_norm"] = {{"value", rep.rr_norm}};

  const double cocycle_tol = 1e-10 * scale;
  const double cocycle = cocycle_condition_residual(r);
  checks["cocycle_condition"] = check_entry(cocycle, cocycle_tol, cocycle <= cocycle_tol);
  pass = pass && cocycle <= cocycle_tol;

  if (rep.sym_invariance <= sym_tol) {
    const double gap = (cybe_tensor(r) - rr_bracket(r)).max_abs();
    const double gap_tol = 1e-12 * scale;
    checks["cybe_matches_rr"] = check_entry(gap, gap_tol, gap <= gap_tol);
    pass = pass && gap <= gap_tol;
  }

  report["checks"] = std::move(checks);
  report["classification"] = to_string(rep.classification);
  pass = pass && rep.classification != RClass::None;
  report["pass"] = pass;
  emit(report, common.out);
  return pass ? 0 : 1;
}

int run_factorise(const std::string& matrix_path, const std::string& kind,
                  const CommonOpts& common) {
  const double scale = tolerance_scale();
  const Eigen::MatrixXd g = load_matrix_file(matrix_path);
  const auto f = (kind == "qr") ? factor_qr(g) : factor_ldu(g);

  const double tol = 1e-11 * scale;
  json report;
  report["command"] = "factorise";
  report["kind"] = kind;
  report["g_plus"] = matrix_to_json(f.g_plus);
  report["g_minus"] = matrix_to_json(f.g_minus);
  report["residual"] = check_entry(f.residual, tol, f.residual <= tol);
  report["pass"] = f.residual <= tol;
  emit(report, common.out);
  return f.residual <= tol ? 0 : 1;
}

json conservation_json(const Trajectory& traj, double scale) {
  const auto rep = conservation_report(traj);
  json out;
  out["eigenvalue_drift"] = check_entry(rep.eigenvalue_drift, 1e-8 * scale,
                                        rep.eigenvalue_drift <= 1e-8 * scale);
  json drifts = json::array();
  for (int k = 0; k < rep.invariant_drift.size(); ++k)
    drifts.push_back(check_entry(rep.invariant_drift[k], 1e-8 * scale,
                                 rep.invariant_drift[k] <= 1e-8 * scale));
  out["invariant_drift"] = std::move(drifts);
  return out;
}

bool conservation_ok(const Trajectory& traj, double scale) {
  const auto rep = conservation_report(traj);
  return rep.eigenvalue_drift <= 1e-8 * scale &&
         rep.invariant_drift.maxCoeff() <= 1e-8 * scale;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  const int sites = traj.algebra->matrix_size();
  std::string csv = "t";
  for (int i = 1; i <= sites; ++i) csv += ",a_" + std::to_string(i);
  for (int i = 1; i + 1 <= sites; ++i) csv += ",b_" + std::to_string(i);
  csv += ",H1,H2";
  for (int i = 1; i <= sites; ++i) csv += ",eig_" + std::to_string(i);
  csv += "\n";
  for (size_t row = 0; row < traj.times.size(); ++row) {
    csv += format_double(traj.times[row]);
    const auto chain = chain_from_lax(traj.states[row]);
    for (int i = 0; i < sites; ++i) csv += "," + format_double(chain.a[i]);
    for (int i = 0; i + 1 < sites; ++i) csv += "," + format_double(chain.b[i]);
    const Eigen::MatrixXd& m = traj.states[row];
    csv += "," + format_double((m * m).trace() / 2.0);
    csv += "," + format_double((m * m * m).trace() / 3.0);
    const Eigen::VectorXcd ev = traj.eigenvalues[row];
    for (int i = 0; i < ev.size(); ++i) csv += "," + format_double(ev[i].real());
    csv += "\n";
  }
  atomic_write_file(path, csv);
}

Trajectory run_open_flow(int n, std::vector<double> a, std::vector<double> b, double dt,
                         double t_end, int record_every) {
  if (a.empty()) a.assign(n + 1, 0.0);
  if (b.empty()) b.assign(n, 1.0);
  if (static_cast<int>(a.size()) != n + 1 || static_cast<int>(b.size()) != n)
    throw ParseError("--a needs n+1 entries and --b needs n entries");
  OpenTodaSystem sys(n);
  TodaChain chain{Eigen::Map<Eigen::VectorXd>(a.data(), a.size()),
                  Eigen::Map<Eigen::VectorXd>(b.data(), b.size())};
  IntegratorConfig config;
  config.step = dt;
  config.t_end = t_end;
  config.record_every = record_every;
  return integrate(sys.r(), sys.hamiltonian(), sys.element(chain), config);
}

int run_flow(int n, std::vector<double> a, std::vector<double> b, double dt, double t_end,
             int record_every, const std::string& csv_out, const CommonOpts& common) {
  const double scale = tolerance_scale();
  const auto traj = run_open_flow(n, std::move(a), std::move(b), dt, t_end, record_every);
  if (!csv_out.empty()) write_trajectory_csv(traj, csv_out);
  else write_trajectory_csv(traj, "trajectory.csv");

  json report;
  report["command"] = "flow";
  report["system"] = "toda";
  report["seed"] = common.seed;
  report["n"] = n;
  report["dt"] = dt;
  report["t_end"] = t_end;
  report["convention"] = "dL/dt = [L, M_plus(L)] with M_plus = (R + I)/2 applied to "
                         "grad H; reproduces the Flaschka equations";
  report["records"] = traj.times.size();
  report["conservation"] = conservation_json(traj, scale);
  const bool pass = conservation_ok(traj, scale);
  report["pass"] = pass;
  emit(report, common.out);
  return pass ? 0 : 1;
}

int run_compare(int n, double dt, double t_end, const CommonOpts& common) {
  const double scale = tolerance_scale();
  OpenTodaSystem sys(n);
  TodaChain chain;
  chain.a = Eigen::VectorXd::Zero(n + 1);
  chain.b = Eigen::VectorXd::Ones(n);
  const auto l0 = sys.element(chain);

  IntegratorConfig config;
  config.step = dt;
  config.t_end = t_end;
  config.record_every = 1 << 20;
  const auto traj = integrate(sys.r(), sys.hamiltonian(), l0, config);
  const auto exact = propagate(l0, sys.hamiltonian(), t_end, SplitKind::QR);

  const double gap = (traj.states.back() - exact.state.matrix()).norm();
  json report;
  report["command"] = "compare";
  report["system"] = "toda";
  report["n"] = n;
  report["dt"] = dt;
  report["t_end"] = t_end;
  report["max_difference"] = check_entry(gap, 1e-6 * scale, gap <= 1e-6 * scale);
  report["factorisation_path_gap"] =
      check_entry(exact.path_gap, 1e-9 * scale, exact.path_gap <= 1e-9 * scale);
  const bool pass = gap <= 1e-6 * scale && exact.path_gap <= 1e-9 * scale;
  report["pass"] = pass;
  emit(report, common.out);
  return pass ? 0 : 1;
}

int run_toda(const std::string& variant, int n, std::vector<double> a,
             std::vector<double> b, std::vector<double> eta, std::vector<double> wplus,
             std::vector<double> wminus, double dt, double t_end, int record_every,
             const CommonOpts& common) {
  const double scale = tolerance_scale();
  json report;
  report["command"] = "toda";
  report["variant"] = variant;
  report["seed"] = common.seed;
  report["dt"] = dt;
  report["t_end"] = t_end;

  bool pass = true;
  json states = json::array();

  if (variant == "open" || variant == "cartan") {
    Trajectory traj;
    if (variant == "open") {
      traj = run_open_flow(n, std::move(a), std::move(b), dt, t_end, record_every);
    } else {
      if (static_cast<int>(eta.size()) != n + 1)
        throw ParseError("--eta needs n+1 entries");
      if (static_cast<int>(wplus.size()) != n || static_cast<int>(wminus.size()) != n)
        throw ParseError("--wplus/--wminus need n entries (first off-diagonals)");
      CartanCoordinates coords;
      coords.eta = Eigen::Map<Eigen::VectorXd>(eta.data(), eta.size());
      coords.omega_plus = Eigen::MatrixXd::Zero(n + 1, n + 1);
      coords.omega_minus = Eigen::MatrixXd::Zero(n + 1, n + 1);
      for (int i = 0; i < n; ++i) {
        coords.omega_plus(i, i + 1) = wplus[i];
        coords.omega_minus(i + 1, i) = wminus[i];
      }
      const auto chain = cartan_to_flaschka(coords);
      CartanTodaSystem cartan_sys(n);
      report["orbit_consistency"] =
          (cartan_sys.orbit_matrix(coords) - lax_from_flaschka(chain)).norm();
      std::vector<double> av(chain.a.data(), chain.a.data() + chain.a.size());
      std::vector<double> bv(chain.b.data(), chain.b.data() + chain.b.size());
      traj = run_open_flow(n, av, bv, dt, t_end, record_every);
    }
    for (size_t i = 0; i < traj.times.size(); ++i) {
      const auto chain = chain_from_lax(traj.states[i]);
      states.push_back({{"t", traj.times[i]},
                        {"a", vector_to_json(chain.a)},
                        {"b", vector_to_json(chain.b)}});
    }
    report["conservation"] = conservation_json(traj, scale);
    pass = conservation_ok(traj, scale);
  } else if (variant == "periodic") {
    if (a.empty()) a.assign(n, 1.0);
    if (b.empty()) b.assign(n, 0.0);
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
      throw ParseError("--a and --b need n entries for the periodic lattice");
    ShiftLattice lat{Eigen::Map<Eigen::VectorXd>(a.data(), a.size()),
                     Eigen::Map<Eigen::VectorXd>(b.data(), b.size())};
    IntegratorConfig config;
    config.step = dt;
    config.t_end = t_end;
    config.record_every = record_every;
    const auto traj = integrate_bm(lat, config);

    auto powers = [](const ShiftLattice& s) {
      const Eigen::MatrixXd l = bm_lax_matrix(s);
      Eigen::Vector3d out;
      out << l.trace(), (l * l).trace(), (l * l * l).trace();
      return out;
    };
    const Eigen::Vector3d ref = powers(lat);
    double drift = 0.0;
    for (size_t i = 0; i < traj.times.size(); ++i) {
      states.push_back({{"t", traj.times[i]},
                        {"a", vector_to_json(traj.states[i].a)},
                        {"b", vector_to_json(traj.states[i].b)}});
      drift = std::max(drift, (powers(traj.states[i]) - ref).cwiseAbs().maxCoeff());
    }
    report["trace_power_drift"] = check_entry(drift, 1e-8 * scale, drift <= 1e-8 * scale);
    pass = drift <= 1e-8 * scale;
  } else {
    throw ParseError("unknown variant '" + variant + "'");
  }

  report["states"] = std::move(states);
  report["pass"] = pass;
  emit(report, common.out);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classical r-matrix toolkit: Yang-Baxter verification and Lax flows"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string algebra_path, r_path, matrix_path, kind = "qr", system = "toda", csv_out;
  std::string variant = "open";
  double c = 1.0, dt = 1e-3, t_end = 1.0;
  int n = 2, record_every = 1;
  bool dump_structure = false;
  std::vector<double> a, b, eta, wplus, wminus;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", common.out, "write the JSON report here (default: stdout)");
    cmd->add_option("--seed", common.seed, "seed for random scans");
  };

  auto* verify = app.add_subcommand("verify", "check an R-endomorphism on an algebra");
  verify->add_option("--algebra", algebra_path, "algebra JSON file")->required();
  verify->add_option("--r-matrix", r_path, "R-endomorphism JSON file");
  verify->add_option("--c", c, "mCYBE constant (default 1)");
  verify->add_flag("--dump-structure", dump_structure, "include structure constants");
  add_common(verify);

  auto* vbi = app.add_subcommand("verify-bialgebra", "classify a tensor r-matrix");
  vbi->add_option("--algebra", algebra_path, "algebra JSON file")->required();
  vbi->add_option("--r", r_path, "tensor JSON file")->required();
  add_common(vbi);

  auto* fac = app.add_subcommand("factorise", "split a group element");
  fac->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  fac->add_option("--kind", kind, "qr or ldu")->check(CLI::IsMember({"qr", "ldu"}));
  add_common(fac);

  auto* flow = app.add_subcommand("flow", "integrate a Lax flow and emit CSV");
  flow->add_option("--system", system, "flow family")->check(CLI::IsMember({"toda"}));
  flow->add_option("--n", n, "number of off-diagonal sites")->required();
  flow->add_option("--a", a, "initial diagonal (n+1 values)")->delimiter(',');
  flow->add_option("--b", b, "initial off-diagonal (n values)")->delimiter(',');
  flow->add_option("--dt", dt, "integration step");
  flow->add_option("--t-end", t_end, "final time");
  flow->add_option("--record-every", record_every, "sampling stride");
  flow->add_option("--out,--csv", csv_out, "trajectory CSV path (default trajectory.csv)");
  flow->add_option("--report", common.out, "JSON report path (default: stdout)");
  flow->add_option("--seed", common.seed, "seed for random scans");

  auto* cmp = app.add_subcommand("compare", "RK4 versus the factorisation propagator");
  cmp->add_option("--system", system, "flow family")->check(CLI::IsMember({"toda"}));
  cmp->add_option("--n", n, "number of off-diagonal sites")->required();
  cmp->add_option("--dt", dt, "integration step");
  cmp->add_option("--t-end", t_end, "final time");
  add_common(cmp);

  auto* toda = app.add_subcommand("toda", "run one of the chain constructions");
  toda->add_option("--variant", variant, "open, cartan or periodic")
      ->check(CLI::IsMember({"open", "cartan", "periodic"}));
  toda->add_option("--n", n, "sites parameter (period for the periodic variant)")
      ->required();
  toda->add_option("--a", a, "initial a band")->delimiter(',');
  toda->add_option("--b", b, "initial b band")->delimiter(',');
  toda->add_option("--eta", eta, "diagonal group data (cartan)")->delimiter(',');
  toda->add_option("--wplus", wplus, "upper first off-diagonal (cartan)")->delimiter(',');
  toda->add_option("--wminus", wminus, "lower first off-diagonal (cartan)")
      ->delimiter(',');
  toda->add_option("--dt", dt, "integration step");
  toda->add_option("--t-end", t_end, "final time");
  toda->add_option("--record-every", record_every, "sampling stride");
  add_common(toda);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed())
      return run_verify(algebra_path, r_path, c, dump_structure, common);
    if (vbi->parsed()) return run_verify_bialgebra(algebra_path, r_path, common);
    if (fac->parsed()) return run_factorise(matrix_path, kind, common);
    if (flow->parsed())
      return run_flow(n, a, b, dt, t_end, record_every, csv_out, common);
    if (cmp->parsed()) return run_compare(n, dt, t_end, common);
    if (toda->parsed())
      return run_toda(variant, n, a, b, eta, wplus, wminus, dt, t_end, record_every,
                      common);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
