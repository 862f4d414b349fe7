// dkg: command-line front end for the verification suite and the solver.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dkg/bilinear_verifier.hpp"
#include "dkg/frequency_weights.hpp"
#include "dkg/region.hpp"
#include "dkg/solver.hpp"
#include "dkg/spacetime_norms.hpp"
#include "dkg/spinor.hpp"

using json = nlohmann::json;

namespace {

dkg::ExponentTuple parse_exps(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  if (v.size() != 6) throw CLI::ValidationError("--exps", "expected six comma-separated numbers a,b,c,alpha,beta,gamma");
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

json exps_json(const dkg::ExponentTuple& e) {
  return {{"a", e.a}, {"b", e.b}, {"c", e.c}, {"alpha", e.alpha}, {"beta", e.beta}, {"gamma", e.gamma}};
}

dkg::FamilyId family_or_throw(const std::string& name) {
  auto id = dkg::parse_family(name);
  if (!id) throw CLI::ValidationError("--family", "unknown family " + name);
  return *id;
}

int verify_spinor(std::size_t samples, std::uint64_t seed) {
  const auto res = dkg::run_spinor_self_test(samples, seed);
  json out{{"samples", res.samples}, {"passed", res.passed()}, {"checks", json::array()}};
  for (const auto& c : res.checks)
    out["checks"].push_back({{"name", c.name}, {"max_error", c.max_error}, {"tolerance", c.tolerance}, {"passed", c.passed()}});
  std::cout << out.dump(2) << "\n";
  return res.passed() ? 0 : 1;
}

int verify_lemma3(std::size_t samples, std::uint64_t seed) {
  const auto sw = dkg::sweep_lemma3(samples, seed);
  // The sum bound is reported unscaled; coordinates are at most 1e3 in size.
  const bool ok = sw.min_scaled_margin >= -1e-9 && sw.max_scaled_residual <= 1e-12 && sw.min_sum_bound_margin >= -1e-6;
  json out{{"samples", sw.samples},
           {"min_margin", sw.min_margin},
           {"max_margin", sw.max_margin},
           {"min_scaled_margin", sw.min_scaled_margin},
           {"max_scaled_residual", sw.max_scaled_residual},
           {"min_sum_bound_margin", sw.min_sum_bound_margin},
           {"passed", ok}};
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

int norms(const std::string& input, double a, double alpha, const std::string& flavor) {
  const auto u = dkg::load_grid_function(input);
  const auto u_hat = u.side() == dkg::Side::physical ? dkg::transform(u) : u;
  const dkg::NormIndex idx{a, alpha, dkg::parse_flavor(flavor)};
  json out{{"input", input}, {"flavor", std::string(dkg::to_string(idx.flavor))}, {"a", a}, {"alpha", alpha},
           {"norm", dkg::weighted_norm(u_hat, idx)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int counterexample(const std::string& family, const std::vector<double>& ladder, const std::string& exps,
                   const std::string& out_path) {
  const auto id = family_or_throw(family);
  const auto e = parse_exps(exps);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  out << "family,L,numerator,denom_u,denom_v,ratio\n";
  out.precision(17);
  for (double L : ladder) {
    const dkg::FamilyExperiment ex(id, L);
    const auto t = ex.evaluate(e);
    out << dkg::to_string(id) << ',' << L << ',' << t.numerator << ',' << t.denom_u << ',' << t.denom_v << ','
        << t.ratio() << '\n';
    std::cerr << dkg::to_string(id) << " L=" << L << " ratio=" << t.ratio() << "\n";
  }
  return 0;
}

int fit(const std::string& in_path, const std::string& exps) {
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open " + in_path);
  std::string line;
  std::getline(in, line);
  if (line.rfind("family,L,", 0) != 0) throw std::runtime_error(in_path + ": unexpected header");
  std::string family;
  std::vector<double> Ls, ratios;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw std::runtime_error(in_path + ": malformed row: " + line);
    if (family.empty()) family = cells[0];
    if (cells[0] != family) throw std::runtime_error(in_path + ": rows mix several families");
    Ls.push_back(std::stod(cells[1]));
    ratios.push_back(std::stod(cells[5]));
  }
  const auto id = family_or_throw(family);
  const auto e = parse_exps(exps);
  dkg::validate_ladder(Ls);
  const auto f = dkg::fit_log_log(Ls, ratios);
  const double predicted = -dkg::predicted_delta(id, e);
  const bool pass = std::abs(f.slope - predicted) <= dkg::kSlopeTolerance;
  json out{{"family", family}, {"exps", exps_json(e)}, {"slope", f.slope}, {"intercept", f.intercept},
           {"r_squared", f.r_squared}, {"predicted", predicted}, {"tolerance", dkg::kSlopeTolerance}, {"pass", pass}};
  std::cout << out.dump(2) << "\n";
  return pass ? 0 : 1;
}

int region(double s, double r, bool solve) {
  const dkg::RegionPoint p{s, r};
  json out{{"s", s},
           {"r", r},
           {"theorem1", dkg::in_theorem1_region(p)},
           {"pecher", dkg::in_pecher_region(p)},
           {"machihara", dkg::in_machihara_region(p)}};
  if (solve) {
    const auto res = dkg::choose_parameters(p);
    if (res.feasible()) {
      const auto& c = *res.choice;
      out["solve"] = {{"feasible", true}, {"sigma", c.sigma}, {"rho", c.rho}, {"eps", c.eps}};
    } else {
      out["solve"] = {{"feasible", false}, {"reasons", res.reasons}};
    }
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int region_grid(const std::string& out_path, int n) {
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  out << "s,r,theorem1,pecher,machihara\n";
  out.precision(17);
  long violations = 0, strict = 0;
  for (int i = 0; i < n; ++i) {
    const double s = -0.3 + 0.8 * i / (n - 1);
    for (int j = 1; j <= n; ++j) {
      const double r = 1.5 * j / n;
      const dkg::RegionPoint p{s, r};
      const bool t1 = dkg::in_theorem1_region(p), pe = dkg::in_pecher_region(p), ma = dkg::in_machihara_region(p);
      if ((pe || ma) && !t1) ++violations;
      if (t1 && !pe && !ma) ++strict;
      out << s << ',' << r << ',' << t1 << ',' << pe << ',' << ma << '\n';
    }
  }
  json summary{{"points", n * n}, {"containment_violations", violations}, {"theorem1_only", strict}};
  std::cout << summary.dump(2) << "\n";
  return violations == 0 ? 0 : 1;
}

struct SolveArgs {
  std::size_t n = 1024;
  double xbox = 64.0;
  std::string dt = "auto";
  double T = 1.0;
  double M = 1.0;
  double m = 1.0;
  std::string data = "smooth";
  double s = 0.0;
  double r = 0.0;
  std::uint64_t seed = 1;
  std::string out = "diag.csv";
  std::string snapshot;
  std::string splitting = "strang";
  int every = 1;
};

int solve(const SolveArgs& a) {
  const dkg::GridSpec1D grid{a.n, a.xbox};
  grid.validate();
  std::vector<dkg::Spinor> psi(a.n);
  std::vector<double> phi(a.n), phi_t(a.n);
  if (a.data == "smooth") {
    for (std::size_t j = 0; j < a.n; ++j) {
      const double x = grid.x(j);
      const double g = std::exp(-x * x);
      psi[j] = {g, dkg::cplx(0.0, 0.5) * g * x};
      phi[j] = 0.5 * std::exp(-0.5 * x * x);
    }
  } else if (a.data == "rough") {
    psi = dkg::rough_data(a.s, a.seed, grid);
    phi = dkg::rough_real_data(a.r, a.seed + 1, grid);
    phi_t = dkg::rough_real_data(a.r - 1.0, a.seed + 2, grid);
  } else {
    throw CLI::ValidationError("--data", "expected smooth or rough");
  }
  dkg::SolverConfig cfg;
  cfg.grid = grid;
  cfg.dt = a.dt == "auto" ? dkg::default_dt(grid) : std::stod(a.dt);
  cfg.t_end = a.T;
  cfg.splitting = a.splitting == "lie" ? dkg::Splitting::lie : dkg::Splitting::strang;
  cfg.diagnostics_every = a.every;
  cfg.s = a.s;
  cfg.r = a.r;
  auto st = dkg::init_state(psi, phi, phi_t, a.M, a.m, grid);
  std::ofstream out(a.out);
  if (!out) throw std::runtime_error("cannot open " + a.out);
  out.precision(17);
  out << "t,charge,hs_psi,hr_phi,kg_energy\n";
  try {
    const auto diags = dkg::run(cfg, st);
    for (const auto& d : diags)
      out << d.t << ',' << d.charge << ',' << d.hs_psi << ',' << d.hr_phi << ',' << d.kg_energy << '\n';
    const double drift = std::abs(diags.back().charge - diags.front().charge) / diags.front().charge;
    std::cout << json{{"steps_recorded", diags.size()}, {"t_end", st.t}, {"charge_drift", drift}}.dump(2) << "\n";
  } catch (const dkg::NonFiniteError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!a.snapshot.empty()) dkg::save_snapshot(a.snapshot, st);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac-Klein-Gordon verification suite and solver"};
  app.require_subcommand(1);
  int rc = 0;

  auto* verify = app.add_subcommand("verify", "property checks");
  verify->require_subcommand(1);
  std::size_t spinor_samples = 100000, lemma_samples = 1000000;
  std::uint64_t spinor_seed = 1, lemma_seed = 1;
  auto* v_spinor = verify->add_subcommand("spinor", "Dirac matrix, projection and null-form identities");
  v_spinor->add_option("--samples", spinor_samples);
  v_spinor->add_option("--seed", spinor_seed);
  v_spinor->callback([&] { rc = verify_spinor(spinor_samples, spinor_seed); });
  auto* v_lemma = verify->add_subcommand("lemma3", "hyperbolic weight inequality sweep");
  v_lemma->add_option("--samples", lemma_samples);
  v_lemma->add_option("--seed", lemma_seed);
  v_lemma->callback([&] { rc = verify_lemma3(lemma_samples, lemma_seed); });

  std::string norm_input, norm_flavor = "H";
  double norm_a = 0.0, norm_alpha = 0.0;
  auto* c_norms = app.add_subcommand("norms", "weighted space-time norm of a grid-function file");
  c_norms->add_option("--input", norm_input)->required()->check(CLI::ExistingFile);
  c_norms->add_option("--a", norm_a);
  c_norms->add_option("--alpha", norm_alpha);
  c_norms->add_option("--flavor", norm_flavor, "X_plus, X_minus or H");
  c_norms->callback([&] { rc = norms(norm_input, norm_a, norm_alpha, norm_flavor); });

  std::string ce_family, ce_exps = "0,0,0,0,0,0", ce_out = "ratios.csv";
  std::vector<double> ce_ladder{64, 128, 256, 512};
  auto* c_ce = app.add_subcommand("counterexample", "norm ratios of a counterexample family over a ladder of L");
  c_ce->add_option("--family", ce_family)->required();
  c_ce->add_option("--L", ce_ladder, "one or more scales");
  c_ce->add_option("--exps", ce_exps, "a,b,c,alpha,beta,gamma");
  c_ce->add_option("--out", ce_out);
  c_ce->callback([&] { rc = counterexample(ce_family, ce_ladder, ce_exps, ce_out); });

  std::string fit_in, fit_exps = "0,0,0,0,0,0";
  auto* c_fit = app.add_subcommand("fit", "log-log slope of a counterexample CSV against the predicted exponent");
  c_fit->add_option("--in", fit_in)->required()->check(CLI::ExistingFile);
  c_fit->add_option("--exps", fit_exps, "exponents used to produce the CSV");
  c_fit->callback([&] { rc = fit(fit_in, fit_exps); });

  double reg_s = 0.0, reg_r = 0.0;
  bool reg_solve = false;
  auto* c_region = app.add_subcommand("region", "region membership and parameter choice");
  c_region->add_option("--s", reg_s)->required();
  c_region->add_option("--r", reg_r)->required();
  c_region->add_flag("--solve", reg_solve);
  c_region->callback([&] { rc = region(reg_s, reg_r, reg_solve); });

  std::string grid_out = "grid.csv";
  int grid_n = 200;
  auto* c_grid = app.add_subcommand("region-grid", "containment sweep over (s, r)");
  c_grid->add_option("--out", grid_out);
  c_grid->add_option("--n", grid_n)->check(CLI::Range(2, 5000));
  c_grid->callback([&] { rc = region_grid(grid_out, grid_n); });

  SolveArgs sa;
  auto* c_solve = app.add_subcommand("solve", "split-step spectral solve");
  c_solve->add_option("--n", sa.n);
  c_solve->add_option("--xbox", sa.xbox);
  c_solve->add_option("--dt", sa.dt, "step size or auto (dx/2)");
  c_solve->add_option("--T", sa.T);
  c_solve->add_option("--M", sa.M);
  c_solve->add_option("--m", sa.m);
  c_solve->add_option("--data", sa.data)->check(CLI::IsMember({"smooth", "rough"}));
  c_solve->add_option("--s", sa.s);
  c_solve->add_option("--r", sa.r);
  c_solve->add_option("--seed", sa.seed);
  c_solve->add_option("--out", sa.out);
  c_solve->add_option("--snapshot", sa.snapshot, "prefix for final-state binary files");
  c_solve->add_option("--splitting", sa.splitting)->check(CLI::IsMember({"strang", "lie"}));
  c_solve->add_option("--every", sa.every, "diagnostics interval in steps")->check(CLI::PositiveNumber);
  c_solve->callback([&] { rc = solve(sa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
