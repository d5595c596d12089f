#include "ucilab/experiment.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "ucilab/barrier.hpp"
#include "ucilab/bounce.hpp"
#include "ucilab/comparison.hpp"
#include "ucilab/csv.hpp"
#include "ucilab/harmonics.hpp"
#include "ucilab/spectral.hpp"

namespace fs = std::filesystem;

namespace ucilab {

namespace {

struct Report {
  std::vector<std::string> lines;
  bool any_fail = false;

  void pass(const std::string& s) { lines.push_back("[PASS] " + s); }
  void fail(const std::string& s) {
    lines.push_back("[FAIL] " + s);
    any_fail = true;
  }
  void info(const std::string& s) { lines.push_back("[INFO] " + s); }
  void check(bool ok, const std::string& s) { ok ? pass(s) : fail(s); }

  void write(const std::string& dir) const {
    std::ofstream out(dir + "/report.txt", std::ios::binary);
    for (const auto& l : lines) out << l << "\n";
  }
};

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

bool wants_gnuplot(const ExperimentConfig& cfg) {
  return cfg.get_string("output.formats", "csv").find("gnuplot") != std::string::npos;
}

std::mt19937_64 entry_rng(std::uint64_t seed) {
  return std::mt19937_64(seed ^ 0x9e3779b97f4a7c15ULL);
}

double field_kappa(const CoefficientField1D& field, int grid_n) {
  const SupRatios sr = sup_ratios(field, grid_n);
  return sharp_rate(sr.beta, sr.gamma).kappa;
}

void cmd_rates(const ExperimentConfig& cfg, const std::string& dir, Report& rep) {
  const CoefficientField1D field = field_from_config(cfg);
  const int grid_n = cfg.get_int("run.grid_n", 4096);
  const SupRatios sr = sup_ratios(field, grid_n);
  const RateReport rate = sharp_rate(sr.beta, sr.gamma);
  const double x_tail = cfg.get_double("run.x_tail", default_tail_start(field.window()));
  const TailThresholds tt = threshold_tail(field, x_tail, grid_n);

  CsvWriter csv(dir + "/rates.csv",
                {"beta", "gamma", "kappa", "lambda", "case", "kappa_limsup", "kappa_abg"});
  csv.row({fmt17(sr.beta), fmt17(sr.gamma), fmt17(rate.kappa), fmt17(rate.lambda),
           to_string(rate.discriminant), fmt17(tt.kappa_limsup), fmt17(tt.kappa_abg)});
  rep.info("rates: kappa = " + fmt17(rate.kappa) + " (" + to_string(rate.discriminant) + ")");
  rep.check(tt.kappa_abg >= tt.kappa_limsup - 1e-14,
            "threshold ordering kappa_abg >= kappa_limsup");
}

void cmd_solve(const ExperimentConfig& cfg, const std::string& dir, Report& rep) {
  const CoefficientField1D field = field_from_config(cfg);
  const Interval w = field.window();
  const double x0 = cfg.get_double("run.x0", w.lo);
  const double u0 = cfg.get_double("run.u0", 1.0);
  const double du0 = cfg.get_double("run.du0", -1.0);
  const double x_end = cfg.get_double("run.x_end", w.hi);
  const double tol = cfg.get_double("run.tol", 1e-10);
  const Trajectory traj = solve_linear_ivp(field, x0, u0, du0, x_end, tol);
  const double kappa =
      cfg.get_double("run.kappa", field_kappa(field, cfg.get_int("run.grid_n", 4096)));
  const EnvelopeReport env = envelope(traj, kappa);

  CsvWriter csv(dir + "/trajectory.csv", {"x", "u", "du", "env"});
  for (std::size_t i = 0; i < traj.size(); ++i)
    csv.row_numeric({traj.grid()[i], traj.u()[i], traj.du()[i], env.samples[i].second});
  if (wants_gnuplot(cfg)) write_series(dir + "/envelope.dat", env.samples);

  rep.info("solve: " + std::to_string(traj.size()) + " nodes, kappa = " + fmt17(kappa) +
           ", sup env = " + fmt17(env.sup_env) + " at x = " + fmt17(env.argmax));
  rep.info("solve: max relative residual = " + fmt17(max_relative_residual(traj, field)));
}

void cmd_bounce(const ExperimentConfig& cfg, const std::string& dir, Report& rep) {
  const CoefficientField1D field = field_from_config(cfg);
  const double kappa =
      cfg.get_double("run.kappa", field_kappa(field, cfg.get_int("run.grid_n", 4096)));
  if (!(kappa > 0.0)) throw KappaZero("bounce: field has kappa = 0");
  const double x_bar = cfg.get_double("run.x_bar", field.window().lo);
  const double u0 = cfg.get_double("run.u0", 1.0);
  const double du0 = cfg.get_double("run.du0", -(kappa + 0.5) * u0);
  const double max_h = cfg.get_double("run.max_h", 10.0 / kappa);
  const double tol = cfg.get_double("run.tol", 1e-10);

  const BounceWitness w = find_bounce(field, x_bar, u0, du0, kappa, max_h, tol);
  CsvWriter csv(dir + "/bounce.csv", {"x_bar", "x_tilde", "h", "ratio", "kappa"});
  csv.row_numeric({w.x_bar, w.x_tilde, w.h, w.ratio, kappa});
  rep.pass("bounce: h = " + fmt17(w.h) + ", first zero at " + fmt17(w.x_tilde) + ", margin " +
           fmt17(w.ratio));
}

void cmd_uci_check(const ExperimentConfig& cfg, const std::string& dir, Report& rep) {
  const int n = cfg.get_int("run.seeds", 1);
  const int workers = cfg.get_int("run.workers", 4);
  const double tol = cfg.get_double("run.tol", 1e-10);
  const double tol_thm = cfg.get_double("run.tol_thm", 1e-2);
  const double du0_lo = cfg.get_double("run.du0_lo", -5.0);
  const double du0_hi = cfg.get_double("run.du0_hi", 0.0);
  std::vector<double> x0_list = cfg.get_list("run.x0_list");
  if (x0_list.empty()) x0_list = {1.0, 5.0, 10.0};
  const std::uint64_t base_seed = cfg.get_u64("field.seed", 0);
  const std::string profile = cfg.get_string("field.profile", "smooth_random");
  const ParamMap params = cfg.field_params();

  struct Row {
    std::uint64_t seed;
    double x0;
    UciReport r;
  };
  std::vector<std::vector<Row>> rows(static_cast<std::size_t>(n));

  parallel_for(n, workers, [&](int i) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
    const CoefficientField1D field = make_profile(profile, params, seed);
    auto rng = entry_rng(seed);
    const double du0 = uniform(rng, du0_lo, du0_hi);
    const Interval w = field.window();
    const Trajectory traj = solve_linear_ivp(field, w.lo, 1.0, du0, w.hi, tol);
    for (double x0 : x0_list) {
      if (!(x0 > w.lo) || !(x0 < w.hi)) continue;
      rows[static_cast<std::size_t>(i)].push_back({seed, x0, verify_uci(field, traj, x0, tol_thm)});
    }
  });

  CsvWriter csv(dir + "/uci_check.csv",
                {"seed", "x0", "beta", "gamma", "kappa", "sup_env", "lower_bound", "pass"});
  int failures = 0, total = 0;
  for (const auto& entry : rows)
    for (const auto& row : entry) {
      ++total;
      if (!row.r.pass) ++failures;
      csv.row({std::to_string(row.seed), fmt17(row.x0), fmt17(row.r.beta), fmt17(row.r.gamma),
               fmt17(row.r.kappa), fmt17(row.r.sup_env_after_x0), fmt17(row.r.lower_bound),
               row.r.pass ? "1" : "0"});
    }
  rep.check(failures == 0, "uci-check: " + std::to_string(total - failures) + "/" +
                               std::to_string(total) + " envelope checks passed across " +
                               std::to_string(n) + " fields");
}

void cmd_dense_scan(const ExperimentConfig& cfg, const std::string& dir, Report& rep) {
  const int n = cfg.get_int("run.seeds", 1);
  const int workers = cfg.get_int("run.workers", 4);
  const double tol = cfg.get_double("run.tol", 1e-10);
  const double du0_lo = cfg.get_double("run.du0_lo", -5.0);
  const double du0_hi = cfg.get_double("run.du0_hi", 0.0);
  const std::uint64_t base_seed = cfg.get_u64("field.seed", 0);
  const std::string profile = cfg.get_string("field.profile", "smooth_random");
  const ParamMap params = cfg.field_params();
  const int grid_n = cfg.get_int("run.grid_n", 4096);

  struct Row {
    std::uint64_t seed;
    double kappa, kappa_prime, max_gap;
    std::size_t gap_count;
  };
  std::vector<Row> rows(static_cast<std::size_t>(n));

  parallel_for(n, workers, [&](int i) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
    const CoefficientField1D field = make_profile(profile, params, seed);
    auto rng = entry_rng(seed);
    const double du0 = uniform(rng, du0_lo, du0_hi);
    const Interval w = field.window();
    const Trajectory traj = solve_linear_ivp(field, w.lo, 1.0, du0, w.hi, tol);
    const double kappa = field_kappa(field, grid_n);
    const double kappa_prime = cfg.get_double("run.kappa_prime", 1.1 * kappa);
    const GapScan scan = dense_gap_scan(traj, kappa_prime);
    rows[static_cast<std::size_t>(i)] = {seed, kappa, kappa_prime, scan.max_gap,
                                         scan.gaps.size()};
  });

  CsvWriter csv(dir + "/dense_scan.csv", {"seed", "kappa", "kappa_prime", "max_gap", "gap_count"});
  double h_emp = 0.0;
  for (const auto& r : rows) {
    h_emp = std::max(h_emp, r.max_gap);
    csv.row({std::to_string(r.seed), fmt17(r.kappa), fmt17(r.kappa_prime), fmt17(r.max_gap),
             std::to_string(r.gap_count)});
  }
  CsvWriter summary(dir + "/dense_scan_summary.csv", {"h_emp", "entries"});
  summary.row({fmt17(h_emp), std::to_string(n)});
  rep.info("dense-scan: empirical gap bound h_emp = " + fmt17(h_emp) + " over " +
           std::to_string(n) + " fields");
}

void cmd_eigen(const ExperimentConfig& cfg, const std::string& dir, Report& rep) {
  const CoefficientField1D field = field_from_config(cfg);
  std::vector<double> radii = cfg.get_list("run.radii");
  if (radii.empty()) radii = {5.0, 10.0, 20.0, 40.0};
  std::vector<double> usable;
  for (double L : radii)
    if (field.window().lo + L <= field.window().hi) usable.push_back(L);
  if (usable.size() < 2) throw Error("eigen: need at least two radii inside the field window");
  const double density = cfg.get_double("run.mesh_density", 64.0);

  const EigenEstimate est = generalized_lambda1(field, usable, density);
  CsvWriter csv(dir + "/eigen.csv", {"radius", "lambda"});
  for (std::size_t i = 0; i < est.radii.size(); ++i)
    csv.row_numeric({est.radii[i], est.lambdas[i]});
  CsvWriter summary(dir + "/eigen_summary.csv", {"lambda_inf", "err_est"});
  summary.row_numeric({est.lambda_inf, est.err_est});

  rep.info("eigen: lambda_inf = " + fmt17(est.lambda_inf) + " +- " + fmt17(est.err_est));
  if (!est.lambda_nonneg)
    rep.info("eigen: lambda_1 < 0 -- sign-hypothesis theorems not applicable to this field");
}

void cmd_harmonics(const ExperimentConfig& cfg, const std::string& dir, Report& rep) {
  const int n_dim = cfg.get_int("run.n_dim", 3);
  const int band = cfg.get_int("run.band", 4);
  const int nr = cfg.get_int("run.nr", 65);
  const double tol = cfg.get_double("run.tol", 1e-10);
  const CoefficientField1D radial = field_from_config(cfg);
  const Interval w{std::max(cfg.get_double("run.r_lo", radial.window().lo), 1e-9),
                   cfg.get_double("run.r_hi", radial.window().hi)};
  const std::uint64_t seed = cfg.get_u64("field.seed", 0);

  const AngularQuadrature quad = AngularQuadrature::make(n_dim, band);
  const auto basis = harmonic_basis(quad, band);
  const auto r_grid = linspace(w.lo, w.hi, nr);

  // Synthetic band-limited solution: every mode is an actual 1D solve of its
  // own mode equation, so the decomposition should return it exactly.
  std::vector<std::vector<double>> u_modes_true(basis.size());
  auto rng = entry_rng(seed);
  for (std::size_t jm = 0; jm < basis.size(); ++jm) {
    const CoefficientField1D fj = mode_field(n_dim, basis[jm].lambda, radial);
    const double u0 = uniform(rng, 0.3, 1.0) * (uniform01(rng) < 0.5 ? -1.0 : 1.0);
    const double du0 = uniform(rng, -2.0, 0.0);
    const Trajectory traj = solve_linear_ivp(fj, w.lo, u0, du0, w.hi, tol);
    auto& samples = u_modes_true[jm];
    samples.resize(r_grid.size());
    for (std::size_t ir = 0; ir < r_grid.size(); ++ir) samples[ir] = traj.eval_u(r_grid[ir]);
  }
  std::vector<std::vector<double>> u(r_grid.size(), std::vector<double>(quad.size(), 0.0));
  for (std::size_t jm = 0; jm < basis.size(); ++jm)
    for (std::size_t ir = 0; ir < r_grid.size(); ++ir)
      for (std::size_t k = 0; k < quad.size(); ++k)
        u[ir][k] += u_modes_true[jm][ir] * basis[jm].phi[k];

  const SphericalModeSet set = decompose(u, r_grid, quad, band);

  double mode_err = 0.0;
  for (std::size_t jm = 0; jm < basis.size(); ++jm)
    for (std::size_t ir = 0; ir < r_grid.size(); ++ir)
      mode_err = std::max(mode_err, std::abs(set.u_modes[jm][ir] - u_modes_true[jm][ir]));
  const auto u_back = reconstruct(set);
  double recon_err = 0.0;
  for (std::size_t ir = 0; ir < r_grid.size(); ++ir)
    for (std::size_t k = 0; k < quad.size(); ++k)
      recon_err = std::max(recon_err, std::abs(u_back[ir][k] - u[ir][k]));

  double gram_err = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a; b < basis.size(); ++b) {
      double dot = 0.0;
      for (std::size_t k = 0; k < quad.size(); ++k)
        dot += quad.nodes()[k].weight * basis[a].phi[k] * basis[b].phi[k];
      gram_err = std::max(gram_err, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }

  CsvWriter csv(dir + "/harmonics.csv", {"j", "lambda_j", "r", "u_j"});
  for (std::size_t jm = 0; jm < set.modes.size(); ++jm)
    for (std::size_t ir = 0; ir < r_grid.size(); ++ir)
      csv.row({std::to_string(set.modes[jm].j), fmt17(set.modes[jm].lambda), fmt17(r_grid[ir]),
               fmt17(set.u_modes[jm][ir])});
  if (wants_gnuplot(cfg)) {
    std::vector<std::pair<double, double>> series;
    for (std::size_t ir = 0; ir < r_grid.size(); ++ir)
      series.emplace_back(r_grid[ir], set.u_modes[0][ir]);
    write_series(dir + "/mode1.dat", series);
  }

  rep.check(mode_err <= 1e-8, "harmonics: decompose returns the synthesized modes (err = " +
                                  fmt17(mode_err) + ")");
  rep.check(recon_err <= 1e-8,
            "harmonics: reconstruct(decompose(u)) == u (err = " + fmt17(recon_err) + ")");
  rep.check(gram_err <= 1e-10, "harmonics: Gram matrix within 1e-10 of identity (err = " +
                                   fmt17(gram_err) + ")");

  const TailThresholds tt = threshold_tail(radial, default_tail_start(w));
  const double kappa = cfg.get_double("run.kappa", 1.2 * tt.kappa_limsup + 0.1);
  const RadialUciReport rr = verify_radial_uci(set, kappa, radial, r_grid[r_grid.size() / 4]);
  if (rr.flagged)
    rep.fail("harmonics: every retained mode decays past its theorem bound "
             "(falsification candidate or truncation artifact)");
  else
    rep.info(std::string("harmonics: per-mode UCI consistent (hypothesis ") +
             (rr.hypothesis_met ? "met" : "not met") + " at kappa = " + fmt17(kappa) + ")");
}

void cmd_barrier(const ExperimentConfig& cfg, const std::string& dir, Report& rep) {
  const CoefficientField1D base = field_from_config(cfg);
  const int n_dim = cfg.get_int("run.n_dim", 1);
  const double t_min = cfg.get_double("run.t_min", -1e7);
  const SpaceTimeField field = SpaceTimeField::stationary(n_dim, base, t_min);
  const double R1 = cfg.get_double("run.R1", std::max(base.window().lo, 1.0));
  const double kappa = cfg.get_double("run.kappa", 1.2 * field.tail_threshold(R1));

  Barrier barrier;
  if (cfg.has("run.R") && cfg.has("run.h") && cfg.has("run.delta")) {
    barrier.kappa = kappa;
    barrier.kappa_tilde = field.tail_threshold(R1);
    barrier.eps = kappa - barrier.kappa_tilde;
    barrier.C = (n_dim - 1.0) * field.bounds().alpha_sup;
    barrier.R = cfg.get_double("run.R", 0.0);
    barrier.h = cfg.get_double("run.h", 0.0);
    barrier.delta = cfg.get_double("run.delta", 0.0);
  } else {
    barrier = pick_parameters(field, kappa, R1);
  }
  rep.info("barrier: R = " + fmt17(barrier.R) + ", h = " + fmt17(barrier.h) + ", delta = " +
           fmt17(barrier.delta) + ", admissibility = " +
           fmt17(barrier.admissibility(field.bounds().alpha_inf, field.bounds().alpha_sup)));
  if (barrier.h < 1.0 / barrier.kappa)
    rep.info("barrier: InvariantViolated warning -- h < 1/kappa, chi_rr changes sign");

  const int grid_nr = cfg.get_int("run.grid_nr", 400);
  const int grid_nt = cfg.get_int("run.grid_nt", 400);
  const SubsolutionReport sub = verify_subsolution(field, barrier, grid_nr, grid_nt, true);
  CsvWriter csv(dir + "/barrier.csv", {"r", "t", "eta", "P_eta_residual"});
  for (const auto& s : sub.samples) csv.row_numeric({s[0], s[1], s[2], s[3]});
  rep.check(sub.pass, "barrier: P eta <= 0 on the " + std::to_string(grid_nr) + "x" +
                          std::to_string(grid_nt) + " grid (max residual " +
                          fmt17(sub.max_residual) + ")");

  std::vector<double> deltas = cfg.get_list("run.deltas");
  if (deltas.empty()) deltas = {1e-3, 5e-4, 2.5e-4};
  const auto r_values = linspace(0.0, 5.0, 21);
  const ChiLimitReport lim = chi_limit_check(barrier.kappa, r_values, deltas, barrier.h);
  rep.check(lim.decreasing, "barrier: chi -> exp(-kappa r) deviation decreasing in delta (last = " +
                                fmt17(lim.deviations.back()) + ")");
}

void cmd_demo_bessel(const ExperimentConfig& cfg, const std::string& dir, Report& rep) {
  const double tol = cfg.get_double("run.tol", 1e-12);
  // 1D sharp case: u'' = u with u(0) = 1, u'(0) = -1 decays exactly at the
  // threshold rate; its kappa = 1 envelope is constant.
  const CoefficientField1D f1 = constant_field(1.0, 0.0, -1.0, {0.0, 10.0});
  const Trajectory t1 = solve_linear_ivp(f1, 0.0, 1.0, -1.0, 10.0, tol);
  // N = 3 radial solution of Delta u = u outside the unit ball: e^{-r}/r.
  const CoefficientField1D f3 =
      make_profile("radial_bessel_like", {{"n_dim", 3.0}, {"x_lo", 1.0}, {"x_hi", 10.0}});
  const double e1 = std::exp(-1.0);
  const Trajectory t3 = solve_linear_ivp(f3, 1.0, e1, -2.0 * e1, 10.0, tol);

  const auto rs = linspace(1.0, 10.0, 181);
  CsvWriter csv(dir + "/bessel_demo.csv", {"r", "env_1d", "env_3d"});
  std::vector<std::pair<double, double>> s1, s3;
  for (double r : rs) {
    const double env1 = std::abs(t1.eval_u(r)) * std::exp(r);
    const double env3 = std::abs(t3.eval_u(r)) * std::exp(r);
    csv.row_numeric({r, env1, env3});
    s1.emplace_back(r, env1);
    s3.emplace_back(r, env3);
  }
  write_series(dir + "/envelope_1d.dat", s1);
  write_series(dir + "/envelope_3d.dat", s3);

  const double env3_end = std::abs(t3.eval_u(10.0)) * std::exp(10.0);
  rep.info("demo-bessel: 1D envelope stays at " + fmt17(std::abs(t1.eval_u(10.0)) * std::exp(10.0)));
  rep.info("demo-bessel: 3D envelope falls to " + fmt17(env3_end) + " at r = 10");
  rep.check(env3_end < 0.5, "demo-bessel: the N = 3 envelope collapses while the 1D one is flat");
}

} // namespace

CoefficientField1D field_from_config(const ExperimentConfig& cfg) {
  const std::string profile = cfg.get_string("field.profile", "constant");
  return make_profile(profile, cfg.field_params(), cfg.get_u64("field.seed", 0));
}

int run(const ExperimentConfig& cfg) {
  Report rep;
  const std::string dir = cfg.get_string("output.dir", "out");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory '" << dir << "'\n";
    return kExitError;
  }

  int code = kExitPass;
  try {
    const std::string cmd = cfg.get_string("run.command", "");
    if (cmd == "rates")
      cmd_rates(cfg, dir, rep);
    else if (cmd == "solve")
      cmd_solve(cfg, dir, rep);
    else if (cmd == "bounce")
      cmd_bounce(cfg, dir, rep);
    else if (cmd == "uci-check")
      cmd_uci_check(cfg, dir, rep);
    else if (cmd == "dense-scan")
      cmd_dense_scan(cfg, dir, rep);
    else if (cmd == "eigen")
      cmd_eigen(cfg, dir, rep);
    else if (cmd == "harmonics")
      cmd_harmonics(cfg, dir, rep);
    else if (cmd == "barrier")
      cmd_barrier(cfg, dir, rep);
    else if (cmd == "demo-bessel")
      cmd_demo_bessel(cfg, dir, rep);
    else
      throw ConfigParse("unknown run.command '" + cmd + "'");
    if (rep.any_fail) code = kExitFalsification;
  } catch (const FalsificationCandidate& e) {
    rep.fail(e.what());
    code = kExitFalsification;
  } catch (const std::exception& e) {
    rep.lines.push_back(std::string("[ERROR] ") + e.what());
    code = kExitError;
  }

  rep.write(dir);
  for (const auto& line : rep.lines) std::cout << line << "\n";
  return code;
}

} // namespace ucilab
