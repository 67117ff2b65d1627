#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gplab/dynamics.hpp"
#include "gplab/field_io.hpp"
#include "gplab/functionals.hpp"
#include "gplab/modulation.hpp"
#include "gplab/perturbation.hpp"
#include "gplab/stability.hpp"
#include "gplab/suite.hpp"
#include "gplab/variational.hpp"
#include "gplab/winding.hpp"

namespace gplab {
namespace {

using OutDir = std::optional<std::filesystem::path>;

std::string label(double value) {
  std::ostringstream s;
  s.precision(6);
  s << value;
  return s.str();
}

class Recorder {
 public:
  explicit Recorder(std::string experiment) : result_{std::move(experiment), {}} {}

  /// measured <= threshold
  void at_most(const std::string& name, double measured, double threshold, int criterion) {
    add(name, measured <= threshold, measured, threshold, criterion);
  }
  /// measured >= threshold
  void at_least(const std::string& name, double measured, double threshold, int criterion) {
    add(name, measured >= threshold, measured, threshold, criterion);
  }
  void add(const std::string& name, bool passed, double measured, double threshold, int criterion) {
    result_.assertions.push_back(
        Assertion{result_.name + "/" + name, passed && std::isfinite(measured), measured, threshold,
                  criterion});
  }
  ExperimentResult take() { return std::move(result_); }

 private:
  ExperimentResult result_;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::ofstream open_output(const OutDir& dir, const std::string& file) {
  std::ofstream out(*dir / file);
  if (!out) throw std::runtime_error("cannot write " + (*dir / file).string());
  return out;
}

GridSpec grid_of(const Params& p) { return GridSpec::make(p.real("L"), p.count("N")); }

EvolveConfig evolve_config(const Params& p, double dt, double horizon, double radius) {
  EvolveConfig cfg;
  cfg.dt = dt;
  cfg.horizon = horizon;
  cfg.log_every = p.count("log_every");
  cfg.com_cutoff = radius;
  return cfg;
}

PerturbationSpec perturbation_of(const Params& p, double epsilon) {
  PerturbationSpec spec;
  spec.epsilon = epsilon;
  spec.A = p.real("A");
  spec.seed = p.seed("seed");
  return spec;
}

// Closed-form energy, mass and untwisted momentum against grid quadrature;
// finite-difference slope dE/dp of the closed forms against c.
ExperimentResult identities(const Params& p, const OutDir& out) {
  Recorder rec("identities");
  Stopwatch clock;
  const auto grid = grid_of(p);
  const double tol = p.real("tol");
  std::ostringstream csv;
  csv.precision(17);
  csv << "c,energy,energy_exact,mass,mass_exact,untwisted,untwisted_exact\n";
  for (double c : p.reals("speeds")) {
    // u_c written over the shifted member u_c(. - 1/2): the momentum then
    // carries a genuine quadrature part int <i w, w'>/2 + int <i w, V0'>.
    const SolitonParams rest{c, 0.0, 0.0};
    const SolitonParams shifted{c, 0.5, 0.0};
    std::vector<cplx> w(grid.n_points);
    for (std::size_t j = 0; j < grid.n_points; ++j) {
      w[j] = eval_soliton(rest, grid.x(j)) - eval_soliton(shifted, grid.x(j));
    }
    const Field f(grid, shifted, std::move(w));
    const double e = energy(f);
    const double m = mass(f);
    const double u = untwisted_momentum(f).untwisted;
    if (c > 0.0) {
      rec.at_most("renormalized_momentum_c=" + label(c),
                  std::abs(renormalized_momentum(f) - soliton_momentum(c)), tol, 1);
    }
    const double e_exact = soliton_energy(c);
    const double m_exact = soliton_mass(c);
    const double u_exact = soliton_untwisted_momentum(c);
    rec.at_most("energy_c=" + label(c), std::abs(e - e_exact), tol, 1);
    rec.at_most("mass_c=" + label(c), std::abs(m - m_exact), tol, 1);
    rec.at_most("momentum_c=" + label(c), distance_mod_pi(u, u_exact), tol, 1);
    csv << c << ',' << e << ',' << e_exact << ',' << m << ',' << m_exact << ',' << u << ','
        << u_exact << '\n';
  }
  rec.at_most("runtime_seconds", clock.seconds(), p.real("max_seconds"), 1);

  const double h = p.real("slope_step");
  for (double c : p.reals("slope_speeds")) {
    const double slope = (soliton_energy(c + h) - soliton_energy(c - h)) /
                         (soliton_momentum(c + h) - soliton_momentum(c - h));
    rec.at_most("slope_c=" + label(c), std::abs(slope - c), p.real("slope_tol"), 2);
  }
  if (out) open_output(out, "identities.csv") << csv.str();
  return rec.take();
}

// Energy, untwisted momentum and mass along a perturbed-kink trajectory.
ExperimentResult conservation(const Params& p, const OutDir& out) {
  Recorder rec("conservation");
  Stopwatch clock;
  const auto grid = grid_of(p);
  const Field f = make_perturbed_kink(perturbation_of(p, p.real("eps")), grid);
  const auto trajectory = evolve(f, evolve_config(p, p.real("dt"), p.real("T"), p.real("R")));
  const auto& log = trajectory.log;
  rec.at_most("energy_drift", log.max_relative_energy_drift(), p.real("energy_tol"), 3);
  rec.at_most("momentum_drift", log.max_momentum_drift(), p.real("momentum_tol"), 3);
  rec.at_most("mass_drift", log.max_relative_mass_drift(), p.real("mass_tol"), 3);
  rec.at_most("runtime_seconds", clock.seconds(), p.real("max_seconds"), 3);
  if (out) {
    auto csv = open_output(out, "conservation.csv");
    log.write_csv(csv);
    auto initial = open_output(out, "conservation_initial.field");
    write_field(initial, f);
  }
  return rec.take();
}

double transport_error(const Params& p, double dt) {
  const auto grid = grid_of(p);
  const double c = p.real("c");
  const double horizon = p.real("T");
  const Field f = Field::from_background(grid, SolitonParams{c, 0.0, 0.0});
  EvolveConfig cfg;
  cfg.dt = dt;
  cfg.horizon = horizon;
  cfg.log_every = cfg.steps();
  cfg.com_cutoff = 0.25 * grid.half_length;
  const auto trajectory = evolve(f, cfg);
  const Field exact = Field::from_background(grid, SolitonParams{c, c * horizon, 0.0});
  return distance_dA(trajectory.final_state, exact, p.real("A"));
}

// A traveling wave must translate rigidly; the error is second order in dt.
ExperimentResult transport(const Params& p, const OutDir& out) {
  Recorder rec("transport");
  const double error = transport_error(p, p.real("dt"));
  rec.at_most("distance", error, p.real("tol"), 4);
  const double coarse = p.real("order_dt");
  const double e1 = transport_error(p, coarse);
  const double e2 = transport_error(p, 0.5 * coarse);
  const double order = std::log2(e1 / e2);
  rec.at_least("temporal_order", order, p.real("min_order"), 4);
  if (out) {
    auto csv = open_output(out, "transport.csv");
    csv.precision(17);
    csv << "dt,distance\n" << p.real("dt") << ',' << error << '\n'
        << coarse << ',' << e1 << '\n' << 0.5 * coarse << ',' << e2 << '\n';
  }
  return rec.take();
}

// Orbital stability and the shift bound for seeded perturbations of the kink.
ExperimentResult stability(const Params& p, const OutDir& out) {
  Recorder rec("stability");
  Stopwatch clock;
  const auto grid = grid_of(p);
  const double radius = p.real("R");

  {
    const auto report = stability_experiment(perturbation_of(p, 0.0),
                                             evolve_config(p, p.real("dt"), p.real("zero_T"), radius),
                                             grid);
    double max_shift = 0.0;
    for (const auto& fit : report.fits) max_shift = std::max(max_shift, std::abs(fit.a));
    rec.at_most("eps=0/sup_residual", report.sup_residual, p.real("zero_tol"), 9);
    rec.at_most("eps=0/max_shift", max_shift, p.real("zero_shift_tol"), 9);
    if (out) {
      auto csv = open_output(out, "stability_eps0.csv");
      report.write_csv(csv);
    }
  }

  auto eps_values = p.reals("eps");
  std::sort(eps_values.begin(), eps_values.end());
  std::vector<double> sup_residuals;
  std::ostringstream summary;
  summary.precision(17);
  summary << "eps,sup_residual,drift_slope,K_estimate,aborted\n";
  for (double eps : eps_values) {
    const auto report = stability_experiment(
        perturbation_of(p, eps), evolve_config(p, p.real("dt"), p.real("T"), radius), grid);
    const std::string tag = "eps=" + label(eps) + "/";
    rec.add(tag + "completed", !report.aborted, report.aborted ? 1.0 : 0.0, 0.0, 9);
    rec.at_most(tag + "sup_residual", report.sup_residual, p.real("residual_factor") * eps, 9);
    rec.at_most(tag + "K_estimate", report.K_estimate, p.real("K_max"), 9);
    if (!report.fits.empty()) {
      rec.at_most(tag + "initial_residual", report.fits.front().residual,
                  p.real("initial_factor") * eps, 9);
    }
    sup_residuals.push_back(report.sup_residual);
    summary << eps << ',' << report.sup_residual << ',' << report.drift_slope << ','
            << report.K_estimate << ',' << report.aborted << '\n';
    if (out) {
      auto csv = open_output(out, "stability_eps" + label(eps) + ".csv");
      report.write_csv(csv);
      auto log = open_output(out, "stability_eps" + label(eps) + "_conserved.csv");
      report.log.write_csv(log);
    }
  }
  for (std::size_t k = 1; k < sup_residuals.size(); ++k) {
    // a smaller perturbation must stay closer to the orbit
    rec.at_least("monotone_eps=" + label(eps_values[k - 1]) + "_vs_" + label(eps_values[k]),
                 sup_residuals[k] - sup_residuals[k - 1], 0.0, 9);
  }
  rec.at_most("runtime_seconds", clock.seconds(), p.real("max_seconds"), 9);
  if (out) open_output(out, "stability_summary.csv") << summary.str();
  return rec.take();
}

// Constrained minimization against the closed-form curve, and the pinned flow.
ExperimentResult emin(const Params& p, const OutDir& out) {
  Recorder rec("emin");
  Stopwatch clock;
  const auto grid = grid_of(p);
  const FlowConfig cfg;
  const auto curve = emin_curve(p.reals("p"), grid, cfg, p.real("init_offset"));

  std::ostringstream csv;
  csv.precision(17);
  csv << "p,E,multiplier,iters,converged\n";
  for (const auto& point : curve) {
    const std::string tag = "p=" + label(point.p) + "/";
    const double c = speed_from_momentum(point.p);
    const double e_exact = soliton_energy(c);
    rec.add(tag + "converged", point.converged, static_cast<double>(point.iterations),
            static_cast<double>(cfg.max_iters), 7);
    rec.at_most(tag + "energy_rel_error", std::abs(point.energy - e_exact) / e_exact,
                p.real("energy_rel_tol"), 7);
    rec.at_most(tag + "multiplier_rel_error", std::abs(point.multiplier - c) / c,
                p.real("multiplier_rel_tol"), 7);
    rec.at_most(tag + "below_sound_line", point.energy - std::sqrt(2.0) * point.p,
                p.real("line_tol"), 7);
    csv << point.p << ',' << point.energy << ',' << point.multiplier << ',' << point.iterations
        << ',' << (point.converged ? 1 : 0) << '\n';
  }
  double worst_second_difference = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k + 1 < curve.size(); ++k) {
    // second divided difference on a possibly uneven sweep
    const double left = (curve[k].energy - curve[k - 1].energy) / (curve[k].p - curve[k - 1].p);
    const double right = (curve[k + 1].energy - curve[k].energy) / (curve[k + 1].p - curve[k].p);
    worst_second_difference = std::max(worst_second_difference, right - left);
  }
  if (curve.size() >= 3) {
    rec.at_most("concavity", worst_second_difference, p.real("concavity_tol"), 7);
  }
  rec.at_most("runtime_seconds", clock.seconds(), p.real("max_seconds"), 7);

  // Pinned-zero flow from a rotated kink of the wrong width.
  const double phase = std::numbers::pi / 3.0;
  std::vector<cplx> w(grid.n_points);
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    const double x = grid.x(j);
    w[j] = std::polar(1.0, phase) * (std::tanh(0.5 * x) - std::tanh(x / std::sqrt(2.0)));
  }
  const Field init(grid, SolitonParams{0.0, 0.0, phase}, std::move(w));
  const auto pinned = pinned_zero_minimize(grid, cfg, init);
  const double kink_energy = soliton_energy(0.0);
  rec.add("pinned/converged", pinned.converged, static_cast<double>(pinned.iterations),
          static_cast<double>(cfg.max_iters), 8);
  rec.at_most("pinned/energy_rel_error", std::abs(pinned.energy - kink_energy) / kink_energy,
              p.real("pinned_energy_tol"), 8);
  rec.at_most("pinned/orbit_distance", fit_modulation(pinned.field, p.real("pinned_A")).residual,
              p.real("pinned_distance_tol"), 8);
  rec.at_least("pinned/energy_above_kink", pinned.energy - kink_energy, -1e-6, 8);

  if (out) {
    open_output(out, "emin_curve.csv") << csv.str();
    auto field = open_output(out, "pinned_minimizer.field");
    write_field(field, pinned.field);
  }
  return rec.take();
}

// Centered differences of the localized first moment against its flux.
ExperimentResult comlaw(const Params& p, const OutDir& out) {
  Recorder rec("comlaw");
  const auto grid = grid_of(p);
  const double dt = p.real("dt");
  const double horizon = p.real("T");

  const Field wave = Field::from_background(grid, SolitonParams{p.real("c"), 0.0, 0.0});
  const auto wave_log = evolve(wave, evolve_config(p, dt, horizon, p.real("R"))).log;
  const double wave_residual = com_law_residual(wave_log);
  rec.at_most("traveling_wave_residual", wave_residual, p.real("wave_tol"), 5);

  const Field kink = make_perturbed_kink(perturbation_of(p, p.real("eps")), grid);
  const double coarse = com_law_residual(kink, evolve_config(p, dt, horizon, p.real("kink_R")));
  const double fine = com_law_residual(kink, evolve_config(p, 0.5 * dt, horizon, p.real("kink_R")));
  rec.at_least("kink_halving_ratio", coarse / fine, p.real("min_ratio"), 5);

  if (out) {
    auto csv = open_output(out, "comlaw_wave.csv");
    wave_log.write_csv(csv);
    auto summary = open_output(out, "comlaw.csv");
    summary.precision(17);
    summary << "case,dt,residual\nwave," << dt << ',' << wave_residual << "\nkink," << dt << ','
            << coarse << "\nkink," << 0.5 * dt << ',' << fine << '\n';
  }
  return rec.take();
}

// Sampled winding insertions: momentum, energy bound, endpoints, modulus gap.
ExperimentResult winding(const Params& p, const OutDir& out) {
  Recorder rec("winding");
  SeededRng rng(p.seed("seed"));
  const std::size_t resolution = p.count("resolution");
  double worst_momentum = 0.0;
  double worst_energy_excess = -std::numeric_limits<double>::infinity();
  double worst_endpoint = 0.0;
  double worst_modulus_excess = -std::numeric_limits<double>::infinity();
  std::ostringstream csv;
  csv.precision(17);
  csv << "q,mu,ell,delta,momentum,energy\n";
  for (std::size_t k = 0; k < p.count("samples"); ++k) {
    const double magnitude = (1.0 - rng.uniform()) / 32.0;  // (0, 1/32]
    const double q = rng.uniform() < 0.5 ? -magnitude : magnitude;
    const double mu = 0.25 * rng.uniform();
    const auto map = winding_insert(q, mu, resolution);
    worst_momentum = std::max(worst_momentum, std::abs(map.momentum - q));
    worst_energy_excess = std::max(worst_energy_excess, map.energy - 14.0 * std::abs(q));
    worst_endpoint = std::max(worst_endpoint, std::abs(map.samples.front() - map.samples.back()));
    worst_modulus_excess =
        std::max(worst_modulus_excess, std::abs(1.0 - std::abs(map.samples.front())) - mu);
    csv << q << ',' << mu << ',' << map.ell << ',' << map.delta << ',' << map.momentum << ','
        << map.energy << '\n';
  }
  rec.at_most("momentum_error", worst_momentum, p.real("momentum_tol"), 6);
  rec.at_most("energy_minus_14q", worst_energy_excess, 0.0, 6);
  rec.at_most("endpoint_mismatch", worst_endpoint, 0.0, 6);
  rec.at_most("modulus_gap_minus_mu", worst_modulus_excess, 0.0, 6);
  if (out) open_output(out, "winding.csv") << csv.str();
  return rec.take();
}

// Random non-vanishing field: a gray soliton plus bumps at most half its depth.
Field random_nonvanishing(const GridSpec& grid, SeededRng& rng, std::size_t k) {
  const double c = rng.uniform(0.2, 1.3);
  const SolitonParams bg{c, rng.uniform(-3.0, 3.0), rng.uniform(0.0, 2.0 * std::numbers::pi)};
  PerturbationSpec spec;
  spec.A = 10.0;
  spec.seed = 1000 + k;
  spec.n_bumps = 2;
  auto w = seeded_bumps(spec, grid);
  double sup = 0.0;
  for (const auto& z : w) sup = std::max(sup, std::abs(z));
  const double scale = rng.uniform(0.0, 0.5) * (c / std::sqrt(2.0)) / sup;
  for (auto& z : w) z *= scale;
  return Field(grid, bg, std::move(w));
}

// Dip localization on the kink and pointwise bounds on random fields.
ExperimentResult dips(const Params& p, const OutDir& out) {
  Recorder rec("dips");
  const auto grid = grid_of(p);
  const double delta0 = p.real("delta0");

  const Field kink = Field::from_background(grid, SolitonParams{});
  const auto report = locate_dips(kink, delta0, energy(kink));
  const double radius = std::sqrt(2.0) * std::atanh(1.0 - delta0);
  std::vector<double> expected;
  for (double x : grid.nodes()) {
    if (std::abs(x) <= radius) expected.push_back(x);
  }
  const bool exact = report.points == expected;
  rec.add("kink_points_match", exact, exact ? 0.0 : 1.0, 0.0, 10);
  const bool one_cluster = report.clusters.size() == 1 && report.clusters[0].left <= 0.0 &&
                           report.clusters[0].right >= 0.0;
  rec.add("kink_single_cluster_at_0", one_cluster, static_cast<double>(report.clusters.size()),
          1.0, 10);
  rec.at_most("kink_cluster_bound", static_cast<double>(report.clusters.size()),
              static_cast<double>(report.cluster_bound), 10);

  SeededRng rng(p.seed("seed"));
  double worst_pointwise = -std::numeric_limits<double>::infinity();
  double worst_min_modulus = -std::numeric_limits<double>::infinity();
  double worst_cluster_margin = -std::numeric_limits<double>::infinity();
  std::ostringstream csv;
  csv.precision(17);
  csv << "field,energy,min_modulus,pointwise_excess,min_modulus_excess,clusters,cluster_bound\n";
  for (std::size_t k = 0; k < p.count("fields"); ++k) {
    const Field f = random_nonvanishing(grid, rng, k);
    const double e = energy(f);
    const double pointwise = pointwise_momentum_bound_excess(f);
    const double floor_gap = min_modulus_bound_excess(f);
    const auto dips_k = locate_dips(f, delta0, e);
    worst_pointwise = std::max(worst_pointwise, pointwise);
    worst_min_modulus = std::max(worst_min_modulus, floor_gap);
    worst_cluster_margin =
        std::max(worst_cluster_margin, static_cast<double>(dips_k.clusters.size()) -
                                           static_cast<double>(dips_k.cluster_bound));
    double min_modulus = std::numeric_limits<double>::infinity();
    for (const auto& z : f.values()) min_modulus = std::min(min_modulus, std::abs(z));
    csv << k << ',' << e << ',' << min_modulus << ',' << pointwise << ',' << floor_gap << ','
        << dips_k.clusters.size() << ',' << dips_k.cluster_bound << '\n';
  }
  rec.at_most("pointwise_momentum_bound", worst_pointwise, p.real("pointwise_tol"), 11);
  rec.at_most("min_modulus_bound", worst_min_modulus, p.real("min_modulus_tol"), 11);
  rec.at_most("random_cluster_bound", worst_cluster_margin, 0.0, 10);
  if (out) open_output(out, "dips.csv") << csv.str();
  return rec.take();
}

}  // namespace

ExperimentResult run_experiment(const Params& params, const OutDir& out_dir) {
  using Runner = ExperimentResult (*)(const Params&, const OutDir&);
  static const std::map<std::string, Runner> runners{
      {"identities", identities}, {"conservation", conservation}, {"transport", transport},
      {"stability", stability},   {"emin", emin},                 {"comlaw", comlaw},
      {"winding", winding},       {"dips", dips}};
  const auto it = runners.find(params.experiment());
  if (it == runners.end()) throw ConfigError("unknown experiment '" + params.experiment() + "'");
  try {
    return it->second(params, out_dir);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    ExperimentResult failed{params.experiment(), {}};
    failed.assertions.push_back(
        Assertion{params.experiment() + "/error: " + e.what(), false, 0.0, 0.0, 0});
    return failed;
  }
}

}  // namespace gplab
