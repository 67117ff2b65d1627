// Command-line front end of the Gross-Pitaevskii laboratory.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "gplab/dynamics.hpp"
#include "gplab/field_io.hpp"
#include "gplab/functionals.hpp"
#include "gplab/perturbation.hpp"
#include "gplab/stability.hpp"
#include "gplab/suite.hpp"
#include "gplab/variational.hpp"
#include "gplab/winding.hpp"

namespace fs = std::filesystem;
using namespace gplab;

namespace {

struct Common {
  std::optional<double> L, dt, T, c, eps, A;
  std::optional<std::size_t> N;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common(CLI::App* app, Common& o) {
  app->add_option("--L", o.L, "half length of the domain [-L, L)");
  app->add_option("--N", o.N, "number of grid points (power of two)");
  app->add_option("--dt", o.dt, "time step");
  app->add_option("--T", o.T, "time horizon");
  app->add_option("--c", o.c, "traveling-wave speed");
  app->add_option("--eps", o.eps, "perturbation size in d_A");
  app->add_option("--A", o.A, "window of d_A");
  app->add_option("--seed", o.seed, "seed of the perturbation");
  app->add_option("--out", o.out, "output directory");
}

std::ofstream open_in(const Common& o, const std::string& file) {
  fs::create_directories(o.out);
  std::ofstream out(fs::path(o.out) / file);
  if (!out) throw std::runtime_error("cannot write " + (fs::path(o.out) / file).string());
  return out;
}

std::string text(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

// Runs a named experiment with the common flags mapped onto its settings.
int experiment(const std::string& name, const Common& o) {
  Params params(name);
  const auto has = [&](const char* key) { return experiment_defaults().at(name).contains(key); };
  const auto put = [&](const char* key, const auto& value) {
    if (value && has(key)) params.set(key, text(static_cast<double>(*value)));
  };
  put("L", o.L);
  put("dt", o.dt);
  put("T", o.T);
  put("c", o.c);
  put("A", o.A);
  if (o.N && has("N")) params.set("N", std::to_string(*o.N));
  if (o.seed && has("seed")) params.set("seed", std::to_string(*o.seed));
  if (o.eps && has("eps")) params.set("eps", text(*o.eps));
  if (o.c && name == "identities") params.set("speeds", text(*o.c));

  std::optional<fs::path> out;
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    out = o.out;
  }
  const auto result = run_experiment(params, out);
  for (const auto& a : result.assertions) {
    std::cout << (a.passed ? "PASS " : "FAIL ") << a.name << "  measured=" << a.measured
              << "  threshold=" << a.threshold << '\n';
  }
  if (out) {
    std::ofstream summary(*out / "summary.json");
    write_summary(summary, {result});
  }
  return result.passed() ? 0 : 1;
}

GridSpec grid_from(const Common& o, double L, std::size_t N) {
  return GridSpec::make(o.L.value_or(L), o.N.value_or(N));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gross-Pitaevskii soliton laboratory"};
  app.require_subcommand(1);
  Common o;

  auto* soliton = app.add_subcommand("soliton", "closed forms and quadrature of one traveling wave");
  add_common(soliton, o);

  auto* identities = app.add_subcommand("identities", "closed-form identity checks");
  add_common(identities, o);

  std::string field_in;
  auto* evolve_cmd = app.add_subcommand("evolve", "evolve a traveling wave (--c) or a perturbed kink");
  add_common(evolve_cmd, o);
  evolve_cmd->add_option("--in", field_in, "initial field record instead of a generated one");
  std::size_t log_every = 100;
  evolve_cmd->add_option("--log-every", log_every, "steps between log samples");

  auto* stability_cmd = app.add_subcommand("stability", "orbital stability run for one epsilon");
  add_common(stability_cmd, o);

  std::vector<double> p_values{0.3, 0.6, 0.9, 1.2};
  auto* emin_cmd = app.add_subcommand("emin", "minimal energy at fixed momentum");
  add_common(emin_cmd, o);
  emin_cmd->add_option("--p", p_values, "momentum values in [0, pi/2)");

  auto* comlaw = app.add_subcommand("comlaw", "center-of-mass law checks");
  add_common(comlaw, o);

  double q = 1.0 / 32.0;
  double mu = 0.25;
  std::size_t resolution = 4096;
  auto* winding_cmd = app.add_subcommand("winding", "phase-winding insertion map");
  add_common(winding_cmd, o);
  winding_cmd->add_option("--q", q, "momentum carried, 0 < |q| <= 1/32");
  winding_cmd->add_option("--mu", mu, "modulus gap, 0 <= mu <= 1/4");
  winding_cmd->add_option("--resolution", resolution, "number of intervals");

  double delta0 = 0.5;
  auto* dips_cmd = app.add_subcommand("dips", "dip locator on the kink or a field record");
  add_common(dips_cmd, o);
  dips_cmd->add_option("--in", field_in, "field record");
  dips_cmd->add_option("--delta0", delta0, "dip threshold in (0, 1)");

  std::string config;
  auto* suite = app.add_subcommand("suite", "run the experiments of a config file");
  add_common(suite, o);
  suite->add_option("config", config, "suite config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*soliton) {
      const double c = o.c.value_or(0.0);
      const auto grid = grid_from(o, 40.0, 4096);
      const auto closed = soliton_closed_forms(c);
      const Field f = Field::from_background(grid, SolitonParams{c, 0.0, 0.0});
      std::cout.precision(15);
      std::cout << "c                 " << c << '\n'
                << "energy closed     " << closed.energy << "\nenergy quadrature " << energy(f) << '\n'
                << "mass closed       " << closed.mass << "\nmass quadrature   " << mass(f) << '\n'
                << "[p] closed        " << soliton_untwisted_momentum(c) << '\n'
                << "[p] quadrature    " << untwisted_momentum(f).untwisted << '\n'
                << "dp/dc             " << closed.momentum_derivative << '\n';
      if (!o.out.empty()) {
        auto csv = open_in(o, "soliton.csv");
        csv.precision(17);
        csv << "x,re,im\n";
        const auto v = f.values();
        for (std::size_t j = 0; j < v.size(); ++j) {
          csv << grid.x(j) << ',' << v[j].real() << ',' << v[j].imag() << '\n';
        }
      }
      return 0;
    }
    if (*identities) return experiment("identities", o);
    if (*comlaw) return experiment("comlaw", o);
    if (*evolve_cmd) {
      std::optional<Field> initial;
      if (!field_in.empty()) {
        std::ifstream in(field_in);
        if (!in) throw std::runtime_error("cannot read " + field_in);
        initial = read_field(in);
      } else if (o.c) {
        initial = Field::from_background(grid_from(o, 60.0, 2048), SolitonParams{*o.c, 0.0, 0.0});
      } else {
        PerturbationSpec spec;
        spec.epsilon = o.eps.value_or(0.05);
        spec.A = o.A.value_or(10.0);
        spec.seed = o.seed.value_or(1);
        initial = make_perturbed_kink(spec, grid_from(o, 60.0, 2048));
      }
      EvolveConfig cfg;
      cfg.dt = o.dt.value_or(1e-3);
      cfg.horizon = o.T.value_or(1.0);
      cfg.log_every = log_every;
      cfg.com_cutoff = std::min(10.0, 0.5 * initial->grid().half_length);
      const auto trajectory = evolve(*initial, cfg);
      std::cout << "energy drift  " << trajectory.log.max_relative_energy_drift() << '\n'
                << "[p] drift     " << trajectory.log.max_momentum_drift() << '\n'
                << "mass drift    " << trajectory.log.max_relative_mass_drift() << '\n';
      if (!o.out.empty()) {
        auto csv = open_in(o, "conserved.csv");
        trajectory.log.write_csv(csv);
        auto fin = open_in(o, "final.field");
        write_field(fin, trajectory.final_state);
      } else {
        trajectory.log.write_csv(std::cout);
      }
      return 0;
    }
    if (*stability_cmd) {
      PerturbationSpec spec;
      spec.epsilon = o.eps.value_or(0.02);
      spec.A = o.A.value_or(10.0);
      spec.seed = o.seed.value_or(1);
      EvolveConfig cfg;
      cfg.dt = o.dt.value_or(1e-3);
      cfg.horizon = o.T.value_or(50.0);
      cfg.log_every = 500;
      cfg.com_cutoff = 10.0;
      const auto report = stability_experiment(spec, cfg, grid_from(o, 60.0, 2048));
      std::cout << "sup_residual  " << report.sup_residual << '\n'
                << "drift_slope   " << report.drift_slope << '\n'
                << "K_estimate    " << report.K_estimate << '\n'
                << "aborted       " << (report.aborted ? report.abort_reason : "no") << '\n';
      if (!o.out.empty()) {
        auto csv = open_in(o, "stability.csv");
        report.write_csv(csv);
        auto log = open_in(o, "conserved.csv");
        report.log.write_csv(log);
      }
      return report.aborted ? 1 : 0;
    }
    if (*emin_cmd) {
      const auto curve = emin_curve(p_values, grid_from(o, 40.0, 1024), FlowConfig{});
      std::ostringstream csv;
      csv.precision(17);
      csv << "p,E,multiplier,iters,converged\n";
      bool all = true;
      for (const auto& point : curve) {
        csv << point.p << ',' << point.energy << ',' << point.multiplier << ',' << point.iterations
            << ',' << (point.converged ? 1 : 0) << '\n';
        all = all && point.converged;
      }
      if (!o.out.empty()) {
        open_in(o, "emin_curve.csv") << csv.str();
      }
      std::cout << csv.str();
      return all ? 0 : 1;
    }
    if (*winding_cmd) {
      const auto map = winding_insert(q, mu, resolution);
      std::cout.precision(15);
      std::cout << "ell       " << map.ell << "\nlambda    " << map.lambda << "\ndelta     "
                << map.delta << "\nmomentum  " << map.momentum << "\nenergy    " << map.energy
                << "\nbound     " << 14.0 * std::abs(q) << '\n';
      if (!o.out.empty()) {
        auto csv = open_in(o, "winding.csv");
        csv.precision(17);
        csv << "s,re,im\n";
        for (std::size_t j = 0; j < map.samples.size(); ++j) {
          csv << static_cast<double>(j) * map.spacing << ',' << map.samples[j].real() << ','
              << map.samples[j].imag() << '\n';
        }
      }
      return 0;
    }
    if (*dips_cmd) {
      std::optional<Field> f;
      if (!field_in.empty()) {
        std::ifstream in(field_in);
        if (!in) throw std::runtime_error("cannot read " + field_in);
        f = read_field(in);
      } else {
        f = Field::from_background(grid_from(o, 40.0, 4096), SolitonParams{o.c.value_or(0.0), 0.0, 0.0});
      }
      const double e = energy(*f);
      const auto report = locate_dips(*f, delta0, e);
      std::cout << "energy " << e << "  r0 " << report.r0 << "  mu0 " << report.mu0 << "  ell0 "
                << report.ell0 << "  bound " << report.cluster_bound << '\n';
      for (const auto& c : report.clusters) {
        std::cout << "cluster [" << c.left << ", " << c.right << "] with " << c.points.size()
                  << " points\n";
      }
      return 0;
    }
    if (*suite) return run_suite(config, o.out.empty() ? fs::path("suite-out") : fs::path(o.out), std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
