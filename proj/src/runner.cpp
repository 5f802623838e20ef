#include "corrdyn/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "corrdyn/decomposition.hpp"
#include "corrdyn/dynamics.hpp"
#include "corrdyn/errors.hpp"
#include "corrdyn/hierarchy.hpp"
#include "corrdyn/oracle.hpp"

namespace corrdyn {

namespace {

using cplx = std::complex<double>;
namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

std::string label_of(std::uint64_t code, int n) { return string_of(n, {code}).to_string(); }

// Observables to report; an empty list means every single-site correlator.
std::vector<Observable> report_observables(const RunConfig& cfg) {
  if (!cfg.observables.empty()) return cfg.observables;
  std::vector<Observable> out;
  for (int site = 0; site < cfg.n_sites(); ++site)
    for (int a = 1; a <= 3; ++a) {
      const std::uint64_t c = code::with_digit(0, site, a);
      out.push_back({label_of(c, cfg.n_sites()), false, {{c, 1.0}}});
    }
  return out;
}

cplx evaluate(const Observable& o, const CorrelatorVector& v) {
  cplx acc = 0.0;
  for (const auto& [code, w] : o.terms) acc += w * v[code];
  return acc;
}

fs::path write_trajectory(const RunConfig& cfg, const Generator& g, const CorrelatorVector& x0, const fs::path& dir) {
  const Trajectory traj = evolve(g, x0, cfg.time);
  const auto obs = report_observables(cfg);
  const fs::path p = dir / "trajectory.csv";
  auto out = open_out(p);
  out << "t";
  for (const auto& o : obs) {
    if (o.ladder)
      out << ",re(" << o.label << "),im(" << o.label << ")";
    else
      out << "," << o.label;
  }
  out << "\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out << fmt(traj.times[k]);
    for (const auto& o : obs) {
      const cplx v = evaluate(o, traj.states[k]);
      out << "," << fmt(v.real());
      if (o.ladder) out << "," << fmt(v.imag());
    }
    out << "\n";
  }
  return p;
}

std::vector<fs::path> write_spectrum(const RunConfig& cfg, const Generator& g, const fs::path& dir) {
  const SpectralReport rep = spectrum(g, cfg.spectrum);
  const fs::path freq = dir / "spectrum.csv";
  {
    auto out = open_out(freq);
    out << "omega,multiplicity\n";
    for (std::size_t k = 0; k < rep.frequencies.size(); ++k)
      out << fmt(rep.frequencies[k]) << "," << rep.multiplicities[k] << "\n";
  }
  const fs::path dens = dir / "spectral_density.csv";
  {
    auto out = open_out(dens);
    out << "omega,density\n";
    for (std::size_t k = 0; k < rep.omega.size(); ++k) out << fmt(rep.omega[k]) << "," << fmt(rep.density[k]) << "\n";
  }
  const fs::path summary = dir / "spectrum_summary.txt";
  {
    auto out = open_out(summary);
    std::size_t positive = rep.frequencies.size() - (rep.kernel_dim > 0 ? 1 : 0);
    out << "dimension=" << g.dim() - 1 << "\n"
        << "kernel_dim=" << rep.kernel_dim << "\n"
        << "distinct_positive_frequencies=" << positive << "\n"
        << "epsilon=" << fmt(rep.epsilon) << "\n"
        << "broadening=lorentzian\n";
  }
  return {freq, dens, summary};
}

fs::path write_resolvent(const RunConfig& cfg, const Generator& g, const fs::path& dir) {
  if (cfg.resolvent_points.empty()) throw ParseError("resolvent task needs resolvent.z points");
  const auto obs = report_observables(cfg);
  for (const auto& o : obs)
    if (o.ladder) throw ParseError("resolvent rows and columns must be Cartesian labels, got \"" + o.label + "\"");
  const GeneratorEigen eig = generator_eigen(g);
  const fs::path p = dir / "resolvent.csv";
  auto out = open_out(p);
  out << "z_re,z_im,row,col,re,im\n";
  for (cplx z : cfg.resolvent_points) {
    const Eigen::MatrixXcd r = resolvent(g, eig, z);
    for (const auto& a : obs)
      for (const auto& b : obs) {
        const cplx v = r(a.terms[0].first, b.terms[0].first);
        out << fmt(z.real()) << "," << fmt(z.imag()) << "," << a.label << "," << b.label << "," << fmt(v.real())
            << "," << fmt(v.imag()) << "\n";
      }
  }
  return p;
}

std::string subset_label(CellSubset s) {
  std::string out;
  for (int site : s.sites()) out += (out.empty() ? "" : " ") + std::to_string(site);
  return out;
}

fs::path write_decomposition(const RunConfig& cfg, const CorrelatorVector& x0, const fs::path& dir) {
  const DensityMatrix rho = from_correlators(x0);
  const int n = rho.n_sites();
  Decomposer dec(rho);
  const fs::path p = dir / "decomposition.txt";
  auto out = open_out(p);
  out << "n_sites=" << n << "\n";
  if (n >= 2) {
    for (CellSubset a : enumerate_subsets(CellSubset::full(n))) {
      if (a.size() < 2) continue;
      const SiteOperator& c = dec.correlated(a);
      const SiteOperator& cc = dec.cumulant(a);
      double trace_residual = 0.0;
      for (int site : a.sites())
        trace_residual =
            std::max(trace_residual, trace_down(c, a - CellSubset::single(site)).matrix.cwiseAbs().maxCoeff());
      const std::string key = "subset[" + subset_label(a) + "]";
      out << key << ".correlated_norm=" << fmt(c.matrix.norm()) << "\n"
          << key << ".cumulant_norm=" << fmt(cc.matrix.norm()) << "\n"
          << key << ".partial_trace_residual=" << fmt(trace_residual) << "\n";
    }
    const Reconstruction r1 = reconstruct(all_correlated_parts(rho));
    const Reconstruction r2 = cumulant_reconstruct(n, all_cumulant_parts(rho));
    out << "reconstruction.terms=" << r1.terms << "\n"
        << "reconstruction.max_abs_error=" << fmt((r1.matrix - rho.matrix()).cwiseAbs().maxCoeff()) << "\n"
        << "cumulant_reconstruction.terms=" << r2.terms << "\n"
        << "cumulant_reconstruction.max_abs_error=" << fmt((r2.matrix - rho.matrix()).cwiseAbs().maxCoeff()) << "\n";
  }
  for (const auto& o : cfg.observables) {
    if (o.ladder) continue;
    out << "connected[" << o.label << "]=" << fmt(connected_correlator(x0, string_of(n, {o.terms[0].first}))) << "\n";
  }
  const PositivityReport pos = diagnose_positivity(rho);
  out << "purity=" << fmt(purity(rho)) << "\n"
      << "min_eigenvalue=" << fmt(pos.min_eigenvalue) << "\n"
      << "positive=" << (pos.is_positive ? "true" : "false") << "\n";
  return p;
}

fs::path write_validation(const RunConfig& cfg, const Generator& g, const CorrelatorVector& x0, const fs::path& dir) {
  const int n = cfg.n_sites();
  require_dense_size(n);
  const DensityMatrix rho0 = from_correlators(x0);
  const Trajectory traj = evolve(g, x0, cfg.time);
  const Trajectory exact = correlator_trajectory(cfg.hamiltonian, rho0, traj.times);

  double max_dev = 0.0, purity_dev = 0.0;
  const double norm0 = x0.nonidentity_norm2();
  double norm_dev = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    for (std::size_t c = 1; c < x0.size(); ++c)
      max_dev = std::max(max_dev, std::abs(traj.states[k][c] - exact.states[k][c]));
    purity_dev = std::max(purity_dev, std::abs(purity_from_correlators(traj.states[k]) -
                                               purity_from_correlators(exact.states[k])));
    norm_dev = std::max(norm_dev, std::abs(traj.states[k].nonidentity_norm2() - norm0));
  }
  const double t_max = traj.times.back();
  const Eigen::MatrixXd dense = g.dim() <= (std::size_t{1} << 12) ? g.matrix.to_dense() : Eigen::MatrixXd();
  const double antisym = g.matrix.dim() <= (std::size_t{1} << 12)
                             ? (dense + dense.transpose()).cwiseAbs().maxCoeff()
                             : std::nan("");

  const fs::path p = dir / "validate.txt";
  auto out = open_out(p);
  out << "n_sites=" << n << "\n"
      << "method=" << (cfg.time.method == Integrator::Rk4 ? "rk4" : "taylor") << "\n"
      << "dt=" << fmt(effective_step(g, cfg.time)) << "\n"
      << "t_max=" << fmt(t_max) << "\n"
      << "samples=" << traj.times.size() << "\n"
      << "generator_nnz=" << g.matrix.nnz() << "\n"
      << "antisymmetry_max_abs=" << fmt(antisym) << "\n"
      << "max_abs_deviation=" << fmt(max_dev) << "\n"
      << "purity_max_deviation=" << fmt(purity_dev) << "\n"
      << "norm_drift_per_time=" << fmt(t_max > 0 ? norm_dev / t_max : 0.0) << "\n";

  bool spectral_ok = true;
  if (g.dim() <= (std::size_t{1} << 8)) {
    // Distinct generator frequencies against distinct level differences.
    const SpectralReport rep = spectrum(g);
    std::vector<double> diffs = energy_differences(diagonalize(cfg.hamiltonian));
    const double tol = 1e-9 * std::max(1.0, g.matrix.inf_norm());
    std::vector<double> distinct;
    for (double d : diffs)
      if (d > tol && (distinct.empty() || d - distinct.back() > tol)) distinct.push_back(d);
    std::vector<double> gen(rep.frequencies.begin() + (rep.kernel_dim > 0 ? 1 : 0), rep.frequencies.end());
    double spec_dev = 0.0;
    if (gen.size() != distinct.size()) {
      spectral_ok = false;
      spec_dev = std::nan("");
    } else {
      for (std::size_t k = 0; k < gen.size(); ++k) spec_dev = std::max(spec_dev, std::abs(gen[k] - distinct[k]));
      spectral_ok = spec_dev <= 1e-9 * std::max(1.0, g.matrix.inf_norm());
    }
    out << "spectral_frequencies=" << gen.size() << "\n"
        << "spectral_max_deviation=" << fmt(spec_dev) << "\n"
        << "kernel_dim=" << rep.kernel_dim << "\n";
  }
  const bool pass = max_dev <= cfg.validate_tolerance && spectral_ok && !(antisym > 1e-12);
  out << "tolerance=" << fmt(cfg.validate_tolerance) << "\n"
      << "pass=" << (pass ? "true" : "false") << "\n";
  return p;
}

}  // namespace

CorrelatorVector initial_correlators(const RunConfig& cfg) {
  const int n = cfg.n_sites();
  const InitialState& s = cfg.initial;
  switch (s.kind) {
    case InitialState::Kind::Product: {
      // Product correlators factorize site by site.
      std::vector<double> v(code::dimension(n));
      for (std::uint64_t c = 0; c < v.size(); ++c) {
        double p = 1.0;
        for (int site = 0; site < n && p != 0.0; ++site) {
          const int d = code::digit(c, site);
          if (d) p *= s.bloch[site](d - 1);
        }
        v[c] = p;
      }
      return CorrelatorVector::from_values(n, std::move(v));
    }
    case InitialState::Kind::Named:
      if (s.name == "cat") return extract_correlators(cat_state(n, s.phase));
      if (s.name == "ghz") return extract_correlators(ghz_state(n));
      return extract_correlators(w_state(n));
    case InitialState::Kind::Correlators: {
      CorrelatorVector v = CorrelatorVector::maximally_mixed(n);
      for (const auto& [code, value] : s.values) v.set(CorrelatorIndex{code}, value);
      return v;
    }
    case InitialState::Kind::RandomPure:
      return extract_correlators(random_pure_state(n, s.seed));
  }
  throw std::logic_error("unhandled initial state");
}

std::vector<fs::path> run_tasks(const RunConfig& cfg, const std::vector<Task>& tasks, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const CorrelatorVector x0 = initial_correlators(cfg);
  std::optional<Generator> gen;
  auto generator = [&]() -> const Generator& {
    if (!gen) gen = build_generator(cfg.hamiltonian);
    return *gen;
  };
  std::vector<fs::path> written;
  for (Task t : tasks) {
    switch (t) {
      case Task::Evolve: written.push_back(write_trajectory(cfg, generator(), x0, out_dir)); break;
      case Task::Spectrum:
        for (auto& p : write_spectrum(cfg, generator(), out_dir)) written.push_back(p);
        break;
      case Task::Resolvent: written.push_back(write_resolvent(cfg, generator(), out_dir)); break;
      case Task::Decompose: written.push_back(write_decomposition(cfg, x0, out_dir)); break;
      case Task::Validate: written.push_back(write_validation(cfg, generator(), x0, out_dir)); break;
    }
  }
  return written;
}

std::vector<fs::path> run(const RunConfig& cfg, const fs::path& out_dir) { return run_tasks(cfg, cfg.tasks, out_dir); }

}  // namespace corrdyn
