#include "corrdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "corrdyn/errors.hpp"
#include "corrdyn/kernels.hpp"

namespace corrdyn {

namespace {

using cplx = std::complex<double>;

constexpr double kRk4Courant = 0.01;
constexpr double kTaylorCourant = 0.5;
constexpr double kPoleMargin = 1e-10;
constexpr std::uint64_t kMaxDenseGeneratorDim = std::uint64_t{1} << 12;

void require_dense_generator(const Generator& g) {
  if (g.dim() > kMaxDenseGeneratorDim)
    throw SizeLimitError("dense generator work is capped at 6 sites (dimension 4096)");
}

// One classical RK4 step of dx/dt = M x, in place.
struct Rk4Stepper {
  const CsrMatrix& m;
  std::vector<double> k, acc, tmp;

  explicit Rk4Stepper(const CsrMatrix& m) : m(m), k(m.dim()), acc(m.dim()), tmp(m.dim()) {}

  void step(std::vector<double>& x, double dt) {
    const std::size_t n = x.size();
    m.multiply(x.data(), k.data());  // k1
    acc = x;
    kernels::axpy(n, dt / 6.0, k.data(), acc.data());
    tmp = x;
    kernels::axpy(n, dt / 2.0, k.data(), tmp.data());
    m.multiply(tmp.data(), k.data());  // k2
    kernels::axpy(n, dt / 3.0, k.data(), acc.data());
    tmp = x;
    kernels::axpy(n, dt / 2.0, k.data(), tmp.data());
    m.multiply(tmp.data(), k.data());  // k3
    kernels::axpy(n, dt / 3.0, k.data(), acc.data());
    tmp = x;
    kernels::axpy(n, dt, k.data(), tmp.data());
    m.multiply(tmp.data(), k.data());  // k4
    kernels::axpy(n, dt / 6.0, k.data(), acc.data());
    x.swap(acc);
  }
};

// exp(M dt) x by a truncated Taylor series; dt ||M|| <= 1 keeps every term
// bounded by the previous one.
struct TaylorStepper {
  const CsrMatrix& m;
  std::vector<double> term, next;

  explicit TaylorStepper(const CsrMatrix& m) : m(m), term(m.dim()), next(m.dim()) {}

  void step(std::vector<double>& x, double dt) {
    const std::size_t n = x.size();
    term = x;
    const double scale = std::sqrt(kernels::dot(n, x.data(), x.data()));
    for (int j = 1; j <= 60; ++j) {
      m.multiply(term.data(), next.data());
      const double f = dt / j;
      for (std::size_t i = 0; i < n; ++i) next[i] *= f;
      term.swap(next);
      kernels::axpy(n, 1.0, term.data(), x.data());
      if (std::sqrt(kernels::dot(n, term.data(), term.data())) <= 1e-17 * std::max(scale, 1.0)) break;
    }
  }
};

}  // namespace

double effective_step(const Generator& g, const EvolveOptions& opts) {
  if (!(opts.t_max >= 0.0) || !std::isfinite(opts.t_max)) throw std::invalid_argument("t_max must be finite and >= 0");
  if (opts.dt < 0.0 || !std::isfinite(opts.dt)) throw std::invalid_argument("dt must be positive");
  if (opts.stride == 0) throw std::invalid_argument("stride must be >= 1");
  const double norm = g.matrix.inf_norm();
  if (opts.dt > 0.0) {
    if (opts.dt * norm > 1.0) {
      std::ostringstream msg;
      msg << "step too large: dt*||M||_inf = " << opts.dt * norm << " > 1";
      throw NumericError(msg.str());
    }
    return opts.dt;
  }
  if (opts.t_max == 0.0) return 1.0;
  if (norm == 0.0) return opts.t_max;
  const double target = (opts.method == Integrator::Rk4 ? kRk4Courant : kTaylorCourant) / norm;
  const double steps = std::ceil(opts.t_max / target);
  return opts.t_max / steps;
}

Trajectory evolve(const Generator& g, const CorrelatorVector& x0, const EvolveOptions& opts) {
  if (x0.size() != g.dim()) throw std::invalid_argument("initial vector and generator dimensions differ");
  const double dt = effective_step(g, opts);
  // Snap to a whole number of steps; a user step that does not divide t_max
  // gets one shorter final step.
  const double ratio = opts.t_max / dt;
  std::size_t steps = static_cast<std::size_t>(std::floor(ratio + 1e-9));
  const bool partial_last = ratio - static_cast<double>(steps) > 1e-9;

  std::vector<double> x(x0.values().begin(), x0.values().end());
  Trajectory out;
  auto record = [&](double t) {
    x[0] = 1.0;
    out.times.push_back(t);
    for (double e : x)
      if (!(std::abs(e) <= 1.0 + CorrelatorVector::kBoundSlack))
        throw NumericError("integration left the physical range |<P>| <= 1 at t = " + std::to_string(t));
    out.states.push_back(CorrelatorVector::from_values(x0.n_sites(), x));
  };

  Rk4Stepper rk(g.matrix);
  TaylorStepper taylor(g.matrix);
  auto advance = [&](double h) {
    if (opts.method == Integrator::Rk4)
      rk.step(x, h);
    else
      taylor.step(x, h);
  };

  record(0.0);
  for (std::size_t s = 1; s <= steps; ++s) {
    advance(dt);
    const bool last = (s == steps) && !partial_last;
    if (s % opts.stride == 0 || last) record(last ? opts.t_max : static_cast<double>(s) * dt);
  }
  if (partial_last) {
    advance(opts.t_max - static_cast<double>(steps) * dt);
    record(opts.t_max);
  }
  return out;
}

GeneratorEigen generator_eigen(const Generator& g) {
  require_dense_generator(g);
  const Eigen::Index n = static_cast<Eigen::Index>(g.dim()) - 1;
  GeneratorEigen out;
  out.norm_inf = g.matrix.inf_norm();
  if (n <= 0) return out;
  const Eigen::MatrixXcd im = cplx(0, 1) * g.matrix.to_dense().bottomRightCorner(n, n).cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(im, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("generator eigensolver failed");
  out.values = es.eigenvalues();
  return out;
}

Eigen::MatrixXcd resolvent(const Generator& g, std::complex<double> z) { return resolvent(g, generator_eigen(g), z); }

Eigen::MatrixXcd resolvent(const Generator& g, const GeneratorEigen& eig, std::complex<double> z) {
  require_dense_generator(g);
  // Poles of (z - M)^{-1} are i*omega for M eigenvalues; iM has eigenvalue
  // -omega there. The identity slot adds a pole at 0.
  cplx nearest = 0.0;
  double best = std::abs(z);
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const cplx pole(0.0, -eig.values(k));
    if (std::abs(z - pole) < best) {
      best = std::abs(z - pole);
      nearest = pole;
    }
  }
  if (best <= kPoleMargin) {
    std::ostringstream msg;
    msg << "z = " << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i lies on the pole "
        << nearest.real() << (nearest.imag() < 0 ? "-" : "+") << std::abs(nearest.imag()) << "i";
    throw NumericError(msg.str());
  }
  const Eigen::Index n = static_cast<Eigen::Index>(g.dim());
  const Eigen::MatrixXcd a = z * Eigen::MatrixXcd::Identity(n, n) - g.matrix.to_dense().cast<cplx>();
  Eigen::MatrixXcd inv = a.partialPivLu().inverse();
  const double residual = (a * inv - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (residual > 1e-10) {
    std::ostringstream msg;
    msg << "resolvent residual " << residual << " exceeds 1e-10 near pole " << nearest.real() << "+"
        << nearest.imag() << "i";
    throw NumericError(msg.str());
  }
  return inv;
}

SpectralReport spectrum(const Generator& g, const SpectrumOptions& opts) {
  const GeneratorEigen eig = generator_eigen(g);
  const double tol = 1e-9 * std::max(eig.norm_inf, 1e-300);
  SpectralReport rep;

  // omega_k = -lambda_k; the spectrum is symmetric for real antisymmetric M.
  std::vector<double> omegas(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) omegas[k] = -eig.values(k);
  std::sort(omegas.begin(), omegas.end());

  for (double w : omegas) {
    if (std::abs(w) <= tol) {
      ++rep.kernel_dim;
      continue;
    }
    if (w < 0) continue;
    if (!rep.frequencies.empty() && w - rep.frequencies.back() <= tol) {
      ++rep.multiplicities.back();
    } else {
      rep.frequencies.push_back(w);
      rep.multiplicities.push_back(1);
    }
  }
  if (rep.kernel_dim > 0) {
    rep.frequencies.insert(rep.frequencies.begin(), 0.0);
    rep.multiplicities.insert(rep.multiplicities.begin(), rep.kernel_dim);
  }

  if (opts.epsilon) {
    if (!(*opts.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    rep.epsilon = *opts.epsilon;
  } else if (rep.frequencies.size() >= 2) {
    const double span = rep.frequencies.back() - rep.frequencies.front();
    rep.epsilon = 10.0 * span / static_cast<double>(rep.frequencies.size() - 1);
  } else {
    rep.epsilon = 0.05;
  }

  const double wmax = omegas.empty() ? 0.0 : std::max(std::abs(omegas.front()), std::abs(omegas.back()));
  const double lo = opts.omega_min.value_or(-(wmax + 5.0 * rep.epsilon));
  const double hi = opts.omega_max.value_or(wmax + 5.0 * rep.epsilon);
  if (!(hi > lo) || opts.grid_points < 2) throw std::invalid_argument("bad spectral grid");
  for (std::size_t p = 0; p < opts.grid_points; ++p) {
    const double w = lo + (hi - lo) * static_cast<double>(p) / static_cast<double>(opts.grid_points - 1);
    double a = 0.0;
    for (double wk : omegas) a += rep.epsilon / ((w - wk) * (w - wk) + rep.epsilon * rep.epsilon);
    rep.omega.push_back(w);
    rep.density.push_back(a / std::numbers::pi);
  }
  return rep;
}

CoupledProblem coupled_problem(const SpinHamiltonian& h, const CoupledSplit& split) {
  if (h.n_sites() != split.n_sites) throw std::invalid_argument("split and Hamiltonian site counts differ");
  CoupledProblem p{build_generator(h), build_generator(uncoupled_part(h, split)), {}};
  require_dense_generator(p.full);
  p.v = p.full.matrix.to_dense() - p.uncoupled.matrix.to_dense();
  return p;
}

DysonResult dyson_series(const Eigen::MatrixXcd& g0, const Eigen::MatrixXd& v, int order) {
  if (order < 0) throw std::invalid_argument("Dyson order must be >= 0");
  if (g0.rows() != g0.cols() || v.rows() != g0.rows() || v.cols() != g0.cols())
    throw std::invalid_argument("G0 and V must be square and of equal size");
  const Eigen::MatrixXcd vg = v.cast<cplx>() * g0;
  const double contraction = vg.rows() ? Eigen::JacobiSVD<Eigen::MatrixXcd>(vg).singularValues()(0) : 0.0;
  if (contraction >= 1.0) {
    std::ostringstream msg;
    msg << "series divergent at this z (||V G0|| = " << contraction << ")";
    throw NumericError(msg.str());
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(g0.rows(), g0.cols());
  Eigen::MatrixXcd power = sum;
  for (int k = 1; k <= order; ++k) {
    power = power * vg;
    sum += power;
  }
  const double g0_norm = g0.rows() ? Eigen::JacobiSVD<Eigen::MatrixXcd>(g0).singularValues()(0) : 0.0;
  return {g0 * sum, contraction, g0_norm * std::pow(contraction, order + 1) / (1.0 - contraction)};
}

Eigen::MatrixXcd mixed_propagator_inverse(const Eigen::MatrixXcd& g1_inv, const Eigen::MatrixXcd& g2_inv,
                                          std::complex<double> z, const CoupledSplit& split) {
  const auto& x1 = split.sector(Sector::X1);
  const auto& x2 = split.sector(Sector::X2);
  const auto& y = split.sector(Sector::Y);
  if (g1_inv.rows() != static_cast<Eigen::Index>(x1.size()) || g2_inv.rows() != static_cast<Eigen::Index>(x2.size()))
    throw std::invalid_argument("subsystem blocks do not match the split");
  std::unordered_map<std::uint64_t, Eigen::Index> pos1, pos2;
  for (std::size_t k = 0; k < x1.size(); ++k) pos1[x1[k]] = static_cast<Eigen::Index>(k);
  for (std::size_t k = 0; k < x2.size(); ++k) pos2[x2[k]] = static_cast<Eigen::Index>(k);
  // Mask of the code bits belonging to system 1.
  std::uint64_t mask1 = 0;
  for (int s : split.system1.sites()) mask1 |= std::uint64_t{3} << (2 * s);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> idx(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) idx[k] = {pos1.at(y[k] & mask1), pos2.at(y[k] & ~mask1)};

  const Eigen::Index n = static_cast<Eigen::Index>(y.size());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto [r1, r2] = idx[r];
      const auto [c1, c2] = idx[c];
      cplx v = 0.0;
      if (r2 == c2) v += g1_inv(r1, c1);
      if (r1 == c1) v += g2_inv(r2, c2);
      if (r1 == c1 && r2 == c2) v -= z;
      out(r, c) = v;
    }
  return out;
}

}  // namespace corrdyn
