#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "corrdyn/correlators.hpp"
#include "corrdyn/hierarchy.hpp"

namespace corrdyn {

enum class Integrator { Rk4, Taylor };

struct EvolveOptions {
  double t_max = 1.0;
  /// Step; zero selects the default 0.01 / ||M||_inf (RK4) or 0.5 / ||M||_inf
  /// (Taylor), shrunk so that t_max is a whole number of steps.
  double dt = 0.0;
  /// Record every `stride` steps; the final time is always recorded.
  std::size_t stride = 1;
  Integrator method = Integrator::Rk4;
};

/// x(t) ~ exp(M t) x0. Throws NumericError("step too large") when
/// dt ||M||_inf > 1 and std::invalid_argument for bad options.
Trajectory evolve(const Generator& g, const CorrelatorVector& x0, const EvolveOptions& opts);

/// Step actually used by evolve for these options.
double effective_step(const Generator& g, const EvolveOptions& opts);

/// Dense generator eigen-data: eigenvalues of the Hermitian matrix iM on the
/// non-identity block, ascending.
struct GeneratorEigen {
  Eigen::VectorXd values;
  double norm_inf = 0.0;
};

GeneratorEigen generator_eigen(const Generator& g);

/// Dense (z - M)^{-1} on all 4^N slots, code order. Throws NumericError when
/// z lies within 1e-10 of a pole (naming it) or the solve residual exceeds
/// 1e-10.
Eigen::MatrixXcd resolvent(const Generator& g, std::complex<double> z);

/// Same, reusing precomputed eigen-data for the pole check.
Eigen::MatrixXcd resolvent(const Generator& g, const GeneratorEigen& eig, std::complex<double> z);

struct SpectrumOptions {
  /// Lorentzian half-width; unset selects 10x the mean spacing of the
  /// distinct frequencies (0.05 when there are fewer than two).
  std::optional<double> epsilon;
  /// Density grid; unset bounds cover every pole with margin.
  std::optional<double> omega_min, omega_max;
  std::size_t grid_points = 401;
};

struct SpectralReport {
  /// Distinct nonnegative frequencies ascending, with the number of
  /// eigenvalues +omega of iM merged into each.
  std::vector<double> frequencies;
  std::vector<std::size_t> multiplicities;
  std::size_t kernel_dim = 0;
  double epsilon = 0.0;
  std::vector<double> omega;
  /// A(omega) = (1/pi) sum_k eps / ((omega - omega_k)^2 + eps^2) over all
  /// eigenvalues, the Lorentzian form of the resolvent-difference density.
  std::vector<double> density;
};

/// Requires dim <= 4^6.
SpectralReport spectrum(const Generator& g, const SpectrumOptions& opts = {});

/// Resolvent blocks of a bipartite system: G0 from the uncoupled part M0 and
/// the cross-coupling matrix V = M - M0, both dense in code order.
struct CoupledProblem {
  Generator full, uncoupled;
  Eigen::MatrixXd v;
};

CoupledProblem coupled_problem(const SpinHamiltonian& h, const CoupledSplit& split);

struct DysonResult {
  Eigen::MatrixXcd approx;
  /// ||V G0||_2
  double contraction = 0.0;
  /// ||G0||_2 ||V G0||^{K+1} / (1 - ||V G0||)
  double error_bound = 0.0;
};

/// G0 sum_{n=0..K} (V G0)^n. Throws NumericError("series divergent at this z")
/// when ||V G0||_2 >= 1.
DysonResult dyson_series(const Eigen::MatrixXcd& g0, const Eigen::MatrixXd& v, int order);

/// Inverse uncoupled propagator on the mixed sector from the two subsystem
/// inverses: g1^{-1} (x) I2 + I1 (x) g2^{-1} - z I1 I2, rows in Y code order.
Eigen::MatrixXcd mixed_propagator_inverse(const Eigen::MatrixXcd& g1_inv, const Eigen::MatrixXcd& g2_inv,
                                          std::complex<double> z, const CoupledSplit& split);

}  // namespace corrdyn
