#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include <Eigen/Core>

#include "corrdyn/hamiltonian.hpp"

/// Closed-form resolvent blocks of the two-spin model
/// H = (1/2)(D1 tau^x + D2 sigma^x + w tau^z sigma^z), tau on site 0 and
/// sigma on site 1. Test fixture for the generator and resolvent code.
namespace corrdyn::diagnostics {

struct TwoSpinParams {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double omega = 0.0;

  TwoSpinParams swapped() const { return {delta2, delta1, omega}; }
};

struct TwoSpinFrequencies {
  double w10, w20, w30, w21;
};

/// eps1 = sqrt(w^2 + (D1+D2)^2)/2, eps2 = sqrt(w^2 + (D1-D2)^2)/2;
/// w10 = eps1 - eps2, w20 = eps1 + eps2, w30 = 2 eps1, w21 = 2 eps2.
TwoSpinFrequencies frequencies(const TwoSpinParams& p);

SpinHamiltonian two_spin_hamiltonian(const TwoSpinParams& p);

/// Poles 0, +-i w10, +-i w20, +-i w30, +-i w21.
std::array<std::complex<double>, 9> poles(const TwoSpinParams& p);

using Block3 = Eigen::Matrix<std::complex<double>, 3, 3>;
using Block3x9 = Eigen::Matrix<std::complex<double>, 3, 9>;
using Block9x3 = Eigen::Matrix<std::complex<double>, 9, 3>;
using Block9 = Eigen::Matrix<std::complex<double>, 9, 9>;

// Axis order x, y, z. A pair index is 3 a + b with a the axis on site 0 and
// b the axis on site 1. Every evaluator throws NumericError within 1e-10 of
// a pole.

/// <tau> from <tau>.
Block3 g11(const TwoSpinParams& p, std::complex<double> z);
/// <tau> from <sigma>.
Block3 g12(const TwoSpinParams& p, std::complex<double> z);
/// <sigma> from <tau>.
Block3 g21(const TwoSpinParams& p, std::complex<double> z);
/// <sigma> from <sigma>.
Block3 g22(const TwoSpinParams& p, std::complex<double> z);
/// <tau> from pair correlators.
Block3x9 g1p(const TwoSpinParams& p, std::complex<double> z);
/// <sigma> from pair correlators.
Block3x9 g2p(const TwoSpinParams& p, std::complex<double> z);
/// Pair correlators from <tau>: -g1p(-z)^T.
Block9x3 gp1(const TwoSpinParams& p, std::complex<double> z);
/// Pair correlators from <sigma>: -g2p(-z)^T.
Block9x3 gp2(const TwoSpinParams& p, std::complex<double> z);
/// Pair correlators from pair correlators.
Block9 gpp(const TwoSpinParams& p, std::complex<double> z);

/// Correlator codes matching the block layouts above.
std::uint64_t tau_code(int axis);
std::uint64_t sigma_code(int axis);
std::uint64_t pair_code(int pair_index);

}  // namespace corrdyn::diagnostics
