#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "corrdyn/correlators.hpp"
#include "corrdyn/density.hpp"
#include "corrdyn/hamiltonian.hpp"

namespace corrdyn {

/// Dense H = sum (1/2) h_i.sigma_i + sum_{i<j} (1/2) V_ij^{mu nu} sigma_i^mu sigma_j^nu.
/// Throws SizeLimitError above the dense cap.
Eigen::MatrixXcd build_hamiltonian_matrix(const SpinHamiltonian& h);

struct EigenSystem {
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXcd vectors;  // columns are eigenvectors
};

EigenSystem diagonalize(const SpinHamiltonian& h);

/// Positive level differences E_n - E_m, ascending, with repetition.
std::vector<double> energy_differences(const EigenSystem& es);

/// rho(t) = U(t) rho0 U(t)^dagger with U = exp(-iHt) from one diagonalization.
class ExactEvolution {
 public:
  explicit ExactEvolution(const SpinHamiltonian& h);

  const EigenSystem& eigensystem() const { return es_; }
  DensityMatrix at(const DensityMatrix& rho0, double t) const;

 private:
  int n_sites_;
  EigenSystem es_;
};

std::vector<DensityMatrix> evolve_exact(const SpinHamiltonian& h, const DensityMatrix& rho0,
                                        const std::vector<double>& times);
Trajectory correlator_trajectory(const SpinHamiltonian& h, const DensityMatrix& rho0,
                                 const std::vector<double>& times);

// Initial-state builders. Site 0 is the first ket label; "up" is bit 0.

/// Tensor product of single-spin states (1 + b.sigma)/2; |b| <= 1.
DensityMatrix product_state(const std::vector<Eigen::Vector3d>& bloch);
/// (|up...up> + e^{i phi} |down...down>)/sqrt2 on n >= 2 sites.
DensityMatrix cat_state(int n_sites, double phi);
/// cat_state(n, 0).
DensityMatrix ghz_state(int n_sites);
/// Equal superposition of the n states with exactly one spin up.
DensityMatrix w_state(int n_sites);
/// Basis ket with bit i set when site i is down.
Eigen::VectorXcd basis_ket(int n_sites, std::uint32_t down_mask);

/// Gaussian-random normalized pure state.
DensityMatrix random_pure_state(int n_sites, std::uint64_t seed);
/// Full-rank Ginibre-random mixed state G G^dagger / tr.
DensityMatrix random_mixed_state(int n_sites, std::uint64_t seed);
/// All-to-all random fields and coupling tensors with Gaussian entries of the
/// given scales.
SpinHamiltonian random_hamiltonian(int n_sites, std::uint64_t seed, double field_scale = 1.0,
                                   double coupling_scale = 1.0);

}  // namespace corrdyn
