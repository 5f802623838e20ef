#pragma once

#include <array>

#include <Eigen/Core>

#include "corrdyn/combinatorics.hpp"
#include "corrdyn/correlators.hpp"

namespace corrdyn {

/// Largest site count for any dense 2^N x 2^N work.
inline constexpr int kMaxDenseSites = 12;

/// Throws SizeLimitError when n_sites exceeds the dense cap.
void require_dense_size(int n_sites);

/// Hermitian, unit-trace 2^N x 2^N matrix. Site i is bit i of the basis
/// index; bit value 0 is spin up. Positivity is not enforced.
class DensityMatrix {
 public:
  /// Validates shape, hermiticity and trace (to 1e-10) and symmetrizes away
  /// the residual anti-Hermitian part. Throws std::invalid_argument.
  DensityMatrix(int n_sites, Eigen::MatrixXcd data);

  /// Projector onto a normalized copy of `psi`.
  static DensityMatrix from_pure(int n_sites, const Eigen::VectorXcd& psi);

  int n_sites() const { return n_sites_; }
  Eigen::Index dim() const { return data_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return data_; }

 private:
  int n_sites_;
  Eigen::MatrixXcd data_;
};

/// rho = 2^-N sum_c v_c P_c, computed with a per-flip Walsh-Hadamard
/// transform in O(N 4^N).
DensityMatrix from_correlators(const CorrelatorVector& v);

/// values[c] = tr(rho P_c).
CorrelatorVector extract_correlators(const DensityMatrix& rho);
/// Same for a raw matrix; throws std::invalid_argument unless tr m = 1.
CorrelatorVector extract_correlators(int n_sites, const Eigen::MatrixXcd& m);

/// Reduced matrix on `keep` (sites renumbered in ascending order). An empty
/// `keep` yields the 1x1 matrix [tr rho].
Eigen::MatrixXcd partial_trace(int n_sites, const Eigen::MatrixXcd& m, CellSubset keep);
DensityMatrix partial_trace(const DensityMatrix& rho, CellSubset keep);

/// Restriction of a correlator vector to strings supported inside `keep`,
/// re-indexed on |keep| sites.
CorrelatorVector restrict_correlators(const CorrelatorVector& v, CellSubset keep);

double purity(const DensityMatrix& rho);
double purity_from_correlators(const CorrelatorVector& v);

/// Residuals of the four two-qubit pure-state constraints, site 0 playing
/// spin 1: the norm sum rule, the two vector contractions and the tensor
/// identity. The last three are max-abs over their components.
std::array<double, 4> check_pure_two_qubit(const CorrelatorVector& v);

struct PositivityReport {
  double min_eigenvalue;
  bool is_positive;
};

PositivityReport diagnose_positivity(const DensityMatrix& rho);

}  // namespace corrdyn
