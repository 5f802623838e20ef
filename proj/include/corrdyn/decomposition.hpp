#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "corrdyn/combinatorics.hpp"
#include "corrdyn/correlators.hpp"
#include "corrdyn/density.hpp"

namespace corrdyn {

/// An operator on the Hilbert space of `sites` alone. Local basis bit k
/// belongs to the k-th smallest member of `sites`.
struct SiteOperator {
  CellSubset sites;
  Eigen::MatrixXcd matrix;

  static SiteOperator scalar(std::complex<double> value);
};

/// Tensor product over disjoint site sets; the result lives on a | b with
/// the usual ascending site order.
SiteOperator tensor(const SiteOperator& a, const SiteOperator& b);

/// Partial trace of a SiteOperator down to `keep` (must be inside op.sites).
SiteOperator trace_down(const SiteOperator& op, CellSubset keep);

/// Memoizing view of one density matrix: reduced matrices, correlated parts
/// and cumulant parts for any subset, each computed once.
class Decomposer {
 public:
  explicit Decomposer(DensityMatrix rho);

  int n_sites() const { return rho_.n_sites(); }
  const DensityMatrix& rho() const { return rho_; }

  /// Reduced density matrix rho-bar on `a` (a may be empty).
  const SiteOperator& reduced(CellSubset a);
  /// Entanglement-correlated part; |a| >= 2 or std::invalid_argument.
  const SiteOperator& correlated(CellSubset a);
  /// Cumulant part; |a| >= 1 or std::invalid_argument.
  const SiteOperator& cumulant(CellSubset a);

 private:
  void check(CellSubset a) const;

  DensityMatrix rho_;
  std::vector<std::optional<SiteOperator>> reduced_, correlated_, cumulant_;
};

SiteOperator correlated_part(const DensityMatrix& rho, CellSubset a);
SiteOperator cumulant_part(const DensityMatrix& rho, CellSubset a);

/// Inputs to the subset-sum reconstruction: the single-site reduced
/// matrices and a correlated part for every subset of size >= 2.
struct CorrelatedParts {
  int n_sites = 0;
  std::vector<Eigen::MatrixXcd> singles;
  std::vector<SiteOperator> parts;
};

CorrelatedParts all_correlated_parts(const DensityMatrix& rho);
/// Cumulant parts for every nonempty subset, in increasing mask order.
std::vector<SiteOperator> all_cumulant_parts(const DensityMatrix& rho);

struct Reconstruction {
  Eigen::MatrixXcd matrix;
  std::size_t terms = 0;
};

/// sum over subsets A of (prod_{j not in A} rho-bar_j) rho^C_A, counting the
/// empty set once (the full product) and skipping single sites.
Reconstruction reconstruct(const CorrelatedParts& parts);
/// sum over partitions of the full set of the product of block cumulants.
Reconstruction cumulant_reconstruct(int n_sites, const std::vector<SiteOperator>& parts);

/// <s_i^mu s_j^nu> - <s_i^mu><s_j^nu>.
double connected_pair(const CorrelatorVector& v, int i, int j, Axis mu, Axis nu);

/// Pauli coefficient tr(rho^C_A P) of the correlated part on the support A
/// of a Cartesian string, evaluated directly on correlators. Strings with
/// one site return their plain expectation value.
double connected_correlator(const CorrelatorVector& v, const PauliString& s);

}  // namespace corrdyn
