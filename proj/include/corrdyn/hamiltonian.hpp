#pragma once

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace corrdyn {

/// H = sum_i (1/2) h_i . sigma_i + sum_{i<j} (1/2) V_ij^{mu nu} sigma_i^mu sigma_j^nu,
/// with hbar = 1; fields and couplings are angular frequencies.
class SpinHamiltonian {
 public:
  explicit SpinHamiltonian(int n_sites);

  int n_sites() const { return n_sites_; }

  void set_field(int site, const Eigen::Vector3d& h);
  const Eigen::Vector3d& field(int site) const { return fields_.at(site); }

  /// Adds to the tensor of the pair. Reversed sites store the transpose, so
  /// coupling(j, i) == coupling(i, j)^T always holds.
  void add_coupling(int i, int j, const Eigen::Matrix3d& v);
  /// Zero when the pair is uncoupled.
  Eigen::Matrix3d coupling(int i, int j) const;
  bool coupled(int i, int j) const;
  /// Stored pairs, keyed with i < j.
  const std::map<std::pair<int, int>, Eigen::Matrix3d>& couplings() const { return couplings_; }

 private:
  void check_site(int site) const;

  int n_sites_;
  std::vector<Eigen::Vector3d> fields_;
  std::map<std::pair<int, int>, Eigen::Matrix3d> couplings_;
};

}  // namespace corrdyn
