#include "corrdyn/hamiltonian.hpp"

#include <stdexcept>
#include <string>

#include "corrdyn/combinatorics.hpp"

namespace corrdyn {

SpinHamiltonian::SpinHamiltonian(int n_sites) : n_sites_(n_sites) {
  if (n_sites < 1 || n_sites > kMaxSites) throw std::invalid_argument("site count out of range");
  fields_.assign(n_sites, Eigen::Vector3d::Zero());
}

void SpinHamiltonian::check_site(int site) const {
  if (site < 0 || site >= n_sites_) throw std::invalid_argument("site " + std::to_string(site) + " out of range");
}

void SpinHamiltonian::set_field(int site, const Eigen::Vector3d& h) {
  check_site(site);
  if (!h.allFinite()) throw std::invalid_argument("field must be finite");
  fields_[site] = h;
}

void SpinHamiltonian::add_coupling(int i, int j, const Eigen::Matrix3d& v) {
  check_site(i);
  check_site(j);
  if (i == j) throw std::invalid_argument("self-coupling is not allowed");
  if (!v.allFinite()) throw std::invalid_argument("coupling must be finite");
  auto key = std::minmax(i, j);
  auto [it, inserted] = couplings_.try_emplace({key.first, key.second}, Eigen::Matrix3d::Zero());
  it->second += (i < j) ? v : Eigen::Matrix3d(v.transpose());
}

Eigen::Matrix3d SpinHamiltonian::coupling(int i, int j) const {
  auto it = couplings_.find({std::min(i, j), std::max(i, j)});
  if (it == couplings_.end()) return Eigen::Matrix3d::Zero();
  return i < j ? it->second : Eigen::Matrix3d(it->second.transpose());
}

bool SpinHamiltonian::coupled(int i, int j) const {
  return couplings_.count({std::min(i, j), std::max(i, j)}) != 0;
}

}  // namespace corrdyn
