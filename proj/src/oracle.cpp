#include "corrdyn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "corrdyn/pauli.hpp"

namespace corrdyn {

using cplx = std::complex<double>;

Eigen::MatrixXcd build_hamiltonian_matrix(const SpinHamiltonian& h) {
  const int n = h.n_sites();
  require_dense_size(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  // Each Pauli string is applied through its bit action, so the cost is
  // O(terms * 2^N) rather than dense Kronecker products.
  auto add_string = [&](double coeff, std::uint64_t code) {
    if (coeff == 0.0) return;
    const PauliAction act = PauliAction::of(code, n);
    for (Eigen::Index b = 0; b < dim; ++b)
      m(static_cast<std::uint32_t>(b) ^ act.flip, b) += coeff * act.phase(static_cast<std::uint32_t>(b));
  };
  for (int i = 0; i < n; ++i)
    for (int a = 1; a <= 3; ++a) add_string(0.5 * h.field(i)(a - 1), code::with_digit(0, i, a));
  for (const auto& [pair, v] : h.couplings())
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b)
        add_string(0.5 * v(a - 1, b - 1), code::with_digit(code::with_digit(0, pair.first, a), pair.second, b));
  return m;
}

EigenSystem diagonalize(const SpinHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(build_hamiltonian_matrix(h));
  if (es.info() != Eigen::Success) throw std::runtime_error("Hamiltonian diagonalization failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

std::vector<double> energy_differences(const EigenSystem& es) {
  std::vector<double> out;
  const auto& e = es.energies;
  for (Eigen::Index i = 0; i < e.size(); ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (e(i) - e(j) > 0.0) out.push_back(e(i) - e(j));
  std::sort(out.begin(), out.end());
  return out;
}

ExactEvolution::ExactEvolution(const SpinHamiltonian& h) : n_sites_(h.n_sites()), es_(diagonalize(h)) {}

DensityMatrix ExactEvolution::at(const DensityMatrix& rho0, double t) const {
  if (rho0.n_sites() != n_sites_) throw std::invalid_argument("state and Hamiltonian site counts differ");
  const Eigen::VectorXcd phases = (es_.energies.cast<cplx>() * cplx(0, -t)).array().exp();
  const Eigen::MatrixXcd u = es_.vectors * phases.asDiagonal() * es_.vectors.adjoint();
  return DensityMatrix(n_sites_, u * rho0.matrix() * u.adjoint());
}

std::vector<DensityMatrix> evolve_exact(const SpinHamiltonian& h, const DensityMatrix& rho0,
                                        const std::vector<double>& times) {
  ExactEvolution ev(h);
  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(ev.at(rho0, t));
  return out;
}

Trajectory correlator_trajectory(const SpinHamiltonian& h, const DensityMatrix& rho0,
                                 const std::vector<double>& times) {
  ExactEvolution ev(h);
  Trajectory out;
  for (double t : times) {
    out.times.push_back(t);
    out.states.push_back(extract_correlators(ev.at(rho0, t)));
  }
  return out;
}

DensityMatrix product_state(const std::vector<Eigen::Vector3d>& bloch) {
  const int n = static_cast<int>(bloch.size());
  require_dense_size(n);
  if (n == 0) throw std::invalid_argument("product state needs at least one site");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Ones(1, 1);
  for (int site = 0; site < n; ++site) {
    const Eigen::Vector3d& b = bloch[site];
    if (!b.allFinite() || b.norm() > 1.0 + 1e-12) throw std::invalid_argument("Bloch vector longer than 1");
    Eigen::Matrix2cd r;
    r << 0.5 * (1 + b.z()), 0.5 * cplx(b.x(), -b.y()), 0.5 * cplx(b.x(), b.y()), 0.5 * (1 - b.z());
    Eigen::MatrixXcd next(2 * m.rows(), 2 * m.cols());
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c) next.block(a * m.rows(), c * m.cols(), m.rows(), m.cols()) = r(a, c) * m;
    m = std::move(next);
  }
  return DensityMatrix(n, std::move(m));
}

Eigen::VectorXcd basis_ket(int n_sites, std::uint32_t down_mask) {
  require_dense_size(n_sites);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_sites);
  v(down_mask) = 1.0;
  return v;
}

DensityMatrix cat_state(int n_sites, double phi) {
  if (n_sites < 2) throw std::invalid_argument("cat state needs at least 2 sites");
  const Eigen::VectorXcd psi = basis_ket(n_sites, 0) + std::polar(1.0, phi) * basis_ket(n_sites, (1u << n_sites) - 1);
  return DensityMatrix::from_pure(n_sites, psi);
}

DensityMatrix ghz_state(int n_sites) { return cat_state(n_sites, 0.0); }

DensityMatrix w_state(int n_sites) {
  if (n_sites < 2) throw std::invalid_argument("W state needs at least 2 sites");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_sites);
  const std::uint32_t all_down = (1u << n_sites) - 1;
  for (int up = 0; up < n_sites; ++up) psi += basis_ket(n_sites, all_down & ~(1u << up));
  return DensityMatrix::from_pure(n_sites, psi);
}

namespace {

Eigen::MatrixXcd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = g(rng);
      m(r, c) = cplx(re, g(rng));
    }
  return m;
}

}  // namespace

DensityMatrix random_pure_state(int n_sites, std::uint64_t seed) {
  require_dense_size(n_sites);
  std::mt19937_64 rng(seed);
  return DensityMatrix::from_pure(n_sites, gaussian_matrix(Eigen::Index{1} << n_sites, 1, rng).col(0));
}

DensityMatrix random_mixed_state(int n_sites, std::uint64_t seed) {
  require_dense_size(n_sites);
  std::mt19937_64 rng(seed);
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  const Eigen::MatrixXcd g = gaussian_matrix(dim, dim, rng);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(n_sites, std::move(rho));
}

SpinHamiltonian random_hamiltonian(int n_sites, std::uint64_t seed, double field_scale, double coupling_scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  SpinHamiltonian h(n_sites);
  for (int i = 0; i < n_sites; ++i) {
    Eigen::Vector3d f;
    for (int a = 0; a < 3; ++a) f(a) = field_scale * g(rng);
    h.set_field(i, f);
  }
  for (int i = 0; i < n_sites; ++i)
    for (int j = i + 1; j < n_sites; ++j) {
      Eigen::Matrix3d v;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) v(a, b) = coupling_scale * g(rng);
      h.add_coupling(i, j, v);
    }
  return h;
}

}  // namespace corrdyn
