#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "corrdyn/errors.hpp"
#include "corrdyn/hierarchy.hpp"
#include "corrdyn/oracle.hpp"

using namespace corrdyn;

namespace {

// Generator from the Heisenberg-picture commutator expanded in the Pauli basis.
Eigen::MatrixXd dense_generator(const SpinHamiltonian& h) {
  const int n = h.n_sites();
  const Eigen::MatrixXcd hm = build_hamiltonian_matrix(h);
  const std::uint64_t dim = code::dimension(n);
  std::vector<Eigen::MatrixXcd> p(dim);
  for (std::uint64_t c = 0; c < dim; ++c) p[c] = pauli_matrix(string_of(n, {c}));
  const std::complex<double> i(0.0, 1.0);
  const double norm = std::ldexp(1.0, -n);
  Eigen::MatrixXd m(dim, dim);
  for (std::uint64_t c = 0; c < dim; ++c) {
    const Eigen::MatrixXcd comm = i * (hm * p[c] - p[c] * hm);
    for (std::uint64_t d = 0; d < dim; ++d) {
      const std::complex<double> v = (comm * p[d]).trace() * norm;
      CHECK(std::abs(v.imag()) < 1e-12);
      m(c, d) = v.real();
    }
  }
  return m;
}

double coeff(const Generator& g, int n, const char* row, const char* col) {
  return g.matrix.coeff(index_of(parse_pauli_string(row, n)).code, index_of(parse_pauli_string(col, n)).code);
}

}  // namespace

TEST_CASE("free static spins have a zero generator") {
  const auto g = build_generator(SpinHamiltonian(3));
  CHECK(g.dim() == 64);
  CHECK(g.matrix.nnz() == 0);
}

TEST_CASE("Larmor row of a lone spin") {
  SpinHamiltonian h(1);
  h.set_field(0, {0.0, 0.0, 1.7});
  const auto g = build_generator(h);
  CHECK(coeff(g, 1, "x0", "y0") == doctest::Approx(-1.7));
  CHECK(coeff(g, 1, "y0", "x0") == doctest::Approx(1.7));
  CHECK(g.matrix.nnz() == 2);
  const auto rows = single_site_row(h, 0);
  REQUIRE(rows[0].size() == 1);
  CHECK(rows[0][0].first == 2);
  CHECK(rows[0][0].second == doctest::Approx(-1.7));
}

TEST_CASE("single zz coupling feeds the x row from the yz pair") {
  SpinHamiltonian h(2);
  Eigen::Matrix3d v = Eigen::Matrix3d::Zero();
  v(2, 2) = 0.9;
  h.add_coupling(0, 1, v);
  const auto row = single_site_row(h, 0)[0];
  REQUIRE(row.size() == 1);
  CHECK(row[0].first == index_of(parse_pauli_string("y0 z1", 2)).code);
  CHECK(row[0].second == doctest::Approx(-0.9));
}

TEST_CASE("single-site rows match the full generator") {
  const auto h = random_hamiltonian(4, 7);
  const auto g = build_generator(h);
  for (int site = 0; site < 4; ++site) {
    const auto rows = single_site_row(h, site);
    for (int mu = 0; mu < 3; ++mu) {
      const std::uint64_t target = std::uint64_t(mu + 1) << (2 * site);
      CHECK(rows[mu] == generator_row(h, target));
      for (const auto& [col, val] : rows[mu]) CHECK(g.matrix.coeff(target, col) == val);
    }
  }
}

TEST_CASE("generator agrees with the dense commutator route") {
  for (int n = 1; n <= 4; ++n) {
    const auto h = random_hamiltonian(n, 100 + n);
    const Eigen::MatrixXd expect = dense_generator(h);
    const Eigen::MatrixXd got = build_generator(h).matrix.to_dense();
    CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("generator is antisymmetric with an empty identity row and column") {
  for (int n = 1; n <= 6; ++n) {
    const auto g = build_generator(random_hamiltonian(n, 50 + n));
    const CsrMatrix t = g.matrix.transpose();
    double worst = 0.0;
    for (std::size_t r = 0; r < g.dim(); ++r) {
      for (std::uint64_t k = g.matrix.row_ptr()[r]; k < g.matrix.row_ptr()[r + 1]; ++k)
        worst = std::max(worst, std::abs(g.matrix.values()[k] + t.coeff(r, g.matrix.cols()[k])));
    }
    CHECK(worst < 1e-12);
    CHECK(g.matrix.row_ptr()[1] == 0);
    CHECK(t.row_ptr()[1] == 0);
  }
}

TEST_CASE("generator matches oracle finite differences at t = 0") {
  const auto h = random_hamiltonian(3, 4);
  const auto rho = random_pure_state(3, 5);
  const double step = 1e-5;
  const auto traj = correlator_trajectory(h, rho, {-step, 0.0, step});
  const auto g = build_generator(h);
  Eigen::VectorXd x(g.dim());
  for (std::size_t k = 0; k < g.dim(); ++k) x[k] = traj.states[1][k];
  const Eigen::VectorXd dx = g.matrix * x;
  for (std::size_t k = 0; k < g.dim(); ++k) {
    const double fd = (traj.states[2][k] - traj.states[0][k]) / (2 * step);
    CHECK(std::abs(dx[k] - fd) < 1e-6);
  }
}

TEST_CASE("row sparsity bound and decreasing fill") {
  double previous_fill = 1.0;
  for (int n = 2; n <= 6; ++n) {
    const auto g = build_generator(random_hamiltonian(n, 9 + n));
    for (std::size_t r = 1; r < g.dim(); ++r) {
      const int k = code::support(r).size();
      const auto nnz = g.matrix.row_ptr()[r + 1] - g.matrix.row_ptr()[r];
      CHECK(nnz <= std::uint64_t(2 * (3 * k + 9 * k * k + 9 * k * (n - k))));
    }
    const double fill = double(g.matrix.nnz()) / (double(g.dim()) * double(g.dim()));
    CHECK(fill < previous_fill);
    previous_fill = fill;
  }
}

TEST_CASE("generator entries are plus or minus Hamiltonian parameters") {
  SpinHamiltonian h(2);
  h.set_field(0, {0.5, 0.0, 0.0});
  h.set_field(1, {0.0, 0.25, 0.0});
  h.add_coupling(0, 1, Eigen::Matrix3d::Identity() * 0.125);
  const auto g = build_generator(h);
  for (double v : g.matrix.values()) {
    const double a = std::abs(v);
    CHECK((a == 0.5 || a == 0.25 || a == 0.125));
  }
}

TEST_CASE("sector splits") {
  const auto s11 = split_sectors(2, CellSubset::single(0));
  CHECK(s11.sector(Sector::X1).size() == 3);
  CHECK(s11.sector(Sector::X2).size() == 3);
  CHECK(s11.sector(Sector::Y).size() == 9);
  const auto s21 = split_sectors(3, CellSubset{0b011});
  CHECK(s21.sector(Sector::X1).size() == 15);
  CHECK(s21.sector(Sector::X2).size() == 3);
  CHECK(s21.sector(Sector::Y).size() == 45);
  CHECK(s21.classify(index_of(parse_pauli_string("x0 y1", 3)).code) == Sector::X1);
  CHECK(s21.classify(index_of(parse_pauli_string("z2", 3)).code) == Sector::X2);
  CHECK(s21.classify(index_of(parse_pauli_string("x1 z2", 3)).code) == Sector::Y);
  CHECK_THROWS_AS(split_sectors(3, CellSubset::full(3)), std::invalid_argument);
  CHECK_THROWS_AS(split_sectors(3, CellSubset{}), std::invalid_argument);
}

TEST_CASE("block layout round trip") {
  const auto h = random_hamiltonian(3, 77);
  const auto g = build_generator(h);
  const auto split = split_sectors(3, CellSubset::single(0));
  const auto blocks = block_structure(g, split);
  CHECK(blocks(Sector::X1, Sector::X2).cwiseAbs().maxCoeff() == 0.0);
  CHECK(blocks(Sector::X2, Sector::X1).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::MatrixXd back = assemble_blocks(blocks, split);
  CHECK((back - g.matrix.to_dense()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("couplings inside system one leave the mixed sector isolated") {
  SpinHamiltonian h(3);
  h.add_coupling(0, 1, Eigen::Matrix3d::Random());
  h.set_field(2, {0.3, -0.2, 0.1});
  const auto split = split_sectors(3, CellSubset{0b011});
  const auto b = block_structure(build_generator(h), split);
  CHECK(b(Sector::X1, Sector::Y).cwiseAbs().maxCoeff() == 0.0);
  CHECK(b(Sector::Y, Sector::X1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(b(Sector::X2, Sector::Y).cwiseAbs().maxCoeff() == 0.0);
  CHECK(b(Sector::Y, Sector::X2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("direct coupling between pure sectors is rejected") {
  Generator g{2, CsrMatrix::from_triplets(16, {{1, 4, 1.0}, {4, 1, -1.0}})};
  CHECK_THROWS_WITH_AS(block_structure(g, split_sectors(2, CellSubset::single(0))),
                       "Hamiltonian violates pairwise sector structure", std::invalid_argument);
}

TEST_CASE("uncoupled part drops only cross couplings") {
  const auto h = random_hamiltonian(3, 5);
  const auto split = split_sectors(3, CellSubset::single(2));
  const auto u = uncoupled_part(h, split);
  CHECK(u.coupled(0, 1));
  CHECK_FALSE(u.coupled(0, 2));
  CHECK_FALSE(u.coupled(1, 2));
  CHECK((u.field(2) - h.field(2)).norm() == 0.0);
}

namespace {

double residual_at(const SpinHamiltonian& h, const DensityMatrix& rho, double dt, CellSubset a) {
  std::vector<double> times;
  for (int k = 0; k < 5; ++k) times.push_back(0.3 + k * dt);
  return reduced_eom_residual(h, evolve_exact(h, rho, times), dt, a);
}

}  // namespace

TEST_CASE("reduced equation of motion residual converges quadratically") {
  const auto h = random_hamiltonian(3, 31);
  const auto rho = random_pure_state(3, 32);
  for (std::uint32_t mask : {0b011u, 0b001u, 0b111u}) {
    const double r1 = residual_at(h, rho, 1e-3, CellSubset{mask});
    const double r2 = residual_at(h, rho, 5e-4, CellSubset{mask});
    CHECK(r1 < 1e-4);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.1));
  }
  SpinHamiltonian free(3);
  free.set_field(1, {0.4, 0.9, -0.3});
  CHECK(residual_at(free, rho, 1e-3, CellSubset{0b010}) < 1e-6);
  CHECK_THROWS_AS(reduced_eom_residual(h, evolve_exact(h, rho, {0.0, 0.1}), 0.1, CellSubset{1}),
                  std::invalid_argument);
}
