#include <doctest.h>

#include <stdexcept>

#include <random>

#include "corrdyn/analytic2.hpp"
#include "corrdyn/dynamics.hpp"
#include "corrdyn/errors.hpp"
#include "corrdyn/oracle.hpp"

using namespace corrdyn;
using namespace corrdyn::diagnostics;
using cplx = std::complex<double>;

namespace {

using CodeFn = std::uint64_t (*)(int);

template <class Block>
double block_error(const Block& analytic, const Eigen::MatrixXcd& r, CodeFn rows, CodeFn cols) {
  double worst = 0.0;
  for (Eigen::Index a = 0; a < analytic.rows(); ++a)
    for (Eigen::Index b = 0; b < analytic.cols(); ++b)
      worst = std::max(worst, std::abs(analytic(a, b) - r(rows(int(a)), cols(int(b)))));
  return worst;
}

double all_blocks_error(const TwoSpinParams& p, cplx z) {
  const Eigen::MatrixXcd r = resolvent(build_generator(two_spin_hamiltonian(p)), z);
  return std::max({block_error(g11(p, z), r, tau_code, tau_code), block_error(g12(p, z), r, tau_code, sigma_code),
                   block_error(g21(p, z), r, sigma_code, tau_code), block_error(g22(p, z), r, sigma_code, sigma_code),
                   block_error(g1p(p, z), r, tau_code, pair_code), block_error(g2p(p, z), r, sigma_code, pair_code),
                   block_error(gp1(p, z), r, pair_code, tau_code), block_error(gp2(p, z), r, pair_code, sigma_code),
                   block_error(gpp(p, z), r, pair_code, pair_code)});
}

}  // namespace

TEST_CASE("block codes") {
  CHECK(tau_code(0) == index_of(parse_pauli_string("x0", 2)).code);
  CHECK(sigma_code(2) == index_of(parse_pauli_string("z1", 2)).code);
  CHECK(pair_code(5) == index_of(parse_pauli_string("y0 z1", 2)).code);
}

TEST_CASE("frequencies and poles") {
  const TwoSpinParams p{0.8, 0.6, 1.0};
  const auto f = frequencies(p);
  CHECK(f.w30 == doctest::Approx(std::sqrt(2.96)));
  CHECK(f.w21 == doctest::Approx(std::sqrt(1.04)));
  CHECK(f.w20 - f.w10 == doctest::Approx(f.w21));
  const auto ediff = energy_differences(diagonalize(two_spin_hamiltonian(p)));
  std::vector<double> expect{f.w10, f.w10, f.w20, f.w20, f.w30, f.w21};
  std::sort(expect.begin(), expect.end());
  REQUIRE(ediff.size() == 6);
  for (int k = 0; k < 6; ++k) CHECK(ediff[k] == doctest::Approx(expect[k]).epsilon(1e-12));
}

TEST_CASE("closed-form blocks match the numerical resolvent") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const TwoSpinParams p{u(rng), u(rng), u(rng)};
    const cplx z(u(rng), u(rng));
    CHECK(all_blocks_error(p, z) < 1e-10);
  }
}

TEST_CASE("closed-form blocks at degenerate and decoupled parameters") {
  CHECK(all_blocks_error({0.7, 0.7, 0.4}, cplx(0.3, 0.2)) < 1e-10);
  CHECK(all_blocks_error({0.5, 0.9, 0.0}, cplx(-0.1, 0.6)) < 1e-10);
  CHECK(all_blocks_error({0.0, 0.0, 1.1}, cplx(0.4, -0.3)) < 1e-10);
}

TEST_CASE("swap and reflection identities") {
  const TwoSpinParams p{0.9, -0.4, 0.6};
  const cplx z(0.35, 0.8);
  CHECK((gp1(p, z) + g1p(p, -z).transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((gp2(p, z) + g2p(p, -z).transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((g22(p, z) - g11(p.swapped(), z)).cwiseAbs().maxCoeff() < 1e-14);
  // The same reflection holds for the numerical resolvent of any real
  // antisymmetric generator.
  const auto g = build_generator(two_spin_hamiltonian(p));
  const Eigen::MatrixXcd a = resolvent(g, z), b = resolvent(g, -z);
  CHECK((a + b.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("evaluating on a pole is an error") {
  const TwoSpinParams p{0.8, 0.6, 1.0};
  for (cplx pole : poles(p)) CHECK_THROWS_AS(gpp(p, pole), NumericError);
  CHECK_THROWS_AS(g11(p, cplx(0.0, frequencies(p).w30 + 1e-12)), NumericError);
}
