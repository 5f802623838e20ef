#include <doctest.h>

#include <stdexcept>

#include "corrdyn/decomposition.hpp"
#include "corrdyn/oracle.hpp"

using namespace corrdyn;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

SiteOperator reduced(const DensityMatrix& rho, CellSubset a) {
  return {a, partial_trace(rho.n_sites(), rho.matrix(), a)};
}

// Builds Psi_3^a = cat(0) on sites 0,1 times spin down on site 2.
DensityMatrix psi3a() {
  const Eigen::VectorXcd psi = (basis_ket(3, 0b100) + basis_ket(3, 0b111)) / std::sqrt(2.0);
  return DensityMatrix::from_pure(3, psi);
}

}  // namespace

TEST_CASE("tensor product orders sites ascending") {
  const auto a = product_state({{0.1, 0.2, 0.3}});
  const auto b = product_state({{-0.4, 0.0, 0.5}});
  const auto ab = tensor({CellSubset::single(2), a.matrix()}, {CellSubset::single(0), b.matrix()});
  CHECK(ab.sites.mask == 0b101);
  const auto expect = product_state({{-0.4, 0.0, 0.5}, {0.1, 0.2, 0.3}});
  CHECK(max_abs(ab.matrix - expect.matrix()) < 1e-15);
  CHECK_THROWS_AS(tensor({CellSubset::single(0), a.matrix()}, {CellSubset::single(0), b.matrix()}),
                  std::invalid_argument);
}

TEST_CASE("correlated parts vanish for product states") {
  const auto rho = product_state({{0.3, 0.1, 0.5}, {0.0, -0.6, 0.2}, {0.1, 0.7, 0.1}, {0.0, 0.0, -1.0}});
  Decomposer d(rho);
  for (CellSubset a : enumerate_subsets(CellSubset::full(4)))
    if (a.size() >= 2) CHECK(max_abs(d.correlated(a).matrix) < 1e-15);
}

TEST_CASE("two-cell correlated part is rho12 minus the product") {
  const auto rho = random_mixed_state(2, 3);
  const auto c = correlated_part(rho, CellSubset::full(2));
  const auto prod = tensor(reduced(rho, CellSubset::single(0)), reduced(rho, CellSubset::single(1)));
  CHECK(max_abs(c.matrix - (rho.matrix() - prod.matrix)) < 1e-15);
  CHECK(max_abs(cumulant_part(rho, CellSubset::full(2)).matrix - c.matrix) < 1e-15);
}

TEST_CASE("four-cell correlated part by subtracting every lower term") {
  const auto rho = random_mixed_state(4, 8);
  Decomposer d(rho);
  const CellSubset full = CellSubset::full(4);
  Eigen::MatrixXcd rest = rho.matrix();
  for (CellSubset a : enumerate_subsets(full)) {
    if (a.size() == 1 || a == full) continue;
    SiteOperator term = a.empty() ? SiteOperator::scalar(1.0) : d.correlated(a);
    for (int j : (full - a).sites()) term = tensor(term, d.reduced(CellSubset::single(j)));
    rest -= term.matrix;
  }
  CHECK(max_abs(d.correlated(full).matrix - rest) < 1e-13);
}

TEST_CASE("single-cell partial traces of correlated parts vanish") {
  for (int n = 2; n <= 4; ++n) {
    Decomposer d(random_mixed_state(n, 20 + n));
    for (CellSubset a : enumerate_subsets(CellSubset::full(n))) {
      if (a.size() < 2) continue;
      const auto& c = d.correlated(a);
      for (int site : a.sites()) CHECK(max_abs(trace_down(c, a - CellSubset::single(site)).matrix) < 1e-13);
    }
  }
}

TEST_CASE("error cases") {
  const auto rho = random_mixed_state(3, 1);
  CHECK_THROWS_AS(correlated_part(rho, CellSubset::single(1)), std::invalid_argument);
  CHECK_THROWS_AS(cumulant_part(rho, CellSubset{}), std::invalid_argument);
  CHECK_THROWS_AS(connected_pair(extract_correlators(rho), 1, 1, Axis::X, Axis::X), std::invalid_argument);
  CorrelatedParts bad = all_correlated_parts(rho);
  bad.singles.pop_back();
  CHECK_THROWS_AS(reconstruct(bad), std::invalid_argument);
}

TEST_CASE("single-cell cumulant is the reduced matrix") {
  const auto rho = random_mixed_state(3, 2);
  CHECK(max_abs(cumulant_part(rho, CellSubset::single(1)).matrix -
                partial_trace(3, rho.matrix(), CellSubset::single(1))) < 1e-15);
}

TEST_CASE("reconstruction identities and term counts") {
  for (int n = 2; n <= 5; ++n) {
    const auto rho = random_mixed_state(n, 300 + n);
    const auto r = reconstruct(all_correlated_parts(rho));
    CHECK(r.terms == (std::size_t{1} << n) - n);
    CHECK(max_abs(r.matrix - rho.matrix()) < 1e-12);
    const auto rc = cumulant_reconstruct(n, all_cumulant_parts(rho));
    CHECK(rc.terms == enumerate_partitions(CellSubset::full(n)).size());
    CHECK(max_abs(rc.matrix - rho.matrix()) < 1e-12);
  }
  CHECK(reconstruct(all_correlated_parts(random_mixed_state(3, 0))).terms == 5);
  CHECK(reconstruct(all_correlated_parts(random_mixed_state(4, 0))).terms == 12);
  CHECK(cumulant_reconstruct(4, all_cumulant_parts(random_mixed_state(4, 0))).terms == 15);
}

TEST_CASE("cumulant and correlated parts agree through three cells") {
  Decomposer d(random_mixed_state(4, 44));
  for (CellSubset a : enumerate_subsets(CellSubset::full(4)))
    if (a.size() == 2 || a.size() == 3) CHECK(max_abs(d.cumulant(a).matrix - d.correlated(a).matrix) < 1e-14);
}

TEST_CASE("four-cell cumulant differs by the pair products") {
  Decomposer d(random_mixed_state(4, 45));
  auto c = [&](std::uint32_t m) { return d.correlated(CellSubset{m}); };
  const Eigen::MatrixXcd expect = c(0b1111).matrix - tensor(c(0b0011), c(0b1100)).matrix -
                                  tensor(c(0b1001), c(0b0110)).matrix - tensor(c(0b0101), c(0b1010)).matrix;
  const auto& cc = d.cumulant(CellSubset::full(4));
  CHECK(max_abs(cc.matrix - expect) < 1e-14);
  CHECK(max_abs(cc.matrix - c(0b1111).matrix) > 1e-6);
}

TEST_CASE("connected pair correlators") {
  // Equal mixture of |up up> and |right right>.
  const Eigen::MatrixXcd up = product_state({{0, 0, 1}, {0, 0, 1}}).matrix();
  const Eigen::MatrixXcd right = product_state({{1, 0, 0}, {1, 0, 0}}).matrix();
  const auto v = extract_correlators(DensityMatrix(2, 0.5 * (up + right)));
  CHECK(connected_pair(v, 0, 1, Axis::X, Axis::X) == doctest::Approx(0.25));
  CHECK(connected_pair(v, 0, 1, Axis::Z, Axis::Z) == doctest::Approx(0.25));
  CHECK(connected_pair(v, 0, 1, Axis::X, Axis::Z) == doctest::Approx(-0.25));
  CHECK(connected_pair(v, 0, 1, Axis::Z, Axis::X) == doctest::Approx(-0.25));

  const auto prod = extract_correlators(product_state({{0.2, 0.3, 0.4}, {-0.5, 0.1, 0.6}}));
  CHECK(connected_pair(prod, 0, 1, Axis::Y, Axis::Z) == doctest::Approx(0.0).epsilon(1e-15));
  const auto cat = extract_correlators(cat_state(2, 0.0));
  CHECK(connected_pair(cat, 0, 1, Axis::Z, Axis::Z) == doctest::Approx(1.0));
}

TEST_CASE("connected correlators are Pauli coefficients of the correlated part") {
  const auto rho = random_mixed_state(3, 12);
  const auto v = extract_correlators(rho);
  Decomposer d(rho);
  for (std::uint64_t c = 1; c < v.size(); ++c) {
    const auto s = string_of(3, {c});
    const CellSubset a = s.support();
    if (a.size() < 2) continue;
    PauliString local(a.size());
    int k = 0;
    for (int site : a.sites()) local.set(k++, s.axis(site));
    const double direct = (d.correlated(a).matrix * pauli_matrix(local)).trace().real();
    CHECK(connected_correlator(v, s) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("three-spin connected parts of the named states") {
  const auto a = extract_correlators(psi3a());
  const auto b = extract_correlators(ghz_state(3));
  double max_a = 0.0, max_b = 0.0;
  for (std::uint64_t c = 1; c < a.size(); ++c) {
    const auto s = string_of(3, {c});
    if (s.support().size() != 3) continue;
    max_a = std::max(max_a, std::abs(connected_correlator(a, s)));
    max_b = std::max(max_b, std::abs(connected_correlator(b, s)));
  }
  CHECK(max_a < 1e-15);
  CHECK(max_b == doctest::Approx(1.0));
  CHECK(max_abs(correlated_part(psi3a(), CellSubset::full(3)).matrix) < 1e-15);
  CHECK(max_abs(correlated_part(ghz_state(3), CellSubset::full(3)).matrix) > 0.1);
}
