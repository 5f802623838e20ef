#include <doctest.h>

#include <stdexcept>

#include <random>

#include "corrdyn/correlators.hpp"
#include "corrdyn/errors.hpp"
#include "corrdyn/oracle.hpp"
#include "corrdyn/pauli.hpp"

using namespace corrdyn;
using cplx = std::complex<double>;

namespace {

PauliString random_string(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 3);
  PauliString s(n);
  for (int i = 0; i < n; ++i) s.set(i, static_cast<Axis>(d(rng)));
  return s;
}

}  // namespace

TEST_CASE("single-site products") {
  PauliString x(1), y(1), z(1);
  x.set(0, Axis::X);
  y.set(0, Axis::Y);
  z.set(0, Axis::Z);
  auto p = multiply(x, y);
  CHECK(p.phase == cplx(0, 1));
  CHECK(p.result == z);
  auto q = multiply(y, x);
  CHECK(q.phase == cplx(0, -1));
  CHECK(q.result == z);
}

TEST_CASE("identity and involution") {
  PauliString id(2);
  PauliString s = parse_pauli_string("x0 z1", 2);
  auto p = multiply(id, s);
  CHECK(p.phase == cplx(1, 0));
  CHECK(p.result == s);
  auto q = multiply(s, s);
  CHECK(q.phase == cplx(1, 0));
  CHECK(q.result.is_identity());
}

TEST_CASE("products agree with dense matrices and are associative") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 4;
    auto a = random_string(n, rng), b = random_string(n, rng), c = random_string(n, rng);
    auto ab = multiply(a, b);
    CHECK((pauli_matrix(a) * pauli_matrix(b) - ab.phase * pauli_matrix(ab.result)).cwiseAbs().maxCoeff() < 1e-14);
    auto ab_c = multiply(ab.result, c);
    auto bc = multiply(b, c);
    auto a_bc = multiply(a, bc.result);
    CHECK(ab_c.result == a_bc.result);
    CHECK(std::abs(ab.phase * ab_c.phase - bc.phase * a_bc.phase) < 1e-15);
  }
}

TEST_CASE("Levi-Civita symbol") {
  CHECK(epsilon(Axis::X, Axis::Y, Axis::Z) == 1);
  CHECK(epsilon(Axis::Y, Axis::Z, Axis::X) == 1);
  CHECK(epsilon(Axis::Y, Axis::X, Axis::Z) == -1);
  CHECK(epsilon(Axis::X, Axis::X, Axis::Z) == 0);
  CHECK_THROWS_WITH_AS(epsilon(Axis::Plus, Axis::X, Axis::Z), "epsilon: Cartesian only", std::invalid_argument);
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 3; ++c) {
        CHECK(epsilon(a, b, c) == -epsilon(b, a, c));
        CHECK(epsilon(a, b, c) == -epsilon(a, c, b));
      }
}

TEST_CASE("index map examples and bijection") {
  CHECK(index_of(PauliString(2)).code == 0);
  CHECK(index_of(parse_pauli_string("x0", 2)).code == 1);
  CHECK(index_of(parse_pauli_string("z0 y1", 2)).code == 11);
  for (std::uint64_t c = 0; c < code::dimension(3); ++c) CHECK(index_of(string_of(3, {c})).code == c);
  CHECK_THROWS_AS(string_of(2, {16}), std::out_of_range);
}

TEST_CASE("ladder trace orthogonality") {
  const Axis bars[] = {Axis::Plus, Axis::Minus, Axis::Z};
  for (Axis a : bars)
    for (Axis b : bars) {
      PauliString pa(1), pb(1);
      pa.set(0, a);
      pb.set(0, b);
      // tr(sigma^a (sigma^b)^dagger) = 2 delta_ab for the barred set.
      const cplx tr = (pauli_matrix(pa) * pauli_matrix(pb).adjoint()).trace();
      CHECK(std::abs(tr - cplx(a == b ? 2.0 : 0.0)) < 1e-15);
    }
}

TEST_CASE("text grammar") {
  auto s = parse_pauli_string("x0 z2", 3);
  CHECK(s.axis(0) == Axis::X);
  CHECK(s.axis(1) == Axis::I);
  CHECK(s.axis(2) == Axis::Z);
  CHECK(s.to_string() == "x0 z2");
  CHECK(parse_pauli_string("", 2).is_identity());
  CHECK(parse_pauli_string("  ", 2).is_identity());
  CHECK(parse_pauli_string("+1 -0", 2).axis(1) == Axis::Plus);
  CHECK_THROWS_AS(parse_pauli_string("q0", 2), ParseError);
  CHECK_THROWS_AS(parse_pauli_string("x", 2), ParseError);
  CHECK_THROWS_AS(parse_pauli_string("x5", 2), ParseError);
  CHECK_THROWS_AS(parse_pauli_string("x0y1", 2), ParseError);
  try {
    parse_pauli_string("z0 z0", 2);
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("duplicate site 0") != std::string::npos);
  }
}

TEST_CASE("bit action reproduces dense matrices") {
  for (std::uint64_t c = 0; c < code::dimension(3); ++c) {
    const auto act = PauliAction::of(c, 3);
    const auto m = pauli_matrix(string_of(3, {c}));
    for (std::uint32_t b = 0; b < 8; ++b) CHECK(std::abs(m(b ^ act.flip, b) - act.phase(b)) < 1e-15);
  }
}

TEST_CASE("ladder conversion") {
  auto v = CorrelatorVector::maximally_mixed(1);
  v.set(CorrelatorIndex{1}, 1.0);
  auto l = to_ladder(v);
  const double r = 1 / std::sqrt(2.0);
  PauliString plus(1), minus(1);
  plus.set(0, Axis::Plus);
  minus.set(0, Axis::Minus);
  CHECK(std::abs(l.at(plus) - cplx(r)) < 1e-15);
  CHECK(std::abs(l.at(minus) - cplx(r)) < 1e-15);

  auto zero = to_ladder(CorrelatorVector::maximally_mixed(2));
  for (std::size_t c = 1; c < zero.values.size(); ++c) CHECK(zero.values[c] == cplx(0));

  const auto rnd = extract_correlators(random_mixed_state(2, 3));
  const auto back = from_ladder(to_ladder(rnd));
  for (std::size_t c = 0; c < rnd.size(); ++c) CHECK(std::abs(back[c] - rnd[c]) < 1e-14);
}

TEST_CASE("ladder values match traces with ladder matrices") {
  const auto rho = random_mixed_state(2, 9);
  const auto l = to_ladder(extract_correlators(rho));
  auto s = parse_pauli_string("+0 -1", 2);
  CHECK(std::abs(l.at(s) - (rho.matrix() * pauli_matrix(s)).trace()) < 1e-14);
  s = parse_pauli_string("z0 +1", 2);
  CHECK(std::abs(l.at(s) - (rho.matrix() * pauli_matrix(s)).trace()) < 1e-14);
}
