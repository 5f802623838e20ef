#include "corrdyn/analytic2.hpp"

#include <cmath>
#include <sstream>

#include "corrdyn/errors.hpp"

namespace corrdyn::diagnostics {

namespace {

using cplx = std::complex<double>;
constexpr int X = 0, Y = 1, Z = 2;

constexpr int pair(int a, int b) { return 3 * a + b; }

// Shared rational building blocks, written over the two quartic
// denominators so degenerate frequencies never divide by zero.
struct Terms {
  double d1, d2, w, d1s, d2s, ws;
  cplx z, s, D, Q;

  Terms(const TwoSpinParams& p, cplx z_) : d1(p.delta1), d2(p.delta2), w(p.omega), z(z_) {
    d1s = d1 * d1;
    d2s = d2 * d2;
    ws = w * w;
    s = z * z;
    const double w30s = ws + (d1 + d2) * (d1 + d2);
    const double w21s = ws + (d1 - d2) * (d1 - d2);
    D = (s + w30s) * (s + w21s);
    Q = (s + d1s) * (s + d2s) + s * ws;
  }
};

void check_pole(const TwoSpinParams& p, cplx z) {
  for (cplx pole : poles(p))
    if (std::abs(z - pole) <= 1e-10) {
      std::ostringstream msg;
      msg << "z lies on the analytic pole " << pole.real() << "+" << pole.imag() << "i";
      throw NumericError(msg.str());
    }
}

}  // namespace

TwoSpinFrequencies frequencies(const TwoSpinParams& p) {
  const double e1 = 0.5 * std::sqrt(p.omega * p.omega + (p.delta1 + p.delta2) * (p.delta1 + p.delta2));
  const double e2 = 0.5 * std::sqrt(p.omega * p.omega + (p.delta1 - p.delta2) * (p.delta1 - p.delta2));
  return {e1 - e2, e1 + e2, 2 * e1, 2 * e2};
}

SpinHamiltonian two_spin_hamiltonian(const TwoSpinParams& p) {
  SpinHamiltonian h(2);
  h.set_field(0, {p.delta1, 0, 0});
  h.set_field(1, {p.delta2, 0, 0});
  Eigen::Matrix3d v = Eigen::Matrix3d::Zero();
  v(Z, Z) = p.omega;
  h.add_coupling(0, 1, v);
  return h;
}

std::array<std::complex<double>, 9> poles(const TwoSpinParams& p) {
  const auto f = frequencies(p);
  const cplx i(0, 1);
  return {cplx(0), i * f.w10, -i * f.w10, i * f.w20, -i * f.w20, i * f.w30, -i * f.w30, i * f.w21, -i * f.w21};
}

Block3 g11(const TwoSpinParams& p, cplx z) {
  check_pole(p, z);
  const Terms t(p, z);
  Block3 g = Block3::Zero();
  g(X, X) = (t.s * t.s + t.s * (2 * t.d1s + 2 * t.d2s + t.ws) + (t.d1s - t.d2s) * (t.d1s - t.d2s) +
             t.ws * (t.d1s + t.d2s)) /
            (z * t.D);
  g(Y, Y) = z * (t.s + t.d2s) / t.Q;
  g(Z, Z) = z * (t.s + t.d2s + t.ws) / t.Q;
  g(Y, Z) = -t.d1 * (t.s + t.d2s) / t.Q;
  g(Z, Y) = t.d1 * (t.s + t.d2s) / t.Q;
  return g;
}

Block3 g12(const TwoSpinParams& p, cplx z) {
  check_pole(p, z);
  const Terms t(p, z);
  Block3 g = Block3::Zero();
  g(X, X) = 2 * t.d1 * t.d2 * t.ws / (z * t.D);
  return g;
}

Block3 g21(const TwoSpinParams& p, cplx z) { return g12(p.swapped(), z); }

Block3 g22(const TwoSpinParams& p, cplx z) { return g11(p.swapped(), z); }

Block3x9 g1p(const TwoSpinParams& p, cplx z) {
  check_pole(p, z);
  const Terms t(p, z);
  const double d1 = t.d1, d2 = t.d2, w = t.w;
  Block3x9 g = Block3x9::Zero();
  g(X, pair(Y, Y)) = -d2 * w * (t.s - t.d1s + t.d2s + t.ws) / (z * t.D);
  g(X, pair(Y, Z)) = -w * (t.s + t.d1s + t.d2s + t.ws) / t.D;
  g(X, pair(Z, Y)) = 2 * d1 * d2 * w / t.D;
  g(X, pair(Z, Z)) = d1 * w * (t.s + t.d1s - t.d2s + t.ws) / (z * t.D);
  g(Y, pair(X, Y)) = d2 * w * z / t.Q;
  g(Y, pair(X, Z)) = w * t.s / t.Q;
  g(Z, pair(X, Y)) = d1 * d2 * w / t.Q;
  g(Z, pair(X, Z)) = d1 * w * z / t.Q;
  return g;
}

Block3x9 g2p(const TwoSpinParams& p, cplx z) {
  // Exchanging the spins swaps the two axes of every pair index.
  const Block3x9 mirrored = g1p(p.swapped(), z);
  Block3x9 g;
  for (int a = 0; a < 3; ++a)
    for (int nu = 0; nu < 3; ++nu)
      for (int beta = 0; beta < 3; ++beta) g(a, pair(nu, beta)) = mirrored(a, pair(beta, nu));
  return g;
}

Block9x3 gp1(const TwoSpinParams& p, cplx z) { return -g1p(p, -z).transpose(); }

Block9x3 gp2(const TwoSpinParams& p, cplx z) { return -g2p(p, -z).transpose(); }

Block9 gpp(const TwoSpinParams& p, cplx z) {
  check_pole(p, z);
  const Terms t(p, z);
  const double d1 = t.d1, d2 = t.d2;
  const cplx s = t.s, D = t.D, Q = t.Q;
  const cplx plus = s + t.d1s + t.d2s + t.ws;   // s + D1^2 + D2^2 + w^2
  const cplx u1 = s + t.d1s - t.d2s + t.ws;     // s + D1^2 - D2^2 + w^2
  const cplx u2 = s - t.d1s + t.d2s + t.ws;     // s - D1^2 + D2^2 + w^2
  Block9 g = Block9::Zero();

  g(pair(X, X), pair(X, X)) = 1.0 / z;

  g(pair(X, Y), pair(X, Y)) = z * (s + t.d1s + t.ws) / Q;
  g(pair(X, Y), pair(X, Z)) = -d2 * (s + t.d1s) / Q;
  g(pair(X, Z), pair(X, Y)) = d2 * (s + t.d1s) / Q;
  g(pair(X, Z), pair(X, Z)) = z * (s + t.d1s) / Q;

  g(pair(Y, X), pair(Y, X)) = z * (s + t.d2s + t.ws) / Q;
  g(pair(Y, X), pair(Z, X)) = -d1 * (s + t.d2s) / Q;
  g(pair(Z, X), pair(Y, X)) = d1 * (s + t.d2s) / Q;
  g(pair(Z, X), pair(Z, X)) = z * (s + t.d2s) / Q;

  const cplx diag = (t.ws + s) * plus / (z * D);
  const cplx cross = 2 * d1 * d2 * (t.ws + s) / (z * D);
  g(pair(Y, Y), pair(Y, Y)) = diag;
  g(pair(Z, Z), pair(Z, Z)) = diag;
  g(pair(Y, Y), pair(Z, Z)) = cross;
  g(pair(Z, Z), pair(Y, Y)) = cross;

  g(pair(Y, Y), pair(Y, Z)) = -d2 * u2 / D;
  g(pair(Y, Y), pair(Z, Y)) = -d1 * u1 / D;

  g(pair(Y, Z), pair(Y, Y)) = d2 * u2 / D;
  g(pair(Y, Z), pair(Y, Z)) = z * plus / D;
  g(pair(Y, Z), pair(Z, Y)) = -2 * d1 * d2 * z / D;
  g(pair(Y, Z), pair(Z, Z)) = -d1 * u1 / D;

  g(pair(Z, Y), pair(Y, Y)) = d1 * u1 / D;
  g(pair(Z, Y), pair(Y, Z)) = -2 * d1 * d2 * z / D;
  g(pair(Z, Y), pair(Z, Y)) = z * plus / D;
  g(pair(Z, Y), pair(Z, Z)) = -d2 * u2 / D;

  g(pair(Z, Z), pair(Y, Z)) = d1 * u1 / D;
  g(pair(Z, Z), pair(Z, Y)) = d2 * u2 / D;
  return g;
}

std::uint64_t tau_code(int axis) { return static_cast<std::uint64_t>(axis + 1); }
std::uint64_t sigma_code(int axis) { return static_cast<std::uint64_t>(4 * (axis + 1)); }
std::uint64_t pair_code(int pair_index) { return tau_code(pair_index / 3) + sigma_code(pair_index % 3); }

}  // namespace corrdyn::diagnostics
