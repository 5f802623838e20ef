#include "corrdyn/density.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "corrdyn/errors.hpp"

namespace corrdyn {

namespace {

using cplx = std::complex<double>;

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// In-place unnormalized Walsh-Hadamard transform: out[b] = sum_s in[s] (-1)^{|b&s|}.
void walsh_hadamard(std::vector<cplx>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1)
    for (std::size_t i = 0; i < a.size(); i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const cplx x = a[j];
        const cplx y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
}

// Correlator code of the string with x/y sites `flip` and y/z sites `sign`.
std::uint64_t code_of(std::uint32_t flip, std::uint32_t sign, int n_sites) {
  std::uint64_t c = 0;
  for (int i = 0; i < n_sites; ++i) {
    const bool f = (flip >> i) & 1u;
    const bool s = (sign >> i) & 1u;
    const int d = f ? (s ? 2 : 1) : (s ? 3 : 0);
    c |= std::uint64_t(d) << (2 * i);
  }
  return c;
}

// Spreads the low bits of `value` onto the positions listed in `sites`.
std::uint32_t deposit(std::uint32_t value, const std::vector<int>& sites) {
  std::uint32_t out = 0;
  for (std::size_t k = 0; k < sites.size(); ++k)
    if ((value >> k) & 1u) out |= 1u << sites[k];
  return out;
}

void check_shape(int n_sites, const Eigen::MatrixXcd& m) {
  require_dense_size(n_sites);
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument("matrix must be 2^N x 2^N for N=" + std::to_string(n_sites));
}

}  // namespace

void require_dense_size(int n_sites) {
  if (n_sites < 0) throw std::invalid_argument("negative site count");
  if (n_sites > kMaxDenseSites)
    throw SizeLimitError("dense work is capped at " + std::to_string(kMaxDenseSites) + " sites, got " +
                         std::to_string(n_sites));
}

DensityMatrix::DensityMatrix(int n_sites, Eigen::MatrixXcd data) : n_sites_(n_sites) {
  check_shape(n_sites, data);
  const double scale = std::max(1.0, data.cwiseAbs().maxCoeff());
  if ((data - data.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(data.trace() - cplx(1.0)) > 1e-10) throw std::invalid_argument("density matrix trace is not 1");
  data_ = 0.5 * (data + data.adjoint());
}

DensityMatrix DensityMatrix::from_pure(int n_sites, const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw std::invalid_argument("zero state vector");
  const Eigen::VectorXcd u = psi / norm;
  return DensityMatrix(n_sites, u * u.adjoint());
}

DensityMatrix from_correlators(const CorrelatorVector& v) {
  const int n = v.n_sites();
  require_dense_size(n);
  const std::uint32_t dim = 1u << n;
  Eigen::MatrixXcd rho(dim, dim);
  std::vector<cplx> w(dim);
  const double norm = 1.0 / dim;
  for (std::uint32_t f = 0; f < dim; ++f) {
    for (std::uint32_t s = 0; s < dim; ++s) w[s] = v[code_of(f, s, n)] * kIPow[std::popcount(s & f) & 3];
    walsh_hadamard(w);
    for (std::uint32_t b = 0; b < dim; ++b) rho(b ^ f, b) = w[b] * norm;
  }
  return DensityMatrix(n, std::move(rho));
}

CorrelatorVector extract_correlators(int n_sites, const Eigen::MatrixXcd& m) {
  check_shape(n_sites, m);
  if (std::abs(m.trace() - cplx(1.0)) > 1e-10) throw std::invalid_argument("density matrix trace is not 1");
  const std::uint32_t dim = 1u << n_sites;
  std::vector<double> values(code::dimension(n_sites));
  std::vector<cplx> u(dim);
  for (std::uint32_t f = 0; f < dim; ++f) {
    for (std::uint32_t a = 0; a < dim; ++a) u[a] = m(a, a ^ f);
    walsh_hadamard(u);
    for (std::uint32_t s = 0; s < dim; ++s)
      values[code_of(f, s, n_sites)] = (kIPow[std::popcount(s & f) & 3] * u[s]).real();
  }
  // Round-off can push a +-1 correlator a few ulps past the bound.
  for (auto& x : values) x = std::clamp(x, -1.0, 1.0);
  values[0] = 1.0;
  return CorrelatorVector::from_values(n_sites, std::move(values));
}

CorrelatorVector extract_correlators(const DensityMatrix& rho) {
  return extract_correlators(rho.n_sites(), rho.matrix());
}

Eigen::MatrixXcd partial_trace(int n_sites, const Eigen::MatrixXcd& m, CellSubset keep) {
  check_shape(n_sites, m);
  if (!keep.is_subset_of(CellSubset::full(n_sites))) throw std::invalid_argument("keep set exceeds the system");
  const std::vector<int> kept = keep.sites();
  const std::vector<int> traced = (CellSubset::full(n_sites) - keep).sites();
  const std::uint32_t dk = 1u << kept.size();
  const std::uint32_t dt = 1u << traced.size();
  std::vector<std::uint32_t> kpos(dk), tpos(dt);
  for (std::uint32_t r = 0; r < dk; ++r) kpos[r] = deposit(r, kept);
  for (std::uint32_t e = 0; e < dt; ++e) tpos[e] = deposit(e, traced);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
  for (std::uint32_t c = 0; c < dk; ++c)
    for (std::uint32_t r = 0; r < dk; ++r) {
      cplx acc = 0;
      for (std::uint32_t e = 0; e < dt; ++e) acc += m(kpos[r] | tpos[e], kpos[c] | tpos[e]);
      out(r, c) = acc;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, CellSubset keep) {
  return DensityMatrix(keep.size(), partial_trace(rho.n_sites(), rho.matrix(), keep));
}

CorrelatorVector restrict_correlators(const CorrelatorVector& v, CellSubset keep) {
  if (!keep.is_subset_of(CellSubset::full(v.n_sites()))) throw std::invalid_argument("keep set exceeds the system");
  const std::vector<int> kept = keep.sites();
  const int k = static_cast<int>(kept.size());
  std::vector<double> out(code::dimension(k));
  for (std::uint64_t c = 0; c < out.size(); ++c) {
    std::uint64_t full = 0;
    for (int i = 0; i < k; ++i) full = code::with_digit(full, kept[i], code::digit(c, i));
    out[c] = v[full];
  }
  return CorrelatorVector::from_values(k, std::move(out));
}

double purity(const DensityMatrix& rho) { return rho.matrix().squaredNorm(); }

double purity_from_correlators(const CorrelatorVector& v) {
  return (1.0 + v.nonidentity_norm2()) / static_cast<double>(std::uint64_t{1} << v.n_sites());
}

std::array<double, 4> check_pure_two_qubit(const CorrelatorVector& v) {
  if (v.n_sites() != 2) throw std::invalid_argument("check_pure_two_qubit needs exactly 2 sites");
  Eigen::Vector3d s1, s2;
  Eigen::Matrix3d t;
  for (int a = 0; a < 3; ++a) {
    s1(a) = v[a + 1];
    s2(a) = v[4 * (a + 1)];
    for (int b = 0; b < 3; ++b) t(a, b) = v[(a + 1) + 4 * (b + 1)];
  }
  const double r1 = 3.0 - (s1.squaredNorm() + s2.squaredNorm() + t.squaredNorm());
  const double r2 = (s1 - t * s2).cwiseAbs().maxCoeff();
  const double r3 = (s2 - t.transpose() * s1).cwiseAbs().maxCoeff();
  // T - s1 s2^T + (1/2) eps^{mu a l} eps^{nu b g} T_ab T_lg, i.e. T - s1 s2^T + cof(T).
  Eigen::Matrix3d quad = Eigen::Matrix3d::Zero();
  for (int mu = 1; mu <= 3; ++mu)
    for (int nu = 1; nu <= 3; ++nu)
      for (int a = 1; a <= 3; ++a)
        for (int l = 1; l <= 3; ++l) {
          const int e1 = epsilon(mu, a, l);
          if (e1 == 0) continue;
          for (int b = 1; b <= 3; ++b)
            for (int g = 1; g <= 3; ++g) {
              const int e2 = epsilon(nu, b, g);
              if (e2 != 0) quad(mu - 1, nu - 1) += 0.5 * e1 * e2 * t(a - 1, b - 1) * t(l - 1, g - 1);
            }
        }
  const double r4 = (t - s1 * s2.transpose() + quad).cwiseAbs().maxCoeff();
  return {r1, r2, r3, r4};
}

PositivityReport diagnose_positivity(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix(), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  return {lo, lo >= -1e-10};
}

}  // namespace corrdyn
