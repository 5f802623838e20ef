#include "corrdyn/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "corrdyn/parallel.hpp"

namespace corrdyn {

namespace {

struct EpsTerm {
  int alpha, nu, sign;
};

// Nonzero eps(mu, alpha, nu) for each mu in 1..3.
constexpr std::array<std::array<EpsTerm, 2>, 4> kEps{{
    {{{0, 0, 0}, {0, 0, 0}}},
    {{{2, 3, 1}, {3, 2, -1}}},
    {{{3, 1, 1}, {1, 3, -1}}},
    {{{1, 2, 1}, {2, 1, -1}}},
}};

using cplx = std::complex<double>;

// Product of single-site Paulis on a local space of n qubits.
Eigen::MatrixXcd local_string(int n, std::initializer_list<std::pair<int, int>> pos_axis) {
  PauliString s(n);
  for (auto [pos, axis] : pos_axis) s.set(pos, static_cast<Axis>(axis));
  return pauli_matrix(s);
}

int local_index(CellSubset set, int site) { return std::popcount(set.mask & ((1u << site) - 1u)); }

}  // namespace

GeneratorRow generator_row(const SpinHamiltonian& h, std::uint64_t target) {
  const int n = h.n_sites();
  GeneratorRow row;
  if (target == 0) return row;
  const CellSubset support = code::support(target);
  for (int i : support.sites()) {
    const int mu = code::digit(target, i);
    for (const EpsTerm& e : kEps[mu]) {
      const std::uint64_t base = code::with_digit(target, i, e.nu);
      const double hf = h.field(i)(e.alpha - 1);
      if (hf != 0.0) row.emplace_back(base, e.sign * hf);
      for (int j = 0; j < n; ++j) {
        if (j == i || !h.coupled(i, j)) continue;
        const Eigen::Matrix3d v = h.coupling(i, j);
        if (support.contains(j)) {
          const double c = v(e.alpha - 1, code::digit(target, j) - 1);
          if (c != 0.0) row.emplace_back(code::with_digit(base, j, 0), e.sign * c);
        } else {
          for (int lambda = 1; lambda <= 3; ++lambda) {
            const double c = v(e.alpha - 1, lambda - 1);
            if (c != 0.0) row.emplace_back(code::with_digit(base, j, lambda), e.sign * c);
          }
        }
      }
    }
  }
  std::sort(row.begin(), row.end());
  GeneratorRow merged;
  for (const auto& [col, val] : row) {
    if (!merged.empty() && merged.back().first == col)
      merged.back().second += val;
    else
      merged.emplace_back(col, val);
  }
  std::erase_if(merged, [](const auto& p) { return p.second == 0.0; });
  return merged;
}

Generator build_generator(const SpinHamiltonian& h) {
  const std::uint64_t dim = code::dimension(h.n_sites());
  std::vector<std::vector<std::pair<std::int32_t, double>>> rows(dim);
  parallel_for(dim, 1 << 12, [&](std::size_t b, std::size_t e) {
    for (std::size_t c = b; c < e; ++c)
      for (const auto& [col, val] : generator_row(h, c)) rows[c].emplace_back(static_cast<std::int32_t>(col), val);
  });
  return {h.n_sites(), CsrMatrix::from_rows(std::move(rows))};
}

std::array<GeneratorRow, 3> single_site_row(const SpinHamiltonian& h, int site) {
  if (site < 0 || site >= h.n_sites()) throw std::invalid_argument("site out of range");
  std::array<GeneratorRow, 3> out;
  for (int mu = 1; mu <= 3; ++mu) out[mu - 1] = generator_row(h, code::with_digit(0, site, mu));
  return out;
}

double reduced_eom_residual(const SpinHamiltonian& h, const std::vector<DensityMatrix>& trajectory, double dt,
                            CellSubset a) {
  if (trajectory.size() < 3) throw std::invalid_argument("reduced_eom_residual needs at least 3 trajectory points");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const int n = h.n_sites();
  if (a.empty() || !a.is_subset_of(CellSubset::full(n))) throw std::invalid_argument("bad subset");
  for (const auto& rho : trajectory)
    if (rho.n_sites() != n) throw std::invalid_argument("trajectory site count differs from Hamiltonian");

  const int na = a.size();
  const Eigen::Index da = Eigen::Index{1} << na;

  // Effective local Hamiltonian on A.
  Eigen::MatrixXcd h_a = Eigen::MatrixXcd::Zero(da, da);
  for (int i : a.sites()) {
    const int p = local_index(a, i);
    for (int al = 1; al <= 3; ++al) h_a += 0.5 * h.field(i)(al - 1) * local_string(na, {{p, al}});
  }
  for (const auto& [pair, v] : h.couplings()) {
    if (!a.contains(pair.first) || !a.contains(pair.second)) continue;
    const int p = local_index(a, pair.first), q = local_index(a, pair.second);
    for (int m = 1; m <= 3; ++m)
      for (int k = 1; k <= 3; ++k)
        if (v(m - 1, k - 1) != 0.0) h_a += 0.5 * v(m - 1, k - 1) * local_string(na, {{p, m}, {q, k}});
  }

  // Coupling operators between A and each outside site l, on A + {l}.
  struct Exterior {
    CellSubset sites;
    int l;
    Eigen::MatrixXcd v;
  };
  std::vector<Exterior> exterior;
  for (int l : (CellSubset::full(n) - a).sites()) {
    const CellSubset al = a | CellSubset::single(l);
    const Eigen::Index d = Eigen::Index{1} << (na + 1);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(d, d);
    bool any = false;
    for (int j : a.sites()) {
      if (!h.coupled(j, l)) continue;
      any = true;
      const Eigen::Matrix3d c = h.coupling(j, l);
      const int p = local_index(al, j), q = local_index(al, l);
      for (int m = 1; m <= 3; ++m)
        for (int k = 1; k <= 3; ++k)
          if (c(m - 1, k - 1) != 0.0) v += 0.5 * c(m - 1, k - 1) * local_string(na + 1, {{p, m}, {q, k}});
    }
    if (any) exterior.push_back({al, l, std::move(v)});
  }

  const cplx i_unit(0, 1);
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < trajectory.size(); ++k) {
    const Eigen::MatrixXcd fwd = partial_trace(n, trajectory[k + 1].matrix(), a);
    const Eigen::MatrixXcd bwd = partial_trace(n, trajectory[k - 1].matrix(), a);
    const Eigen::MatrixXcd mid = partial_trace(n, trajectory[k].matrix(), a);
    Eigen::MatrixXcd r = i_unit * (fwd - bwd) / (2.0 * dt) - (h_a * mid - mid * h_a);
    for (const auto& ex : exterior) {
      const Eigen::MatrixXcd rho_al = partial_trace(n, trajectory[k].matrix(), ex.sites);
      const Eigen::MatrixXcd comm = ex.v * rho_al - rho_al * ex.v;
      CellSubset keep_local = CellSubset::full(na + 1) - CellSubset::single(local_index(ex.sites, ex.l));
      r -= partial_trace(na + 1, comm, keep_local);
    }
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

Sector CoupledSplit::classify(std::uint64_t c) const {
  const CellSubset s = code::support(c);
  if (s.empty()) throw std::invalid_argument("identity belongs to no sector");
  if (s.is_subset_of(system1)) return Sector::X1;
  if (s.is_subset_of(system2)) return Sector::X2;
  return Sector::Y;
}

CoupledSplit split_sectors(int n_sites, CellSubset system1) {
  const CellSubset full = CellSubset::full(n_sites);
  if (system1.empty() || !system1.is_subset_of(full) || system1 == full)
    throw std::invalid_argument("split needs a nonempty proper subset of sites");
  CoupledSplit s{n_sites, system1, full - system1, {}};
  for (std::uint64_t c = 1; c < code::dimension(n_sites); ++c) s.codes[static_cast<int>(s.classify(c))].push_back(c);
  return s;
}

SectorBlocks block_structure(const Generator& g, const CoupledSplit& split) {
  if (g.n_sites != split.n_sites) throw std::invalid_argument("split and generator site counts differ");
  SectorBlocks out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      const auto& rc = split.codes[r];
      const auto& cc = split.codes[c];
      Eigen::MatrixXd b(rc.size(), cc.size());
      for (std::size_t i = 0; i < rc.size(); ++i)
        for (std::size_t j = 0; j < cc.size(); ++j) b(i, j) = g.matrix.coeff(rc[i], cc[j]);
      out.block[r][c] = std::move(b);
    }
  if (out(Sector::X1, Sector::X2).cwiseAbs().maxCoeff() != 0.0 ||
      out(Sector::X2, Sector::X1).cwiseAbs().maxCoeff() != 0.0)
    throw std::invalid_argument("Hamiltonian violates pairwise sector structure");
  return out;
}

Eigen::MatrixXd assemble_blocks(const SectorBlocks& blocks, const CoupledSplit& split) {
  const auto dim = static_cast<Eigen::Index>(code::dimension(split.n_sites));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      const auto& rc = split.codes[r];
      const auto& cc = split.codes[c];
      for (std::size_t i = 0; i < rc.size(); ++i)
        for (std::size_t j = 0; j < cc.size(); ++j) m(rc[i], cc[j]) = blocks.block[r][c](i, j);
    }
  return m;
}

SpinHamiltonian uncoupled_part(const SpinHamiltonian& h, const CoupledSplit& split) {
  SpinHamiltonian out(h.n_sites());
  for (int i = 0; i < h.n_sites(); ++i) out.set_field(i, h.field(i));
  for (const auto& [pair, v] : h.couplings())
    if (split.system1.contains(pair.first) == split.system1.contains(pair.second))
      out.add_coupling(pair.first, pair.second, v);
  return out;
}

}  // namespace corrdyn
