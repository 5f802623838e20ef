#include "corrdyn/decomposition.hpp"

#include <stdexcept>
#include <unordered_map>

namespace corrdyn {

namespace {

// Local bit positions of the members of `part` inside the ascending member
// list of `whole`.
std::vector<int> local_positions(CellSubset part, CellSubset whole) {
  std::vector<int> out;
  int k = 0;
  for (int site : whole.sites()) {
    if (part.contains(site)) out.push_back(k);
    ++k;
  }
  return out;
}

std::uint32_t gather(std::uint32_t index, const std::vector<int>& positions) {
  std::uint32_t out = 0;
  for (std::size_t k = 0; k < positions.size(); ++k) out |= ((index >> positions[k]) & 1u) << k;
  return out;
}

Eigen::Index side(CellSubset s) { return Eigen::Index{1} << s.size(); }

void check_operator(const SiteOperator& op, int n_sites) {
  if (!op.sites.is_subset_of(CellSubset::full(n_sites)))
    throw std::invalid_argument("operator sites exceed the system");
  if (op.matrix.rows() != side(op.sites) || op.matrix.cols() != side(op.sites))
    throw std::invalid_argument("operator dimension does not match its site set");
}

}  // namespace

SiteOperator SiteOperator::scalar(std::complex<double> value) {
  return {CellSubset{}, Eigen::MatrixXcd::Constant(1, 1, value)};
}

SiteOperator tensor(const SiteOperator& a, const SiteOperator& b) {
  if (!(a.sites & b.sites).empty()) throw std::invalid_argument("tensor: site sets overlap");
  const CellSubset u = a.sites | b.sites;
  const auto pa = local_positions(a.sites, u);
  const auto pb = local_positions(b.sites, u);
  const Eigen::Index d = side(u);
  std::vector<std::uint32_t> ia(d), ib(d);
  for (Eigen::Index r = 0; r < d; ++r) {
    ia[r] = gather(static_cast<std::uint32_t>(r), pa);
    ib[r] = gather(static_cast<std::uint32_t>(r), pb);
  }
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) m(r, c) = a.matrix(ia[r], ia[c]) * b.matrix(ib[r], ib[c]);
  return {u, std::move(m)};
}

SiteOperator trace_down(const SiteOperator& op, CellSubset keep) {
  if (!keep.is_subset_of(op.sites)) throw std::invalid_argument("trace_down: keep set outside operator support");
  CellSubset local;
  for (int k : local_positions(keep, op.sites)) local.mask |= 1u << k;
  return {keep, partial_trace(op.sites.size(), op.matrix, local)};
}

Decomposer::Decomposer(DensityMatrix rho)
    : rho_(std::move(rho)),
      reduced_(std::size_t{1} << rho_.n_sites()),
      correlated_(reduced_.size()),
      cumulant_(reduced_.size()) {}

void Decomposer::check(CellSubset a) const {
  if (!a.is_subset_of(CellSubset::full(n_sites()))) throw std::invalid_argument("subset exceeds the system");
}

const SiteOperator& Decomposer::reduced(CellSubset a) {
  check(a);
  auto& slot = reduced_[a.mask];
  if (!slot) slot = SiteOperator{a, partial_trace(n_sites(), rho_.matrix(), a)};
  return *slot;
}

const SiteOperator& Decomposer::correlated(CellSubset a) {
  check(a);
  const int n = a.size();
  if (n < 2) throw std::invalid_argument("correlated part needs at least 2 sites");
  auto& slot = correlated_[a.mask];
  if (slot) return *slot;

  auto singles_product = [&](CellSubset s) {
    SiteOperator p = SiteOperator::scalar(1.0);
    for (int j : s.sites()) p = tensor(p, reduced(CellSubset::single(j)));
    return p;
  };
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(side(a), side(a));
  for (CellSubset c : enumerate_subsets(a)) {
    const int m = c.size();
    if (m < 2) continue;
    const double sign = ((n - m) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * tensor(reduced(c), singles_product(a - c)).matrix;
  }
  const double last = (n % 2 == 0 ? 1.0 : -1.0) * (n - 1);
  sum -= last * singles_product(a).matrix;
  slot = SiteOperator{a, std::move(sum)};
  return *slot;
}

const SiteOperator& Decomposer::cumulant(CellSubset a) {
  check(a);
  if (a.empty()) throw std::invalid_argument("cumulant part of the empty set");
  auto& slot = cumulant_[a.mask];
  if (slot) return *slot;
  if (a.size() == 1) {
    slot = reduced(a);
    return *slot;
  }
  Eigen::MatrixXcd sum = reduced(a).matrix;
  for (const Partition& p : enumerate_partitions(a)) {
    if (p.blocks.size() < 2) continue;
    SiteOperator prod = SiteOperator::scalar(1.0);
    for (CellSubset b : p.blocks) prod = tensor(prod, cumulant(b));
    sum -= prod.matrix;
  }
  slot = SiteOperator{a, std::move(sum)};
  return *slot;
}

SiteOperator correlated_part(const DensityMatrix& rho, CellSubset a) { return Decomposer(rho).correlated(a); }

SiteOperator cumulant_part(const DensityMatrix& rho, CellSubset a) { return Decomposer(rho).cumulant(a); }

CorrelatedParts all_correlated_parts(const DensityMatrix& rho) {
  Decomposer d(rho);
  CorrelatedParts out;
  out.n_sites = rho.n_sites();
  for (int j = 0; j < out.n_sites; ++j) out.singles.push_back(d.reduced(CellSubset::single(j)).matrix);
  for (CellSubset a : enumerate_subsets(CellSubset::full(out.n_sites)))
    if (a.size() >= 2) out.parts.push_back(d.correlated(a));
  return out;
}

std::vector<SiteOperator> all_cumulant_parts(const DensityMatrix& rho) {
  Decomposer d(rho);
  std::vector<SiteOperator> out;
  for (CellSubset a : enumerate_subsets(CellSubset::full(rho.n_sites())))
    if (!a.empty()) out.push_back(d.cumulant(a));
  return out;
}

Reconstruction reconstruct(const CorrelatedParts& parts) {
  const int n = parts.n_sites;
  require_dense_size(n);
  if (static_cast<int>(parts.singles.size()) != n) throw std::invalid_argument("reconstruct: need one single-site matrix per site");
  std::vector<SiteOperator> singles;
  for (int j = 0; j < n; ++j) {
    singles.push_back({CellSubset::single(j), parts.singles[j]});
    check_operator(singles.back(), n);
  }
  std::unordered_map<std::uint32_t, const SiteOperator*> by_mask;
  for (const auto& p : parts.parts) {
    check_operator(p, n);
    if (p.sites.size() < 2) throw std::invalid_argument("reconstruct: correlated parts need at least 2 sites");
    by_mask[p.sites.mask] = &p;
  }

  const CellSubset full = CellSubset::full(n);
  Reconstruction out{Eigen::MatrixXcd::Zero(side(full), side(full)), 0};
  for (CellSubset a : enumerate_subsets(full)) {
    if (a.size() == 1) continue;
    SiteOperator term = SiteOperator::scalar(1.0);
    if (!a.empty()) {
      auto it = by_mask.find(a.mask);
      if (it == by_mask.end()) throw std::invalid_argument("reconstruct: missing correlated part");
      term = *it->second;
    }
    for (int j : (full - a).sites()) term = tensor(term, singles[j]);
    out.matrix += term.matrix;
    ++out.terms;
  }
  return out;
}

Reconstruction cumulant_reconstruct(int n_sites, const std::vector<SiteOperator>& parts) {
  require_dense_size(n_sites);
  if (n_sites < 1) throw std::invalid_argument("cumulant_reconstruct: empty system");
  std::unordered_map<std::uint32_t, const SiteOperator*> by_mask;
  for (const auto& p : parts) {
    check_operator(p, n_sites);
    by_mask[p.sites.mask] = &p;
  }
  const CellSubset full = CellSubset::full(n_sites);
  Reconstruction out{Eigen::MatrixXcd::Zero(side(full), side(full)), 0};
  for (const Partition& p : enumerate_partitions(full)) {
    SiteOperator term = SiteOperator::scalar(1.0);
    for (CellSubset b : p.blocks) {
      auto it = by_mask.find(b.mask);
      if (it == by_mask.end()) throw std::invalid_argument("cumulant_reconstruct: missing cumulant part");
      term = tensor(term, *it->second);
    }
    out.matrix += term.matrix;
    ++out.terms;
  }
  return out;
}

double connected_pair(const CorrelatorVector& v, int i, int j, Axis mu, Axis nu) {
  if (i == j) throw std::invalid_argument("connected_pair needs two distinct sites");
  PauliString pair(v.n_sites()), a(v.n_sites()), b(v.n_sites());
  pair.set(i, mu).set(j, nu);
  a.set(i, mu);
  b.set(j, nu);
  return v.at(pair) - v.at(a) * v.at(b);
}

double connected_correlator(const CorrelatorVector& v, const PauliString& s) {
  if (s.n_sites() != v.n_sites()) throw std::invalid_argument("string and vector site counts differ");
  const CorrelatorIndex full = index_of(s);
  const CellSubset a = s.support();
  const int n = a.size();
  if (n == 0) throw std::invalid_argument("connected correlator of the identity");
  if (n == 1) return v.at(full);

  // Expectation of the string restricted to the sites of c.
  auto restricted = [&](CellSubset c) {
    std::uint64_t code = 0;
    for (int site : c.sites()) code = code::with_digit(code, site, code::digit(full.code, site));
    return v[code];
  };
  auto singles_product = [&](CellSubset c) {
    double p = 1.0;
    for (int site : c.sites()) p *= restricted(CellSubset::single(site));
    return p;
  };
  double sum = 0.0;
  for (CellSubset c : enumerate_subsets(a)) {
    const int m = c.size();
    if (m < 2) continue;
    const double sign = ((n - m) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * restricted(c) * singles_product(a - c);
  }
  sum -= (n % 2 == 0 ? 1.0 : -1.0) * (n - 1) * singles_product(a);
  return sum;
}

}  // namespace corrdyn
