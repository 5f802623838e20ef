#include "corrdyn/correlators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace corrdyn {

namespace {

void check_value(std::uint64_t c, double v) {
  if (!std::isfinite(v) || std::abs(v) > 1.0 + CorrelatorVector::kBoundSlack)
    throw std::invalid_argument("correlator " + std::to_string(c) + " = " + std::to_string(v) +
                                " lies outside [-1, 1]");
}

// Applies a 2x2 mixing of digits 1 and 2 on every site, in place.
void mix_xy(std::vector<std::complex<double>>& v, int n_sites, const std::complex<double> (&m)[2][2]) {
  for (int site = 0; site < n_sites; ++site) {
    const std::uint64_t stride = std::uint64_t{1} << (2 * site);
    for (std::uint64_t c = 0; c < v.size(); ++c) {
      if (code::digit(c, site) != 1) continue;
      const std::complex<double> a = v[c];
      const std::complex<double> b = v[c + stride];
      v[c] = m[0][0] * a + m[0][1] * b;
      v[c + stride] = m[1][0] * a + m[1][1] * b;
    }
  }
}

}  // namespace

CorrelatorVector CorrelatorVector::maximally_mixed(int n_sites) {
  if (n_sites < 0 || n_sites > kMaxSites / 2) throw std::invalid_argument("unsupported site count");
  std::vector<double> v(code::dimension(n_sites), 0.0);
  v[0] = 1.0;
  return CorrelatorVector(n_sites, std::move(v));
}

CorrelatorVector CorrelatorVector::from_values(int n_sites, std::vector<double> values) {
  if (n_sites < 0 || n_sites > kMaxSites / 2) throw std::invalid_argument("unsupported site count");
  if (values.size() != code::dimension(n_sites))
    throw std::invalid_argument("correlator vector must have length 4^N");
  if (std::abs(values[0] - 1.0) > 1e-12) throw std::invalid_argument("identity slot must equal 1");
  values[0] = 1.0;
  for (std::uint64_t c = 1; c < values.size(); ++c) check_value(c, values[c]);
  return CorrelatorVector(n_sites, std::move(values));
}

void CorrelatorVector::set(CorrelatorIndex c, double value) {
  if (c.code == 0) throw std::invalid_argument("identity slot is fixed at 1");
  check_value(c.code, value);
  values_.at(c.code) = value;
}

double CorrelatorVector::nonidentity_norm2() const {
  double s = 0.0;
  for (std::size_t c = 1; c < values_.size(); ++c) s += values_[c] * values_[c];
  return s;
}

std::complex<double> LadderCorrelators::at(const PauliString& s) const {
  std::uint64_t c = 0;
  for (int i = 0; i < s.n_sites(); ++i) {
    int d = 0;
    switch (s.axis(i)) {
      case Axis::I: d = 0; break;
      case Axis::Plus: d = 1; break;
      case Axis::Minus: d = 2; break;
      case Axis::Z: d = 3; break;
      default: throw std::invalid_argument("ladder lookup takes +, - and z axes only");
    }
    c |= std::uint64_t(d) << (2 * i);
  }
  return values.at(c);
}

LadderCorrelators to_ladder(const CorrelatorVector& v) {
  const double r = 1.0 / std::sqrt(2.0);
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> m[2][2] = {{r, i * r}, {r, -i * r}};
  LadderCorrelators out{v.n_sites(), {v.values().begin(), v.values().end()}};
  mix_xy(out.values, v.n_sites(), m);
  return out;
}

CorrelatorVector from_ladder(const LadderCorrelators& l) {
  const double r = 1.0 / std::sqrt(2.0);
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> m[2][2] = {{r, r}, {-i * r, i * r}};
  auto work = l.values;
  mix_xy(work, l.n_sites, m);
  std::vector<double> re(work.size());
  for (std::size_t c = 0; c < work.size(); ++c) re[c] = work[c].real();
  return CorrelatorVector::from_values(l.n_sites, std::move(re));
}

}  // namespace corrdyn
