#include "corrdyn/pauli.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "corrdyn/correlators.hpp"
#include "corrdyn/errors.hpp"

namespace corrdyn {

char axis_char(Axis a) {
  switch (a) {
    case Axis::I: return 'I';
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
    case Axis::Plus: return '+';
    case Axis::Minus: return '-';
  }
  return '?';
}

CellSubset code::support(std::uint64_t c) {
  CellSubset s;
  for (int site = 0; c != 0; ++site, c >>= 2)
    if (c & 3u) s.mask |= 1u << site;
  return s;
}

CellSubset PauliString::support() const {
  CellSubset s;
  for (int i = 0; i < n_sites(); ++i)
    if (axes_[i] != Axis::I) s.mask |= 1u << i;
  return s;
}

bool PauliString::is_cartesian() const {
  for (auto a : axes_)
    if (a == Axis::Plus || a == Axis::Minus) return false;
  return true;
}

std::string PauliString::to_string() const {
  std::string out;
  for (int i = 0; i < n_sites(); ++i) {
    if (axes_[i] == Axis::I) continue;
    if (!out.empty()) out += ' ';
    out += axis_char(axes_[i]);
    out += std::to_string(i);
  }
  return out;
}

int epsilon(int mu, int alpha, int nu) {
  if (mu < 1 || mu > 3 || alpha < 1 || alpha > 3 || nu < 1 || nu > 3)
    throw std::invalid_argument("epsilon: Cartesian only");
  if (mu == alpha || alpha == nu || mu == nu) return 0;
  // Cyclic permutations of (1,2,3) are even.
  return ((alpha - mu + 3) % 3 == 1) ? 1 : -1;
}

int epsilon(Axis mu, Axis alpha, Axis nu) {
  if (!is_cartesian(mu) || !is_cartesian(alpha) || !is_cartesian(nu))
    throw std::invalid_argument("epsilon: Cartesian only");
  return epsilon(static_cast<int>(mu), static_cast<int>(alpha), static_cast<int>(nu));
}

PauliProduct multiply(const PauliString& a, const PauliString& b) {
  if (a.n_sites() != b.n_sites()) throw std::invalid_argument("multiply: site counts differ");
  if (!a.is_cartesian() || !b.is_cartesian())
    throw std::invalid_argument("multiply: Cartesian only");
  PauliString out(a.n_sites());
  int i_power = 0;  // phase = i^i_power
  for (int s = 0; s < a.n_sites(); ++s) {
    int p = static_cast<int>(a.axis(s));
    int q = static_cast<int>(b.axis(s));
    if (p == 0) {
      out.set(s, b.axis(s));
    } else if (q == 0) {
      out.set(s, a.axis(s));
    } else if (p == q) {
      out.set(s, Axis::I);
    } else {
      int r = 6 - p - q;
      out.set(s, static_cast<Axis>(r));
      i_power += epsilon(p, q, r) > 0 ? 1 : 3;
    }
  }
  static constexpr std::complex<double> kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {kPowers[i_power % 4], std::move(out)};
}

CorrelatorIndex index_of(const PauliString& s) {
  std::uint64_t c = 0;
  for (int i = 0; i < s.n_sites(); ++i) {
    Axis a = s.axis(i);
    if (!is_cartesian(a) && a != Axis::I) throw std::invalid_argument("index_of: Cartesian only");
    c |= std::uint64_t(static_cast<int>(a)) << (2 * i);
  }
  return {c};
}

PauliString string_of(int n_sites, CorrelatorIndex c) {
  if (c.code >= code::dimension(n_sites)) throw std::out_of_range("string_of: index out of range");
  PauliString s(n_sites);
  for (int i = 0; i < n_sites; ++i) s.set(i, static_cast<Axis>(code::digit(c.code, i)));
  return s;
}

PauliString parse_pauli_string(std::string_view text, int n_sites) {
  PauliString s(n_sites);
  std::size_t pos = 0;
  auto fail = [&](std::size_t at, const std::string& what) -> void {
    std::ostringstream msg;
    msg << what << " at position " << at << " in \"" << text << "\"";
    throw ParseError(msg.str());
  };
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    const std::size_t token_start = pos;
    Axis axis;
    switch (text[pos]) {
      case 'x': axis = Axis::X; break;
      case 'y': axis = Axis::Y; break;
      case 'z': axis = Axis::Z; break;
      case '+': axis = Axis::Plus; break;
      case '-': axis = Axis::Minus; break;
      default: fail(pos, std::string("bad axis character '") + text[pos] + "'");
    }
    ++pos;
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail(pos, "missing site index");
    long site = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      site = site * 10 + (text[pos] - '0');
      if (site > kMaxSites) break;
      ++pos;
    }
    if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])))
      fail(pos, "unexpected character");
    if (site >= n_sites) fail(token_start, "site " + std::to_string(site) + " >= N=" + std::to_string(n_sites));
    if (s.axis(static_cast<int>(site)) != Axis::I) fail(token_start, "duplicate site " + std::to_string(site));
    s.set(static_cast<int>(site), axis);
  }
  return s;
}

PauliAction PauliAction::of(std::uint64_t c, int n_sites) {
  PauliAction a;
  for (int i = 0; i < n_sites; ++i) {
    switch (code::digit(c, i)) {
      case 1: a.flip |= 1u << i; break;
      case 2:
        a.flip |= 1u << i;
        a.sign |= 1u << i;
        ++a.y_count;
        break;
      case 3: a.sign |= 1u << i; break;
      default: break;
    }
  }
  return a;
}

std::complex<double> PauliAction::phase(std::uint32_t basis_state) const {
  static constexpr std::complex<double> kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  // Y|0> = i|1>, Y|1> = -i|0>: i per Y, and -1 for each Y/Z acting on a 1 bit.
  std::complex<double> p = kPowers[y_count & 3];
  return (std::popcount(basis_state & sign) & 1) ? -p : p;
}

Eigen::MatrixXcd pauli_matrix(const PauliString& s) {
  const int n = s.n_sites();
  if (n > 12) throw SizeLimitError("pauli_matrix: dense work is capped at 12 sites");
  using C = std::complex<double>;
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Ones(1, 1);
  for (int site = 0; site < n; ++site) {
    Eigen::Matrix2cd p;
    switch (s.axis(site)) {
      case Axis::I: p << 1, 0, 0, 1; break;
      case Axis::X: p << 0, 1, 1, 0; break;
      case Axis::Y: p << 0, C(0, -1), C(0, 1), 0; break;
      case Axis::Z: p << 1, 0, 0, -1; break;
      // sigma^+ = (X + iY)/sqrt2 = sqrt2 |up><down|
      case Axis::Plus: p << 0, 2 * r, 0, 0; break;
      case Axis::Minus: p << 0, 0, 2 * r, 0; break;
    }
    // Kronecker product with `site` as the more significant factor.
    Eigen::MatrixXcd next(2 * m.rows(), 2 * m.cols());
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) next.block(a * m.rows(), b * m.cols(), m.rows(), m.cols()) = p(a, b) * m;
    m = std::move(next);
  }
  return m;
}

}  // namespace corrdyn
