#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "corrdyn/combinatorics.hpp"

namespace corrdyn {

/// Single-site Pauli axis. X/Y/Z are Cartesian; Plus/Minus together with Z
/// form the ladder ("barred") set, sigma^{+-} = (sigma^x +- i sigma^y)/sqrt2.
enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3, Plus = 4, Minus = 5 };

constexpr bool is_cartesian(Axis a) { return a == Axis::X || a == Axis::Y || a == Axis::Z; }
char axis_char(Axis a);

/// Base-4 code of a Cartesian Pauli string: digit i (I=0, x=1, y=2, z=3)
/// belongs to site i, site 0 least significant.
struct CorrelatorIndex {
  std::uint64_t code = 0;
  friend bool operator==(CorrelatorIndex, CorrelatorIndex) = default;
  friend auto operator<=>(CorrelatorIndex, CorrelatorIndex) = default;
};

namespace code {

inline int digit(std::uint64_t c, int site) { return static_cast<int>((c >> (2 * site)) & 3u); }
inline std::uint64_t with_digit(std::uint64_t c, int site, int d) {
  return (c & ~(std::uint64_t{3} << (2 * site))) | (std::uint64_t(d) << (2 * site));
}
/// Sites carrying a non-identity digit.
CellSubset support(std::uint64_t c);
inline std::uint64_t dimension(int n_sites) { return std::uint64_t{1} << (2 * n_sites); }

}  // namespace code

/// Product of single-site Pauli operators over `n_sites` sites. Sites with
/// Axis::I are outside the support; the all-identity string is the identity
/// operator.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_sites) : axes_(n_sites, Axis::I) {}

  int n_sites() const { return static_cast<int>(axes_.size()); }
  Axis axis(int site) const { return axes_.at(site); }
  PauliString& set(int site, Axis a) {
    axes_.at(site) = a;
    return *this;
  }

  CellSubset support() const;
  bool is_identity() const { return support().empty(); }
  bool is_cartesian() const;

  /// Renders in the text grammar, e.g. "x0 z2"; identity renders as "".
  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Axis> axes_;
};

struct PauliProduct {
  std::complex<double> phase;
  PauliString result;
};

/// a*b = phase * result, applying sigma^a sigma^b = delta^{ab} + i eps^{abc} sigma^c
/// site by site. Both strings must be Cartesian and of equal length.
PauliProduct multiply(const PauliString& a, const PauliString& b);

/// Levi-Civita symbol on Cartesian axes, eps(x,y,z) = +1. Throws
/// std::invalid_argument ("Cartesian only") for ladder or identity input.
int epsilon(Axis mu, Axis alpha, Axis nu);
/// Same symbol on axis digits 1..3.
int epsilon(int mu, int alpha, int nu);

CorrelatorIndex index_of(const PauliString& s);
PauliString string_of(int n_sites, CorrelatorIndex c);

/// Parses whitespace-separated tokens "<axis><site>", axis in {x,y,z,+,-}.
/// An empty or blank string is the identity. Throws ParseError naming the
/// offending position for a bad axis character, a missing or out-of-range
/// site, or a repeated site.
PauliString parse_pauli_string(std::string_view text, int n_sites);

/// Dense 2^n x 2^n matrix of the string (ladder axes allowed), with site 0
/// the least-significant bit of the basis index and bit value 0 = spin up.
Eigen::MatrixXcd pauli_matrix(const PauliString& s);

/// Bit-level description of a Cartesian string acting on computational
/// basis states: P|b> = phase(b) |b ^ flip|, phase(b) = i^{n_y} (-1)^{popcount(b & sign)}.
struct PauliAction {
  std::uint32_t flip = 0;
  std::uint32_t sign = 0;
  int y_count = 0;

  static PauliAction of(std::uint64_t code, int n_sites);
  std::complex<double> phase(std::uint32_t basis_state) const;
};

}  // namespace corrdyn
