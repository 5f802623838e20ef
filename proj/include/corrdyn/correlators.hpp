#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "corrdyn/pauli.hpp"

namespace corrdyn {

/// Expectation values of every Cartesian Pauli string on n sites, indexed by
/// CorrelatorIndex code. Slot 0 (the identity) is pinned to 1.
class CorrelatorVector {
 public:
  /// Slack allowed on |value| <= 1 for vectors produced by integrators.
  static constexpr double kBoundSlack = 1e-6;

  /// The maximally mixed state: every non-identity correlator zero.
  static CorrelatorVector maximally_mixed(int n_sites);
  /// Validating constructor; throws std::invalid_argument on a wrong length,
  /// values[0] != 1 or a correlator outside [-1, 1].
  static CorrelatorVector from_values(int n_sites, std::vector<double> values);

  int n_sites() const { return n_sites_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t code) const { return values_[code]; }
  double at(CorrelatorIndex c) const { return values_.at(c.code); }
  double at(const PauliString& s) const { return at(index_of(s)); }
  std::span<const double> values() const { return values_; }

  /// Sets one non-identity correlator (bounds-checked like from_values).
  void set(CorrelatorIndex c, double value);
  void set(const PauliString& s, double value) { set(index_of(s), value); }

  /// Sum of squares over the non-identity slots.
  double nonidentity_norm2() const;

 private:
  CorrelatorVector(int n_sites, std::vector<double> values)
      : n_sites_(n_sites), values_(std::move(values)) {}

  int n_sites_ = 0;
  std::vector<double> values_;
};

/// Correlator vectors sampled at increasing times.
struct Trajectory {
  std::vector<double> times;
  std::vector<CorrelatorVector> states;
};

/// Correlators in the ladder basis: digit 0 = I, 1 = sigma^+, 2 = sigma^-,
/// 3 = sigma^z per site, same base-4 layout as CorrelatorIndex.
struct LadderCorrelators {
  int n_sites = 0;
  std::vector<std::complex<double>> values;

  /// Value for a string over {+, -, z} axes (Cartesian z allowed, x/y not).
  std::complex<double> at(const PauliString& s) const;
};

/// Applies sigma^{+-} = (sigma^x +- i sigma^y)/sqrt2 on every site index.
LadderCorrelators to_ladder(const CorrelatorVector& v);
/// Inverse of to_ladder. The imaginary residue of the Cartesian result is
/// dropped; callers wanting a check should compare against the input.
CorrelatorVector from_ladder(const LadderCorrelators& l);

}  // namespace corrdyn
