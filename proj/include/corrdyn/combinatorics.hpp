#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace corrdyn {

/// Largest number of cells a CellSubset can index.
inline constexpr int kMaxSites = 24;

/// A set of cell (site) indices stored as a bitmask; bit i set means site i
/// belongs to the subset. The empty mask is the empty set.
struct CellSubset {
  std::uint32_t mask = 0;

  static CellSubset full(int n_sites) {
    return CellSubset{n_sites >= 32 ? ~0u : ((1u << n_sites) - 1u)};
  }
  static CellSubset single(int site) { return CellSubset{1u << site}; }

  int size() const { return std::popcount(mask); }
  bool empty() const { return mask == 0; }
  bool contains(int site) const { return (mask >> site) & 1u; }
  bool is_subset_of(CellSubset other) const { return (mask & ~other.mask) == 0; }
  /// Smallest member; undefined for the empty set.
  int lowest() const { return std::countr_zero(mask); }

  /// Members in ascending order.
  std::vector<int> sites() const;

  friend CellSubset operator|(CellSubset a, CellSubset b) { return {a.mask | b.mask}; }
  friend CellSubset operator&(CellSubset a, CellSubset b) { return {a.mask & b.mask}; }
  /// Set difference a \ b.
  friend CellSubset operator-(CellSubset a, CellSubset b) { return {a.mask & ~b.mask}; }
  friend bool operator==(CellSubset, CellSubset) = default;
  friend auto operator<=>(CellSubset a, CellSubset b) { return a.mask <=> b.mask; }
};

/// A set partition: pairwise disjoint nonempty blocks, ordered by their
/// smallest element.
struct Partition {
  std::vector<CellSubset> blocks;

  CellSubset support() const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// All 2^|set| subsets of `set`, in increasing mask order.
std::vector<CellSubset> enumerate_subsets(CellSubset set);

/// All subsets of `set` with exactly `k` members, in increasing mask order.
std::vector<CellSubset> enumerate_subsets_of_size(CellSubset set, int k);

/// All set partitions of `set`, generated as restricted-growth strings in
/// lexicographic order. The first is the single-block partition, the last
/// is the all-singletons partition. Throws std::invalid_argument for the
/// empty set.
std::vector<Partition> enumerate_partitions(CellSubset set);

}  // namespace corrdyn
