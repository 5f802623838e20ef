#include "corrdyn/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace corrdyn {

std::vector<int> CellSubset::sites() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint32_t m = mask; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

CellSubset Partition::support() const {
  CellSubset s;
  for (auto b : blocks) s = s | b;
  return s;
}

std::vector<CellSubset> enumerate_subsets(CellSubset set) {
  std::vector<CellSubset> out;
  out.reserve(std::size_t{1} << set.size());
  // (sub - mask) & mask steps through the submasks in increasing order.
  std::uint32_t sub = 0;
  do {
    out.push_back({sub});
    sub = (sub - set.mask) & set.mask;
  } while (sub != 0);
  return out;
}

std::vector<CellSubset> enumerate_subsets_of_size(CellSubset set, int k) {
  std::vector<CellSubset> out;
  for (auto s : enumerate_subsets(set))
    if (s.size() == k) out.push_back(s);
  return out;
}

std::vector<Partition> enumerate_partitions(CellSubset set) {
  if (set.empty()) throw std::invalid_argument("cannot partition empty set");
  const auto elems = set.sites();
  const std::size_t n = elems.size();

  // rgs[i] is the block label of elems[i]; rgs[0] = 0 and
  // rgs[i] <= 1 + max(rgs[0..i-1]).
  std::vector<int> rgs(n, 0);
  std::vector<int> prefix_max(n, 0);
  std::vector<Partition> out;
  while (true) {
    int n_blocks = prefix_max[n - 1] + 1;
    Partition p;
    p.blocks.assign(n_blocks, CellSubset{});
    for (std::size_t i = 0; i < n; ++i) p.blocks[rgs[i]].mask |= 1u << elems[i];
    out.push_back(std::move(p));

    // Advance to the lexicographic successor.
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

}  // namespace corrdyn
