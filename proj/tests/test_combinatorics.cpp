#include <doctest.h>

#include <stdexcept>

#include <set>

#include "corrdyn/combinatorics.hpp"

using namespace corrdyn;

namespace {

// Bell numbers from the Bell triangle.
std::vector<std::size_t> bell_triangle(int n_max) {
  std::vector<std::size_t> bell{1};
  std::vector<std::size_t> row{1};
  for (int n = 1; n <= n_max; ++n) {
    std::vector<std::size_t> next{row.back()};
    for (std::size_t v : row) next.push_back(next.back() + v);
    bell.push_back(next.front());
    row = next;
  }
  return bell;
}

}  // namespace

TEST_CASE("subsets of a 4-element set") {
  auto s = enumerate_subsets(CellSubset::full(4));
  CHECK(s.size() == 16);
  for (std::size_t k = 1; k < s.size(); ++k) CHECK(s[k - 1].mask < s[k].mask);
}

TEST_CASE("subsets of the empty set") {
  auto s = enumerate_subsets(CellSubset{});
  REQUIRE(s.size() == 1);
  CHECK(s[0].empty());
}

TEST_CASE("subsets of {0,1,2} are the masks 0..7") {
  auto s = enumerate_subsets(CellSubset::full(3));
  REQUIRE(s.size() == 8);
  for (std::uint32_t m = 0; m < 8; ++m) CHECK(s[m].mask == m);
}

TEST_CASE("subsets of a sparse mask stay inside it and are unique") {
  CellSubset set{0b101101};
  auto s = enumerate_subsets(set);
  CHECK(s.size() == 16);
  std::set<std::uint32_t> seen;
  for (auto c : s) {
    CHECK(c.is_subset_of(set));
    seen.insert(c.mask);
  }
  CHECK(seen.size() == 16);
}

TEST_CASE("fixed-size subsets") {
  CHECK(enumerate_subsets_of_size(CellSubset::full(5), 2).size() == 10);
  CHECK(enumerate_subsets_of_size(CellSubset::full(5), 0).size() == 1);
  for (auto c : enumerate_subsets_of_size(CellSubset::full(6), 3)) CHECK(c.size() == 3);
}

TEST_CASE("partition counts for the listed sizes") {
  CHECK(enumerate_partitions(CellSubset::full(1)).size() == 1);
  CHECK(enumerate_partitions(CellSubset::full(4)).size() == 15);
  CHECK(enumerate_partitions(CellSubset::full(5)).size() == 52);
}

TEST_CASE("partition counts equal Bell numbers up to 8") {
  const auto bell = bell_triangle(8);
  for (int n = 1; n <= 8; ++n) CHECK(enumerate_partitions(CellSubset::full(n)).size() == bell[n]);
}

TEST_CASE("partitions are valid, canonical and distinct") {
  const CellSubset set{0b11011};
  const auto parts = enumerate_partitions(set);
  std::set<std::vector<std::uint32_t>> seen;
  for (const auto& p : parts) {
    CellSubset u;
    std::vector<std::uint32_t> key;
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
      CHECK_FALSE(p.blocks[b].empty());
      CHECK((u & p.blocks[b]).empty());
      u = u | p.blocks[b];
      if (b > 0) CHECK(p.blocks[b - 1].lowest() < p.blocks[b].lowest());
      key.push_back(p.blocks[b].mask);
    }
    CHECK(u == set);
    CHECK(p.support() == set);
    seen.insert(key);
  }
  CHECK(seen.size() == parts.size());
  CHECK(parts.front().blocks.size() == 1);
  CHECK(parts.back().blocks.size() == 4);
}

TEST_CASE("partitioning the empty set is an error") {
  CHECK_THROWS_WITH_AS(enumerate_partitions(CellSubset{}), "cannot partition empty set", std::invalid_argument);
}

TEST_CASE("set algebra") {
  CellSubset a{0b0110}, b{0b0011};
  CHECK((a | b).mask == 0b0111);
  CHECK((a & b).mask == 0b0010);
  CHECK((a - b).mask == 0b0100);
  CHECK(a.sites() == std::vector<int>{1, 2});
  CHECK(a.lowest() == 1);
  CHECK(CellSubset::single(3).contains(3));
}
