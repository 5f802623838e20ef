#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "corrdyn/combinatorics.hpp"
#include "corrdyn/density.hpp"
#include "corrdyn/hamiltonian.hpp"
#include "corrdyn/pauli.hpp"
#include "corrdyn/sparse.hpp"

namespace corrdyn {

/// Sparse real generator M of dX/dt = M X on the 4^N correlator supervector.
/// Row and column 0 (identity) are empty.
struct Generator {
  int n_sites = 0;
  CsrMatrix matrix;

  std::size_t dim() const { return matrix.dim(); }
};

/// One generator row as ascending (column code, coefficient) pairs.
using GeneratorRow = std::vector<std::pair<std::uint64_t, double>>;

/// Row of M for the target correlator `target` (precession, intra-subset
/// and growth terms, merged by column).
GeneratorRow generator_row(const SpinHamiltonian& h, std::uint64_t target);

/// Assembles all rows; rows are built in parallel.
Generator build_generator(const SpinHamiltonian& h);

/// The three rows for <sigma_i^x>, <sigma_i^y>, <sigma_i^z>.
std::array<GeneratorRow, 3> single_site_row(const SpinHamiltonian& h, int site);

/// Max-abs residual of the reduced equation of motion for rho-bar_A along a
/// uniformly spaced trajectory, using centered differences at every
/// interior point. Needs at least three states.
double reduced_eom_residual(const SpinHamiltonian& h, const std::vector<DensityMatrix>& trajectory, double dt,
                            CellSubset a);

enum class Sector { X1 = 0, Y = 1, X2 = 2 };

/// Classification of the non-identity correlators of a bipartite system.
struct CoupledSplit {
  int n_sites = 0;
  CellSubset system1, system2;
  /// Codes of each sector, ascending.
  std::array<std::vector<std::uint64_t>, 3> codes;

  const std::vector<std::uint64_t>& sector(Sector s) const { return codes[static_cast<int>(s)]; }
  Sector classify(std::uint64_t code) const;
};

/// Throws std::invalid_argument for an empty or full system1.
CoupledSplit split_sectors(int n_sites, CellSubset system1);

/// Dense 3x3 sector blocks of M in the order X1, Y, X2. Throws
/// std::invalid_argument when the X1/X2 corner blocks are not zero.
struct SectorBlocks {
  std::array<std::array<Eigen::MatrixXd, 3>, 3> block;

  const Eigen::MatrixXd& operator()(Sector r, Sector c) const {
    return block[static_cast<int>(r)][static_cast<int>(c)];
  }
};

SectorBlocks block_structure(const Generator& g, const CoupledSplit& split);

/// Inverse of block_structure: dense 4^N x 4^N matrix in code order.
Eigen::MatrixXd assemble_blocks(const SectorBlocks& blocks, const CoupledSplit& split);

/// H with every coupling across the split removed.
SpinHamiltonian uncoupled_part(const SpinHamiltonian& h, const CoupledSplit& split);

}  // namespace corrdyn
