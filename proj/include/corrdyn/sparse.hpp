#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "corrdyn/kernels.hpp"

namespace corrdyn {

struct Triplet {
  std::uint64_t row;
  std::uint64_t col;
  double value;
};

/// Square real matrix in compressed-row form.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  /// Sums duplicate entries and drops exact zeros. Columns within a row
  /// end up ascending.
  static CsrMatrix from_triplets(std::size_t dim, std::vector<Triplet> triplets);
  /// Row-by-row assembly: rows[r] holds the (col, value) pairs of row r.
  static CsrMatrix from_rows(std::vector<std::vector<std::pair<std::int32_t, double>>> rows);

  std::size_t dim() const { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  std::size_t nnz() const { return values_.size(); }

  /// y = A x, rows split across workers for large matrices.
  void multiply(const double* x, double* y) const;
  Eigen::VectorXd operator*(const Eigen::VectorXd& x) const;

  double coeff(std::size_t r, std::size_t c) const;
  CsrMatrix transpose() const;
  /// max_r sum_c |a_rc|
  double inf_norm() const;
  double max_abs() const;
  Eigen::MatrixXd to_dense() const;

  kernels::CsrView view() const { return {dim(), row_ptr_.data(), cols_.data(), values_.data()}; }
  const std::vector<std::uint64_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::int32_t>& cols() const { return cols_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<std::uint64_t> row_ptr_;
  std::vector<std::int32_t> cols_;
  std::vector<double> values_;
};

}  // namespace corrdyn
