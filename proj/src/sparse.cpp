#include "corrdyn/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "corrdyn/parallel.hpp"

namespace corrdyn {

CsrMatrix CsrMatrix::from_triplets(std::size_t dim, std::vector<Triplet> triplets) {
  if (dim > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
    throw std::invalid_argument("matrix too large for 32-bit column indices");
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  std::vector<std::vector<std::pair<std::int32_t, double>>> rows(dim);
  for (const auto& t : triplets) {
    if (t.row >= dim || t.col >= dim) throw std::out_of_range("triplet outside the matrix");
    auto& row = rows[t.row];
    if (!row.empty() && row.back().first == static_cast<std::int32_t>(t.col))
      row.back().second += t.value;
    else
      row.emplace_back(static_cast<std::int32_t>(t.col), t.value);
  }
  return from_rows(std::move(rows));
}

CsrMatrix CsrMatrix::from_rows(std::vector<std::vector<std::pair<std::int32_t, double>>> rows) {
  CsrMatrix m;
  m.row_ptr_.reserve(rows.size() + 1);
  m.row_ptr_.push_back(0);
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    for (std::size_t k = 0; k < row.size();) {
      const std::int32_t c = row[k].first;
      double v = 0.0;
      for (; k < row.size() && row[k].first == c; ++k) v += row[k].second;
      if (c < 0 || static_cast<std::size_t>(c) >= rows.size()) throw std::out_of_range("column outside the matrix");
      if (v != 0.0) {
        m.cols_.push_back(c);
        m.values_.push_back(v);
      }
    }
    m.row_ptr_.push_back(m.values_.size());
  }
  return m;
}

void CsrMatrix::multiply(const double* x, double* y) const {
  const auto v = view();
  parallel_for(dim(), 1 << 14, [&](std::size_t b, std::size_t e) { kernels::csr_matvec(v, x, y, b, e); });
}

Eigen::VectorXd CsrMatrix::operator*(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != dim()) throw std::invalid_argument("dimension mismatch");
  Eigen::VectorXd y(x.size());
  multiply(x.data(), y.data());
  return y;
}

double CsrMatrix::coeff(std::size_t r, std::size_t c) const {
  const auto b = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_.at(r));
  const auto e = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_.at(r + 1));
  auto it = std::lower_bound(b, e, static_cast<std::int32_t>(c));
  return (it != e && *it == static_cast<std::int32_t>(c)) ? values_[it - cols_.begin()] : 0.0;
}

CsrMatrix CsrMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::size_t r = 0; r < dim(); ++r)
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) t.push_back({std::uint64_t(cols_[k]), r, values_[k]});
  return from_triplets(dim(), std::move(t));
}

double CsrMatrix::inf_norm() const {
  double best = 0.0;
  for (std::size_t r = 0; r < dim(); ++r) {
    double s = 0.0;
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += std::abs(values_[k]);
    best = std::max(best, s);
  }
  return best;
}

double CsrMatrix::max_abs() const {
  double best = 0.0;
  for (double v : values_) best = std::max(best, std::abs(v));
  return best;
}

Eigen::MatrixXd CsrMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim(), dim());
  for (std::size_t r = 0; r < dim(); ++r)
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) d(r, cols_[k]) = values_[k];
  return d;
}

}  // namespace corrdyn
