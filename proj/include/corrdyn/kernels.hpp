#pragma once

#include <cstddef>
#include <cstdint>

namespace corrdyn::kernels {

/// Borrowed compressed-row view; column indices are 32-bit so the AVX2
/// gather can consume them directly.
struct CsrView {
  std::size_t rows = 0;
  const std::uint64_t* row_ptr = nullptr;
  const std::int32_t* col = nullptr;
  const double* val = nullptr;
};

enum class Isa { Scalar, Avx2 };

namespace scalar {
/// y[r] = sum_k val[k] x[col[k]] for r in [row_begin, row_end).
void csr_matvec(const CsrView& a, const double* x, double* y, std::size_t row_begin, std::size_t row_end);
/// y += alpha x
void axpy(std::size_t n, double alpha, const double* x, double* y);
double dot(std::size_t n, const double* x, const double* y);
}  // namespace scalar

namespace avx2 {
void csr_matvec(const CsrView& a, const double* x, double* y, std::size_t row_begin, std::size_t row_end);
void axpy(std::size_t n, double alpha, const double* x, double* y);
double dot(std::size_t n, const double* x, const double* y);
}  // namespace avx2

/// True when the AVX2 unit was compiled in and the CPU reports AVX2 and FMA.
bool avx2_available();

/// ISA used by the dispatching entry points below.
Isa active_isa();
/// Pins the dispatch target (tests and benchmarks). Requesting Avx2 on a
/// machine without it throws std::runtime_error.
void force_isa(Isa isa);

void csr_matvec(const CsrView& a, const double* x, double* y, std::size_t row_begin, std::size_t row_end);
void axpy(std::size_t n, double alpha, const double* x, double* y);
double dot(std::size_t n, const double* x, const double* y);

}  // namespace corrdyn::kernels
