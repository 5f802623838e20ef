#include <atomic>
#include <stdexcept>

#include "corrdyn/kernels.hpp"

namespace corrdyn::kernels {

#if !defined(CORRDYN_BUILD_AVX2)
// Stubs so the symbols exist; avx2_available() keeps them unreachable.
namespace avx2 {
void csr_matvec(const CsrView& a, const double* x, double* y, std::size_t b, std::size_t e) {
  scalar::csr_matvec(a, x, y, b, e);
}
void axpy(std::size_t n, double alpha, const double* x, double* y) { scalar::axpy(n, alpha, x, y); }
double dot(std::size_t n, const double* x, const double* y) { return scalar::dot(n, x, y); }
}  // namespace avx2
#endif

bool avx2_available() {
#if defined(CORRDYN_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

namespace {
std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{avx2_available() ? Isa::Avx2 : Isa::Scalar};
  return isa;
}
}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) throw std::runtime_error("AVX2 kernels are not available here");
  current().store(isa, std::memory_order_relaxed);
}

void csr_matvec(const CsrView& a, const double* x, double* y, std::size_t row_begin, std::size_t row_end) {
  if (active_isa() == Isa::Avx2)
    avx2::csr_matvec(a, x, y, row_begin, row_end);
  else
    scalar::csr_matvec(a, x, y, row_begin, row_end);
}

void axpy(std::size_t n, double alpha, const double* x, double* y) {
  if (active_isa() == Isa::Avx2)
    avx2::axpy(n, alpha, x, y);
  else
    scalar::axpy(n, alpha, x, y);
}

double dot(std::size_t n, const double* x, const double* y) {
  return active_isa() == Isa::Avx2 ? avx2::dot(n, x, y) : scalar::dot(n, x, y);
}

}  // namespace corrdyn::kernels
