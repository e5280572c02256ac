#include "quadrl/math/mat.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace quadrl {

namespace threads {
namespace {
int g_threads = 0;  // 0 = library default
}
void set_num(int n) {
  g_threads = n;
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#endif
}
int num() {
#ifdef _OPENMP
  return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
  return 1;
#endif
}
}  // namespace threads

namespace {
// Work below this many madds is not worth a parallel region.
constexpr long kParallelFlopCutoff = 64 * 1024;

// SIMD dot product. The reduction order is fixed by the build (vector width
// and association chosen at compile time), and the serial and OpenMP gemm
// paths share this kernel, so results stay bitwise identical across thread
// counts.
inline double dot4(const double* a, const double* b, int k) {
  double s = 0.0;
#pragma omp simd reduction(+ : s)
  for (int l = 0; l < k; ++l) s += a[l] * b[l];
  return s;
}
}

void gemm_nt_serial(const Mat& A, const Mat& B, Mat& C, bool accumulate) {
  assert(A.cols == B.cols);
  assert(C.rows == A.rows && C.cols == B.rows);
  const int m = A.rows, n = B.rows, k = A.cols;
  for (int i = 0; i < m; ++i) {
    const double* a = A.row(i);
    double* c = C.row(i);
    for (int j = 0; j < n; ++j) {
      const double s = dot4(a, B.row(j), k);
      c[j] = accumulate ? c[j] + s : s;
    }
  }
}

void gemm_nt(const Mat& A, const Mat& B, Mat& C, bool accumulate) {
  assert(A.cols == B.cols);
  assert(C.rows == A.rows && C.cols == B.rows);
  const int m = A.rows, n = B.rows, k = A.cols;
  const long work = static_cast<long>(m) * n * k;
  if (work < kParallelFlopCutoff || threads::num() <= 1) {
    gemm_nt_serial(A, B, C, accumulate);
    return;
  }
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    const double* a = A.row(i);
    double* c = C.row(i);
    for (int j = 0; j < n; ++j) {
      const double s = dot4(a, B.row(j), k);
      c[j] = accumulate ? c[j] + s : s;
    }
  }
}

void gemm_nn_serial(const Mat& A, const Mat& B, Mat& C, bool accumulate) {
  assert(A.cols == B.rows);
  assert(C.rows == A.rows && C.cols == B.cols);
  const int m = A.rows, n = B.cols, k = A.cols;
  for (int i = 0; i < m; ++i) {
    double* c = C.row(i);
    if (!accumulate)
      for (int j = 0; j < n; ++j) c[j] = 0.0;
    const double* a = A.row(i);
    for (int l = 0; l < k; ++l) {
      const double av = a[l];
      const double* b = B.row(l);
      for (int j = 0; j < n; ++j) c[j] += av * b[j];
    }
  }
}

void gemm_nn(const Mat& A, const Mat& B, Mat& C, bool accumulate) {
  assert(A.cols == B.rows);
  assert(C.rows == A.rows && C.cols == B.cols);
  const int m = A.rows, n = B.cols, k = A.cols;
  const long work = static_cast<long>(m) * n * k;
  if (work < kParallelFlopCutoff || threads::num() <= 1) {
    gemm_nn_serial(A, B, C, accumulate);
    return;
  }
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    double* c = C.row(i);
    if (!accumulate)
      for (int j = 0; j < n; ++j) c[j] = 0.0;
    const double* a = A.row(i);
    for (int l = 0; l < k; ++l) {
      const double av = a[l];
      const double* b = B.row(l);
      for (int j = 0; j < n; ++j) c[j] += av * b[j];
    }
  }
}

void gemm_tn_serial(const Mat& A, const Mat& B, Mat& C, bool accumulate) {
  assert(A.rows == B.rows);
  assert(C.rows == A.cols && C.cols == B.cols);
  const int m = A.cols, n = B.cols, k = A.rows;
  for (int i = 0; i < m; ++i) {
    double* c = C.row(i);
    if (!accumulate)
      for (int j = 0; j < n; ++j) c[j] = 0.0;
    for (int l = 0; l < k; ++l) {
      const double av = A.at(l, i);
      const double* b = B.row(l);
      for (int j = 0; j < n; ++j) c[j] += av * b[j];
    }
  }
}

void gemm_tn(const Mat& A, const Mat& B, Mat& C, bool accumulate) {
  assert(A.rows == B.rows);
  assert(C.rows == A.cols && C.cols == B.cols);
  const int m = A.cols, n = B.cols, k = A.rows;
  const long work = static_cast<long>(m) * n * k;
  if (work < kParallelFlopCutoff || threads::num() <= 1) {
    gemm_tn_serial(A, B, C, accumulate);
    return;
  }
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    double* c = C.row(i);
    if (!accumulate)
      for (int j = 0; j < n; ++j) c[j] = 0.0;
    for (int l = 0; l < k; ++l) {
      const double av = A.at(l, i);
      const double* b = B.row(l);
      for (int j = 0; j < n; ++j) c[j] += av * b[j];
    }
  }
}

}  // namespace quadrl
