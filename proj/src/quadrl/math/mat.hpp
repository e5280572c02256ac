#pragma once

// Dense row-major matrix plus the GEMM kernels the network code is built on.
// Each kernel has a serial reference implementation and an OpenMP variant
// that parallelizes over output rows only, so results are bitwise identical
// for any thread count.

#include <cassert>
#include <cstddef>
#include <vector>

namespace quadrl {

namespace threads {
void set_num(int n);   // caps OpenMP worker count (1 = fully serial)
int num();
}  // namespace threads

struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> d;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), d(static_cast<size_t>(r) * c, 0.0) {}

  double* row(int i) { return d.data() + static_cast<size_t>(i) * cols; }
  const double* row(int i) const { return d.data() + static_cast<size_t>(i) * cols; }
  double& at(int r, int c) { return d[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return d[static_cast<size_t>(r) * cols + c]; }

  void zero() { std::fill(d.begin(), d.end(), 0.0); }
  size_t size() const { return d.size(); }
  bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
};

// C = A * B^T, A: m x k, B: n x k, C: m x n.
void gemm_nt(const Mat& A, const Mat& B, Mat& C, bool accumulate = false);
// C = A * B, A: m x k, B: k x n.
void gemm_nn(const Mat& A, const Mat& B, Mat& C, bool accumulate = false);
// C = A^T * B, A: k x m, B: k x n.
void gemm_tn(const Mat& A, const Mat& B, Mat& C, bool accumulate = false);

// Serial reference implementations (identical loop order, no OpenMP).
void gemm_nt_serial(const Mat& A, const Mat& B, Mat& C, bool accumulate = false);
void gemm_nn_serial(const Mat& A, const Mat& B, Mat& C, bool accumulate = false);
void gemm_tn_serial(const Mat& A, const Mat& B, Mat& C, bool accumulate = false);

}  // namespace quadrl
