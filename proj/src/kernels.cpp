#include "phonostad/kernels.hpp"

#include <cstddef>

namespace phonostad::kernels {

namespace {

using Index = Eigen::Index;

// Four interleaved partial sums, combined in a fixed order.
inline double dot(const double* a, const double* b, Index n) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  Index i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

inline double strided_dot(const double* a, Index stride_a, const double* b, Index n) {
  double s = 0;
  for (Index i = 0; i < n; ++i) s += a[i * stride_a] * b[i];
  return s;
}

// The loop bodies are shared; PARALLEL selects whether the outer loop is split.
template <bool Parallel>
Vector column_means_impl(const MatrixRef& x) {
  const Index n = x.rows(), d = x.cols();
  Vector out(d);
#pragma omp parallel for schedule(static) if (Parallel)
  for (Index j = 0; j < d; ++j) {
    const double* col = x.data() + j * x.outerStride();
    double s = 0;
    for (Index i = 0; i < n; ++i) s += col[i];
    out[j] = n > 0 ? s / static_cast<double>(n) : 0.0;
  }
  return out;
}

template <bool Parallel>
Matrix center_impl(const MatrixRef& x, const VectorRef& means) {
  const Index n = x.rows(), d = x.cols();
  Matrix out(n, d);
#pragma omp parallel for schedule(static) if (Parallel)
  for (Index j = 0; j < d; ++j) {
    const double* col = x.data() + j * x.outerStride();
    double* dst = out.data() + j * n;
    const double m = means[j];
    for (Index i = 0; i < n; ++i) dst[i] = col[i] - m;
  }
  return out;
}

template <bool Parallel>
Matrix matmul_tn_impl(const MatrixRef& a, const MatrixRef& b) {
  const Index m = a.cols(), p = b.cols(), k = a.rows();
  Matrix out(m, p);
#pragma omp parallel for schedule(dynamic, 8) if (Parallel)
  for (Index j = 0; j < p; ++j) {
    const double* bj = b.data() + j * b.outerStride();
    for (Index i = 0; i < m; ++i) out(i, j) = dot(a.data() + i * a.outerStride(), bj, k);
  }
  return out;
}

template <bool Parallel>
Matrix gram_impl(const MatrixRef& x) {
  const Index n = x.rows(), d = x.cols();
  Matrix out(d, d);
#pragma omp parallel for schedule(dynamic, 8) if (Parallel)
  for (Index j = 0; j < d; ++j) {
    const double* cj = x.data() + j * x.outerStride();
    for (Index i = 0; i <= j; ++i) out(i, j) = dot(x.data() + i * x.outerStride(), cj, n);
  }
  for (Index j = 0; j < d; ++j) {
    for (Index i = j + 1; i < d; ++i) out(i, j) = out(j, i);
  }
  return out;
}

template <bool Parallel>
Matrix matmul_impl(const MatrixRef& a, const MatrixRef& b) {
  const Index n = a.rows(), k = a.cols(), p = b.cols();
  Matrix out = Matrix::Zero(n, p);
#pragma omp parallel for schedule(dynamic, 4) if (Parallel)
  for (Index j = 0; j < p; ++j) {
    double* dst = out.data() + j * n;
    for (Index l = 0; l < k; ++l) {
      const double s = b(l, j);
      if (s == 0.0) continue;
      const double* src = a.data() + l * a.outerStride();
      for (Index i = 0; i < n; ++i) dst[i] += src[i] * s;
    }
  }
  return out;
}

template <bool Parallel>
Vector matvec_impl(const MatrixRef& x, const VectorRef& v) {
  const Index n = x.rows(), d = x.cols();
  Vector out(n);
  const Vector vv = v;
#pragma omp parallel for schedule(static) if (Parallel)
  for (Index i = 0; i < n; ++i) out[i] = strided_dot(x.data() + i, x.outerStride(), vv.data(), d);
  return out;
}

template <bool Parallel>
Vector matvec_t_impl(const MatrixRef& x, const VectorRef& r) {
  const Index n = x.rows(), d = x.cols();
  Vector out(d);
  const Vector rr = r;
#pragma omp parallel for schedule(static) if (Parallel)
  for (Index j = 0; j < d; ++j) out[j] = dot(x.data() + j * x.outerStride(), rr.data(), n);
  return out;
}

}  // namespace

Vector column_means(const MatrixRef& x) { return column_means_impl<true>(x); }
Matrix center(const MatrixRef& x, const VectorRef& means) { return center_impl<true>(x, means); }
Matrix gram(const MatrixRef& x) { return gram_impl<true>(x); }
Matrix outer_gram(const MatrixRef& x) {
  const Matrix xt = x.transpose();
  return gram_impl<true>(xt);
}
Matrix matmul(const MatrixRef& a, const MatrixRef& b) { return matmul_impl<true>(a, b); }
Matrix matmul_tn(const MatrixRef& a, const MatrixRef& b) { return matmul_tn_impl<true>(a, b); }
Vector matvec(const MatrixRef& x, const VectorRef& v) { return matvec_impl<true>(x, v); }
Vector matvec_t(const MatrixRef& x, const VectorRef& r) { return matvec_t_impl<true>(x, r); }

namespace serial {
Vector column_means(const MatrixRef& x) { return column_means_impl<false>(x); }
Matrix center(const MatrixRef& x, const VectorRef& means) { return center_impl<false>(x, means); }
Matrix gram(const MatrixRef& x) { return gram_impl<false>(x); }
Matrix outer_gram(const MatrixRef& x) {
  const Matrix xt = x.transpose();
  return gram_impl<false>(xt);
}
Matrix matmul(const MatrixRef& a, const MatrixRef& b) { return matmul_impl<false>(a, b); }
Matrix matmul_tn(const MatrixRef& a, const MatrixRef& b) { return matmul_tn_impl<false>(a, b); }
Vector matvec(const MatrixRef& x, const VectorRef& v) { return matvec_impl<false>(x, v); }
Vector matvec_t(const MatrixRef& x, const VectorRef& r) { return matvec_t_impl<false>(x, r); }
}  // namespace serial

}  // namespace phonostad::kernels
