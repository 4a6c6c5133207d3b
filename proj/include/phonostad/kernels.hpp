#pragma once

#include <Eigen/Dense>

// Dense kernels behind the probes. Each kernel has an OpenMP version and a
// serial reference in kernels::serial. Every output element is produced by a
// single thread with a fixed summation order, so both versions return
// bit-identical results; the tests compare them with exact equality.
namespace phonostad::kernels {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using MatrixRef = Eigen::Ref<const Eigen::MatrixXd>;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

Vector column_means(const MatrixRef& x);
/// x minus its column means.
Matrix center(const MatrixRef& x, const VectorRef& means);
/// xᵀx.
Matrix gram(const MatrixRef& x);
/// x xᵀ.
Matrix outer_gram(const MatrixRef& x);
/// a b.
Matrix matmul(const MatrixRef& a, const MatrixRef& b);
/// aᵀ b.
Matrix matmul_tn(const MatrixRef& a, const MatrixRef& b);
/// x v.
Vector matvec(const MatrixRef& x, const VectorRef& v);
/// xᵀ r.
Vector matvec_t(const MatrixRef& x, const VectorRef& r);

namespace serial {
Vector column_means(const MatrixRef& x);
Matrix center(const MatrixRef& x, const VectorRef& means);
Matrix gram(const MatrixRef& x);
Matrix outer_gram(const MatrixRef& x);
Matrix matmul(const MatrixRef& a, const MatrixRef& b);
Matrix matmul_tn(const MatrixRef& a, const MatrixRef& b);
Vector matvec(const MatrixRef& x, const VectorRef& v);
Vector matvec_t(const MatrixRef& x, const VectorRef& r);
}  // namespace serial

}  // namespace phonostad::kernels
