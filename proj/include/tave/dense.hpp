#pragma once

#include <Eigen/Dense>

#include "tave/toeplitz.hpp"
#include "tave/types.hpp"

namespace tave {

// Dense matrices exist for test oracles, diagnostics and the small HSS
// baselines only; everything production-sized stays in structured form.
using DenseMatrix = Eigen::MatrixXcd;

/// Full matrix from the Toeplitz representation. Throws when n exceeds cap.
DenseMatrix materialize_dense(const ToeplitzMatrix& T,
                              std::size_t cap = kDenseCap);

/// Dense circulant / skew-circulant from a first column.
DenseMatrix dense_circulant(const CVec& first_col);
DenseMatrix dense_skew_circulant(const CVec& first_col);

/// Partial-pivoting LU solve. Throws when a pivot falls below 1e-14 relative
/// to the largest matrix entry.
CVec dense_lu_solve(const DenseMatrix& M, const CVec& b);

double spectral_radius(const DenseMatrix& M);

/// Matrix 2-norm (largest singular value).
double two_norm(const DenseMatrix& M);

Eigen::VectorXcd to_eigen(const CVec& v);
CVec from_eigen(const Eigen::VectorXcd& v);

}  // namespace tave
