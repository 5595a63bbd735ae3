#include "tave/dense.hpp"

#include <stdexcept>

namespace tave {

DenseMatrix materialize_dense(const ToeplitzMatrix& T, std::size_t cap) {
  if (T.n > cap)
    throw std::runtime_error("materialize_dense: dimension exceeds dense cap");
  const auto n = static_cast<Eigen::Index>(T.n);
  DenseMatrix M(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      M(i, j) = i >= j ? T.first_col[static_cast<std::size_t>(i - j)]
                       : T.first_row[static_cast<std::size_t>(j - i)];
  return M;
}

DenseMatrix dense_circulant(const CVec& c) {
  const auto n = static_cast<Eigen::Index>(c.size());
  DenseMatrix M(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      M(i, j) = c[static_cast<std::size_t>((i - j + n) % n)];
  return M;
}

DenseMatrix dense_skew_circulant(const CVec& s) {
  const auto n = static_cast<Eigen::Index>(s.size());
  DenseMatrix M(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      M(i, j) = i >= j ? s[static_cast<std::size_t>(i - j)]
                       : -s[static_cast<std::size_t>(i - j + n)];
  return M;
}

CVec dense_lu_solve(const DenseMatrix& M, const CVec& b) {
  if (M.rows() != M.cols())
    throw std::invalid_argument("dense_lu_solve: matrix must be square");
  if (static_cast<std::size_t>(M.rows()) != b.size())
    throw std::invalid_argument("dense_lu_solve: dimension mismatch");
  Eigen::PartialPivLU<DenseMatrix> lu(M);
  const double scale = M.cwiseAbs().maxCoeff();
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > 1e-14 * scale))
    throw std::runtime_error("dense_lu_solve: matrix singular to tolerance");
  return from_eigen(lu.solve(to_eigen(b)));
}

double spectral_radius(const DenseMatrix& M) {
  Eigen::ComplexEigenSolver<DenseMatrix> es(M, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double two_norm(const DenseMatrix& M) {
  Eigen::BDCSVD<DenseMatrix> svd(M);
  return svd.singularValues()(0);
}

Eigen::VectorXcd to_eigen(const CVec& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(),
                                            static_cast<Eigen::Index>(v.size()));
}

CVec from_eigen(const Eigen::VectorXcd& v) {
  return CVec(v.data(), v.data() + v.size());
}

}  // namespace tave
