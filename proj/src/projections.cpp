#include "rpop/projections.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <stdexcept>
#include <string>

namespace rpop {

Eigen::MatrixXd FaceProjector::apply(const Eigen::MatrixXd& M) const {
  if (is_identity) return M;
  return kernel_basis * (kernel_basis.transpose() * M);
}

Eigen::MatrixXd FaceProjector::conjugate(const Eigen::MatrixXd& S) const {
  if (is_identity) return S;
  const Eigen::MatrixXd T =
      kernel_basis.transpose() * S * kernel_basis;
  return kernel_basis * T * kernel_basis.transpose();
}

FaceProjector make_face_projector(const SparseRowMat& A) {
  FaceProjector fp;
  fp.A = A;
  const int N = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  if (m == 0) {
    fp.is_identity = true;
    fp.kernel_basis = Eigen::MatrixXd::Identity(N, N);
    return fp;
  }
  Eigen::MatrixXd At = Eigen::MatrixXd(A).transpose();  // N x m
  {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> rank_qr(At);
    rank_qr.setThreshold(1e-10);
    if (static_cast<int>(rank_qr.rank()) < m) {
      throw std::invalid_argument(
          "face projector: A is rank deficient (rank " +
          std::to_string(rank_qr.rank()) + " of " + std::to_string(m) + ")");
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(At);
  Eigen::MatrixXd Qfull = qr.householderQ() * Eigen::MatrixXd::Identity(N, N);
  fp.kernel_basis = Qfull.rightCols(N - m);
  fp.aat_llt.compute(Eigen::MatrixXd(A * A.transpose()));
  if (fp.aat_llt.info() != Eigen::Success) {
    throw std::invalid_argument("face projector: A A^T factorization failed");
  }
  return fp;
}

Eigen::MatrixXd project_consistency_nonneg(const Eigen::MatrixXd& X,
                                           const ConsistencyBlocks& blocks,
                                           bool nonneg, bool normalize) {
  const int N = blocks.basis_size;
  if (X.rows() != N || X.cols() != N) {
    throw std::invalid_argument("consistency projection: dimension mismatch");
  }
  std::vector<double> sums(blocks.ordered_count.size(), 0.0);
  std::size_t idx = 0;
  for (int i = 0; i < N; ++i) {
    for (int j = i; j < N; ++j, ++idx) {
      // Off-diagonal entries enter the ordered-pair mean twice.
      sums[blocks.block_of[idx]] += (i == j) ? X(i, i) : (X(i, j) + X(j, i));
    }
  }
  std::vector<double> value(sums.size());
  for (std::size_t b = 0; b < sums.size(); ++b) {
    double v = sums[b] / blocks.ordered_count[b];
    if (nonneg && v < 0.0) v = 0.0;
    value[b] = v;
  }
  if (normalize && blocks.gamma0_block >= 0) {
    value[blocks.gamma0_block] = 1.0;
  }
  Eigen::MatrixXd out(N, N);
  idx = 0;
  for (int i = 0; i < N; ++i) {
    for (int j = i; j < N; ++j, ++idx) {
      const double v = value[blocks.block_of[idx]];
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& G) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error(
        "psd projection: eigendecomposition failed (norm " +
        std::to_string(G.norm()) + ")");
  }
  const Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXd project_face_psd(const Eigen::MatrixXd& G,
                                 const FaceProjector& fp) {
  if (G.rows() != fp.n() || G.cols() != fp.n()) {
    throw std::invalid_argument("face psd projection: dimension mismatch");
  }
  if (fp.is_identity) return project_psd(G);
  const Eigen::MatrixXd& V = fp.kernel_basis;
  const Eigen::MatrixXd T = V.transpose() * G * V;
  return V * project_psd(T) * V.transpose();
}

}  // namespace rpop
