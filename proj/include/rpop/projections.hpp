#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "rpop/blocks.hpp"
#include "rpop/relaxation.hpp"

namespace rpop {

/// Cached action of J = I - A^T (A A^T)^{-1} A, the orthogonal projector onto
/// ker(A), realized through an orthonormal kernel basis V so that
/// J M = V (V^T M) and J S J = V (V^T S V) V^T.  Built once per problem.
struct FaceProjector {
  SparseRowMat A;               // m x N
  Eigen::MatrixXd kernel_basis; // N x (N - m), orthonormal columns
  Eigen::LLT<Eigen::MatrixXd> aat_llt;  // factor of A A^T (dual recovery)
  bool is_identity = false;     // m == 0

  int n() const { return static_cast<int>(A.cols()); }
  int m() const { return static_cast<int>(A.rows()); }

  /// J M (columnwise projection onto ker(A)).
  Eigen::MatrixXd apply(const Eigen::MatrixXd& M) const;
  /// J S J for symmetric S.
  Eigen::MatrixXd conjugate(const Eigen::MatrixXd& S) const;
};

/// Throws std::invalid_argument when A is rank deficient.
FaceProjector make_face_projector(const SparseRowMat& A);

/// Exact Frobenius projection onto the consistency subspace intersected with
/// the nonnegative cone: blockwise ordered-pair mean, clamped at zero when
/// nonneg, with the normalization block pinned to 1 when normalize.
Eigen::MatrixXd project_consistency_nonneg(const Eigen::MatrixXd& X,
                                           const ConsistencyBlocks& blocks,
                                           bool nonneg, bool normalize);

/// Eigenvalue clamp Pi_{S+}(G).
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& G);

/// Exact projection onto {X psd : A X = 0}, computed as Pi_{S+}(J G J) via
/// the kernel basis.
Eigen::MatrixXd project_face_psd(const Eigen::MatrixXd& G,
                                 const FaceProjector& fp);

}  // namespace rpop
