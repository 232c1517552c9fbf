#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <vector>

#include "rpop/blocks.hpp"
#include "rpop/multiindex.hpp"
#include "rpop/polynomial.hpp"
#include "rpop/program.hpp"

namespace rpop {

using SparseRowMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using SparseMat = Eigen::SparseMatrix<double>;

/// Linear map S^A_tau -> S^(sub-basis of order tau - ceil(deg h / 2)) that
/// realizes X -> M_h(X).  Each output entry (k,l), k <= l, is a weighted sum
/// of representative entries of X; the representative choice makes M_h(X)
/// automatically consistent in its own index set.
struct Localizer {
  int out_size = 0;
  int in_size = 0;
  struct Entry {
    std::int32_t k, l;  // output entry, k <= l
    std::int32_t a, b;  // input entry, a <= b
    double c;
  };
  std::vector<Entry> entries;

  Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const;
  /// Adjoint wrt the trace inner product: <apply(X), Z> == <X, adjoint(Z)>.
  Eigen::MatrixXd apply_adjoint(const Eigen::MatrixXd& Z) const;
};

Localizer build_localizer(const Polynomial& h, const MonomialBasis& basis);

/// Data of the polyhedral-SDP problem
///   min <Q0, X>  s.t.  <H0, X> = 1, A X = 0, <Qeq_i, X> = b_i,
///                      X psd, X consistent, (X >= 0 if nonneg).
/// H0 is the unit matrix E_{e1,e1} and is kept implicitly via h0_index.
struct RelaxationProblem {
  MonomialBasis basis;
  Eigen::MatrixXd Q0;
  int h0_index = 0;
  SparseRowMat A;  // full row rank after preprocessing
  std::vector<SparseMat> Qeq;
  Eigen::VectorXd b;
  ConsistencyBlocks blocks;
  bool nonneg = false;
  bool normalize = true;

  int size() const { return basis.size(); }
};

struct MomentProblem : RelaxationProblem {
  std::vector<Localizer> localizers;
};

/// Symmetric Gram representative of a homogeneous degree-2*tau polynomial:
/// <lift_polynomial(pbar), u u^T> == pbar, with each coefficient spread
/// uniformly over the ordered pairs of its block.
Eigen::MatrixXd lift_polynomial(const Polynomial& pbar, const MonomialBasis& basis);

/// Rows a_i with <a_i, u(x)> = degree-tau homogenization of each input
/// polynomial; rank-deficient rows are dropped (relative threshold 1e-10)
/// keeping the earliest independent ones.
SparseRowMat build_facial_rows(const std::vector<Polynomial>& linear_equalities,
                               const MonomialBasis& basis);

/// {g * w^kappa : |kappa| <= 2*tau - deg g}.
std::vector<Polynomial> generate_redundant_equalities(const Polynomial& g, int tau);

RelaxationProblem build_polyhedral_sdp(const PolynomialProgram& pop, int tau,
                                       bool use_rlt);

MomentProblem build_moment_sos(const PolynomialProgram& pop, int tau,
                               bool with_nonneg);

/// Scalar equality count of the assembled problem the way solver reports
/// tabulate it: facial rows times N, plus the independent consistency
/// equalities, plus normalization, plus the <Qeq_i, X> = b_i operators.
long long equality_count(const RelaxationProblem& problem);

}  // namespace rpop
