#include "rpop/relaxation.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rpop {

namespace {

std::string exponent_str(const Exponent& e) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << ")";
  return os.str();
}

// All alpha <= gamma with |alpha| = tau, in lex-descending order.
void decompose_rec(const Exponent& gamma, std::size_t pos, int left,
                   Exponent& alpha, std::vector<Exponent>& out) {
  if (pos + 1 == gamma.size()) {
    if (left <= gamma[pos]) {
      alpha[pos] = left;
      out.push_back(alpha);
    }
    return;
  }
  for (int d = std::min(left, gamma[pos]); d >= 0; --d) {
    alpha[pos] = d;
    decompose_rec(gamma, pos + 1, left - d, alpha, out);
  }
}

std::vector<Exponent> decompositions(const Exponent& gamma, int tau) {
  std::vector<Exponent> out;
  Exponent alpha(gamma.size(), 0);
  decompose_rec(gamma, 0, tau, alpha, out);
  return out;
}

// Coefficient row of the degree-tau homogenization of q over the basis.
Eigen::SparseVector<double> linear_row(const Polynomial& q,
                                       const MonomialBasis& basis) {
  if (q.degree() > basis.order) {
    throw std::invalid_argument(
        "facial row input has degree " + std::to_string(q.degree()) +
        " > tau = " + std::to_string(basis.order) +
        "; not linear in the basis monomials");
  }
  const Polynomial qh = homogenize_to_degree(q, basis.order);
  Eigen::SparseVector<double> row(basis.size());
  for (const auto& [e, c] : qh.terms()) {
    const int idx = basis.index_of(e);
    if (idx < 0) {
      throw std::invalid_argument("facial row monomial " + exponent_str(e) +
                                  " not in basis");
    }
    row.coeffRef(idx) = c;
  }
  return row;
}

// Keep the earliest maximal independent subset of rows (column-pivoted QR of
// A^T with relative threshold 1e-10), preserving the original row values.
SparseRowMat dedup_rows(const std::vector<Eigen::SparseVector<double>>& rows,
                        int ncols) {
  std::vector<int> keep;
  if (!rows.empty()) {
    Eigen::MatrixXd At(ncols, static_cast<int>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
      At.col(static_cast<int>(j)) = Eigen::VectorXd(rows[j]);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(At);
    qr.setThreshold(1e-10);
    const int rank = static_cast<int>(qr.rank());
    const auto& perm = qr.colsPermutation().indices();
    keep.reserve(rank);
    for (int k = 0; k < rank; ++k) keep.push_back(perm[k]);
    std::sort(keep.begin(), keep.end());
  }
  SparseRowMat A(static_cast<int>(keep.size()), ncols);
  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t r = 0; r < keep.size(); ++r) {
    for (Eigen::SparseVector<double>::InnerIterator it(rows[keep[r]]); it; ++it) {
      trips.emplace_back(static_cast<int>(r), it.index(), it.value());
    }
  }
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  return A;
}

// Deterministic sign for factor rows of a Gram matrix: flip so the entry sum
// is positive, falling back to the first nonzero entry.
void normalize_row_sign(Eigen::VectorXd& row) {
  const double sum = row.sum();
  if (sum < -1e-12) {
    row = -row;
    return;
  }
  if (sum > 1e-12) return;
  for (int i = 0; i < row.size(); ++i) {
    if (std::abs(row[i]) > 1e-12) {
      if (row[i] < 0) row = -row;
      return;
    }
  }
}

// If Q (or -Q) is psd, return the rows B with B^T B = +-Q so <Q,X>=0 can be
// enforced as the facial constraint B X = 0.
bool try_psd_factor(const Eigen::MatrixXd& Q,
                    std::vector<Eigen::SparseVector<double>>& rows_out) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
  if (es.info() != Eigen::Success) return false;
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1.0);
  const double tol = 1e-9 * scale;
  double sign = 0.0;
  if (ev.minCoeff() >= -tol) {
    sign = 1.0;
  } else if (ev.maxCoeff() <= tol) {
    sign = -1.0;
  } else {
    return false;
  }
  for (int i = 0; i < ev.size(); ++i) {
    const double lam = sign * ev[i];
    if (lam <= tol) continue;
    Eigen::VectorXd row = std::sqrt(lam) * es.eigenvectors().col(i);
    normalize_row_sign(row);
    Eigen::SparseVector<double> srow(Q.rows());
    for (int k = 0; k < row.size(); ++k) {
      if (std::abs(row[k]) > 1e-14 * scale) srow.coeffRef(k) = row[k];
    }
    rows_out.push_back(std::move(srow));
  }
  return true;
}

SparseMat to_sparse_sym(const Eigen::MatrixXd& Q) {
  std::vector<Eigen::Triplet<double>> trips;
  for (int j = 0; j < Q.cols(); ++j) {
    for (int i = 0; i < Q.rows(); ++i) {
      if (Q(i, j) != 0.0) trips.emplace_back(i, j, Q(i, j));
    }
  }
  SparseMat S(Q.rows(), Q.cols());
  S.setFromTriplets(trips.begin(), trips.end());
  S.makeCompressed();
  return S;
}

// Monomials w^kappa with |kappa| <= max_deg, ordered by degree then
// lex-descending (matches the basis ordering through the homogenization
// bijection).
std::vector<Exponent> monomials_up_to(int n, int max_deg) {
  const MonomialBasis b = enumerate_basis(n, max_deg);
  std::vector<Exponent> out;
  out.reserve(b.exponents.size());
  for (const auto& e : b.exponents) {
    out.emplace_back(e.begin() + 1, e.end());
  }
  return out;
}

int min_order(const PolynomialProgram& pop) {
  int tau = (pop.objective.degree() + 1) / 2;
  for (const auto& g : pop.equalities) tau = std::max(tau, (g.degree() + 1) / 2);
  for (const auto& h : pop.inequalities) tau = std::max(tau, (h.degree() + 1) / 2);
  return std::max(tau, 1);
}

}  // namespace

Eigen::MatrixXd lift_polynomial(const Polynomial& pbar, const MonomialBasis& basis) {
  const int N = basis.size();
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(N, N);
  for (const auto& [gamma, c] : pbar.terms()) {
    if (static_cast<int>(gamma.size()) != basis.nvars + 1 ||
        degree(gamma) != 2 * basis.order) {
      throw std::invalid_argument("lift: exponent " + exponent_str(gamma) +
                                  " is not a degree-" +
                                  std::to_string(2 * basis.order) +
                                  " product of basis monomials");
    }
    const auto alphas = decompositions(gamma, basis.order);
    if (alphas.empty()) {
      throw std::invalid_argument("lift: no basis decomposition for " +
                                  exponent_str(gamma));
    }
    const double spread = c / static_cast<double>(alphas.size());
    for (const auto& alpha : alphas) {
      Exponent beta(gamma.size());
      for (std::size_t i = 0; i < gamma.size(); ++i) beta[i] = gamma[i] - alpha[i];
      Q(basis.index_of(alpha), basis.index_of(beta)) += spread;
    }
  }
  return Q;
}

SparseRowMat build_facial_rows(const std::vector<Polynomial>& linear_equalities,
                               const MonomialBasis& basis) {
  std::vector<Eigen::SparseVector<double>> rows;
  rows.reserve(linear_equalities.size());
  for (const auto& q : linear_equalities) {
    if (q.is_zero()) continue;
    rows.push_back(linear_row(q, basis));
  }
  return dedup_rows(rows, basis.size());
}

std::vector<Polynomial> generate_redundant_equalities(const Polynomial& g, int tau) {
  if (g.degree() > 2 * tau) {
    throw std::invalid_argument("redundant equalities: deg g > 2*tau");
  }
  std::vector<Polynomial> out;
  for (const auto& kappa : monomials_up_to(g.nvars(), 2 * tau - g.degree())) {
    out.push_back(g * Polynomial::monomial(g.nvars(), kappa, 1.0));
  }
  return out;
}

namespace {

struct EqualitySplit {
  std::vector<Eigen::SparseVector<double>> facial_rows;
  std::vector<SparseMat> operators;
};

// Facial path for one equality: all products g * w^kappa with
// |kappa| <= tau - deg g are linear in the basis monomials.
void push_facial_products(const Polynomial& g, const MonomialBasis& basis,
                          EqualitySplit& split) {
  for (const auto& kappa :
       monomials_up_to(g.nvars(), basis.order - g.degree())) {
    const Polynomial q = g * Polynomial::monomial(g.nvars(), kappa, 1.0);
    if (q.is_zero()) continue;
    split.facial_rows.push_back(linear_row(q, basis));
  }
}

}  // namespace

RelaxationProblem build_polyhedral_sdp(const PolynomialProgram& pop, int tau,
                                       bool use_rlt) {
  if (!pop.inequalities.empty()) {
    throw std::invalid_argument(
        "build_polyhedral_sdp: eliminate inequalities first (slack "
        "reformulation)");
  }
  if (tau < min_order(pop)) {
    throw std::invalid_argument("relaxation order " + std::to_string(tau) +
                                " below minimum " +
                                std::to_string(min_order(pop)));
  }
  RelaxationProblem prob;
  prob.basis = enumerate_basis(pop.nvars, tau);
  prob.Q0 = lift_polynomial(homogenize(pop.objective, tau), prob.basis);
  prob.h0_index = prob.basis.e1_index;
  prob.nonneg = (pop.domain == Domain::NonnegativeOrthant);

  EqualitySplit split;
  for (const auto& g : pop.equalities) {
    if (g.is_zero()) continue;
    if (use_rlt && g.degree() <= tau) {
      push_facial_products(g, prob.basis, split);
      continue;
    }
    std::vector<Polynomial> lifted;
    if (use_rlt) {
      lifted = generate_redundant_equalities(g, tau);
    } else {
      lifted.push_back(g);
    }
    for (const auto& q : lifted) {
      if (q.is_zero()) continue;
      const Eigen::MatrixXd Q = lift_polynomial(homogenize(q, tau), prob.basis);
      if (!try_psd_factor(Q, split.facial_rows)) {
        split.operators.push_back(to_sparse_sym(Q));
      }
    }
  }
  prob.A = dedup_rows(split.facial_rows, prob.basis.size());
  prob.Qeq = std::move(split.operators);
  prob.b = Eigen::VectorXd::Zero(static_cast<int>(prob.Qeq.size()));
  prob.blocks = build_blocks(prob.basis);
  return prob;
}

MomentProblem build_moment_sos(const PolynomialProgram& pop, int tau,
                               bool with_nonneg) {
  if (tau < min_order(pop)) {
    throw std::invalid_argument("relaxation order " + std::to_string(tau) +
                                " below minimum " +
                                std::to_string(min_order(pop)));
  }
  MomentProblem prob;
  prob.basis = enumerate_basis(pop.nvars, tau);
  prob.Q0 = lift_polynomial(homogenize(pop.objective, tau), prob.basis);
  prob.h0_index = prob.basis.e1_index;
  prob.nonneg = with_nonneg;

  EqualitySplit split;
  for (const auto& g : pop.equalities) {
    if (g.is_zero()) continue;
    if (g.degree() <= tau) {
      push_facial_products(g, prob.basis, split);
    } else {
      for (const auto& q : generate_redundant_equalities(g, tau)) {
        if (q.is_zero()) continue;
        split.operators.push_back(
            to_sparse_sym(lift_polynomial(homogenize(q, tau), prob.basis)));
      }
    }
  }
  prob.A = dedup_rows(split.facial_rows, prob.basis.size());
  prob.Qeq = std::move(split.operators);
  prob.b = Eigen::VectorXd::Zero(static_cast<int>(prob.Qeq.size()));
  prob.blocks = build_blocks(prob.basis);

  // The conic domain enters as localizing constraints w_j >= 0.
  std::vector<Polynomial> ineqs = pop.inequalities;
  if (pop.domain == Domain::NonnegativeOrthant) {
    for (int j = 0; j < pop.nvars; ++j) {
      ineqs.push_back(Polynomial::variable(pop.nvars, j));
    }
  }
  prob.localizers.reserve(ineqs.size());
  for (const auto& h : ineqs) prob.localizers.push_back(build_localizer(h, prob.basis));
  return prob;
}

Localizer build_localizer(const Polynomial& h, const MonomialBasis& basis) {
  if (h.nvars() != basis.nvars) {
    throw std::invalid_argument("localizer polynomial variable count mismatch");
  }
  const int dg = (h.degree() + 1) / 2;
  if (dg > basis.order) {
    throw std::invalid_argument("localizer degree exceeds relaxation order");
  }
  const MonomialBasis sub = enumerate_basis(basis.nvars, basis.order - dg);
  Localizer loc;
  loc.out_size = sub.size();
  loc.in_size = basis.size();
  const int n1 = basis.nvars + 1;
  for (int k = 0; k < sub.size(); ++k) {
    for (int l = k; l < sub.size(); ++l) {
      for (const auto& [mu, c] : h.terms()) {
        Exponent gamma(n1, 0);
        int wdeg = 0;
        for (int i = 1; i < n1; ++i) {
          gamma[i] = sub.exponents[k][i] + sub.exponents[l][i] + mu[i - 1];
          wdeg += gamma[i];
        }
        gamma[0] = 2 * basis.order - wdeg;
        const auto rep = representative_pair(gamma, basis);
        loc.entries.push_back({k, l, rep.first, rep.second, c});
      }
    }
  }
  return loc;
}

Eigen::MatrixXd Localizer::apply(const Eigen::MatrixXd& X) const {
  if (X.rows() != in_size || X.cols() != in_size) {
    throw std::invalid_argument("localizer apply: dimension mismatch");
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(out_size, out_size);
  for (const auto& e : entries) out(e.k, e.l) += e.c * X(e.a, e.b);
  for (int k = 0; k < out_size; ++k) {
    for (int l = k + 1; l < out_size; ++l) out(l, k) = out(k, l);
  }
  return out;
}

Eigen::MatrixXd Localizer::apply_adjoint(const Eigen::MatrixXd& Z) const {
  if (Z.rows() != out_size || Z.cols() != out_size) {
    throw std::invalid_argument("localizer adjoint: dimension mismatch");
  }
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(in_size, in_size);
  for (const auto& e : entries) {
    const double w_out = (e.k == e.l) ? 1.0 : 2.0;
    acc(e.a, e.b) += w_out * e.c * Z(e.k, e.l);
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(in_size, in_size);
  for (int a = 0; a < in_size; ++a) {
    out(a, a) = acc(a, a);
    for (int b = a + 1; b < in_size; ++b) {
      out(a, b) = out(b, a) = 0.5 * acc(a, b);
    }
  }
  return out;
}

long long equality_count(const RelaxationProblem& problem) {
  const long long N = problem.size();
  long long count = static_cast<long long>(problem.A.rows()) * N;
  count += N * (N + 1) / 2 - problem.blocks.block_count();
  if (problem.normalize) count += 1;
  count += static_cast<long long>(problem.Qeq.size());
  return count;
}

}  // namespace rpop
