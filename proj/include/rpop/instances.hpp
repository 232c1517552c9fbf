#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "rpop/program.hpp"

namespace rpop {

/// Quadratic simplex program min x^T Q x over the simplex with Gaussian
/// symmetrized Q (draw order: full n x n matrix row-major, then averaged with
/// its transpose).
PolynomialProgram gen_stqp_gaussian(int n, std::uint64_t seed);

/// Extended Horn matrix: -1 on the first off-diagonals and the (1,n) corner
/// pair, +1 elsewhere.  Copositive with optimal simplex value 0.  n odd >= 5.
Eigen::MatrixXd horn_extended_matrix(int n);
PolynomialProgram horn_extended(int n);

/// min x^T Q x + c^T x over binaries (x_i^2 - x_i = 0, orthant domain).
PolynomialProgram gen_biq(int n, std::uint64_t seed);

/// Minimum bisection of an Erdos-Renyi graph G(n, p): Laplacian objective,
/// equipartition row e^T x = n/2, binary equalities.  n even.
PolynomialProgram gen_mbp(int n, double p, std::uint64_t seed);

/// Multiple quadratic knapsack (maximization, stored negated) with binary
/// items and the standard-slack reformulation of A x <= b already applied.
PolynomialProgram gen_mqkp(int n, int d, std::uint64_t seed);

/// Random quartic over the unit ball of R^{n-1}, squared-slack reformulated
/// onto the unit sphere of R^n (free domain).
PolynomialProgram gen_bqm(int n, std::uint64_t seed);

/// Kurtosis-minimization portfolio: empirical fourth-moment objective from
/// 255 uniform(0,10) price samples, mean/variance targets of the equally
/// weighted portfolio, simplex row, orthant domain.
PolynomialProgram gen_kmp(int n, std::uint64_t seed);

enum class CstKind { Random, Copositive };

/// Copositivity test program min <B, x^(x)t> over the simplex for a symmetric
/// order-t tensor; kind Copositive overwrites the diagonal so the tensor is
/// copositive by construction.  t in {2, 4}.
PolynomialProgram cst_tensor(int n, int t, CstKind kind, std::uint64_t seed);

/// Best nonnegative rank-one approximation instances; deterministic entries.
/// t in {3, 4}.
PolynomialProgram ntf_tensor(int n, int t);
PolynomialProgram nstf_tensor(int n, int t, int type);

struct InstanceSpec {
  std::string family;
  int n = 0;
  int d = 3;       // knapsack count
  int t = 2;       // tensor order
  int type = 1;    // nstf entry type
  double p = 0.5;  // edge probability
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  PolynomialProgram pop;
  InstanceSpec spec;
  int default_order = 1;  // smallest valid relaxation order
  std::optional<double> known_vstar;
};

/// Families: stqp, horn, biq, mbp, mqkp, bqm, kmp, cst-random,
/// cst-copositive, ntf, nstf.
GeneratedInstance make_instance(const InstanceSpec& spec);

struct OracleUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  bool exact = false;
  double value = 0.0;  // v* when exact, otherwise the best upper bound found
  Eigen::VectorXd argmin;
  std::string method;
};

/// Desk-scale certification: exact enumeration for binary programs (slacks
/// determined from their defining equalities), exact support enumeration for
/// simplex quadratics, grid / feasible-point upper bounds for small
/// continuous families.  Throws OracleUnavailable past the budget or for
/// unrecognized structure.
OracleResult oracle_solve(const PolynomialProgram& pop,
                          long long budget = (1ll << 22));

/// %gap = (vstar - v) / max(1, |vstar|) * 100.
double relative_gap(double vstar, double v);

}  // namespace rpop
