#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rpop/projections.hpp"
#include "rpop/relaxation.hpp"

namespace rpop {

struct SolverConfig {
  double tol = 1e-6;          // relative KKT tolerance
  double time_limit = 3600.0; // seconds
  double sigma0 = 1.0;
  int rank0 = 0;              // 0 -> min{200, ceil(N/5)}
  int max_pg_per_subproblem = 50;
  double delta = 0.5;         // sufficient-decrease constant of the lift test
  double bb_min = 1e-10;
  double bb_max = 1e10;
  int ls_window = 5;          // nonmonotone memory length
  double ls_shrink = 0.5;
  double rank_report_threshold = 1e-6;  // relative, reporting
  double rank_keep_threshold = 1e-12;   // relative, factorization keep
  std::uint64_t seed = 0;

  int max_inner_per_outer = 10;
  long max_outer = 1000000;
  double sigma_min = 1e-4;
  double sigma_max = 1e8;
  double lift_t_min = 1e-8;
  double objective_floor = -1e8;  // divergence cutoff
  int stagnation_window = 50;
  double stagnation_improve = 0.1;
};

struct KktResiduals {
  double Rp = 0.0;
  double Rd = 0.0;
  double Rc = 0.0;
  double rmax() const { return std::max(Rp, std::max(Rd, Rc)); }
};

enum class TerminationReason { Converged, TimeLimit, Stagnation };
std::string to_string(TerminationReason reason);

struct SolveReport {
  double objective = 0.0;
  KktResiduals residuals;
  int rank = 0;
  long alm_iters = 0;
  long pg_iters = 0;
  long lift_iters = 0;
  double time_s = 0.0;
  TerminationReason reason = TerminationReason::Stagnation;
  double sigma_final = 0.0;
};

// Observer hooks; every matrix reference is only valid during the call.
struct LowRankPhaseStats {
  double f_entry = 0.0;
  double f_exit = 0.0;
  double grad_norm_exit = 0.0;
  double facial_residual = 0.0;  // ||A R|| / (1 + ||R||)
  int pg_steps = 0;
};
struct LiftStats {
  double phi_base = 0.0;
  double phi_new = 0.0;
  double cvx_rhs = 0.0;  // right-hand side of the acceptance test
  double step = 0.0;
  bool accepted = false;
  double facial_residual = 0.0;
  int rank = 0;
};
struct OuterSnapshot {
  int outer = 0;
  double sigma = 0.0;
  KktResiduals residuals;
  const Eigen::MatrixXd& X;
  const Eigen::MatrixXd& grad_phi;  // at X, pre-update multipliers
  const Eigen::MatrixXd& S;
  const Eigen::MatrixXd& U;  // 0x0 when A is empty
  const Eigen::MatrixXd& Y;
  const Eigen::MatrixXd& W_prev;
  const Eigen::MatrixXd& W;
};
struct SolveCallbacks {
  std::function<void(const LowRankPhaseStats&)> on_lowrank;
  std::function<void(const LiftStats&)> on_lift;
  std::function<void(const OuterSnapshot&)> on_outer;
};

/// Augmented Lagrangian objective of the subproblem in X:
///   phi(X) = <Q0,X> + sigma/2 ||y/sigma - (Q(X)-b)||^2
///          + sigma/2 ||X - W/sigma - Pi_P(X - W/sigma)||^2.
/// Returns (value, gradient).
std::pair<double, Eigen::MatrixXd> eval_phi(const Eigen::MatrixXd& X,
                                            const RelaxationProblem& problem,
                                            const Eigen::VectorXd& y,
                                            const Eigen::MatrixXd& W,
                                            double sigma);

/// Projected-gradient descent on f_r(R) = phi(R R^T) over {A R = 0} with
/// alternating Barzilai-Borwein steps and a nonmonotone line search.
/// Guarantees f_r(result) <= f_r(R0); requires A R0 = 0.
Eigen::MatrixXd lowrank_phase(const Eigen::MatrixXd& R0,
                              const RelaxationProblem& problem,
                              const FaceProjector& fp, const Eigen::VectorXd& y,
                              const Eigen::MatrixXd& W, double sigma,
                              const SolverConfig& config);

struct LiftResult {
  Eigen::MatrixXd X;
  Eigen::MatrixXd R;
  bool accepted = false;  // false: step floor hit, stagnation signal
};

/// One projected-gradient step on the convex subproblem from X = R R^T with
/// stepsize 1/sigma (halved until the sufficient-decrease test passes).
LiftResult lifting_step(const Eigen::MatrixXd& R,
                        const RelaxationProblem& problem,
                        const FaceProjector& fp, const Eigen::VectorXd& y,
                        const Eigen::MatrixXd& W, double sigma,
                        const SolverConfig& config);

/// Dual variables of the facial subproblem: S = J grad J and
/// U = (A A^T)^{-1} A grad (I - 1/2 A^T (A A^T)^{-1} A), satisfying
/// grad - A^T U - U^T A = S.  U is 0x0 when A is empty.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> dual_recovery(
    const Eigen::MatrixXd& X, const Eigen::MatrixXd& grad_phi,
    const FaceProjector& fp);

KktResiduals kkt_residuals(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                           const Eigen::VectorXd& y, const Eigen::MatrixXd& W,
                           const Eigen::MatrixXd& S,
                           const RelaxationProblem& problem);

SolveReport solve(const RelaxationProblem& problem, const SolverConfig& config,
                  const SolveCallbacks& callbacks = {});

}  // namespace rpop
