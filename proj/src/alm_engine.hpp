#pragma once

#include <vector>

#include "rpop/moment_solver.hpp"
#include "rpop/solver.hpp"

namespace rpop::detail {

// Fixed-multiplier ALM subproblem objective; localizer list may be empty.
struct AlmObjective {
  const RelaxationProblem* prob = nullptr;
  const std::vector<Localizer>* localizers = nullptr;
  const Eigen::VectorXd* y = nullptr;
  const Eigen::MatrixXd* W = nullptr;
  const std::vector<Eigen::MatrixXd>* Wblocks = nullptr;
  double sigma = 1.0;

  double value_grad(const Eigen::MatrixXd& X, Eigen::MatrixXd* grad) const;

  /// Constant part ||y||^2/(2 sigma) + ||W||^2/(2 sigma) + ... carried by the
  /// penalty terms; subtracted when normalizing stationarity tests so that
  /// large multipliers cannot mask a large gradient.
  double value_offset() const;
};

struct LowRankOutcome {
  double f_exit = 0.0;
  double grad_norm_exit = 0.0;  // relative projected gradient norm at exit
  int pg_steps = 0;
};

LowRankOutcome lowrank_phase_impl(const AlmObjective& obj,
                                  const FaceProjector& fp,
                                  const SolverConfig& cfg, double inner_tol,
                                  Eigen::MatrixXd& R);

struct LiftOutcome {
  bool accepted = false;
  double phi_base = 0.0;
  double phi_new = 0.0;
  double cvx_rhs = 0.0;
  double step = 0.0;
};

LiftOutcome lifting_step_impl(const AlmObjective& obj, const FaceProjector& fp,
                              const SolverConfig& cfg, Eigen::MatrixXd& R,
                              Eigen::MatrixXd& X);

SolveReport run_alm(const RelaxationProblem& problem,
                    const std::vector<Localizer>& localizers,
                    const SolverConfig& config, const SolveCallbacks& callbacks);

}  // namespace rpop::detail
