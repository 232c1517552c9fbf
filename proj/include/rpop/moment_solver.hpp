#pragma once

#include "rpop/solver.hpp"

namespace rpop {

/// phi extended with the localizer penalty
///   sigma/2 sum_j ||Pi_{S+}(W_j/sigma - M_{h_j}(X))||^2,
/// gradient contribution -sigma sum_j M*_{h_j}(Pi_{S+}(W_j/sigma - M_{h_j}(X))).
std::pair<double, Eigen::MatrixXd> eval_phi_moment(
    const Eigen::MatrixXd& X, const MomentProblem& problem,
    const Eigen::VectorXd& y, const Eigen::MatrixXd& W,
    const std::vector<Eigen::MatrixXd>& Wblocks, double sigma);

/// Split ALM over (X, Y, {Y_j}) with auxiliary psd blocks for each localizer.
/// With no localizers this reduces exactly to solve() on the base problem.
SolveReport solve_moment(const MomentProblem& problem, const SolverConfig& config,
                         const SolveCallbacks& callbacks = {});

}  // namespace rpop
