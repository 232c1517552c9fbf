#include "rpop/moment_solver.hpp"

#include "alm_engine.hpp"

namespace rpop {

std::pair<double, Eigen::MatrixXd> eval_phi_moment(
    const Eigen::MatrixXd& X, const MomentProblem& problem,
    const Eigen::VectorXd& y, const Eigen::MatrixXd& W,
    const std::vector<Eigen::MatrixXd>& Wblocks, double sigma) {
  detail::AlmObjective obj{&problem, &problem.localizers, &y, &W, &Wblocks,
                           sigma};
  Eigen::MatrixXd grad;
  const double value = obj.value_grad(X, &grad);
  return {value, std::move(grad)};
}

SolveReport solve_moment(const MomentProblem& problem,
                         const SolverConfig& config,
                         const SolveCallbacks& callbacks) {
  return detail::run_alm(problem, problem.localizers, config, callbacks);
}

}  // namespace rpop
