#include "rpop/solver.hpp"

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "alm_engine.hpp"
#include "rpop/rng.hpp"

namespace rpop {

std::string to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::Converged: return "converged";
    case TerminationReason::TimeLimit: return "time_limit";
    case TerminationReason::Stagnation: return "stagnation";
  }
  return "unknown";
}

namespace detail {

namespace {

double sparse_dot(const SparseMat& Q, const Eigen::MatrixXd& X) {
  double v = 0.0;
  for (int k = 0; k < Q.outerSize(); ++k) {
    for (SparseMat::InnerIterator it(Q, k); it; ++it) {
      v += it.value() * X(it.row(), it.col());
    }
  }
  return v;
}

void sparse_axpy(double a, const SparseMat& Q, Eigen::MatrixXd& G) {
  for (int k = 0; k < Q.outerSize(); ++k) {
    for (SparseMat::InnerIterator it(Q, k); it; ++it) {
      G(it.row(), it.col()) += a * it.value();
    }
  }
}

double facial_residual(const SparseRowMat& A, const Eigen::MatrixXd& R) {
  if (A.rows() == 0) return 0.0;
  return (A * R).norm() / (1.0 + R.norm());
}

}  // namespace

double AlmObjective::value_grad(const Eigen::MatrixXd& X,
                                Eigen::MatrixXd* grad) const {
  const RelaxationProblem& P = *prob;
  double value = P.Q0.cwiseProduct(X).sum();
  if (grad) *grad = P.Q0;

  const int ell = static_cast<int>(P.Qeq.size());
  if (ell > 0) {
    Eigen::VectorXd u(ell);
    for (int i = 0; i < ell; ++i) {
      u[i] = (*y)[i] / sigma - (sparse_dot(P.Qeq[i], X) - P.b[i]);
    }
    value += 0.5 * sigma * u.squaredNorm();
    if (grad) {
      for (int i = 0; i < ell; ++i) sparse_axpy(-sigma * u[i], P.Qeq[i], *grad);
    }
  }

  Eigen::MatrixXd Z = X - (*W) / sigma;
  Eigen::MatrixXd D =
      Z - project_consistency_nonneg(Z, P.blocks, P.nonneg, P.normalize);
  value += 0.5 * sigma * D.squaredNorm();
  if (grad) grad->noalias() += sigma * D;

  if (localizers && !localizers->empty()) {
    for (std::size_t j = 0; j < localizers->size(); ++j) {
      const Localizer& loc = (*localizers)[j];
      Eigen::MatrixXd Zj = (*Wblocks)[j] / sigma - loc.apply(X);
      Eigen::MatrixXd Pj = project_psd(Zj);
      value += 0.5 * sigma * Pj.squaredNorm();
      if (grad) grad->noalias() -= sigma * loc.apply_adjoint(Pj);
    }
  }
  if (!std::isfinite(value)) {
    throw std::runtime_error("alm objective diverged to a non-finite value");
  }
  return value;
}

double AlmObjective::value_offset() const {
  double off = y->squaredNorm() + W->squaredNorm();
  if (Wblocks) {
    for (const auto& Wj : *Wblocks) off += Wj.squaredNorm();
  }
  return off / (2.0 * sigma);
}

LowRankOutcome lowrank_phase_impl(const AlmObjective& obj,
                                  const FaceProjector& fp,
                                  const SolverConfig& cfg, double inner_tol,
                                  Eigen::MatrixXd& R) {
  constexpr double kArmijo = 1e-4;
  LowRankOutcome out;
  const double offset = obj.value_offset();

  Eigen::MatrixXd X = R * R.transpose();
  Eigen::MatrixXd grad;
  double f = obj.value_grad(X, &grad);
  Eigen::MatrixXd gp = fp.apply(2.0 * (grad * R));

  // Every accepted step lands strictly below the entry value (the
  // nonmonotone reference never exceeds f(R0)), so the last iterate already
  // satisfies the phase-level non-increase condition.
  std::deque<double> window{f};
  double t_bb = 1.0 / std::max(1.0, gp.norm());
  double gnorm = gp.norm();

  for (int step = 0; step < cfg.max_pg_per_subproblem; ++step) {
    if (gnorm / (1.0 + std::abs(f - offset)) <= inner_tol) break;

    double t = std::clamp(t_bb, cfg.bb_min, cfg.bb_max);
    const double f_ref = *std::max_element(window.begin(), window.end());
    bool accepted = false;
    Eigen::MatrixXd R_try, X_try, grad_try;
    double f_try = 0.0;
    while (t >= 1e-16) {
      R_try = R - t * gp;
      X_try.noalias() = R_try * R_try.transpose();
      f_try = obj.value_grad(X_try, &grad_try);
      if (f_try <= f_ref - kArmijo * t * gnorm * gnorm) {
        accepted = true;
        break;
      }
      t *= cfg.ls_shrink;
    }
    if (!accepted) break;

    Eigen::MatrixXd gp_try = fp.apply(2.0 * (grad_try * R_try));
    const double ss = t * t * gnorm * gnorm;
    const Eigen::MatrixXd yv = gp_try - gp;
    const double sy = (-t) * gp.cwiseProduct(yv).sum();
    const double yy = yv.squaredNorm();
    double bb;
    if (step % 2 == 0) {
      bb = (sy > 0.0) ? ss / sy : 2.0 * t;
    } else {
      bb = (sy > 0.0 && yy > 0.0) ? sy / yy : 2.0 * t;
    }
    t_bb = std::isfinite(bb) && bb > 0.0 ? bb : 2.0 * t;

    R.swap(R_try);
    X.swap(X_try);
    grad.swap(grad_try);
    gp.swap(gp_try);
    f = f_try;
    gnorm = gp.norm();
    ++out.pg_steps;

    window.push_back(f);
    if (static_cast<int>(window.size()) > cfg.ls_window) window.pop_front();
  }

  out.f_exit = f;
  out.grad_norm_exit = gnorm / (1.0 + std::abs(f - offset));
  return out;
}

namespace {

Eigen::VectorXd monomial_vector(const MonomialBasis& basis,
                                const Eigen::VectorXd& w) {
  Eigen::VectorXd u(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    double m = 1.0;
    const Exponent& e = basis.exponents[i];
    for (int v = 1; v < static_cast<int>(e.size()); ++v) {
      for (int k = 0; k < e[v]; ++k) m *= w[v - 1];
    }
    u[i] = m;  // x0 = 1
  }
  return u;
}

// d u / d w_j as a dense N x n matrix.
Eigen::MatrixXd monomial_jacobian(const MonomialBasis& basis,
                                  const Eigen::VectorXd& w) {
  const int n = basis.nvars;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(basis.size(), n);
  for (int i = 0; i < basis.size(); ++i) {
    const Exponent& e = basis.exponents[i];
    for (int j = 0; j < n; ++j) {
      if (e[j + 1] == 0) continue;
      double m = static_cast<double>(e[j + 1]);
      for (int v = 1; v < static_cast<int>(e.size()); ++v) {
        int pow = e[v] - (v == j + 1 ? 1 : 0);
        for (int k = 0; k < pow; ++k) m *= w[v - 1];
      }
      J(i, j) = m;
    }
  }
  return J;
}

// Rank-one rounding: pull the first-order moments out of X, Gauss-Newton them
// onto the lifted constraint system, and accept the lifted rank-one point
// only when (a) X already essentially equals that lift (the iterate has
// identified a rank-one extreme point) and (b) the polished point stays
// feasible and complementary with the recovered dual slack.  Mixture-type
// optima fail the proximity test by orders of magnitude and keep the ALM
// iterate.
bool rank_one_polish(const RelaxationProblem& problem,
                     const std::vector<Localizer>& localizers,
                     const Eigen::MatrixXd& S, const SolverConfig& cfg,
                     Eigen::MatrixXd& X) {
  const MonomialBasis& basis = problem.basis;
  const int n = basis.nvars;
  const int e1 = problem.h0_index;
  const int ell = static_cast<int>(problem.Qeq.size());
  if (X(e1, e1) < 0.5) return false;

  Eigen::VectorXd w(n);
  {
    Exponent shift(n + 1, 0);
    shift[0] = basis.order - 1;
    for (int j = 0; j < n; ++j) {
      shift[j + 1] = 1;
      const int idx = basis.index_of(shift);
      shift[j + 1] = 0;
      if (idx < 0) return false;
      w[j] = X(e1, idx) / X(e1, e1);
    }
  }

  // The rounding is only meaningful when X is the lift of those moments.
  {
    const Eigen::VectorXd u0 = monomial_vector(basis, w);
    const double dist = (u0 * u0.transpose() - X).norm() / (1.0 + X.norm());
    if (dist > 1e-3) return false;
  }

  // Pin near-zero coordinates on the orthant so the Gauss-Newton steps act
  // on the free block only; degenerate (double-root) residuals then contract
  // linearly instead of being blocked by the bound clamp.
  std::vector<int> free_vars;
  for (int j = 0; j < n; ++j) {
    if (problem.nonneg && w[j] <= 1e-6) {
      w[j] = 0.0;
    } else {
      free_vars.push_back(j);
    }
  }

  const auto residual = [&](const Eigen::VectorXd& point,
                            Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    const Eigen::VectorXd u = monomial_vector(basis, point);
    const int m = static_cast<int>(problem.A.rows());
    r.resize(m + ell);
    if (m > 0) r.head(m) = problem.A * u;
    Eigen::MatrixXd J;
    if (jac) {
      J = monomial_jacobian(basis, point);
      jac->resize(m + ell, static_cast<int>(free_vars.size()));
      Eigen::MatrixXd Jfree(basis.size(), free_vars.size());
      for (std::size_t c = 0; c < free_vars.size(); ++c) {
        Jfree.col(static_cast<int>(c)) = J.col(free_vars[c]);
      }
      if (m > 0) jac->topRows(m) = problem.A * Jfree;
      for (int i = 0; i < ell; ++i) {
        const Eigen::VectorXd Qu = problem.Qeq[i] * u;
        r[m + i] = u.dot(Qu) - problem.b[i];
        jac->row(m + i) = 2.0 * Qu.transpose() * Jfree;
      }
    } else {
      for (int i = 0; i < ell; ++i) {
        r[m + i] = u.dot(problem.Qeq[i] * u) - problem.b[i];
      }
    }
  };

  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  residual(w, r, &jac);
  double rnorm = r.norm();
  for (int it = 0; it < 100 && rnorm > 1e-13; ++it) {
    const Eigen::VectorXd step =
        jac.completeOrthogonalDecomposition().solve(-r);
    double alpha = 1.0;
    bool improved = false;
    for (int bt = 0; bt < 25; ++bt) {
      Eigen::VectorXd trial = w;
      for (std::size_t c = 0; c < free_vars.size(); ++c) {
        trial[free_vars[c]] += alpha * step[static_cast<int>(c)];
      }
      if (problem.nonneg) trial = trial.cwiseMax(0.0);
      Eigen::VectorXd rt;
      residual(trial, rt, nullptr);
      if (rt.norm() < rnorm) {
        w = trial;
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) break;
    residual(w, r, &jac);
    rnorm = r.norm();
  }
  if (rnorm > 1e-10 * (1.0 + problem.b.cwiseAbs().sum())) return false;
  if (problem.nonneg && w.minCoeff() < 0.0) return false;

  const Eigen::VectorXd u = monomial_vector(basis, w);
  const Eigen::MatrixXd Xhat = u * u.transpose();
  // Feasibility of the lifted point for the full relaxation.
  if (problem.A.rows() > 0 &&
      (problem.A * Xhat).norm() > 1e-9 * (1.0 + Xhat.norm())) {
    return false;
  }
  for (const auto& loc : localizers) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(loc.apply(Xhat));
    if (es.eigenvalues().minCoeff() < -1e-9 * (1.0 + Xhat.norm())) return false;
  }
  // Complementarity with the recovered dual slack.
  const double rc_hat =
      std::abs(Xhat.cwiseProduct(S).sum()) / (1.0 + Xhat.norm() + S.norm());
  if (rc_hat > cfg.tol) return false;
  X = Xhat;
  return true;
}

}  // namespace

LiftOutcome lifting_step_impl(const AlmObjective& obj, const FaceProjector& fp,
                              const SolverConfig& cfg, Eigen::MatrixXd& R,
                              Eigen::MatrixXd& X) {
  LiftOutcome out;
  const Eigen::MatrixXd X_hat = R * R.transpose();
  Eigen::MatrixXd grad_hat;
  const double f_hat = obj.value_grad(X_hat, &grad_hat);
  out.phi_base = f_hat;

  const Eigen::MatrixXd& V = fp.kernel_basis;
  double t = 1.0 / obj.sigma;
  while (t >= cfg.lift_t_min) {
    const Eigen::MatrixXd G = X_hat - t * grad_hat;
    Eigen::MatrixXd T =
        fp.is_identity ? G : Eigen::MatrixXd(V.transpose() * G * V);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("lifting step: eigendecomposition failed");
    }
    const Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0);
    Eigen::MatrixXd core =
        es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().transpose();
    Eigen::MatrixXd X_new =
        fp.is_identity ? core : Eigen::MatrixXd(V * core * V.transpose());

    const double f_new = obj.value_grad(X_new, nullptr);
    const Eigen::MatrixXd dX = X_new - X_hat;
    const double rhs = f_hat + grad_hat.cwiseProduct(dX).sum() +
                       (cfg.delta / t) * dX.squaredNorm();
    if (f_new <= rhs + 1e-12 * (1.0 + std::abs(f_hat))) {
      const double lam_max = clamped.maxCoeff();
      const double keep = cfg.rank_keep_threshold * std::max(lam_max, 0.0);
      std::vector<int> kept;
      for (int i = 0; i < clamped.size(); ++i) {
        if (clamped[i] > keep && clamped[i] > 0.0) kept.push_back(i);
      }
      Eigen::MatrixXd factor(T.rows(), std::max<std::size_t>(kept.size(), 1));
      factor.setZero();
      for (std::size_t c = 0; c < kept.size(); ++c) {
        factor.col(c) = es.eigenvectors().col(kept[c]) * std::sqrt(clamped[kept[c]]);
      }
      R = fp.is_identity ? factor : Eigen::MatrixXd(V * factor);
      X = std::move(X_new);
      out.accepted = true;
      out.phi_new = f_new;
      out.cvx_rhs = rhs;
      out.step = t;
      return out;
    }
    t *= 0.5;
  }
  // Step floor reached: keep the incoming iterate, signal stagnation.
  X = X_hat;
  out.phi_new = f_hat;
  out.step = t;
  return out;
}

SolveReport run_alm(const RelaxationProblem& problem,
                    const std::vector<Localizer>& localizers,
                    const SolverConfig& config,
                    const SolveCallbacks& callbacks) {
  using clock = std::chrono::steady_clock;
  const auto t_start = clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - t_start).count();
  };

  const int N = problem.size();
  const int ell = static_cast<int>(problem.Qeq.size());
  const std::size_t p = localizers.size();
  const FaceProjector fp = make_face_projector(problem.A);

  // Initial factor: seeded Gaussian, projected onto ker(A), scaled so that
  // <H0, R R^T> = 1 when possible.
  int r0 = config.rank0 > 0 ? config.rank0
                            : static_cast<int>(std::min<long>(200, (N + 4) / 5));
  r0 = std::max(1, std::min(r0, N));
  Rng rng(config.seed);
  Eigen::MatrixXd R(N, r0);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < r0; ++j) R(i, j) = rng.normal();
  }
  R = fp.apply(R);
  const double h0_sq = R.row(problem.h0_index).squaredNorm();
  if (h0_sq > 1e-12) R /= std::sqrt(h0_sq);

  Eigen::VectorXd y = Eigen::VectorXd::Zero(ell);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(N, N);
  std::vector<Eigen::MatrixXd> Wb(p);
  for (std::size_t j = 0; j < p; ++j) {
    Wb[j] = Eigen::MatrixXd::Zero(localizers[j].out_size, localizers[j].out_size);
  }
  double sigma = config.sigma0;

  SolveReport report;
  Eigen::MatrixXd X = R * R.transpose();
  Eigen::MatrixXd S_last;
  double last_grad_norm = 1.0;
  std::vector<double> best_rmax_history;
  double best_rmax = std::numeric_limits<double>::infinity();
  bool lift_stagnated = false;
  TerminationReason reason = TerminationReason::TimeLimit;
  bool done = false;

  double rp_prev = std::numeric_limits<double>::infinity();
  double rp_prev_for_sigma = std::numeric_limits<double>::infinity();
  for (long k = 1; k <= config.max_outer && !done; ++k) {
    AlmObjective obj{&problem, &localizers, &y, &W, &Wb, sigma};
    // Inner stationarity tied to outer progress: the exit gradient must sit
    // well below the primal residual so the penalty ratio test is meaningful.
    const double inner_tol =
        std::max(0.1 * config.tol,
                 std::min(1e-2 / static_cast<double>(k), 0.05 * rp_prev));

    lift_stagnated = false;
    bool inner_met_tol = false;
    for (int inner = 0; inner < config.max_inner_per_outer; ++inner) {
      const Eigen::MatrixXd X_entry = R * R.transpose();
      const double f_entry = obj.value_grad(X_entry, nullptr);
      LowRankOutcome lr = lowrank_phase_impl(obj, fp, config, inner_tol, R);
      report.pg_iters += lr.pg_steps;
      last_grad_norm = lr.grad_norm_exit;
      if (callbacks.on_lowrank) {
        LowRankPhaseStats st;
        st.f_entry = f_entry;
        st.f_exit = lr.f_exit;
        st.grad_norm_exit = lr.grad_norm_exit;
        st.facial_residual = facial_residual(problem.A, R);
        st.pg_steps = lr.pg_steps;
        callbacks.on_lowrank(st);
      }

      LiftOutcome lo = lifting_step_impl(obj, fp, config, R, X);
      if (lo.accepted) ++report.lift_iters;
      if (callbacks.on_lift) {
        LiftStats st;
        st.phi_base = lo.phi_base;
        st.phi_new = lo.phi_new;
        st.cvx_rhs = lo.cvx_rhs;
        st.step = lo.step;
        st.accepted = lo.accepted;
        st.facial_residual = facial_residual(problem.A, R);
        st.rank = static_cast<int>(R.cols());
        callbacks.on_lift(st);
      }
      if (!lo.accepted) {
        lift_stagnated = true;
        break;
      }

      Eigen::MatrixXd grad_now;
      obj.value_grad(X, &grad_now);
      const double f_now = lo.phi_new - obj.value_offset();
      const double gnorm_rel =
          fp.apply(2.0 * (grad_now * R)).norm() / (1.0 + std::abs(f_now));
      last_grad_norm = gnorm_rel;
      if (gnorm_rel <= inner_tol) {
        inner_met_tol = true;
        break;
      }
      if (elapsed() > config.time_limit) break;
    }
    X.noalias() = R * R.transpose();

    // Gradient at the new primal point under the pre-update multipliers;
    // by the update identities it equals Q0 - Q*(y+) - W+ - sum M*(Wb+).
    Eigen::MatrixXd grad_phi;
    obj.value_grad(X, &grad_phi);

    // Multiplier updates.
    Eigen::MatrixXd Y =
        project_consistency_nonneg(X - W / sigma, problem.blocks,
                                   problem.nonneg, problem.normalize);
    Eigen::VectorXd qx(ell);
    for (int i = 0; i < ell; ++i) qx[i] = sparse_dot(problem.Qeq[i], X);
    const Eigen::MatrixXd W_prev = W;
    y -= sigma * (qx - problem.b);
    W -= sigma * (X - Y);
    double loc_primal = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      const Eigen::MatrixXd MjX = localizers[j].apply(X);
      const Eigen::MatrixXd Yj = project_psd(MjX - Wb[j] / sigma);
      Wb[j] -= sigma * (MjX - Yj);
      loc_primal = std::max(loc_primal, (MjX - Yj).norm() /
                                            (1.0 + MjX.norm() + Yj.norm()));
    }

    auto [S, U] = dual_recovery(X, grad_phi, fp);
    KktResiduals res = kkt_residuals(X, Y, y, W, S, problem);
    res.Rp = std::max(res.Rp, loc_primal);
    S_last = S;

    report.alm_iters = k;
    if (callbacks.on_outer) {
      OuterSnapshot snap{static_cast<int>(k), sigma, res, X, grad_phi,
                         S,  U,     Y,   W_prev,  W};
      callbacks.on_outer(snap);
    }

    const double rmax = res.rmax();
    best_rmax = std::min(best_rmax, rmax);
    best_rmax_history.push_back(best_rmax);
    report.residuals = res;
    rp_prev = res.Rp;

    if (rmax < config.tol) {
      reason = TerminationReason::Converged;
      done = true;
    } else if (elapsed() > config.time_limit) {
      reason = TerminationReason::TimeLimit;
      done = true;
    } else if (lift_stagnated) {
      reason = TerminationReason::Stagnation;
      done = true;
    } else {
      const double objective = problem.Q0.cwiseProduct(X).sum();
      if (objective < config.objective_floor && res.Rp < 1e-4) {
        reason = TerminationReason::Stagnation;
        done = true;
      }
      const int w = config.stagnation_window;
      if (!done && static_cast<int>(best_rmax_history.size()) > w) {
        const double then =
            best_rmax_history[best_rmax_history.size() - 1 - w];
        if (best_rmax > (1.0 - config.stagnation_improve) * then) {
          reason = TerminationReason::Stagnation;
          done = true;
        }
      }
    }

    if (!done) {
      // Penalty update.  Primal stalling forces an increase; otherwise the
      // gradient-ratio rule decides, but only when the subproblem actually
      // reached its target stationarity (on budget exhaustion the penalty is
      // left in place so the warm-started subproblem can finish first).
      const double ratio = res.Rp / std::max(last_grad_norm, 1e-30);
      if (res.Rp >= 0.8 * rp_prev_for_sigma) {
        sigma *= 2.0;
      } else if (inner_met_tol) {
        sigma = (ratio >= 10.0) ? 2.0 * sigma : 0.5 * sigma;
      }
      sigma = std::clamp(sigma, config.sigma_min, config.sigma_max);
    }
    rp_prev_for_sigma = res.Rp;
  }

  if (S_last.size() > 0 &&
      rank_one_polish(problem, localizers, S_last, config, X)) {
    // Residuals at the certified extreme point: the polished X is feasible
    // for the polyhedral part, so the split residual vanishes.
    KktResiduals res = kkt_residuals(X, X, y, W, S_last, problem);
    for (std::size_t j = 0; j < p; ++j) {
      const Eigen::MatrixXd MjX = localizers[j].apply(X);
      const Eigen::MatrixXd Yj = project_psd(MjX);
      res.Rp = std::max(res.Rp, (MjX - Yj).norm() /
                                    (1.0 + MjX.norm() + Yj.norm()));
    }
    report.residuals = res;
    if (res.rmax() < config.tol) reason = TerminationReason::Converged;
  }

  report.objective = problem.Q0.cwiseProduct(X).sum();
  report.reason = reason;
  report.sigma_final = sigma;
  report.time_s = elapsed();
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X);
    const double lmax = es.eigenvalues().maxCoeff();
    int rank = 0;
    if (lmax > 0.0) {
      for (int i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()[i] > config.rank_report_threshold * lmax) ++rank;
      }
    }
    report.rank = rank;
  }
  return report;
}

}  // namespace detail

std::pair<double, Eigen::MatrixXd> eval_phi(const Eigen::MatrixXd& X,
                                            const RelaxationProblem& problem,
                                            const Eigen::VectorXd& y,
                                            const Eigen::MatrixXd& W,
                                            double sigma) {
  detail::AlmObjective obj{&problem, nullptr, &y, &W, nullptr, sigma};
  Eigen::MatrixXd grad;
  const double value = obj.value_grad(X, &grad);
  return {value, std::move(grad)};
}

Eigen::MatrixXd lowrank_phase(const Eigen::MatrixXd& R0,
                              const RelaxationProblem& problem,
                              const FaceProjector& fp, const Eigen::VectorXd& y,
                              const Eigen::MatrixXd& W, double sigma,
                              const SolverConfig& config) {
  if (problem.A.rows() > 0) {
    const double viol = (problem.A * R0).norm() / (1.0 + R0.norm());
    if (viol > 1e-8) {
      throw std::invalid_argument("lowrank_phase: A R0 != 0");
    }
  }
  detail::AlmObjective obj{&problem, nullptr, &y, &W, nullptr, sigma};
  Eigen::MatrixXd R = R0;
  detail::lowrank_phase_impl(obj, fp, config, 0.1 * config.tol, R);
  return R;
}

LiftResult lifting_step(const Eigen::MatrixXd& R,
                        const RelaxationProblem& problem,
                        const FaceProjector& fp, const Eigen::VectorXd& y,
                        const Eigen::MatrixXd& W, double sigma,
                        const SolverConfig& config) {
  if (problem.A.rows() > 0) {
    const double viol = (problem.A * R).norm() / (1.0 + R.norm());
    if (viol > 1e-8) {
      throw std::invalid_argument("lifting_step: A R != 0");
    }
  }
  detail::AlmObjective obj{&problem, nullptr, &y, &W, nullptr, sigma};
  LiftResult result;
  result.R = R;
  detail::LiftOutcome out =
      detail::lifting_step_impl(obj, fp, config, result.R, result.X);
  result.accepted = out.accepted;
  return result;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> dual_recovery(
    const Eigen::MatrixXd& X, const Eigen::MatrixXd& grad_phi,
    const FaceProjector& fp) {
  (void)X;
  Eigen::MatrixXd S = fp.conjugate(grad_phi);
  if (fp.m() == 0) {
    return {std::move(S), Eigen::MatrixXd(0, 0)};
  }
  const Eigen::MatrixXd Ag = fp.A * grad_phi;            // m x N
  const Eigen::MatrixXd M1 = fp.aat_llt.solve(Ag);       // (AA^T)^{-1} A g
  const Eigen::MatrixXd K = M1 * fp.A.transpose();       // m x m
  const Eigen::MatrixXd K2 = fp.aat_llt.solve(K.transpose()).transpose();
  Eigen::MatrixXd U = M1 - 0.5 * (K2 * fp.A);
  return {std::move(S), std::move(U)};
}

KktResiduals kkt_residuals(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                           const Eigen::VectorXd& y, const Eigen::MatrixXd& W,
                           const Eigen::MatrixXd& S,
                           const RelaxationProblem& problem) {
  (void)y;
  (void)W;
  KktResiduals res;
  const int ell = static_cast<int>(problem.Qeq.size());
  double rq = 0.0;
  if (ell > 0) {
    Eigen::VectorXd qx(ell);
    for (int i = 0; i < ell; ++i) {
      qx[i] = Eigen::MatrixXd(problem.Qeq[i]).cwiseProduct(X).sum();
    }
    rq = (qx - problem.b).norm() / (1.0 + problem.b.norm());
  }
  const double rsplit = (X - Y).norm() / (1.0 + X.norm() + Y.norm());
  res.Rp = std::max(rq, rsplit);
  res.Rd = project_psd(-S).norm() / (1.0 + S.norm());
  res.Rc = std::abs(X.cwiseProduct(S).sum()) / (1.0 + X.norm() + S.norm());
  return res;
}

SolveReport solve(const RelaxationProblem& problem, const SolverConfig& config,
                  const SolveCallbacks& callbacks) {
  static const std::vector<Localizer> kNone;
  return detail::run_alm(problem, kNone, config, callbacks);
}

}  // namespace rpop
