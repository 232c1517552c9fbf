#pragma once

#include <vector>

#include "rpop/polynomial.hpp"

namespace rpop {

enum class Domain { Free, NonnegativeOrthant };

/// min f0(w) s.t. g_i(w) = 0, h_j(w) >= 0, w in domain.
struct PolynomialProgram {
  int nvars = 0;
  Domain domain = Domain::Free;
  Polynomial objective;
  std::vector<Polynomial> equalities;
  std::vector<Polynomial> inequalities;
};

/// h_j(w) >= 0  ->  h_j(w) - u_j = 0 with a new nonnegative variable u_j.
/// Requires the nonnegative-orthant domain (the new variables live there).
PolynomialProgram reformulate_slack(const PolynomialProgram& pop);

/// h_j(w) >= 0  ->  h_j(w) - v_j^2 = 0 with a new slack variable v_j.  On the
/// free domain v_j is free; on the orthant v_j >= 0 loses nothing since v_j
/// only enters squared, so both domains are accepted.
PolynomialProgram reformulate_squared_slack(const PolynomialProgram& pop);

}  // namespace rpop
