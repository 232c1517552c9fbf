#include "rpop/program.hpp"

#include <stdexcept>

namespace rpop {

namespace {

PolynomialProgram extend_program(const PolynomialProgram& pop, int extra) {
  PolynomialProgram out;
  out.nvars = pop.nvars + extra;
  out.domain = pop.domain;
  out.objective = pop.objective.extended(extra);
  out.equalities.reserve(pop.equalities.size() + pop.inequalities.size());
  for (const auto& g : pop.equalities) out.equalities.push_back(g.extended(extra));
  return out;
}

}  // namespace

PolynomialProgram reformulate_slack(const PolynomialProgram& pop) {
  if (pop.domain != Domain::NonnegativeOrthant) {
    throw std::invalid_argument(
        "standard slack reformulation needs the nonnegative-orthant domain");
  }
  const int p = static_cast<int>(pop.inequalities.size());
  PolynomialProgram out = extend_program(pop, p);
  for (int j = 0; j < p; ++j) {
    Polynomial g = pop.inequalities[j].extended(p);
    Exponent slack(out.nvars, 0);
    slack[pop.nvars + j] = 1;
    g.add_term(slack, -1.0);
    out.equalities.push_back(g);
  }
  return out;
}

PolynomialProgram reformulate_squared_slack(const PolynomialProgram& pop) {
  const int p = static_cast<int>(pop.inequalities.size());
  PolynomialProgram out = extend_program(pop, p);
  for (int j = 0; j < p; ++j) {
    Polynomial g = pop.inequalities[j].extended(p);
    Exponent slack(out.nvars, 0);
    slack[pop.nvars + j] = 2;
    g.add_term(slack, -1.0);
    out.equalities.push_back(g);
  }
  return out;
}

}  // namespace rpop
