#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "rpop/instances.hpp"
#include "rpop/relaxation.hpp"

using namespace rpop;

namespace {

bool same_terms(const Polynomial& a, const Polynomial& b) {
  return a.terms() == b.terms();
}

}  // namespace

TEST_CASE("stqp generator: symmetric, seeded, reproducible") {
  const PolynomialProgram a = gen_stqp_gaussian(5, 1);
  const PolynomialProgram b = gen_stqp_gaussian(5, 1);
  CHECK(same_terms(a.objective, b.objective));
  CHECK(a.domain == Domain::NonnegativeOrthant);
  REQUIRE(a.equalities.size() == 1);

  // objective at x = e1 equals Q11
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(5);
  e1[0] = 1.0;
  Exponent sq(5, 0);
  sq[0] = 2;
  CHECK(a.objective.evaluate(e1) ==
        doctest::Approx(a.objective.terms().at(sq)).epsilon(1e-14));

  const PolynomialProgram c = gen_stqp_gaussian(5, 2);
  CHECK_FALSE(same_terms(a.objective, c.objective));
  CHECK_THROWS_AS(gen_stqp_gaussian(1, 0), std::invalid_argument);
}

TEST_CASE("extended Horn matrix pattern") {
  const Eigen::MatrixXd Q = horn_extended_matrix(5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const bool neighbor =
          std::abs(i - j) == 1 || (i == 0 && j == 4) || (i == 4 && j == 0);
      CHECK(Q(i, j) == (neighbor ? -1.0 : 1.0));
    }
  }
  CHECK((Q - Q.transpose()).norm() == 0.0);
  // v* = 0 attained at the adjacent-pair midpoints
  for (int i = 0; i + 1 < 5; ++i) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
    x[i] = x[i + 1] = 0.5;
    CHECK(std::abs(x.dot(Q * x)) <= 1e-15);
  }
  CHECK_THROWS_AS(horn_extended_matrix(6), std::invalid_argument);
  CHECK_THROWS_AS(horn_extended_matrix(3), std::invalid_argument);
}

TEST_CASE("horn oracle certifies v* = 0") {
  const OracleResult res = oracle_solve(horn_extended(5));
  CHECK(res.exact);
  CHECK(std::abs(res.value) <= 1e-12);
}

TEST_CASE("identity-matrix simplex quadratic has v* = 1/n") {
  PolynomialProgram pop;
  pop.nvars = 4;
  pop.domain = Domain::NonnegativeOrthant;
  Polynomial f(4);
  for (int i = 0; i < 4; ++i) {
    Exponent sq(4, 0);
    sq[i] = 2;
    f.add_term(sq, 1.0);
  }
  pop.objective = f;
  Polynomial simplex = Polynomial::constant(4, -1.0);
  for (int i = 0; i < 4; ++i) simplex += Polynomial::variable(4, i);
  pop.equalities.push_back(simplex);
  const OracleResult res = oracle_solve(pop);
  CHECK(res.exact);
  CHECK(res.value == doctest::Approx(0.25).epsilon(1e-10));
  CHECK((res.argmin - Eigen::VectorXd::Constant(4, 0.25)).norm() <= 1e-9);
}

TEST_CASE("biq generator and binary enumeration oracle") {
  SUBCASE("hand-checkable instance") {
    // Q = I, c = -2e: objective sum(x_i^2 - 2 x_i) = -(number of ones)
    PolynomialProgram pop;
    pop.nvars = 3;
    pop.domain = Domain::NonnegativeOrthant;
    Polynomial f(3);
    for (int i = 0; i < 3; ++i) {
      Exponent sq(3, 0), lin(3, 0);
      sq[i] = 2;
      lin[i] = 1;
      f.add_term(sq, 1.0);
      f.add_term(lin, -2.0);
    }
    pop.objective = f;
    for (int i = 0; i < 3; ++i) {
      Polynomial g(3);
      Exponent sq(3, 0), lin(3, 0);
      sq[i] = 2;
      lin[i] = 1;
      g.add_term(sq, 1.0);
      g.add_term(lin, -1.0);
      pop.equalities.push_back(g);
    }
    const OracleResult res = oracle_solve(pop);
    CHECK(res.exact);
    CHECK(res.value == doctest::Approx(-3.0));
    CHECK(res.argmin.isApprox(Eigen::VectorXd::Ones(3)));
  }
  SUBCASE("zero data optimum is the origin") {
    PolynomialProgram pop = gen_biq(4, 7);
    pop.objective = Polynomial(4);  // c = 0, Q = 0
    const OracleResult res = oracle_solve(pop);
    CHECK(res.value == doctest::Approx(0.0));
  }
  SUBCASE("seeded reproducibility") {
    CHECK(same_terms(gen_biq(4, 9).objective, gen_biq(4, 9).objective));
  }
}

TEST_CASE("mbp generator") {
  const PolynomialProgram pop = gen_mbp(6, 0.5, 3);
  // Laplacian row sums vanish: objective at x = t*e is 0
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(6);
  CHECK(std::abs(pop.objective.evaluate(ones)) <= 1e-12);
  CHECK_THROWS_AS(gen_mbp(5, 0.5, 3), std::invalid_argument);
  // enumeration oracle respects the equipartition row
  const OracleResult res = oracle_solve(pop);
  CHECK(res.exact);
  CHECK(res.argmin.sum() == doctest::Approx(3.0));
}

TEST_CASE("mqkp generator") {
  const PolynomialProgram pop = gen_mqkp(6, 2, 11);
  CHECK(pop.nvars == 8);  // 6 items + 2 slacks
  CHECK(pop.inequalities.empty());
  // binary rows for items plus 2 knapsack equalities
  CHECK(pop.equalities.size() == 8);
  // Q_jj = 0: objective has no x_j^2 term for items
  for (int j = 0; j < 6; ++j) {
    Exponent sq(8, 0);
    sq[j] = 2;
    CHECK(pop.objective.terms().find(sq) == pop.objective.terms().end());
  }
  // capacities are at least 1: the knapsack equality constant is -b_i <= -1
  // (terms: b - <A_i, x> - s_i = 0 stored as constant b)
  int knap_rows = 0;
  for (const auto& g : pop.equalities) {
    const auto it = g.terms().find(Exponent(8, 0));
    if (it != g.terms().end()) {
      ++knap_rows;
      CHECK(it->second >= 1.0);
    }
  }
  CHECK(knap_rows == 2);
  // oracle: slacks are determined from their rows
  const OracleResult res = oracle_solve(pop);
  CHECK(res.exact);
}

TEST_CASE("bqm generator shape and grid oracle bound") {
  const PolynomialProgram pop = gen_bqm(4, 5);
  CHECK(pop.nvars == 4);
  CHECK(pop.domain == Domain::Free);
  REQUIRE(pop.equalities.size() == 1);
  CHECK(pop.equalities[0].degree() == 2);
  // built objective lift is homogeneous: smoke-check via the builder
  const RelaxationProblem prob = build_polyhedral_sdp(pop, 2, true);
  CHECK(prob.Q0.rows() == prob.size());
  // grid oracle upper-bounds the sphere optimum
  const OracleResult res = oracle_solve(pop);
  CHECK_FALSE(res.exact);
  CHECK(res.method == "grid");
  // the reported point is feasible for the sphere row
  CHECK(std::abs(pop.equalities[0].evaluate(res.argmin)) <= 1e-9);
}

TEST_CASE("kmp generator targets the equally weighted portfolio") {
  const int n = 4;
  const PolynomialProgram pop = gen_kmp(n, 3);
  REQUIRE(pop.equalities.size() == 3);
  const Eigen::VectorXd ew = Eigen::VectorXd::Constant(n, 1.0 / n);
  for (const auto& g : pop.equalities) {
    CHECK(std::abs(g.evaluate(ew)) <= 1e-8);
  }
  CHECK(pop.objective.evaluate(ew) >= 0.0);  // fourth moment
  const OracleResult res = oracle_solve(pop);
  CHECK_FALSE(res.exact);
  CHECK(res.method == "feasible-point");
  CHECK(res.value == doctest::Approx(pop.objective.evaluate(ew)));
}

TEST_CASE("cst tensors") {
  SUBCASE("copositive construction is certified nonnegative by the oracle") {
    const PolynomialProgram pop = cst_tensor(5, 2, CstKind::Copositive, 7);
    const OracleResult res = oracle_solve(pop);
    CHECK(res.exact);
    CHECK(res.value >= -1e-10);
  }
  SUBCASE("random kind reproducible and symmetric") {
    const PolynomialProgram a = cst_tensor(4, 4, CstKind::Random, 3);
    const PolynomialProgram b = cst_tensor(4, 4, CstKind::Random, 3);
    CHECK(same_terms(a.objective, b.objective));
  }
  SUBCASE("t=2 objective matches a quadratic form") {
    const PolynomialProgram pop = cst_tensor(5, 2, CstKind::Random, 1);
    CHECK(pop.objective.degree() == 2);
  }
  CHECK_THROWS_AS(cst_tensor(4, 3, CstKind::Random, 0), std::invalid_argument);
}

TEST_CASE("ntf tensor entries match the formula") {
  const PolynomialProgram pop = ntf_tensor(3, 3);
  CHECK(pop.nvars == 9);
  CHECK(pop.equalities.size() == 3);
  // B_{1,1,1} = (1 - 2 + 3) e^{-1}; objective carries -B on x^(1)_1 x^(2)_1 x^(3)_1
  Exponent e(9, 0);
  e[0] = 1;
  e[3] = 1;
  e[6] = 1;
  const double expected = 2.0 * std::exp(-1.0);
  CHECK(pop.objective.terms().at(e) == doctest::Approx(-expected).epsilon(1e-12));
  CHECK(std::abs(expected - 0.73576) <= 1e-4);
  // deterministic
  CHECK(same_terms(pop.objective, ntf_tensor(3, 3).objective));
  CHECK_THROWS_AS(ntf_tensor(3, 5), std::invalid_argument);
}

TEST_CASE("nstf tensor entries match the formulas") {
  const PolynomialProgram pop = nstf_tensor(4, 3, 1);
  CHECK(pop.nvars == 4);
  // B_{1,1,1} = 3*(-1)^1/1 = -3; objective is -<B, .>: coefficient +3 on x1^3
  Exponent e(4, 0);
  e[0] = 3;
  CHECK(pop.objective.terms().at(e) == doctest::Approx(3.0));
  // full symmetry: coefficient of x1 x2 x3 uses the multinomial count 6
  // B_{1,2,3} = -1/1 + 1/2 - 1/3 = -5/6 -> coefficient 6 * 5/6 = 5
  Exponent m(4, 0);
  m[0] = m[1] = m[2] = 1;
  CHECK(pop.objective.terms().at(m) == doctest::Approx(5.0));
  CHECK_THROWS_AS(nstf_tensor(4, 3, 4), std::invalid_argument);
}

TEST_CASE("relative gap formula") {
  CHECK(relative_gap(0.0, -0.00562) == doctest::Approx(0.562));
  CHECK(relative_gap(1.5, 1.5) == 0.0);
  CHECK(relative_gap(0.5, 0.4) == doctest::Approx(10.0));
}

TEST_CASE("make_instance dispatch and default orders") {
  InstanceSpec spec;
  spec.family = "horn";
  spec.n = 5;
  GeneratedInstance inst = make_instance(spec);
  CHECK(inst.default_order == 1);
  REQUIRE(inst.known_vstar.has_value());
  CHECK(*inst.known_vstar == 0.0);

  spec.family = "bqm";
  spec.n = 4;
  spec.seed = 2;
  CHECK(make_instance(spec).default_order == 2);

  spec.family = "nope";
  CHECK_THROWS_AS(make_instance(spec), std::invalid_argument);
}

TEST_CASE("oracle budget and unknown-structure signals") {
  CHECK_THROWS_AS(oracle_solve(gen_stqp_gaussian(8, 1), 16),
                  OracleUnavailable);
  PolynomialProgram weird;
  weird.nvars = 6;
  weird.domain = Domain::Free;
  weird.objective = Polynomial::variable(6, 0);
  CHECK_THROWS_AS(oracle_solve(weird), OracleUnavailable);
}

TEST_CASE("relaxation values never exceed oracle optima") {
  // support enumeration bound for seeded simplex quadratics
  for (std::uint64_t seed : {1, 2, 3}) {
    const PolynomialProgram pop = gen_stqp_gaussian(5, seed);
    const OracleResult oracle = oracle_solve(pop);
    Eigen::VectorXd x = oracle.argmin;
    // oracle argmin is feasible and attains the value
    CHECK(std::abs(pop.objective.evaluate(x) - oracle.value) <= 1e-9);
    CHECK(std::abs(x.sum() - 1.0) <= 1e-9);
    CHECK(x.minCoeff() >= -1e-10);
  }
}
