#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "rpop/io.hpp"

using namespace rpop;

TEST_CASE("polynomial json round trip") {
  Polynomial p(3);
  p.add_term({2, 0, 0}, 1.5);
  p.add_term({0, 1, 1}, -2.0);
  const Json j = poly_to_json(p);
  const Polynomial q = poly_from_json(j, 3);
  CHECK(q.terms() == p.terms());
  CHECK_THROWS_AS(poly_from_json(Json::parse("[[1,2]]"), 3),
                  std::invalid_argument);
}

TEST_CASE("instance json round trip preserves the program") {
  InstanceSpec spec;
  spec.family = "mqkp";
  spec.n = 5;
  spec.d = 2;
  spec.seed = 77;
  const GeneratedInstance inst = make_instance(spec);
  const Json j = instance_to_json(inst);
  CHECK(j.at("domain") == "nonnegative-orthant");
  CHECK(j.at("n") == inst.pop.nvars);
  const LoadedInstance back = instance_from_json(j);
  CHECK(back.pop.nvars == inst.pop.nvars);
  CHECK(back.pop.domain == inst.pop.domain);
  CHECK(back.pop.objective.terms() == inst.pop.objective.terms());
  REQUIRE(back.pop.equalities.size() == inst.pop.equalities.size());
  for (std::size_t i = 0; i < back.pop.equalities.size(); ++i) {
    CHECK(back.pop.equalities[i].terms() == inst.pop.equalities[i].terms());
  }
  CHECK(back.family == "mqkp");
  CHECK(back.seed == 77);

  // byte-identical serialization across generator runs
  CHECK(instance_to_json(make_instance(spec)).dump() == j.dump());
}

TEST_CASE("instance json validates the domain") {
  Json j;
  j["n"] = 1;
  j["domain"] = "banana";
  j["objective"] = Json::array();
  j["equalities"] = Json::array();
  j["inequalities"] = Json::array();
  CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);
}

TEST_CASE("problem coo dump carries every operator") {
  const GeneratedInstance inst =
      make_instance({.family = "stqp", .n = 4, .seed = 5});
  const MomentProblem mom = build_moment_sos(inst.pop, 2, true);
  const Json j = problem_to_json(mom);
  CHECK(j.at("N") == mom.size());
  CHECK(j.at("A").at("rows") == mom.A.rows());
  CHECK(j.at("localizers").size() == mom.localizers.size());
  CHECK(j.at("nonneg") == true);
  // reconstruct Q0 from the coo triplets
  Eigen::MatrixXd Q0 = Eigen::MatrixXd::Zero(mom.size(), mom.size());
  for (const auto& t : j.at("Q0")) {
    Q0(t[0].get<int>(), t[1].get<int>()) = t[2].get<double>();
  }
  CHECK((Q0 - mom.Q0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("report json schema is pinned") {
  SolveReport rep;
  rep.objective = -1.25;
  rep.residuals = {1e-7, 2e-7, 3e-7};
  rep.rank = 2;
  rep.alm_iters = 10;
  rep.pg_iters = 500;
  rep.lift_iters = 12;
  rep.time_s = 0.5;
  rep.reason = TerminationReason::Converged;
  RunMeta meta{"horn", 21, 22, 485, "poly-sdp-rlt", 1, 42};
  SolverConfig cfg;
  const Json j = report_to_json(rep, meta, cfg);
  const std::set<std::string> expected = {
      "schema_version", "family", "n",    "N",          "m",
      "relaxation",     "order",  "seed", "objective",  "residuals",
      "rank",           "iterations",     "time_s",     "reason",
      "config"};
  std::set<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.insert(it.key());
  CHECK(keys == expected);
  CHECK(j["schema_version"] == 1);
  CHECK(j["residuals"]["Rmax"] == doctest::Approx(3e-7));
  CHECK(j["reason"] == "converged");
  CHECK(j["iterations"]["pg"] == 500);
}

TEST_CASE("csv row layout") {
  CHECK(report_csv_header() ==
        "family,n,N,m,relaxation,order,objective,Rp,Rd,Rc,rank,alm_iters,"
        "pg_iters,lift_iters,time_s,reason");
  SolveReport rep;
  rep.objective = 1.0;
  rep.reason = TerminationReason::TimeLimit;
  RunMeta meta{"stqp", 5, 6, 12, "poly-sdp", 1, 0};
  const std::string row = report_csv_row(rep, meta);
  CHECK(row.substr(0, 5) == "stqp,");
  CHECK(row.find("time_limit") != std::string::npos);
  CHECK(std::count(row.begin(), row.end(), ',') == 15);
}

TEST_CASE("oracle json distinguishes exact values from bounds") {
  OracleResult exact;
  exact.exact = true;
  exact.value = 0.25;
  exact.argmin = Eigen::VectorXd::Constant(2, 0.5);
  exact.method = "support-enumeration";
  Json je = oracle_to_json(exact);
  CHECK(je["vstar"] == doctest::Approx(0.25));
  CHECK(je["method"] == "support-enumeration");

  OracleResult bound;
  bound.exact = false;
  bound.value = 1.5;
  bound.argmin = Eigen::VectorXd::Zero(2);
  bound.method = "grid";
  Json jb = oracle_to_json(bound);
  CHECK(jb["vstar"].is_null());
  CHECK(jb["upper"] == doctest::Approx(1.5));
}
