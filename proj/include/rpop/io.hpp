#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "rpop/instances.hpp"
#include "rpop/relaxation.hpp"
#include "rpop/solver.hpp"

namespace rpop {

using Json = nlohmann::json;

/// Polynomial wire format: [[ [e_1,...,e_n], coeff ], ...] in term-map order.
Json poly_to_json(const Polynomial& p);
Polynomial poly_from_json(const Json& j, int nvars);

/// Instance schema: {"n", "tau", "domain", "objective", "equalities",
/// "inequalities"} plus optional metadata ("family", "seed", "vstar").
Json instance_to_json(const GeneratedInstance& inst);

struct LoadedInstance {
  PolynomialProgram pop;
  int default_order = 1;
  std::string family = "instance";
  std::optional<double> known_vstar;
  std::uint64_t seed = 0;
};
LoadedInstance instance_from_json(const Json& j);
LoadedInstance load_instance_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// COO dump of every operator of a built problem.
Json problem_to_json(const RelaxationProblem& problem);
Json problem_to_json(const MomentProblem& problem);

struct RunMeta {
  std::string family;
  int n = 0;
  long long N = 0;
  long long m = 0;
  std::string relaxation;
  int order = 0;
  std::uint64_t seed = 0;
};

Json report_to_json(const SolveReport& report, const RunMeta& meta,
                    const SolverConfig& config);
std::string report_csv_header();
std::string report_csv_row(const SolveReport& report, const RunMeta& meta);

Json oracle_to_json(const OracleResult& result);

}  // namespace rpop
