#include "rpop/io.hpp"

#include <fstream>
#include <sstream>

namespace rpop {

namespace {

Json sparse_to_coo(const SparseMat& M) {
  Json coo = Json::array();
  for (int k = 0; k < M.outerSize(); ++k) {
    for (SparseMat::InnerIterator it(M, k); it; ++it) {
      coo.push_back({it.row(), it.col(), it.value()});
    }
  }
  return coo;
}

Json dense_to_coo(const Eigen::MatrixXd& M) {
  Json coo = Json::array();
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) {
      if (M(i, j) != 0.0) coo.push_back({i, j, M(i, j)});
    }
  }
  return coo;
}

Json row_sparse_to_coo(const SparseRowMat& M) {
  Json coo = Json::array();
  for (int k = 0; k < M.outerSize(); ++k) {
    for (SparseRowMat::InnerIterator it(M, k); it; ++it) {
      coo.push_back({it.row(), it.col(), it.value()});
    }
  }
  return coo;
}

Json base_problem_json(const RelaxationProblem& problem) {
  Json j;
  j["N"] = problem.size();
  j["h0_index"] = problem.h0_index;
  j["nonneg"] = problem.nonneg;
  j["normalize"] = problem.normalize;
  j["Q0"] = dense_to_coo(problem.Q0);
  j["A"] = {{"rows", problem.A.rows()},
            {"cols", problem.A.cols()},
            {"coo", row_sparse_to_coo(problem.A)}};
  Json ops = Json::array();
  for (const auto& Q : problem.Qeq) ops.push_back(sparse_to_coo(Q));
  j["Qeq"] = ops;
  j["b"] = std::vector<double>(problem.b.data(), problem.b.data() + problem.b.size());
  return j;
}

}  // namespace

Json poly_to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({e, c});
  }
  return terms;
}

Polynomial poly_from_json(const Json& j, int nvars) {
  Polynomial p(nvars);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2) {
      throw std::invalid_argument("polynomial term must be [exponents, coeff]");
    }
    p.add_term(term[0].get<Exponent>(), term[1].get<double>());
  }
  return p;
}

Json instance_to_json(const GeneratedInstance& inst) {
  Json j;
  j["n"] = inst.pop.nvars;
  j["tau"] = inst.default_order;
  j["domain"] = inst.pop.domain == Domain::NonnegativeOrthant
                    ? "nonnegative-orthant"
                    : "free";
  j["objective"] = poly_to_json(inst.pop.objective);
  Json eqs = Json::array();
  for (const auto& g : inst.pop.equalities) eqs.push_back(poly_to_json(g));
  j["equalities"] = eqs;
  Json ineqs = Json::array();
  for (const auto& h : inst.pop.inequalities) ineqs.push_back(poly_to_json(h));
  j["inequalities"] = ineqs;
  if (!inst.spec.family.empty()) {
    j["family"] = inst.spec.family;
    j["seed"] = inst.spec.seed;
  }
  if (inst.known_vstar) j["vstar"] = *inst.known_vstar;
  return j;
}

LoadedInstance instance_from_json(const Json& j) {
  LoadedInstance out;
  out.pop.nvars = j.at("n").get<int>();
  const std::string domain = j.at("domain").get<std::string>();
  if (domain == "nonnegative-orthant") {
    out.pop.domain = Domain::NonnegativeOrthant;
  } else if (domain == "free") {
    out.pop.domain = Domain::Free;
  } else {
    throw std::invalid_argument("instance domain must be 'free' or "
                                "'nonnegative-orthant', got '" + domain + "'");
  }
  out.pop.objective = poly_from_json(j.at("objective"), out.pop.nvars);
  for (const auto& g : j.at("equalities")) {
    out.pop.equalities.push_back(poly_from_json(g, out.pop.nvars));
  }
  for (const auto& h : j.at("inequalities")) {
    out.pop.inequalities.push_back(poly_from_json(h, out.pop.nvars));
  }
  out.default_order = j.value("tau", 1);
  out.family = j.value("family", std::string("instance"));
  out.seed = j.value("seed", std::uint64_t(0));
  if (j.contains("vstar") && !j["vstar"].is_null()) {
    out.known_vstar = j["vstar"].get<double>();
  }
  return out;
}

LoadedInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open instance file: " + path);
  }
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& err) {
    throw std::runtime_error("parse error in " + path + ": " + err.what());
  }
  return instance_from_json(j);
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << j.dump(2) << "\n";
}

Json problem_to_json(const RelaxationProblem& problem) {
  return base_problem_json(problem);
}

Json problem_to_json(const MomentProblem& problem) {
  Json j = base_problem_json(problem);
  Json locs = Json::array();
  for (const auto& loc : problem.localizers) {
    Json entries = Json::array();
    for (const auto& e : loc.entries) {
      entries.push_back({e.k, e.l, e.a, e.b, e.c});
    }
    locs.push_back({{"size", loc.out_size}, {"entries", entries}});
  }
  j["localizers"] = locs;
  return j;
}

Json report_to_json(const SolveReport& report, const RunMeta& meta,
                    const SolverConfig& config) {
  Json j;
  j["schema_version"] = 1;
  j["family"] = meta.family;
  j["n"] = meta.n;
  j["N"] = meta.N;
  j["m"] = meta.m;
  j["relaxation"] = meta.relaxation;
  j["order"] = meta.order;
  j["seed"] = meta.seed;
  j["objective"] = report.objective;
  j["residuals"] = {{"Rp", report.residuals.Rp},
                    {"Rd", report.residuals.Rd},
                    {"Rc", report.residuals.Rc},
                    {"Rmax", report.residuals.rmax()}};
  j["rank"] = report.rank;
  j["iterations"] = {{"alm", report.alm_iters},
                     {"pg", report.pg_iters},
                     {"lift", report.lift_iters}};
  j["time_s"] = report.time_s;
  j["reason"] = to_string(report.reason);
  j["config"] = {{"tol", config.tol},
                 {"time_limit", config.time_limit},
                 {"sigma0", config.sigma0},
                 {"rank0", config.rank0},
                 {"seed", config.seed}};
  return j;
}

std::string report_csv_header() {
  return "family,n,N,m,relaxation,order,objective,Rp,Rd,Rc,rank,alm_iters,"
         "pg_iters,lift_iters,time_s,reason";
}

std::string report_csv_row(const SolveReport& report, const RunMeta& meta) {
  std::ostringstream os;
  os.precision(12);
  os << meta.family << ',' << meta.n << ',' << meta.N << ',' << meta.m << ','
     << meta.relaxation << ',' << meta.order << ',' << report.objective << ','
     << report.residuals.Rp << ',' << report.residuals.Rd << ','
     << report.residuals.Rc << ',' << report.rank << ',' << report.alm_iters
     << ',' << report.pg_iters << ',' << report.lift_iters << ','
     << report.time_s << ',' << to_string(report.reason);
  return os.str();
}

Json oracle_to_json(const OracleResult& result) {
  Json j;
  if (result.exact) {
    j["vstar"] = result.value;
  } else {
    j["vstar"] = nullptr;
    j["upper"] = result.value;
  }
  j["argmin"] = std::vector<double>(result.argmin.data(),
                                    result.argmin.data() + result.argmin.size());
  j["method"] = result.method;
  return j;
}

}  // namespace rpop
