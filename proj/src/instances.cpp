#include "rpop/instances.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rpop/multiindex.hpp"
#include "rpop/rng.hpp"

namespace rpop {

namespace {

Polynomial quadratic_objective(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c) {
  const int n = static_cast<int>(Q.rows());
  Polynomial f(n);
  for (int i = 0; i < n; ++i) {
    Exponent sq(n, 0);
    sq[i] = 2;
    f.add_term(sq, Q(i, i));
    if (c.size() > 0 && c[i] != 0.0) {
      Exponent lin(n, 0);
      lin[i] = 1;
      f.add_term(lin, c[i]);
    }
    for (int j = i + 1; j < n; ++j) {
      if (Q(i, j) == 0.0) continue;
      Exponent cr(n, 0);
      cr[i] = 1;
      cr[j] = 1;
      f.add_term(cr, 2.0 * Q(i, j));
    }
  }
  return f;
}

Polynomial simplex_row(int n) {
  Polynomial g = Polynomial::constant(n, -1.0);
  for (int i = 0; i < n; ++i) g += Polynomial::variable(n, i);
  return g;
}

Polynomial binary_row(int n, int i) {
  Polynomial g(n);
  Exponent sq(n, 0), lin(n, 0);
  sq[i] = 2;
  lin[i] = 1;
  g.add_term(sq, 1.0);
  g.add_term(lin, -1.0);
  return g;
}

// Dense order-t tensor with row-major (odometer) indexing.
struct DenseTensor {
  int n = 0;
  int t = 0;
  std::vector<double> data;

  std::size_t linear(const std::vector<int>& idx) const {
    std::size_t lin = 0;
    for (int k = 0; k < t; ++k) lin = lin * n + idx[k];
    return lin;
  }
  double at(const std::vector<int>& idx) const { return data[linear(idx)]; }
  double& at(const std::vector<int>& idx) { return data[linear(idx)]; }
};

// Visit sorted index multisets i_1 <= ... <= i_t.
template <typename F>
void for_each_multiset(int n, int t, F&& f) {
  std::vector<int> idx(t, 0);
  while (true) {
    f(idx);
    int k = t - 1;
    while (k >= 0 && idx[k] == n - 1) --k;
    if (k < 0) return;
    const int v = idx[k] + 1;
    for (int j = k; j < t; ++j) idx[j] = v;
  }
}

double multinomial(int t, const std::vector<int>& idx, int n) {
  std::vector<int> mult(n, 0);
  for (int v : idx) ++mult[v];
  double count = 1.0;
  int placed = 0;
  for (int v = 0; v < n; ++v) {
    for (int r = 1; r <= mult[v]; ++r) {
      ++placed;
      count = count * placed / r;
    }
  }
  (void)t;
  return count;
}

// Symmetrize by averaging over the distinct permutations of each multiset.
void symmetrize(DenseTensor& B) {
  for_each_multiset(B.n, B.t, [&](const std::vector<int>& idx) {
    std::vector<int> perm = idx;
    double sum = 0.0;
    int count = 0;
    do {
      sum += B.at(perm);
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double mean = sum / count;
    perm = idx;
    do {
      B.at(perm) = mean;
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
}

// <B, x^(x)t> as a degree-t polynomial for a symmetric tensor.
Polynomial tensor_form(const DenseTensor& B) {
  Polynomial f(B.n);
  for_each_multiset(B.n, B.t, [&](const std::vector<int>& idx) {
    const double coeff = multinomial(B.t, idx, B.n) * B.at(idx);
    if (coeff == 0.0) return;
    Exponent e(B.n, 0);
    for (int v : idx) ++e[v];
    f.add_term(e, coeff);
  });
  return f;
}

}  // namespace

PolynomialProgram gen_stqp_gaussian(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("stqp: n >= 2 required");
  Rng rng(seed);
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  }
  const Eigen::MatrixXd Q = 0.5 * (G + G.transpose());
  PolynomialProgram pop;
  pop.nvars = n;
  pop.domain = Domain::NonnegativeOrthant;
  pop.objective = quadratic_objective(Q, Eigen::VectorXd());
  pop.equalities.push_back(simplex_row(n));
  return pop;
}

Eigen::MatrixXd horn_extended_matrix(int n) {
  if (n < 5 || n % 2 == 0) {
    throw std::invalid_argument("extended Horn matrix needs odd n >= 5");
  }
  Eigen::MatrixXd Q = Eigen::MatrixXd::Ones(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    Q(i, i + 1) = -1.0;
    Q(i + 1, i) = -1.0;
  }
  Q(0, n - 1) = -1.0;
  Q(n - 1, 0) = -1.0;
  return Q;
}

PolynomialProgram horn_extended(int n) {
  PolynomialProgram pop;
  pop.nvars = n;
  pop.domain = Domain::NonnegativeOrthant;
  pop.objective = quadratic_objective(horn_extended_matrix(n), Eigen::VectorXd());
  pop.equalities.push_back(simplex_row(n));
  return pop;
}

PolynomialProgram gen_biq(int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  }
  const Eigen::MatrixXd Q = 0.5 * (G + G.transpose());
  Eigen::VectorXd c(n);
  for (int i = 0; i < n; ++i) c[i] = rng.normal();
  PolynomialProgram pop;
  pop.nvars = n;
  pop.domain = Domain::NonnegativeOrthant;
  pop.objective = quadratic_objective(Q, c);
  for (int i = 0; i < n; ++i) pop.equalities.push_back(binary_row(n, i));
  return pop;
}

PolynomialProgram gen_mbp(int n, double p, std::uint64_t seed) {
  if (n % 2 != 0) throw std::invalid_argument("minimum bisection: n must be even");
  Rng rng(seed);
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) {
        L(i, j) = L(j, i) = -1.0;
        L(i, i) += 1.0;
        L(j, j) += 1.0;
      }
    }
  }
  PolynomialProgram pop;
  pop.nvars = n;
  pop.domain = Domain::NonnegativeOrthant;
  pop.objective = quadratic_objective(L, Eigen::VectorXd());
  Polynomial part = Polynomial::constant(n, -0.5 * n);
  for (int i = 0; i < n; ++i) part += Polynomial::variable(n, i);
  pop.equalities.push_back(part);
  for (int i = 0; i < n; ++i) pop.equalities.push_back(binary_row(n, i));
  return pop;
}

PolynomialProgram gen_mqkp(int n, int d, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(0.25)) {
        Q(i, j) = Q(j, i) = static_cast<double>(rng.uniform_int(1, 100));
      }
    }
  }
  Eigen::VectorXd c(n);
  for (int j = 0; j < n; ++j) c[j] = rng.uniform(1.0, 100.0);
  Eigen::MatrixXd A(d, n);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = rng.uniform(1.0, 50.0);
  }
  PolynomialProgram pop;
  pop.nvars = n;
  pop.domain = Domain::NonnegativeOrthant;
  pop.objective = quadratic_objective(-Q, -c);  // maximize profit
  for (int i = 0; i < n; ++i) pop.equalities.push_back(binary_row(n, i));
  for (int i = 0; i < d; ++i) {
    const double b = std::ceil(0.1 * A.row(i).sum());
    Polynomial h = Polynomial::constant(n, b);
    for (int j = 0; j < n; ++j) {
      h += Polynomial::variable(n, j) * (-A(i, j));
    }
    pop.inequalities.push_back(h);  // b_i - <A_i, x> >= 0
  }
  return reformulate_slack(pop);
}

PolynomialProgram gen_bqm(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("bqm: n >= 2 required");
  const int nx = n - 1;
  Rng rng(seed);
  Polynomial f(nx);
  const MonomialBasis deg4 = enumerate_basis(nx, 4);
  for (const auto& e : deg4.exponents) {
    Exponent w(e.begin() + 1, e.end());
    f.add_term(w, rng.normal());
  }
  PolynomialProgram pop;
  pop.nvars = nx;
  pop.domain = Domain::Free;
  pop.objective = f;
  Polynomial ball = Polynomial::constant(nx, 1.0);
  for (int i = 0; i < nx; ++i) {
    Exponent sq(nx, 0);
    sq[i] = 2;
    ball.add_term(sq, -1.0);
  }
  pop.inequalities.push_back(ball);  // 1 - ||x||^2 >= 0
  return reformulate_squared_slack(pop);
}

PolynomialProgram gen_kmp(int n, std::uint64_t seed) {
  constexpr int kSamples = 255;
  Rng rng(seed);
  Eigen::MatrixXd xi(kSamples, n);
  for (int s = 0; s < kSamples; ++s) {
    for (int j = 0; j < n; ++j) xi(s, j) = rng.uniform(0.0, 10.0);
  }
  const Eigen::VectorXd mu = xi.colwise().mean();
  Eigen::MatrixXd Z = xi.rowwise() - mu.transpose();
  const Eigen::MatrixXd Sigma = Z.transpose() * Z / (kSamples - 1.0);
  const Eigen::VectorXd ew = Eigen::VectorXd::Constant(n, 1.0 / n);
  const double mu0 = mu.dot(ew);
  const double sigma0_sq = ew.dot(Sigma * ew);

  // Empirical fourth moment (1/p) sum_s (x^T z_s)^4 expanded over degree-4
  // monomial multisets.
  Polynomial f(n);
  for_each_multiset(n, 4, [&](const std::vector<int>& m) {
    double acc = 0.0;
    for (int s = 0; s < kSamples; ++s) {
      acc += Z(s, m[0]) * Z(s, m[1]) * Z(s, m[2]) * Z(s, m[3]);
    }
    acc /= kSamples;
    const double coeff = multinomial(4, m, n) * acc;
    if (coeff == 0.0) return;
    Exponent e(n, 0);
    for (int v : m) ++e[v];
    f.add_term(e, coeff);
  });

  PolynomialProgram pop;
  pop.nvars = n;
  pop.domain = Domain::NonnegativeOrthant;
  pop.objective = f;
  Polynomial mean_row = Polynomial::constant(n, -mu0);
  for (int j = 0; j < n; ++j) mean_row += Polynomial::variable(n, j) * mu[j];
  pop.equalities.push_back(mean_row);
  Polynomial var_row = Polynomial::constant(n, -sigma0_sq);
  var_row += quadratic_objective(Sigma, Eigen::VectorXd());
  pop.equalities.push_back(var_row);
  pop.equalities.push_back(simplex_row(n));
  return pop;
}

PolynomialProgram cst_tensor(int n, int t, CstKind kind, std::uint64_t seed) {
  if (t != 2 && t != 4) throw std::invalid_argument("cst: t must be 2 or 4");
  Rng rng(seed);
  DenseTensor B;
  B.n = n;
  B.t = t;
  B.data.resize(static_cast<std::size_t>(std::pow(n, t)));
  for (auto& v : B.data) v = rng.uniform(-1.0, 1.0);
  symmetrize(B);
  if (kind == CstKind::Copositive) {
    std::vector<int> idx(t);
    for (int i = 0; i < n; ++i) {
      double neg = 0.0;
      std::vector<int> rest(t - 1, 0);
      bool more = true;
      while (more) {
        idx[0] = i;
        bool all_i = true;
        for (int k = 0; k < t - 1; ++k) {
          idx[k + 1] = rest[k];
          if (rest[k] != i) all_i = false;
        }
        if (!all_i) {
          const double v = B.at(idx);
          if (v < 0.0) neg += v;
        }
        int k = t - 2;
        while (k >= 0 && rest[k] == n - 1) rest[k--] = 0;
        if (k < 0) {
          more = false;
        } else {
          ++rest[k];
        }
      }
      std::vector<int> diag(t, i);
      B.at(diag) = 1e-6 - neg;
    }
  }
  PolynomialProgram pop;
  pop.nvars = n;
  pop.domain = Domain::NonnegativeOrthant;
  pop.objective = tensor_form(B);
  pop.equalities.push_back(simplex_row(n));
  return pop;
}

PolynomialProgram ntf_tensor(int n, int t) {
  if (t != 3 && t != 4) throw std::invalid_argument("ntf: t must be 3 or 4");
  const int nv = n * t;
  Polynomial f(nv);
  std::vector<int> idx(t, 0);
  bool more = true;
  while (more) {
    double entry = 0.0;
    for (int j = 0; j < t; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;  // (-1)^{j+1}, 1-based j
      entry += sign * (j + 1) * std::exp(-static_cast<double>(idx[j] + 1));
    }
    Exponent e(nv, 0);
    for (int j = 0; j < t; ++j) ++e[j * n + idx[j]];
    f.add_term(e, -entry);  // objective <-B, x^(1) x ... x x^(t)>
    int k = t - 1;
    while (k >= 0 && idx[k] == n - 1) idx[k--] = 0;
    if (k < 0) {
      more = false;
    } else {
      ++idx[k];
    }
  }
  PolynomialProgram pop;
  pop.nvars = nv;
  pop.domain = Domain::NonnegativeOrthant;
  pop.objective = f;
  for (int b = 0; b < t; ++b) {
    Polynomial sph = Polynomial::constant(nv, -1.0);
    for (int i = 0; i < n; ++i) {
      Exponent sq(nv, 0);
      sq[b * n + i] = 2;
      sph.add_term(sq, 1.0);
    }
    pop.equalities.push_back(sph);
  }
  return pop;
}

PolynomialProgram nstf_tensor(int n, int t, int type) {
  if (t != 3 && t != 4) throw std::invalid_argument("nstf: t must be 3 or 4");
  if (type < 1 || type > 3) throw std::invalid_argument("nstf: type in {1,2,3}");
  DenseTensor B;
  B.n = n;
  B.t = t;
  B.data.resize(static_cast<std::size_t>(std::pow(n, t)));
  std::vector<int> idx(t, 0);
  bool more = true;
  while (more) {
    double entry = 0.0;
    for (int j = 0; j < t; ++j) {
      const int i1 = idx[j] + 1;  // 1-based index value
      const double sign = (i1 % 2 == 0) ? 1.0 : -1.0;
      switch (type) {
        case 1: entry += sign / i1; break;
        case 2: entry += std::atan(sign * i1 / static_cast<double>(n)); break;
        case 3: entry += sign * std::log(static_cast<double>(i1)); break;
      }
    }
    B.at(idx) = entry;
    int k = t - 1;
    while (k >= 0 && idx[k] == n - 1) idx[k--] = 0;
    if (k < 0) {
      more = false;
    } else {
      ++idx[k];
    }
  }
  PolynomialProgram pop;
  pop.nvars = n;
  pop.domain = Domain::NonnegativeOrthant;
  pop.objective = tensor_form(B) * -1.0;
  Polynomial sph = Polynomial::constant(n, -1.0);
  for (int i = 0; i < n; ++i) {
    Exponent sq(n, 0);
    sq[i] = 2;
    sph.add_term(sq, 1.0);
  }
  pop.equalities.push_back(sph);
  return pop;
}

GeneratedInstance make_instance(const InstanceSpec& spec) {
  GeneratedInstance out;
  out.spec = spec;
  if (spec.family == "stqp") {
    out.pop = gen_stqp_gaussian(spec.n, spec.seed);
  } else if (spec.family == "horn") {
    out.pop = horn_extended(spec.n);
    out.known_vstar = 0.0;
  } else if (spec.family == "biq") {
    out.pop = gen_biq(spec.n, spec.seed);
  } else if (spec.family == "mbp") {
    out.pop = gen_mbp(spec.n, spec.p, spec.seed);
  } else if (spec.family == "mqkp") {
    out.pop = gen_mqkp(spec.n, spec.d, spec.seed);
  } else if (spec.family == "bqm") {
    out.pop = gen_bqm(spec.n, spec.seed);
  } else if (spec.family == "kmp") {
    out.pop = gen_kmp(spec.n, spec.seed);
  } else if (spec.family == "cst-random") {
    out.pop = cst_tensor(spec.n, spec.t, CstKind::Random, spec.seed);
  } else if (spec.family == "cst-copositive") {
    out.pop = cst_tensor(spec.n, spec.t, CstKind::Copositive, spec.seed);
  } else if (spec.family == "ntf") {
    out.pop = ntf_tensor(spec.n, spec.t);
  } else if (spec.family == "nstf") {
    out.pop = nstf_tensor(spec.n, spec.t, spec.type);
  } else {
    throw std::invalid_argument("unknown instance family: " + spec.family);
  }
  int maxdeg = out.pop.objective.degree();
  for (const auto& g : out.pop.equalities) maxdeg = std::max(maxdeg, g.degree());
  for (const auto& h : out.pop.inequalities) maxdeg = std::max(maxdeg, h.degree());
  out.default_order = std::max(1, (maxdeg + 1) / 2);
  return out;
}

double relative_gap(double vstar, double v) {
  return (vstar - v) / std::max(1.0, std::abs(vstar)) * 100.0;
}

// ---------------------------------------------------------------------------
// Oracles

namespace {

// Index of the binary variable when g is c*(w_i^2 - w_i), else -1.
int binary_constraint_var(const Polynomial& g) {
  if (g.terms().size() != 2) return -1;
  int var = -1;
  double c_sq = 0.0, c_lin = 0.0;
  for (const auto& [e, c] : g.terms()) {
    int nz = -1;
    int total = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) {
        nz = static_cast<int>(i);
        total += e[i];
      }
    }
    if (nz < 0) return -1;
    if (var < 0) var = nz;
    if (nz != var) return -1;
    if (total == 2) {
      c_sq = c;
    } else if (total == 1) {
      c_lin = c;
    } else {
      return -1;
    }
  }
  if (c_sq == 0.0 || c_lin != -c_sq) return -1;
  return var;
}

// Simplex equality c*(sum w_i - 1)?
bool is_simplex_row(const Polynomial& g, int n) {
  double scale = 0.0;
  int lin_count = 0;
  double cst = 0.0;
  for (const auto& [e, c] : g.terms()) {
    const int d = degree(e);
    if (d == 0) {
      cst = c;
    } else if (d == 1) {
      if (scale == 0.0) scale = c;
      if (c != scale) return false;
      ++lin_count;
    } else {
      return false;
    }
  }
  return lin_count == n && scale != 0.0 && cst == -scale;
}

// Diagonal sphere equality c*(sum_i w_i^2 - 1) over all variables?
bool is_sphere_row(const Polynomial& g, int n) {
  double scale = 0.0;
  int sq_count = 0;
  double cst = 0.0;
  for (const auto& [e, c] : g.terms()) {
    const int d = degree(e);
    if (d == 0) {
      cst = c;
    } else if (d == 2) {
      int nz = 0;
      for (int v : e) {
        if (v == 2) ++nz;
        else if (v != 0) return false;
      }
      if (nz != 1) return false;
      if (scale == 0.0) scale = c;
      if (c != scale) return false;
      ++sq_count;
    } else {
      return false;
    }
  }
  return sq_count == n && scale != 0.0 && cst == -scale;
}

bool objective_pure_quadratic(const Polynomial& f) {
  for (const auto& [e, c] : f.terms()) {
    if (degree(e) != 2) return false;
  }
  return true;
}

OracleResult enumerate_binary(const PolynomialProgram& pop,
                              const std::vector<int>& binary_vars,
                              long long budget) {
  const int n = pop.nvars;
  std::vector<bool> is_binary(n, false);
  for (int v : binary_vars) is_binary[v] = true;

  // Non-binary variables must be determined by a unique linear equality.
  struct SlackRule {
    int var;
    int equality;
    double coef;
  };
  std::vector<SlackRule> slacks;
  std::vector<bool> eq_used(pop.equalities.size(), false);
  for (std::size_t k = 0; k < pop.equalities.size(); ++k) {
    if (binary_constraint_var(pop.equalities[k]) >= 0) eq_used[k] = true;
  }
  for (int v = 0; v < n; ++v) {
    if (is_binary[v]) continue;
    int found = -1;
    double coef = 0.0;
    for (std::size_t k = 0; k < pop.equalities.size(); ++k) {
      bool touches = false;
      double cv = 0.0;
      for (const auto& [e, c] : pop.equalities[k].terms()) {
        if (e[v] > 0) {
          touches = true;
          if (e[v] == 1 && degree(e) == 1) {
            cv = c;
          } else {
            cv = 0.0;  // nonlinear appearance
            break;
          }
        }
      }
      if (!touches) continue;
      if (found >= 0 || cv == 0.0) {
        throw OracleUnavailable("oracle: undetermined continuous variable");
      }
      found = static_cast<int>(k);
      coef = cv;
    }
    if (found < 0 || eq_used[found]) {
      throw OracleUnavailable("oracle: free variable without its own defining row");
    }
    slacks.push_back({v, found, coef});
    eq_used[found] = true;
  }

  const int nb = static_cast<int>(binary_vars.size());
  if (nb > 62 || (1ll << nb) > budget) {
    throw OracleUnavailable("oracle: binary enumeration exceeds budget");
  }

  OracleResult best;
  best.exact = true;
  best.method = "binary-enumeration";
  best.value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd w(n);
  for (long long mask = 0; mask < (1ll << nb); ++mask) {
    w.setZero();
    for (int b = 0; b < nb; ++b) {
      w[binary_vars[b]] = (mask >> b) & 1 ? 1.0 : 0.0;
    }
    bool feasible = true;
    for (const auto& rule : slacks) {
      // coef*v + rest(w) = 0 with v zeroed in w.
      const double rest = pop.equalities[rule.equality].evaluate(w);
      const double v = -rest / rule.coef;
      if (pop.domain == Domain::NonnegativeOrthant && v < -1e-9) {
        feasible = false;
        break;
      }
      w[rule.var] = v;
    }
    if (!feasible) continue;
    for (std::size_t k = 0; k < pop.equalities.size() && feasible; ++k) {
      const double g = pop.equalities[k].evaluate(w);
      if (std::abs(g) > 1e-6) feasible = false;
    }
    for (std::size_t k = 0; k < pop.inequalities.size() && feasible; ++k) {
      if (pop.inequalities[k].evaluate(w) < -1e-9) feasible = false;
    }
    if (!feasible) continue;
    const double val = pop.objective.evaluate(w);
    if (val < best.value) {
      best.value = val;
      best.argmin = w;
    }
  }
  if (!std::isfinite(best.value)) {
    throw OracleUnavailable("oracle: no feasible binary point");
  }
  return best;
}

OracleResult enumerate_supports(const PolynomialProgram& pop, long long budget) {
  const int n = pop.nvars;
  if (n > 30 || (1ll << n) > budget) {
    throw OracleUnavailable("oracle: support enumeration exceeds budget");
  }
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [e, c] : pop.objective.terms()) {
    int i = -1, j = -1;
    for (int v = 0; v < n; ++v) {
      if (e[v] == 2) i = j = v;
      if (e[v] == 1) (i < 0 ? i : j) = v;
    }
    if (i == j) {
      Q(i, i) = c;
    } else {
      Q(i, j) = Q(j, i) = 0.5 * c;
    }
  }

  OracleResult best;
  best.exact = true;
  best.method = "support-enumeration";
  best.value = std::numeric_limits<double>::infinity();
  for (long long mask = 1; mask < (1ll << n); ++mask) {
    std::vector<int> S;
    for (int v = 0; v < n; ++v) {
      if ((mask >> v) & 1) S.push_back(v);
    }
    const int k = static_cast<int>(S.size());
    Eigen::MatrixXd M(k + 1, k + 1);
    M.setZero();
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) M(a, b) = 2.0 * Q(S[a], S[b]);
      M(a, k) = -1.0;
      M(k, a) = 1.0;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
    rhs[k] = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible()) continue;  // degenerate face; generically absent
    const Eigen::VectorXd sol = lu.solve(rhs);
    bool ok = true;
    for (int a = 0; a < k; ++a) {
      if (sol[a] < -1e-10) ok = false;
    }
    if (!ok) continue;
    const Eigen::VectorXd xS = sol.head(k);
    double val = 0.0;
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) val += xS[a] * Q(S[a], S[b]) * xS[b];
    }
    if (val < best.value) {
      best.value = val;
      best.argmin = Eigen::VectorXd::Zero(n);
      for (int a = 0; a < k; ++a) best.argmin[S[a]] = std::max(sol[a], 0.0);
    }
  }
  if (!std::isfinite(best.value)) {
    throw OracleUnavailable("oracle: support enumeration found no candidate");
  }
  return best;
}

bool feasible_point(const PolynomialProgram& pop, const Eigen::VectorXd& w,
                    double tol) {
  if (pop.domain == Domain::NonnegativeOrthant && w.minCoeff() < -tol) return false;
  for (const auto& g : pop.equalities) {
    if (std::abs(g.evaluate(w)) > tol) return false;
  }
  for (const auto& h : pop.inequalities) {
    if (h.evaluate(w) < -tol) return false;
  }
  return true;
}

OracleResult grid_sphere_upper(const PolynomialProgram& pop, int sphere_eq) {
  const int n = pop.nvars;
  const int dim = n - 1;
  if (dim > 4) {
    throw OracleUnavailable("oracle: grid dimension exceeds 4");
  }
  constexpr double kSpacing = 0.05;
  const double lo = pop.domain == Domain::NonnegativeOrthant ? 0.0 : -1.0;
  const int steps = static_cast<int>(std::lround((1.0 - lo) / kSpacing));

  OracleResult best;
  best.exact = false;
  best.method = "grid";
  best.value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  std::vector<int> g(dim, 0);
  bool more = true;
  while (more) {
    double sq = 0.0;
    for (int i = 0; i < dim; ++i) {
      w[i] = lo + g[i] * kSpacing;
      sq += w[i] * w[i];
    }
    if (sq <= 1.0 + 1e-12) {
      const double s = std::sqrt(std::max(0.0, 1.0 - sq));
      for (const double sv : {s, -s}) {
        if (pop.domain == Domain::NonnegativeOrthant && sv < 0.0) continue;
        w[n - 1] = sv;
        const double val = pop.objective.evaluate(w);
        if (val < best.value) {
          best.value = val;
          best.argmin = w;
        }
        if (sv == 0.0) break;
      }
    }
    int k = dim - 1;
    while (k >= 0 && g[k] == steps) g[k--] = 0;
    if (k < 0) {
      more = false;
    } else {
      ++g[k];
    }
  }
  (void)sphere_eq;
  if (!std::isfinite(best.value)) {
    throw OracleUnavailable("oracle: empty grid");
  }
  return best;
}

}  // namespace

OracleResult oracle_solve(const PolynomialProgram& pop, long long budget) {
  const int n = pop.nvars;
  std::vector<int> binary_vars;
  std::vector<bool> is_binary(n, false);
  for (const auto& g : pop.equalities) {
    const int v = binary_constraint_var(g);
    if (v >= 0 && !is_binary[v]) {
      is_binary[v] = true;
      binary_vars.push_back(v);
    }
  }
  if (!binary_vars.empty()) {
    return enumerate_binary(pop, binary_vars, budget);
  }

  if (pop.domain == Domain::NonnegativeOrthant && pop.inequalities.empty() &&
      pop.equalities.size() == 1 && is_simplex_row(pop.equalities[0], n) &&
      objective_pure_quadratic(pop.objective)) {
    return enumerate_supports(pop, budget);
  }

  // Continuous fallbacks: cheap feasible-point bound, then a sphere grid.
  OracleResult best;
  best.exact = false;
  best.value = std::numeric_limits<double>::infinity();
  const Eigen::VectorXd ew = Eigen::VectorXd::Constant(n, 1.0 / n);
  if (feasible_point(pop, ew, 1e-8)) {
    best.method = "feasible-point";
    best.value = pop.objective.evaluate(ew);
    best.argmin = ew;
  }
  int sphere_eq = -1;
  if (pop.equalities.size() == 1 && is_sphere_row(pop.equalities[0], n)) {
    sphere_eq = 0;
  }
  if (sphere_eq >= 0 && n - 1 <= 4) {
    OracleResult grid = grid_sphere_upper(pop, sphere_eq);
    if (grid.value < best.value) best = grid;
  }
  if (!std::isfinite(best.value)) {
    throw OracleUnavailable("oracle: no method applies to this program");
  }
  return best;
}

}  // namespace rpop
