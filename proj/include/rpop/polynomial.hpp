#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "rpop/multiindex.hpp"

namespace rpop {

/// Sparse multivariate polynomial with real coefficients.  Terms map an
/// exponent over the stated variables to a coefficient; exact zeros are never
/// stored, so the zero polynomial has an empty term map.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, double c);
  /// Monomial c * w^e.
  static Polynomial monomial(int nvars, const Exponent& e, double c);
  /// Variable w_i (0-based).
  static Polynomial variable(int nvars, int i);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  /// Max total degree over stored terms; 0 for the zero polynomial.
  int degree() const;

  const std::map<Exponent, double>& terms() const { return terms_; }

  void add_term(const Exponent& e, double c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double s);
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double s) const;

  double evaluate(const Eigen::VectorXd& w) const;

  /// Same polynomial over nvars + extra variables (new ones appended).
  Polynomial extended(int extra) const;

 private:
  int nvars_ = 0;
  std::map<Exponent, double> terms_;
};

/// x_0^d * p(w / x_0): the degree-d homogenization of p over n+1 variables
/// (x_0 at index 0).  Requires d >= deg(p).
Polynomial homogenize_to_degree(const Polynomial& p, int target_degree);

/// Degree-2*tau homogenization; requires tau >= ceil(deg(p)/2).
Polynomial homogenize(const Polynomial& p, int tau);

}  // namespace rpop
