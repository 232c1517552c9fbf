#include "rpop/polynomial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rpop {

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::monomial(int nvars, const Exponent& e, double c) {
  Polynomial p(nvars);
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
  Exponent e(nvars, 0);
  e.at(i) = 1;
  return monomial(nvars, e, 1.0);
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, rpop::degree(e));
  return d;
}

void Polynomial::add_term(const Exponent& e, double c) {
  if (static_cast<int>(e.size()) != nvars_) {
    throw std::invalid_argument("add_term: exponent length " +
                                std::to_string(e.size()) + " != nvars " +
                                std::to_string(nvars_));
  }
  for (int v : e) {
    if (v < 0) throw std::invalid_argument("add_term: negative exponent");
  }
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.nvars_ != nvars_) {
    throw std::invalid_argument("polynomial variable counts differ");
  }
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.nvars_ != nvars_) {
    throw std::invalid_argument("polynomial variable counts differ");
  }
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  out += other;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial out = *this;
  out -= other;
  return out;
}

Polynomial Polynomial::operator*(double s) const {
  Polynomial out = *this;
  out *= s;
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (other.nvars_ != nvars_) {
    throw std::invalid_argument("polynomial variable counts differ");
  }
  Polynomial out(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      out.add_term(block_key(ea, eb), ca * cb);
    }
  }
  return out;
}

double Polynomial::evaluate(const Eigen::VectorXd& w) const {
  if (w.size() != nvars_) {
    throw std::invalid_argument("evaluate: point dimension mismatch");
  }
  double value = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (int i = 0; i < nvars_; ++i) {
      for (int k = 0; k < e[i]; ++k) m *= w[i];
    }
    value += m;
  }
  return value;
}

Polynomial Polynomial::extended(int extra) const {
  Polynomial out(nvars_ + extra);
  for (const auto& [e, c] : terms_) {
    Exponent ee = e;
    ee.resize(nvars_ + extra, 0);
    out.add_term(ee, c);
  }
  return out;
}

Polynomial homogenize_to_degree(const Polynomial& p, int target_degree) {
  const int d = p.degree();
  if (target_degree < d) {
    throw std::invalid_argument("homogenization degree " +
                                std::to_string(target_degree) +
                                " below polynomial degree " + std::to_string(d));
  }
  Polynomial out(p.nvars() + 1);
  for (const auto& [e, c] : p.terms()) {
    Exponent xe(p.nvars() + 1);
    xe[0] = target_degree - degree(e);
    for (int i = 0; i < p.nvars(); ++i) xe[i + 1] = e[i];
    out.add_term(xe, c);
  }
  return out;
}

Polynomial homogenize(const Polynomial& p, int tau) {
  return homogenize_to_degree(p, 2 * tau);
}

}  // namespace rpop
