#include "rpop/multiindex.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rpop {

int degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

std::uint64_t binomial_checked(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr std::uint64_t kLimit = std::uint64_t(1) << 62;
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;  // exact: C(n-k+i, i) is integral
    if (result > kLimit) {
      throw std::overflow_error("binomial(" + std::to_string(n) + "," +
                                std::to_string(k) + ") exceeds capacity");
    }
  }
  return static_cast<std::uint64_t>(result);
}

namespace {

void enumerate_rec(int slots_left, int degree_left, Exponent& current,
                   std::vector<Exponent>& out) {
  if (slots_left == 1) {
    current.push_back(degree_left);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int d = degree_left; d >= 0; --d) {
    current.push_back(d);
    enumerate_rec(slots_left - 1, degree_left - d, current, out);
    current.pop_back();
  }
}

}  // namespace

MonomialBasis enumerate_basis(int n, int tau) {
  if (n < 0 || tau < 0) {
    throw std::invalid_argument("enumerate_basis requires n >= 0 and tau >= 0");
  }
  const std::uint64_t count =
      binomial_checked(static_cast<std::uint64_t>(n) + tau, tau);
  if (count > (std::uint64_t(1) << 31)) {
    throw std::overflow_error("basis size " + std::to_string(count) +
                              " exceeds addressable capacity");
  }
  MonomialBasis basis;
  basis.nvars = n;
  basis.order = tau;
  basis.exponents.reserve(count);
  Exponent current;
  current.reserve(n + 1);
  enumerate_rec(n + 1, tau, current, basis.exponents);
  basis.position.reserve(basis.exponents.size());
  for (int i = 0; i < basis.size(); ++i) {
    basis.position.emplace(basis.exponents[i], i);
  }
  basis.e1_index = 0;
  return basis;
}

Exponent block_key(const Exponent& alpha, const Exponent& beta) {
  if (alpha.size() != beta.size()) {
    throw std::invalid_argument("block_key: exponent lengths differ");
  }
  Exponent gamma(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) gamma[i] = alpha[i] + beta[i];
  return gamma;
}

}  // namespace rpop
