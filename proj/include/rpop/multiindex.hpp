#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace rpop {

/// Multi-index exponent (alpha_0, ..., alpha_n); entry 0 is the
/// homogenization variable x_0.
using Exponent = std::vector<int>;

int degree(const Exponent& e);

struct ExponentHash {
  std::size_t operator()(const Exponent& e) const {
    std::size_t h = 1469598103934665603ull;
    for (int v : e) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// C(n+k, k) with an overflow guard; throws std::overflow_error when the
/// count does not fit in 63 bits.
std::uint64_t binomial_checked(std::uint64_t n, std::uint64_t k);

/// All exponents of total degree tau in n+1 variables, ordered
/// lexicographically descending with alpha_0 most significant.  The first
/// element is always e1^tau = (tau, 0, ..., 0), so normalization lookups are
/// ordinal 0.  For n=2, tau=2 the order is
///   (2,0,0) (1,1,0) (1,0,1) (0,2,0) (0,1,1) (0,0,2)
/// i.e. the monomial vector [x0^2, x0 x1, x0 x2, x1^2, x1 x2, x2^2].
struct MonomialBasis {
  int nvars = 0;  // n; exponents have nvars+1 entries
  int order = 0;  // tau
  std::vector<Exponent> exponents;
  std::unordered_map<Exponent, int, ExponentHash> position;
  int e1_index = 0;

  int size() const { return static_cast<int>(exponents.size()); }

  /// Ordinal of an exponent, or -1 when absent.
  int index_of(const Exponent& e) const {
    auto it = position.find(e);
    return it == position.end() ? -1 : it->second;
  }
};

MonomialBasis enumerate_basis(int n, int tau);

/// gamma = alpha + beta (componentwise).
Exponent block_key(const Exponent& alpha, const Exponent& beta);

}  // namespace rpop
