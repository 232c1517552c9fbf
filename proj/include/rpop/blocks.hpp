#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rpop/multiindex.hpp"

namespace rpop {

/// Partition of the matrix index set into blocks B_gamma of entries whose
/// basis exponents sum to the same gamma.  Entries of a symmetric matrix
/// within one block represent the same monomial and the consistency cone
/// forces them equal.  Stored as a packed upper-triangle map entry -> block
/// id plus per-block ordered-pair counts (off-diagonal entries count twice).
struct ConsistencyBlocks {
  int basis_size = 0;
  int gamma0_block = -1;  // block of (e1^tau, e1^tau)
  std::vector<std::int32_t> block_of;       // size N(N+1)/2, i <= j packed
  std::vector<std::int32_t> ordered_count;  // per block
  std::vector<std::pair<std::int32_t, std::int32_t>> representative;

  static std::size_t upper_index(int i, int j, int n) {
    // i <= j; row-major packing of the upper triangle.
    return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i - 1) / 2 +
           (j - i);
  }

  int block_count() const { return static_cast<int>(ordered_count.size()); }

  std::int32_t block_at(int i, int j) const {
    if (i > j) std::swap(i, j);
    return block_of[upper_index(i, j, basis_size)];
  }
};

/// Lexicographically greatest degree-tau sub-exponent of gamma; the canonical
/// left factor of gamma's representative pair.
Exponent greedy_split(const Exponent& gamma, int tau);

/// Canonical (row, col) entry representing the degree-2*tau exponent gamma,
/// with row <= col.  Well defined for every gamma on the full basis.
std::pair<int, int> representative_pair(const Exponent& gamma,
                                        const MonomialBasis& basis);

ConsistencyBlocks build_blocks(const MonomialBasis& basis);

}  // namespace rpop
