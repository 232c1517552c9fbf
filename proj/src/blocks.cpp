#include "rpop/blocks.hpp"

#include <stdexcept>
#include <unordered_map>

namespace rpop {

Exponent greedy_split(const Exponent& gamma, int tau) {
  Exponent alpha(gamma.size(), 0);
  int remaining = tau;
  for (std::size_t i = 0; i < gamma.size() && remaining > 0; ++i) {
    alpha[i] = std::min(gamma[i], remaining);
    remaining -= alpha[i];
  }
  if (remaining > 0) {
    throw std::invalid_argument("greedy_split: |gamma| < tau");
  }
  return alpha;
}

std::pair<int, int> representative_pair(const Exponent& gamma,
                                        const MonomialBasis& basis) {
  if (degree(gamma) != 2 * basis.order) {
    throw std::invalid_argument("representative_pair: gamma degree != 2*tau");
  }
  const Exponent alpha = greedy_split(gamma, basis.order);
  Exponent beta(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) beta[i] = gamma[i] - alpha[i];
  const int a = basis.index_of(alpha);
  const int b = basis.index_of(beta);
  if (a < 0 || b < 0) {
    throw std::invalid_argument("representative_pair: factor not in basis");
  }
  // alpha is lex-greatest, hence has the smaller ordinal.
  return {std::min(a, b), std::max(a, b)};
}

ConsistencyBlocks build_blocks(const MonomialBasis& basis) {
  const int n = basis.size();
  ConsistencyBlocks blocks;
  blocks.basis_size = n;
  blocks.block_of.resize(static_cast<std::size_t>(n) * (n + 1) / 2);

  // Key a block by its canonical representative entry packed into 64 bits.
  std::unordered_map<std::uint64_t, std::int32_t> id_of;
  id_of.reserve(blocks.block_of.size() / 2);

  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j, ++idx) {
      const Exponent gamma = block_key(basis.exponents[i], basis.exponents[j]);
      const auto rep = representative_pair(gamma, basis);
      const std::uint64_t key =
          (static_cast<std::uint64_t>(rep.first) << 32) |
          static_cast<std::uint32_t>(rep.second);
      auto [it, inserted] =
          id_of.emplace(key, static_cast<std::int32_t>(blocks.ordered_count.size()));
      if (inserted) {
        blocks.ordered_count.push_back(0);
        blocks.representative.emplace_back(rep.first, rep.second);
      }
      blocks.block_of[idx] = it->second;
      blocks.ordered_count[it->second] += (i == j) ? 1 : 2;
    }
  }
  blocks.gamma0_block = blocks.block_at(basis.e1_index, basis.e1_index);
  return blocks;
}

}  // namespace rpop
