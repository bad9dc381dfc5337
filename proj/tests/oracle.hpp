#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <cstdint>
#include <utility>
#include <vector>

#include "cliff/multivector.hpp"
#include "cliff/prng.hpp"

namespace oracle {

// Naive blade product: write both blades as generator words, concatenate,
// then bubble-sort with a sign flip per adjacent swap and contract equal
// neighbours with the metric.  Slow and obviously correct.
inline std::pair<int, std::uint32_t> blade_product_naive(std::uint32_t a, std::uint32_t b,
                                                         const cliff::Signature& sig) {
  std::vector<int> word;
  for (int i = 0; i < sig.n(); ++i)
    if (a >> i & 1) word.push_back(i + 1);
  for (int i = 0; i < sig.n(); ++i)
    if (b >> i & 1) word.push_back(i + 1);
  int sign = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      if (word[i] > word[i + 1]) {
        std::swap(word[i], word[i + 1]);
        sign = -sign;
        changed = true;
        break;
      }
      if (word[i] == word[i + 1]) {
        sign *= sig.metric(word[i]);
        word.erase(word.begin() + i, word.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }
  std::uint32_t mask = 0;
  for (int g : word) mask |= std::uint32_t(1) << (g - 1);
  return {sign, mask};
}

// Random sparse exact multivector with small rational coefficients.
inline cliff::Multivector random_multivector(cliff::SplitMix64& rng, cliff::Signature sig,
                                             cliff::Field field, int terms) {
  cliff::Multivector u(sig, field);
  for (int t = 0; t < terms; ++t) {
    std::uint32_t mask = std::uint32_t(rng.next()) & ((std::uint32_t(1) << sig.n()) - 1);
    int num = int(rng.next() % 9) - 4;
    int den = 1 + int(rng.next() % 4);
    cliff::Rational re(num, den);
    cliff::Rational im(0);
    if (field == cliff::Field::Complex && rng.next() % 2 == 0) std::swap(re, im);
    u.add_term(mask, cliff::CRat(re, im));
  }
  return u;
}

}  // namespace oracle
