#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "msac/bitseq.hpp"

namespace msac::testing {

inline BitSeq random_bits(std::mt19937_64& rng, std::size_t n, double p = 0.5) {
  std::bernoulli_distribution bit(p);
  BitSeq out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(bit(rng));
  }
  return out;
}

inline DeletionPattern random_pattern(std::mt19937_64& rng, std::size_t n, double d) {
  return DeletionPattern(random_bits(rng, n, d));
}

// Random edits of y: each bit is deleted, flipped, or followed by an
// inserted random bit, independently.
inline BitSeq random_edit(std::mt19937_64& rng, const BitSeq& y, double rate) {
  std::bernoulli_distribution hit(rate);
  std::bernoulli_distribution coin(0.5);
  BitSeq out;
  if (hit(rng)) {
    out.push_back(coin(rng));
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!hit(rng)) {
      out.push_back(y[i]);
    } else if (coin(rng)) {
      out.push_back(!y[i]);
    }
    if (hit(rng)) {
      out.push_back(coin(rng));
    }
  }
  return out;
}

}  // namespace msac::testing
