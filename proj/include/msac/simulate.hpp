#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "msac/bitseq.hpp"

namespace msac {

// Z_X ~ iid Bernoulli(p); Z_Y = Z_X through a BSC(q); X and Y are Z_X and
// Z_Y with iid Bernoulli(d_x) and Bernoulli(d_y) deletion patterns applied.
struct SourceParams {
  std::uint64_t n = 1000;
  double p = 0.5;
  double q = 0.0;
  double d_x = 0.0;
  double d_y = 0.0;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
  // key=value lines.
  std::string to_text() const;
};

struct SimInstance {
  SourceParams params;
  BitSeq z_x;
  BitSeq z_y;
  DeletionPattern d_x;
  DeletionPattern d_y;
  BitSeq x;
  BitSeq y;
};

// Each of the four random components comes from its own generator, seeded
// from (seed, label) with label in {"zx", "bsc", "dx", "dy"}; the generators
// are mt19937_64 and Bernoulli draws compare 53-bit uniforms against the
// probability, so instances are identical across platforms.
SimInstance generate(const SourceParams& params);

std::mt19937_64 make_stream(std::uint64_t seed, std::string_view label);
BitSeq bernoulli_bits(std::mt19937_64& rng, std::uint64_t n, double p);

}  // namespace msac
