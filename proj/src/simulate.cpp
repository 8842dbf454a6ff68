#include "msac/simulate.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace msac {

void SourceParams::validate() const {
  if (n < 1) {
    throw std::invalid_argument("n must be at least 1");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("p must lie in (0, 1)");
  }
  if (!(q >= 0.0 && q < 1.0)) {
    throw std::invalid_argument("q must lie in [0, 1)");
  }
  if (!(d_x >= 0.0 && d_x < 1.0)) {
    throw std::invalid_argument("dx must lie in [0, 1)");
  }
  if (!(d_y >= 0.0 && d_y < 1.0)) {
    throw std::invalid_argument("dy must lie in [0, 1)");
  }
}

namespace {

// Shortest text that reads back as the same double.
std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string SourceParams::to_text() const {
  std::ostringstream os;
  os << "n=" << n << "\np=" << shortest(p) << "\nq=" << shortest(q) << "\ndx=" << shortest(d_x)
     << "\ndy=" << shortest(d_y) << "\nseed=" << seed << "\n";
  return os.str();
}

std::mt19937_64 make_stream(std::uint64_t seed, std::string_view label) {
  // FNV-1a of the label keeps streams with different labels apart.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : label) {
    h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ull;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return std::mt19937_64(seq);
}

BitSeq bernoulli_bits(std::mt19937_64& rng, std::uint64_t n, double p) {
  BitSeq out(n);
  if (p <= 0.0) {
    return out;
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < p) {
      out.set(i, true);
    }
  }
  return out;
}

SimInstance generate(const SourceParams& params) {
  params.validate();
  SimInstance s;
  s.params = params;
  auto zx_rng = make_stream(params.seed, "zx");
  auto bsc_rng = make_stream(params.seed, "bsc");
  auto dx_rng = make_stream(params.seed, "dx");
  auto dy_rng = make_stream(params.seed, "dy");

  s.z_x = bernoulli_bits(zx_rng, params.n, params.p);
  s.z_y = s.z_x ^ bernoulli_bits(bsc_rng, params.n, params.q);
  s.d_x = DeletionPattern(bernoulli_bits(dx_rng, params.n, params.d_x));
  s.d_y = DeletionPattern(bernoulli_bits(dy_rng, params.n, params.d_y));
  s.x = apply_deletion(s.z_x, s.d_x);
  s.y = apply_deletion(s.z_y, s.d_y);
  return s;
}

}  // namespace msac
