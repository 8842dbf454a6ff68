#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "msac/bitseq.hpp"
#include "msac/simulate.hpp"

namespace msac {

double binary_entropy(double p);

// sum_{l>=1} 2^{-l-1} l log2(l), summed until the terms drop below 1e-12.
double theoretical_c();

// h2(d) - c d: the small-d expansion of the optimal pure-deletion rate for
// uniform side-information.
double theoretical_rate_pure(double d);

// Payload bits of the comparison codecs. The two that need an alignment throw
// NotSubsequence outside the pure-deletion regime.
//
// dhat_direct: every flag of the greedy deletion pattern, one binary context.
// runs_single_context: deletions per run of Y, one context for all extents.
// no_side_info: X alone, one binary context.
// per_extent: the run-extent codec's payload.
std::size_t baseline_dhat_direct(const BitSeq& x, const BitSeq& y);
std::size_t baseline_w_runs(const BitSeq& x, const BitSeq& y);
std::size_t baseline_no_si(const BitSeq& x);
std::size_t codec_pure_bits(const BitSeq& x, const BitSeq& y);

// Exact H(X|Y)/n for the pure-deletion model by enumerating every side
// sequence and every deletion pattern. n <= 12.
double bruteforce_conditional_entropy(std::size_t n, double p, double d);
constexpr std::size_t kBruteforceMaxN = 12;

// Plug-in estimate of H(V)/n: per-extent empirical entropies of the greedy
// deletion counts over `trials` simulated instances (seeds seed, seed+1, ...),
// weighted by how often each extent occurs. Pure-deletion regime only.
double estimate_description_entropy(const SourceParams& params, std::size_t trials);

struct CellReport {
  std::string codec;
  double p = 0;
  double d = 0;
  std::uint64_t n = 0;
  std::size_t trials = 0;
  double mean_bits = 0;   // E[L_M]
  double mean_rate = 0;   // mean of L_M / L_Y
  double ratio_rate = 0;  // E[L_M] / E[L_Y]
  double std_err = 0;     // of mean_rate
  double rate_per_x = 0;  // E[L_M] / E[L_X], for reference
};

struct RateReport {
  std::vector<CellReport> cells;

  const CellReport& cell(const std::string& codec, double p, double d) const;
};

inline const char* const kCodecNames[] = {"no_si", "dhat_direct", "runs_single_context", "per_extent"};

// Runs every codec on `trials` pure-deletion instances per (p, d).
RateReport run_rates(std::span<const double> ps, std::span<const double> ds, std::uint64_t n,
                     std::size_t trials, std::uint64_t seed, unsigned threads = 0);
// p in {0.5, 0.1}, d = 0.01. Throws std::invalid_argument for trials == 0.
RateReport run_table1(std::size_t trials, std::uint64_t n, std::uint64_t seed = 1,
                      unsigned threads = 0);

// One row per cell: codec,p,d,n,trials,mean_bits,mean_rate,ratio_rate,std_err,rate_per_x
std::string to_csv(const RateReport& report);
// Rows by (p, d), one column per codec in kilobits (10^3 bits).
std::string to_table(const RateReport& report);

// Calls fn(i) for i in [0, count) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace msac
