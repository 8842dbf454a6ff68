#include "msac/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "msac/align.hpp"
#include "msac/container.hpp"
#include "msac/describe.hpp"
#include "msac/entropy.hpp"
#include "msac/runs.hpp"

namespace msac {

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) {
    return 0.0;
  }
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double theoretical_c() {
  double sum = 0.0;
  for (int l = 2;; ++l) {
    const double term = std::ldexp(1.0, -l - 1) * l * std::log2(static_cast<double>(l));
    sum += term;
    if (term < 1e-12) {
      return sum;
    }
  }
}

double theoretical_rate_pure(double d) {
  return binary_entropy(d) - theoretical_c() * d;
}

std::size_t baseline_dhat_direct(const BitSeq& x, const BitSeq& y) {
  const DeletionPattern pattern = greedy_align(x, y);
  RangeEncoder enc;
  AdaptiveModel model(2);
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    enc.encode(model, pattern[i] ? 1 : 0);
  }
  return enc.finish().bit_length();
}

std::size_t baseline_w_runs(const BitSeq& x, const BitSeq& y) {
  const DeletionPattern pattern = greedy_align(x, y);
  const RunDecomposition rd = decompose_runs(y);
  RangeEncoder enc;
  // Same count binarization as the run-extent codec, but one model shared by
  // every extent, so the extent itself is never exploited.
  CountModel model = CountModel::bounded(std::max<std::size_t>(rd.max_extent(), 1), 3);
  for (const Run& r : rd.runs()) {
    std::uint64_t deleted = 0;
    for (std::size_t i = r.start; i < r.start + r.extent; ++i) {
      deleted += pattern[i] ? 1 : 0;
    }
    enc.encode_count(model, deleted);
  }
  return enc.finish().bit_length();
}

std::size_t baseline_no_si(const BitSeq& x) {
  RangeEncoder enc;
  AdaptiveModel model(2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    enc.encode(model, x[i] ? 1 : 0);
  }
  return enc.finish().bit_length();
}

std::size_t codec_pure_bits(const BitSeq& x, const BitSeq& y) {
  return encode_pure(x, y).payload_bits();
}

double bruteforce_conditional_entropy(std::size_t n, double p, double d) {
  if (n == 0 || n > kBruteforceMaxN) {
    throw std::invalid_argument("brute-force entropy needs 1 <= n <= " + std::to_string(kBruteforceMaxN));
  }
  const std::size_t count = std::size_t{1} << n;
  // Probability of a pattern with k deletions, and of a sequence with k ones.
  std::vector<double> pattern_prob(n + 1);
  std::vector<double> seq_prob(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    pattern_prob[k] = std::pow(d, static_cast<double>(k)) * std::pow(1.0 - d, static_cast<double>(n - k));
    seq_prob[k] = std::pow(p, static_cast<double>(k)) * std::pow(1.0 - p, static_cast<double>(n - k));
  }
  // x is keyed as (1 << len) | bits so different lengths never collide.
  std::vector<double> joint(count << 1);
  double entropy = 0.0;
  for (std::size_t y = 0; y < count; ++y) {
    std::fill(joint.begin(), joint.end(), 0.0);
    for (std::size_t del = 0; del < count; ++del) {
      std::size_t bits = 0;
      std::size_t len = 0;
      for (std::size_t i = n; i-- > 0;) {
        if (!((del >> i) & 1u)) {
          bits = (bits << 1) | ((y >> i) & 1u);
          ++len;
        }
      }
      joint[(std::size_t{1} << len) | bits] += pattern_prob[static_cast<std::size_t>(std::popcount(del))];
    }
    double h = 0.0;
    for (double q : joint) {
      if (q > 0.0) {
        h -= q * std::log2(q);
      }
    }
    entropy += seq_prob[static_cast<std::size_t>(std::popcount(y))] * h;
  }
  return entropy / static_cast<double>(n);
}

double estimate_description_entropy(const SourceParams& params, std::size_t trials) {
  if (params.q != 0.0 || params.d_y != 0.0) {
    throw std::invalid_argument("description entropy is defined for the pure-deletion regime");
  }
  if (trials == 0) {
    throw std::invalid_argument("trials must be positive");
  }
  // histogram[l][v]: how often an extent-l run lost v bits.
  std::vector<std::vector<std::uint64_t>> histogram;
  for (std::size_t t = 0; t < trials; ++t) {
    SourceParams trial = params;
    trial.seed = params.seed + t;
    const SimInstance s = generate(trial);
    const DeletionDescription desc = describe_deletions(greedy_align(s.x, s.y), s.y);
    if (histogram.size() < desc.counts.size()) {
      histogram.resize(desc.counts.size());
    }
    for (std::size_t l = 1; l < desc.counts.size(); ++l) {
      histogram[l].resize(l + 1, 0);
      for (std::uint64_t v : desc.counts[l]) {
        ++histogram[l][v];
      }
    }
  }
  double bits = 0.0;
  for (const auto& h : histogram) {
    std::uint64_t total = 0;
    for (std::uint64_t c : h) {
      total += c;
    }
    for (std::uint64_t c : h) {
      if (c > 0) {
        const double f = static_cast<double>(c) / static_cast<double>(total);
        bits -= static_cast<double>(c) * std::log2(f);
      }
    }
  }
  return bits / (static_cast<double>(trials) * static_cast<double>(params.n));
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> workers;
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
        }
      }
    });
  }
  workers.clear();
  if (failure) {
    std::rethrow_exception(failure);
  }
}

const CellReport& RateReport::cell(const std::string& codec, double p, double d) const {
  for (const CellReport& c : cells) {
    if (c.codec == codec && c.p == p && c.d == d) {
      return c;
    }
  }
  throw std::out_of_range("no report cell for codec " + codec);
}

RateReport run_rates(std::span<const double> ps, std::span<const double> ds, std::uint64_t n,
                     std::size_t trials, std::uint64_t seed, unsigned threads) {
  if (trials == 0) {
    throw std::invalid_argument("trials must be positive");
  }
  constexpr std::size_t kCodecs = std::size(kCodecNames);
  struct Sample {
    double bits[kCodecs];
    double y_len;
    double x_len;
  };
  RateReport report;
  for (double p : ps) {
    for (double d : ds) {
      std::vector<Sample> samples(trials);
      parallel_for(trials, threads, [&](std::size_t t) {
        SourceParams params{n, p, 0.0, d, 0.0, seed + t};
        const SimInstance s = generate(params);
        Sample& out = samples[t];
        out.bits[0] = static_cast<double>(baseline_no_si(s.x));
        out.bits[1] = static_cast<double>(baseline_dhat_direct(s.x, s.y));
        out.bits[2] = static_cast<double>(baseline_w_runs(s.x, s.y));
        out.bits[3] = static_cast<double>(codec_pure_bits(s.x, s.y));
        out.y_len = static_cast<double>(s.y.size());
        out.x_len = static_cast<double>(s.x.size());
      });
      double y_total = 0.0;
      double x_total = 0.0;
      for (const Sample& s : samples) {
        y_total += s.y_len;
        x_total += s.x_len;
      }
      for (std::size_t c = 0; c < kCodecs; ++c) {
        CellReport cell{kCodecNames[c], p, d, n, trials};
        double bits = 0.0;
        double rate_sum = 0.0;
        double rate_sq = 0.0;
        for (const Sample& s : samples) {
          const double rate = s.bits[c] / s.y_len;
          bits += s.bits[c];
          rate_sum += rate;
          rate_sq += rate * rate;
        }
        const auto k = static_cast<double>(trials);
        cell.mean_bits = bits / k;
        cell.mean_rate = rate_sum / k;
        cell.ratio_rate = bits / y_total;
        cell.rate_per_x = bits / x_total;
        const double var = trials > 1 ? std::max(0.0, (rate_sq - rate_sum * rate_sum / k) / (k - 1)) : 0.0;
        cell.std_err = std::sqrt(var / k);
        report.cells.push_back(cell);
      }
    }
  }
  return report;
}

RateReport run_table1(std::size_t trials, std::uint64_t n, std::uint64_t seed, unsigned threads) {
  const double ps[] = {0.5, 0.1};
  const double ds[] = {0.01};
  return run_rates(ps, ds, n, trials, seed, threads);
}

std::string to_csv(const RateReport& report) {
  std::ostringstream os;
  os << "codec,p,d,n,trials,mean_bits,mean_rate,ratio_rate,std_err,rate_per_x\n";
  os << std::setprecision(10);
  for (const CellReport& c : report.cells) {
    os << c.codec << ',' << c.p << ',' << c.d << ',' << c.n << ',' << c.trials << ',' << c.mean_bits
       << ',' << c.mean_rate << ',' << c.ratio_rate << ',' << c.std_err << ',' << c.rate_per_x << '\n';
  }
  return os.str();
}

std::string to_table(const RateReport& report) {
  std::map<std::pair<double, double>, std::map<std::string, double>> rows;
  std::vector<std::pair<double, double>> order;
  for (const CellReport& c : report.cells) {
    const auto key = std::make_pair(c.p, c.d);
    if (!rows.count(key)) {
      order.push_back(key);
    }
    rows[key][c.codec] = c.mean_bits;
  }
  std::ostringstream os;
  os << std::left << std::setw(8) << "p" << std::setw(8) << "d";
  for (const char* name : kCodecNames) {
    os << std::right << std::setw(22) << name;
  }
  os << '\n';
  for (const auto& key : order) {
    os << std::left << std::setw(8) << key.first << std::setw(8) << key.second << std::right;
    for (const char* name : kCodecNames) {
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(1) << rows[key][name] / 1000.0 << "kb";
      os << std::setw(22) << cell.str();
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace msac
