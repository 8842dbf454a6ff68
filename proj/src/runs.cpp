#include "msac/runs.hpp"

#include <stdexcept>
#include <string>

namespace msac {

RunDecomposition::RunDecomposition(std::vector<Run> runs) : runs_(std::move(runs)) {
  rank_.reserve(runs_.size());
  for (const Run& r : runs_) {
    if (r.extent == 0) {
      throw std::invalid_argument("run of extent 0");
    }
    if (r.extent >= extent_counts_.size()) {
      extent_counts_.resize(r.extent + 1, 0);
    }
    rank_.push_back(extent_counts_[r.extent]++);
  }
}

std::vector<std::size_t> RunDecomposition::runs_of_extent(std::size_t extent) const {
  std::vector<std::size_t> out;
  out.reserve(count(extent));
  for (std::size_t k = 0; k < runs_.size(); ++k) {
    if (runs_[k].extent == extent) {
      out.push_back(k);
    }
  }
  return out;
}

std::size_t RunDecomposition::total_length() const noexcept {
  std::size_t total = 0;
  for (const Run& r : runs_) {
    total += r.extent;
  }
  return total;
}

RunDecomposition decompose_runs(const BitSeq& seq) {
  std::vector<Run> runs;
  for (std::size_t i = 0; i < seq.size();) {
    const bool symbol = seq[i];
    std::size_t j = i + 1;
    while (j < seq.size() && seq[j] == symbol) {
      ++j;
    }
    runs.push_back({symbol, j - i, i});
    i = j;
  }
  return RunDecomposition(std::move(runs));
}

Run nth_run_of_extent(const RunDecomposition& rd, std::size_t extent, std::size_t i) {
  if (i >= rd.count(extent)) {
    throw std::out_of_range("requested run " + std::to_string(i) + " of extent " +
                            std::to_string(extent) + " but only " +
                            std::to_string(rd.count(extent)) + " exist");
  }
  for (const Run& r : rd.runs()) {
    if (r.extent == extent && i-- == 0) {
      return r;
    }
  }
  throw std::logic_error("run decomposition counts are inconsistent");
}

BitSeq expand_runs(const RunDecomposition& rd) {
  BitSeq out;
  out.reserve(rd.total_length());
  for (const Run& r : rd.runs()) {
    out.append(r.symbol, r.extent);
  }
  return out;
}

}  // namespace msac
