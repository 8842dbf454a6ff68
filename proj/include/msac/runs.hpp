#pragma once

#include <cstddef>
#include <vector>

#include "msac/bitseq.hpp"

namespace msac {

struct Run {
  bool symbol = false;
  std::size_t extent = 0;
  std::size_t start = 0;  // 0-based position of the first bit

  friend bool operator==(const Run&, const Run&) = default;
};

// Maximal runs of a sequence, grouped by extent.
//
// extent_counts()[l] is the number of runs of extent l (index 0 unused);
// it is empty when the sequence is empty, so max_extent() is then 0 and
// there are no runs of any extent.
class RunDecomposition {
 public:
  RunDecomposition() = default;
  explicit RunDecomposition(std::vector<Run> runs);

  const std::vector<Run>& runs() const noexcept { return runs_; }
  std::size_t size() const noexcept { return runs_.size(); }

  std::size_t max_extent() const noexcept {
    return extent_counts_.empty() ? 0 : extent_counts_.size() - 1;
  }
  std::size_t count(std::size_t extent) const noexcept {
    return extent < extent_counts_.size() ? extent_counts_[extent] : 0;
  }
  const std::vector<std::size_t>& extent_counts() const noexcept { return extent_counts_; }

  // Position of each run within the runs sharing its extent, in left-to-right order.
  std::size_t rank_in_extent(std::size_t run_index) const noexcept { return rank_[run_index]; }

  // Indices into runs() of the runs with this extent, left to right.
  std::vector<std::size_t> runs_of_extent(std::size_t extent) const;

  std::size_t total_length() const noexcept;

 private:
  std::vector<Run> runs_;
  std::vector<std::size_t> extent_counts_;
  std::vector<std::size_t> rank_;
};

// Single left-to-right pass.
RunDecomposition decompose_runs(const BitSeq& seq);

// The i-th (0-based) run whose extent is exactly `extent`. Throws
// std::out_of_range when there are not that many.
Run nth_run_of_extent(const RunDecomposition& rd, std::size_t extent, std::size_t i);

// Concatenates each run's symbol repeated extent times.
BitSeq expand_runs(const RunDecomposition& rd);

}  // namespace msac
