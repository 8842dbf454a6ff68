#include "msac/align.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <vector>

#include "msac/error.hpp"

namespace msac {

BitSeq Alignment::x() const {
  BitSeq out;
  for (const Column& c : columns) {
    if (c.consumes_x()) {
      out.push_back(c.x_bit);
    }
  }
  return out;
}

BitSeq Alignment::y() const {
  BitSeq out;
  for (const Column& c : columns) {
    if (c.consumes_y()) {
      out.push_back(c.y_bit);
    }
  }
  return out;
}

std::string Alignment::x_star() const {
  std::string s;
  for (const Column& c : columns) {
    s.push_back(c.consumes_x() ? (c.x_bit ? '1' : '0') : '-');
  }
  return s;
}

std::string Alignment::y_star() const {
  std::string s;
  for (const Column& c : columns) {
    s.push_back(c.consumes_y() ? (c.y_bit ? '1' : '0') : '-');
  }
  return s;
}

bool is_consistent(const Alignment& a) {
  std::size_t edits = 0;
  for (const Column& c : a.columns) {
    switch (c.op) {
      case EditOp::Match:
        if (c.x_bit != c.y_bit) return false;
        break;
      case EditOp::Substitute:
        if (c.x_bit == c.y_bit) return false;
        ++edits;
        break;
      case EditOp::InsertX:
      case EditOp::DeleteY:
        ++edits;
        break;
    }
  }
  return edits == a.cost;
}

DeletionPattern greedy_align(const BitSeq& x, const BitSeq& y) {
  BitSeq flags(y.size());
  std::size_t i = 0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (i < x.size() && x[i] == y[j]) {
      ++i;
    } else {
      flags.set(j, true);
    }
  }
  if (i != x.size()) {
    throw NotSubsequence();
  }
  return DeletionPattern(std::move(flags));
}

namespace {

enum Step : std::uint8_t { kDiag = 0, kLeft = 1, kUp = 2, kNone = 3 };

// Two bits per cell.
class StepTable {
 public:
  StepTable(std::size_t rows, std::size_t width) : width_(width), bits_((rows * width + 3) / 4, 0) {}

  void set(std::size_t row, std::size_t col, Step s) {
    const std::size_t k = row * width_ + col;
    bits_[k >> 2] |= static_cast<std::uint8_t>(s << ((k & 3) * 2));
  }
  Step get(std::size_t row, std::size_t col) const {
    const std::size_t k = row * width_ + col;
    return static_cast<Step>((bits_[k >> 2] >> ((k & 3) * 2)) & 3u);
  }

 private:
  std::size_t width_;
  std::vector<std::uint8_t> bits_;
};

constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max() / 4;

// Fills the band of diagonals k = j - i in [kmin, kmax] and returns the cost
// at (m, n) together with the steps needed for traceback.
struct BandResult {
  std::int64_t cost;
  StepTable steps;
};

std::vector<std::uint8_t> unpack(const BitSeq& s) {
  std::vector<std::uint8_t> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = s[i];
  }
  return out;
}

// Cells whose cost plus the remaining diagonal distance exceeds `limit` are
// dropped: no path of cost <= limit passes through them, and every tie on an
// optimal path survives, so the traceback matches the full matrix.
BandResult fill_band(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y, std::int64_t kmin,
                     std::int64_t kmax, std::int64_t limit) {
  const auto m = static_cast<std::int64_t>(x.size());
  const auto n = static_cast<std::int64_t>(y.size());
  const std::int64_t delta = n - m;
  const auto width = static_cast<std::int64_t>(kmax - kmin + 1);
  StepTable steps(static_cast<std::size_t>(m + 1), static_cast<std::size_t>(width));
  // Slot c + 1 holds column c; the extra slots read as kInf.
  std::vector<std::int32_t> prev(static_cast<std::size_t>(width + 2), kInf);
  std::vector<std::int32_t> cur(static_cast<std::size_t>(width + 2), kInf);
  std::int64_t prev_lo = 0;
  std::int64_t prev_hi = -1;
  std::int64_t cur_lo = 0;
  std::int64_t cur_hi = -1;

  for (std::int64_t i = 0; i <= m; ++i) {
    std::fill(cur.begin() + (cur_lo + 1), cur.begin() + (cur_hi + 2), kInf);
    // Column c holds j = i + kmin + c; only 0 <= j <= n is inside the matrix.
    const std::int64_t lo = std::max<std::int64_t>(0, -i - kmin);
    const std::int64_t hi = std::min<std::int64_t>(width - 1, n - i - kmin);
    const std::int64_t start = i == 0 ? lo : std::max(lo, prev_lo - 1);
    const auto row = static_cast<std::size_t>(i);
    const std::uint8_t xb = i > 0 ? x[static_cast<std::size_t>(i - 1)] : 0;
    cur_lo = width;
    cur_hi = -1;
    for (std::int64_t c = start; c <= hi; ++c) {
      const std::int64_t k = kmin + c;
      const std::int64_t j = i + k;
      const auto slot = static_cast<std::size_t>(c + 1);
      std::int32_t best = kInf;
      Step step = kNone;
      if (i == 0 && j == 0) {
        best = 0;
      } else {
        if (i > 0 && j > 0) {
          best = prev[slot] + (xb != y[static_cast<std::size_t>(j - 1)] ? 1 : 0);
          step = kDiag;
        }
        if (cur[slot - 1] + 1 < best) {
          best = cur[slot - 1] + 1;
          step = kLeft;
        }
        if (prev[slot + 1] + 1 < best) {
          best = prev[slot + 1] + 1;
          step = kUp;
        }
      }
      if (best + std::llabs(delta - k) > limit) {
        if (c > prev_hi) {
          break;  // nothing above feeds the rest of the row
        }
        continue;
      }
      cur[slot] = best;
      steps.set(row, static_cast<std::size_t>(c), step);
      cur_lo = std::min(cur_lo, c);
      cur_hi = c;
    }
    if (cur_hi < 0) {
      return {kInf, std::move(steps)};
    }
    std::swap(prev, cur);
    std::swap(prev_lo, cur_lo);
    std::swap(prev_hi, cur_hi);
  }
  const std::int64_t end_col = delta - kmin;
  return {prev[static_cast<std::size_t>(end_col + 1)], std::move(steps)};
}

}  // namespace

Alignment nw_align(const BitSeq& x, const BitSeq& y) {
  const auto m = static_cast<std::int64_t>(x.size());
  const auto n = static_cast<std::int64_t>(y.size());
  const std::int64_t delta = n - m;
  const std::int64_t abs_delta = std::llabs(delta);

  // A narrow unpruned pass gives an achievable cost t. A path through
  // diagonal k costs at least |k| + |delta - k|, so the band of diagonals with
  // that bound <= t holds every optimal path.
  const auto xs = unpack(x);
  const auto ys = unpack(y);
  const std::int64_t threshold =
      fill_band(xs, ys, std::max(-m, std::min<std::int64_t>(0, delta) - 64),
                std::min(n, std::max<std::int64_t>(0, delta) + 64), std::numeric_limits<std::int64_t>::max() / 4)
          .cost;
  const std::int64_t extra = (threshold - abs_delta) / 2;
  const std::int64_t kmin = std::max(-m, std::min<std::int64_t>(0, delta) - extra);
  const std::int64_t kmax = std::min(n, std::max<std::int64_t>(0, delta) + extra);
  BandResult band = fill_band(xs, ys, kmin, kmax, threshold);
  Alignment a;
  a.cost = static_cast<std::size_t>(band.cost);
  std::int64_t i = m;
  std::int64_t j = n;
  while (i > 0 || j > 0) {
    const auto c = static_cast<std::size_t>(j - i - kmin);
    switch (band.steps.get(static_cast<std::size_t>(i), c)) {
      case kDiag:
        a.columns.push_back(x[i - 1] == y[j - 1] ? Column::match(x[i - 1])
                                                 : Column::substitute(x[i - 1], y[j - 1]));
        --i;
        --j;
        break;
      case kLeft:
        a.columns.push_back(Column::delete_y(y[j - 1]));
        --j;
        break;
      case kUp:
        a.columns.push_back(Column::insert_x(x[i - 1]));
        --i;
        break;
      case kNone:
        throw std::logic_error("alignment traceback left the band");
    }
  }
  std::reverse(a.columns.begin(), a.columns.end());
  return a;
}

FilledPair fill_gaps(const Alignment& a) {
  FilledPair out;
  out.z_x.reserve(a.columns.size());
  out.z_y.reserve(a.columns.size());
  for (const Column& c : a.columns) {
    switch (c.op) {
      case EditOp::InsertX:
        out.z_x.push_back(c.x_bit);
        out.z_y.push_back(c.x_bit);
        break;
      case EditOp::DeleteY:
        out.z_x.push_back(c.y_bit);
        out.z_y.push_back(c.y_bit);
        break;
      default:
        out.z_x.push_back(c.x_bit);
        out.z_y.push_back(c.y_bit);
    }
  }
  return out;
}

}  // namespace msac
