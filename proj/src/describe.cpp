#include "msac/describe.hpp"

#include <stdexcept>
#include <string>

#include "msac/error.hpp"

namespace msac {

ExtentTable zero_extent_table(const RunDecomposition& rd) {
  ExtentTable table(rd.extent_counts().size());
  for (std::size_t l = 1; l < table.size(); ++l) {
    table[l].assign(rd.count(l), 0);
  }
  return table;
}

bool has_shape_of(const ExtentTable& table, const RunDecomposition& rd) {
  if (table.size() != rd.extent_counts().size()) {
    return false;
  }
  if (!table.empty() && !table[0].empty()) {
    return false;
  }
  for (std::size_t l = 1; l < table.size(); ++l) {
    if (table[l].size() != rd.count(l)) {
      return false;
    }
  }
  return true;
}

std::uint64_t table_sum(const ExtentTable& table) {
  std::uint64_t total = 0;
  for (const auto& row : table) {
    for (std::uint64_t v : row) {
      total += v;
    }
  }
  return total;
}

std::uint64_t InsertionDescription::inserted_bits() const {
  std::uint64_t total = table_sum(extend_counts) + break_flags.popcount();
  for (const Burst& b : bursts) {
    total += b.content.size();
  }
  return total;
}

DeletionDescription describe_deletions(const DeletionPattern& pattern, const BitSeq& reference) {
  if (pattern.size() != reference.size()) {
    throw std::invalid_argument("deletion pattern length differs from reference length");
  }
  const RunDecomposition rd = decompose_runs(reference);
  DeletionDescription desc{zero_extent_table(rd)};
  for (std::size_t k = 0; k < rd.size(); ++k) {
    const Run& r = rd.runs()[k];
    std::uint64_t deleted = 0;
    for (std::size_t p = r.start; p < r.start + r.extent; ++p) {
      deleted += pattern[p] ? 1 : 0;
    }
    desc.counts[r.extent][rd.rank_in_extent(k)] = deleted;
  }
  return desc;
}

BitSeq apply_deletion_description(const BitSeq& reference, const DeletionDescription& desc) {
  const RunDecomposition rd = decompose_runs(reference);
  if (!has_shape_of(desc.counts, rd)) {
    throw InvalidDescription("deletion counts do not match the runs of the reference");
  }
  BitSeq out;
  out.reserve(reference.size());
  for (std::size_t k = 0; k < rd.size(); ++k) {
    const Run& r = rd.runs()[k];
    const std::uint64_t deleted = desc.counts[r.extent][rd.rank_in_extent(k)];
    if (deleted > r.extent) {
      throw InvalidDescription("run of extent " + std::to_string(r.extent) + " cannot lose " +
                               std::to_string(deleted) + " bits");
    }
    // Which bits of a run go does not change the result; keep the tail.
    out.append(r.symbol, r.extent - static_cast<std::size_t>(deleted));
  }
  return out;
}

BitSeq extend_runs(const BitSeq& y, const ExtentTable& extend_counts) {
  const RunDecomposition rd = decompose_runs(y);
  if (!has_shape_of(extend_counts, rd)) {
    throw InvalidDescription("extension counts do not match the runs of the side-information");
  }
  BitSeq out;
  out.reserve(y.size());
  for (std::size_t k = 0; k < rd.size(); ++k) {
    const Run& r = rd.runs()[k];
    const std::uint64_t extra = extend_counts[r.extent][rd.rank_in_extent(k)];
    // One isolated bit per slot touching the run: l - 1 inside, one per end.
    if (extra > r.extent + 1) {
      throw InvalidDescription("run of extent " + std::to_string(r.extent) + " cannot take " +
                               std::to_string(extra) + " extensions");
    }
    out.append(r.symbol, r.extent + static_cast<std::size_t>(extra));
  }
  return out;
}

namespace {

// Slot k of s sits before s[k]; slots 0 and s.size() are the two ends.
bool is_break_slot(const BitSeq& s, std::size_t k) {
  if (s.empty()) {
    return false;
  }
  return k == 0 || k == s.size() || s[k - 1] == s[k];
}

bool break_bit(const BitSeq& s, std::size_t k) {
  return !(k < s.size() ? s[k] : s[k - 1]);
}

}  // namespace

std::size_t count_break_slots(const BitSeq& y1) {
  if (y1.empty()) {
    return 0;
  }
  std::size_t slots = 2;
  for (std::size_t k = 1; k < y1.size(); ++k) {
    slots += y1[k - 1] == y1[k] ? 1 : 0;
  }
  return slots;
}

BitSeq apply_breaks(const BitSeq& y1, const BitSeq& flags) {
  if (flags.size() != count_break_slots(y1)) {
    throw InvalidDescription("expected " + std::to_string(count_break_slots(y1)) +
                             " break flags, got " + std::to_string(flags.size()));
  }
  BitSeq out;
  out.reserve(y1.size() + flags.popcount());
  std::size_t ordinal = 0;
  for (std::size_t k = 0; k <= y1.size(); ++k) {
    if (is_break_slot(y1, k) && flags[ordinal++]) {
      out.push_back(break_bit(y1, k));
    }
    if (k < y1.size()) {
      out.push_back(y1[k]);
    }
  }
  return out;
}

std::size_t min_burst_length(const BitSeq& y2) {
  return y2.empty() ? 1 : 2;
}

BitSeq apply_bursts(const BitSeq& y2, std::span<const Burst> bursts) {
  const std::size_t min_len = min_burst_length(y2);
  std::size_t extra = 0;
  for (std::size_t b = 0; b < bursts.size(); ++b) {
    if (bursts[b].slot > y2.size()) {
      throw InvalidDescription("burst slot past the end of the sequence");
    }
    if (b > 0 && bursts[b].slot <= bursts[b - 1].slot) {
      throw InvalidDescription("burst slots must be strictly increasing");
    }
    if (bursts[b].content.size() < min_len) {
      throw InvalidDescription("burst shorter than " + std::to_string(min_len) + " bits");
    }
    extra += bursts[b].content.size();
  }
  BitSeq out;
  out.reserve(y2.size() + extra);
  std::size_t next = 0;
  for (std::size_t k = 0; k <= y2.size(); ++k) {
    if (next < bursts.size() && bursts[next].slot == k) {
      const BitSeq& c = bursts[next++].content;
      for (std::size_t i = 0; i < c.size(); ++i) {
        out.push_back(c[i]);
      }
    }
    if (k < y2.size()) {
      out.push_back(y2[k]);
    }
  }
  return out;
}

GeneralDescription describe_general(const Alignment& a, const BitSeq& y) {
  if (!(a.y() == y)) {
    throw std::invalid_argument("alignment does not belong to this side-information");
  }
  const RunDecomposition rd = decompose_runs(y);
  std::vector<std::size_t> run_of(y.size());
  for (std::size_t k = 0; k < rd.size(); ++k) {
    const Run& r = rd.runs()[k];
    for (std::size_t p = r.start; p < r.start + r.extent; ++p) {
      run_of[p] = k;
    }
  }

  GeneralDescription g;
  g.ins.extend_counts = zero_extent_table(rd);
  auto extend = [&](std::size_t pos) {
    const std::size_t k = run_of[pos];
    ++g.ins.extend_counts[rd.runs()[k].extent][rd.rank_in_extent(k)];
  };

  // Walk Z_Y in order. y1_pos counts bits that survive into Y' (Y bits and
  // extensions); y2_pos additionally counts breaks, i.e. bits of Y''.
  std::vector<std::size_t> break_slots;
  std::size_t y_pos = 0;
  std::size_t y1_pos = 0;
  std::size_t y2_pos = 0;
  const auto& cols = a.columns;
  for (std::size_t c = 0; c < cols.size();) {
    if (cols[c].op != EditOp::InsertX) {
      ++y_pos;
      ++y1_pos;
      ++y2_pos;
      ++c;
      continue;
    }
    std::size_t end = c;
    while (end < cols.size() && cols[end].op == EditOp::InsertX) {
      ++end;
    }
    if (end - c >= 2 || y.empty()) {
      Burst burst{y2_pos, {}};
      for (std::size_t k = c; k < end; ++k) {
        burst.content.push_back(cols[k].x_bit);
      }
      g.ins.bursts.push_back(std::move(burst));
    } else {
      const bool bit = cols[c].x_bit;
      if (y_pos > 0 && y[y_pos - 1] == bit) {
        extend(y_pos - 1);
        ++y1_pos;
        ++y2_pos;
      } else if (y_pos < y.size() && y[y_pos] == bit) {
        extend(y_pos);
        ++y1_pos;
        ++y2_pos;
      } else {
        break_slots.push_back(y1_pos);
        ++y2_pos;
      }
    }
    c = end;
  }

  const BitSeq y1 = extend_runs(y, g.ins.extend_counts);
  g.ins.break_flags = BitSeq(count_break_slots(y1));
  std::size_t ordinal = 0;
  std::size_t k = 0;
  for (std::size_t slot : break_slots) {
    for (; k < slot; ++k) {
      ordinal += is_break_slot(y1, k) ? 1 : 0;
    }
    if (!is_break_slot(y1, slot)) {
      throw std::logic_error("run-breaking insertion landed between unequal bits");
    }
    g.ins.break_flags.set(ordinal, true);
  }

  const FilledPair filled = fill_gaps(a);
  g.sub.mask = filled.z_y ^ filled.z_x;

  BitSeq deleted(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].op == EditOp::DeleteY) {
      deleted.set(c, true);
    }
  }
  g.del = describe_deletions(DeletionPattern(std::move(deleted)), filled.z_x);
  return g;
}

BitSeq decode_general_description(const BitSeq& y, const GeneralDescription& g) {
  const BitSeq y1 = extend_runs(y, g.ins.extend_counts);
  const BitSeq y2 = apply_breaks(y1, g.ins.break_flags);
  const BitSeq z_y = apply_bursts(y2, g.ins.bursts);
  if (g.sub.mask.size() != z_y.size()) {
    throw InvalidDescription("substitution mask covers " + std::to_string(g.sub.mask.size()) +
                             " bits, expected " + std::to_string(z_y.size()));
  }
  return apply_deletion_description(z_y ^ g.sub.mask, g.del);
}

}  // namespace msac
