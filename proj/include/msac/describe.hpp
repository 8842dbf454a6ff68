#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "msac/align.hpp"
#include "msac/bitseq.hpp"
#include "msac/runs.hpp"

namespace msac {

// One value per run of a reference sequence: table[l][i] belongs to the i-th
// (0-based, left to right) run of extent l. table[0] is always empty, and
// an empty reference has an empty table.
using ExtentTable = std::vector<std::vector<std::uint64_t>>;

ExtentTable zero_extent_table(const RunDecomposition& rd);
bool has_shape_of(const ExtentTable& table, const RunDecomposition& rd);
std::uint64_t table_sum(const ExtentTable& table);

// Number of deleted bits in each run of the reference.
struct DeletionDescription {
  ExtentTable counts;

  std::uint64_t total() const { return table_sum(counts); }
  friend bool operator==(const DeletionDescription&, const DeletionDescription&) = default;
};

struct Burst {
  std::size_t slot = 0;  // insertion point in Y'' (number of Y'' bits before it)
  BitSeq content;

  friend bool operator==(const Burst&, const Burst&) = default;
};

// How Y grows into Z_Y:
//  - extend_counts: per run of Y, isolated inserted bits equal to the run
//    symbol (at most extent + 1);
//  - break_flags: one flag per potential break slot of Y' (Y with the
//    extensions applied), set where a complementary bit splits a run or
//    starts a new one at either end;
//  - bursts: two or more consecutive inserted bits, placed by slot in Y''.
//    Into an empty Y'' a single bit is also carried as a burst.
struct InsertionDescription {
  ExtentTable extend_counts;
  BitSeq break_flags;
  std::vector<Burst> bursts;

  std::uint64_t inserted_bits() const;
  friend bool operator==(const InsertionDescription&, const InsertionDescription&) = default;
};

struct SubstitutionMask {
  BitSeq mask;  // Z_Y xor Z_X

  friend bool operator==(const SubstitutionMask&, const SubstitutionMask&) = default;
};

struct GeneralDescription {
  InsertionDescription ins;
  SubstitutionMask sub;
  DeletionDescription del;  // relative to the runs of Z_X

  friend bool operator==(const GeneralDescription&, const GeneralDescription&) = default;
};

// Counts the flagged positions inside each run of the reference.
DeletionDescription describe_deletions(const DeletionPattern& pattern, const BitSeq& reference);

// Drops the first counts[l][i] bits of every run. Throws InvalidDescription
// if the table does not fit the reference or a count exceeds its run.
BitSeq apply_deletion_description(const BitSeq& reference, const DeletionDescription& desc);

// Splits an alignment of X against y into insertion, substitution and
// deletion descriptions. Throws std::invalid_argument if the alignment's
// Y side is not y.
GeneralDescription describe_general(const Alignment& a, const BitSeq& y);

// Y -> Y' -> Y'' -> Z_Y -> Z_X -> X. Throws InvalidDescription when any
// part of the description does not fit the sequence it is applied to.
BitSeq decode_general_description(const BitSeq& y, const GeneralDescription& g);

// The individual decoder stages, exposed for incremental decoding.
BitSeq extend_runs(const BitSeq& y, const ExtentTable& extend_counts);
std::size_t count_break_slots(const BitSeq& y1);
BitSeq apply_breaks(const BitSeq& y1, const BitSeq& flags);
std::size_t min_burst_length(const BitSeq& y2);
BitSeq apply_bursts(const BitSeq& y2, std::span<const Burst> bursts);

}  // namespace msac
