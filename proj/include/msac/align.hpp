#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "msac/bitseq.hpp"

namespace msac {

enum class EditOp : std::uint8_t {
  Match,       // x_bit == y_bit
  Substitute,  // x_bit != y_bit
  InsertX,     // bit present in X only (gap in Y*)
  DeleteY,     // bit present in Y only (gap in X*)
};

struct Column {
  EditOp op = EditOp::Match;
  bool x_bit = false;  // meaningful unless op == DeleteY
  bool y_bit = false;  // meaningful unless op == InsertX

  static Column match(bool b) { return {EditOp::Match, b, b}; }
  static Column substitute(bool x, bool y) { return {EditOp::Substitute, x, y}; }
  static Column insert_x(bool x) { return {EditOp::InsertX, x, x}; }
  static Column delete_y(bool y) { return {EditOp::DeleteY, y, y}; }

  bool consumes_x() const noexcept { return op != EditOp::DeleteY; }
  bool consumes_y() const noexcept { return op != EditOp::InsertX; }

  friend bool operator==(const Column&, const Column&) = default;
};

// A gapped pairing (X*, Y*) of two sequences.
struct Alignment {
  std::vector<Column> columns;
  std::size_t cost = 0;

  BitSeq x() const;  // X read back from the columns
  BitSeq y() const;  // Y read back from the columns
  std::string x_star() const;  // '0'/'1'/'-' rendering
  std::string y_star() const;

  friend bool operator==(const Alignment&, const Alignment&) = default;
};

// Checks the column records and the cost. Used by tests and the decoder-side
// sanity checks; returns false instead of throwing.
bool is_consistent(const Alignment& a);

// Matches each bit of X to the leftmost unused equal bit of Y; the skipped
// bits of Y form the returned pattern (length len(Y)). Throws NotSubsequence
// when Y runs out first.
DeletionPattern greedy_align(const BitSeq& x, const BitSeq& y);

// Minimum-cost alignment under unit substitution and gap penalties.
//
// Among optimal alignments the traceback from the end prefers, at every
// cell, Match/Substitute over DeleteY over InsertX. The dynamic program runs
// inside a diagonal band that doubles until the band provably contains every
// optimal path, which yields the same alignment as the full matrix.
Alignment nw_align(const BitSeq& x, const BitSeq& y);

// Z_X and Z_Y: both sequences with every gap filled by the other side's bit.
struct FilledPair {
  BitSeq z_x;
  BitSeq z_y;
};

FilledPair fill_gaps(const Alignment& a);

}  // namespace msac
