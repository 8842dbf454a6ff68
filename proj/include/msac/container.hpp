#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "msac/bitseq.hpp"
#include "msac/describe.hpp"
#include "msac/entropy.hpp"

namespace msac {

enum class Mode : std::uint8_t { PureDeletion = 0, General = 1 };

// Wire format:
//   "MSAC" | version (1 byte, = 1) | mode (1 byte)
//   | gamma(x_length + 1), MSB first, zero-padded to a byte boundary
//   | range-coded payload
//
// Pure-deletion payload: the deletion count of every run of Y, extents in
// ascending order and runs left to right within an extent, one context per
// extent.
//
// General payload, in order:
//   1. extension counts per run of Y (contexts by extent)
//   2. break flags over the potential slots of Y' (one binary context)
//   3. burst count, then per burst: slot gap, length - minimum, raw bits
//   4. substitution mask over Z_Y (one binary context)
//   5. deletion counts per run of Z_X (contexts by extent)
//
// Run structure, U_l and break slots are recomputed from Y by the decoder.
struct Message {
  static constexpr std::uint8_t kVersion = 1;
  static constexpr std::uint64_t kMaxLength = 1ull << 40;

  Mode mode = Mode::PureDeletion;
  std::uint64_t x_length = 0;
  CodedStream payload;

  std::vector<std::uint8_t> serialize() const;
  // Throws CorruptMessage (section "header") on a malformed header.
  static Message parse(std::span<const std::uint8_t> bytes);

  std::size_t payload_bits() const noexcept { return payload.bit_length(); }
  std::size_t header_bits() const;
  std::size_t total_bits() const { return header_bits() + payload_bits(); }
};

// Throws NotSubsequence when x is not a subsequence of y.
Message encode_pure(const BitSeq& x, const BitSeq& y);
BitSeq decode_pure(const Message& m, const BitSeq& y);
DeletionDescription read_pure_description(const Message& m, const BitSeq& y);

Message encode_general(const BitSeq& x, const BitSeq& y);
BitSeq decode_general(const Message& m, const BitSeq& y);
GeneralDescription read_general_description(const Message& m, const BitSeq& y);

enum class AutoSelect {
  kPreferPure,  // pure mode whenever x is a subsequence of y
  kSmallest,    // encode both when possible and keep the smaller message
};

// Pure mode wins ties.
Mode select_mode(std::size_t pure_bytes, std::size_t general_bytes);

Message encode_auto(const BitSeq& x, const BitSeq& y, AutoSelect select = AutoSelect::kPreferPure);
// Dispatches on m.mode. Errors are CorruptMessage naming the failed section.
BitSeq decode(const Message& m, const BitSeq& y);

}  // namespace msac
