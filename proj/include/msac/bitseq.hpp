#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace msac {

// A finite binary sequence stored 8 bits per byte, most significant bit
// first. Bits past size() in the last byte are always zero.
class BitSeq {
 public:
  BitSeq() = default;
  explicit BitSeq(std::size_t n, bool value = false);
  BitSeq(std::initializer_list<int> bits);

  // Parses a string of '0'/'1' characters. Separators ',' and ' ' are skipped.
  static BitSeq from_string(std::string_view text);
  // Adopts packed bytes holding `nbits` bits; padding bits are cleared.
  static BitSeq from_bytes(std::vector<std::uint8_t> bytes, std::size_t nbits);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool operator[](std::size_t i) const noexcept {
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u;
  }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool value) noexcept {
    const auto mask = static_cast<std::uint8_t>(0x80u >> (i & 7));
    if (value) {
      bytes_[i >> 3] |= mask;
    } else {
      bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
    }
  }

  void push_back(bool value);
  void append(bool value, std::size_t count);
  void reserve(std::size_t nbits) { bytes_.reserve((nbits + 7) / 8); }

  std::size_t popcount() const noexcept;
  std::string to_string() const;
  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

  // Element-wise xor; both operands must have the same length.
  BitSeq operator^(const BitSeq& other) const;

  friend bool operator==(const BitSeq& a, const BitSeq& b) noexcept {
    return a.size_ == b.size_ && a.bytes_ == b.bytes_;
  }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t size_ = 0;
};

std::ostream& operator<<(std::ostream& os, const BitSeq& seq);

// Flags marking which positions of a parent sequence are removed.
struct DeletionPattern {
  BitSeq flags;

  DeletionPattern() = default;
  explicit DeletionPattern(BitSeq f) : flags(std::move(f)) {}

  std::size_t size() const noexcept { return flags.size(); }
  bool operator[](std::size_t i) const noexcept { return flags[i]; }
  std::size_t deletions() const noexcept { return flags.popcount(); }

  friend bool operator==(const DeletionPattern&, const DeletionPattern&) = default;
};

// Keeps the bits of `parent` whose flag is 0. Throws std::invalid_argument
// when the lengths differ.
BitSeq apply_deletion(const BitSeq& parent, const DeletionPattern& pattern);

// Raw file format: 8-byte little-endian bit count, then ceil(n/8) packed bytes
// (MSB first, last byte zero-padded).
std::vector<std::uint8_t> serialize_bits(const BitSeq& seq);
BitSeq parse_bits(std::span<const std::uint8_t> data);

void write_bit_file(const std::string& path, const BitSeq& seq);
BitSeq read_bit_file(const std::string& path);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::span<const std::uint8_t> data);

}  // namespace msac
