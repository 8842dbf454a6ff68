#include "msac/bitseq.hpp"

#include <bit>
#include <fstream>
#include <iterator>
#include <ostream>
#include <stdexcept>

#include "msac/error.hpp"

namespace msac {

BitSeq::BitSeq(std::size_t n, bool value) : bytes_((n + 7) / 8, value ? 0xFF : 0x00), size_(n) {
  if (value && (n & 7) != 0) {
    bytes_.back() = static_cast<std::uint8_t>(0xFF00u >> (n & 7));
  }
}

BitSeq::BitSeq(std::initializer_list<int> bits) {
  reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) {
      throw std::invalid_argument("bit values must be 0 or 1");
    }
    push_back(b == 1);
  }
}

BitSeq BitSeq::from_string(std::string_view text) {
  BitSeq seq;
  seq.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      seq.push_back(c == '1');
    } else if (c != ',' && c != ' ') {
      throw std::invalid_argument(std::string("invalid bit character '") + c + "'");
    }
  }
  return seq;
}

BitSeq BitSeq::from_bytes(std::vector<std::uint8_t> bytes, std::size_t nbits) {
  if (bytes.size() != (nbits + 7) / 8) {
    throw std::invalid_argument("byte count does not match bit count");
  }
  BitSeq seq;
  seq.bytes_ = std::move(bytes);
  seq.size_ = nbits;
  if ((nbits & 7) != 0) {
    seq.bytes_.back() &= static_cast<std::uint8_t>(0xFF00u >> (nbits & 7));
  }
  return seq;
}

bool BitSeq::at(std::size_t i) const {
  if (i >= size_) {
    throw std::out_of_range("bit index out of range");
  }
  return (*this)[i];
}

void BitSeq::push_back(bool value) {
  if ((size_ & 7) == 0) {
    bytes_.push_back(0);
  }
  ++size_;
  if (value) {
    set(size_ - 1, true);
  }
}

void BitSeq::append(bool value, std::size_t count) {
  // Fill the partial byte, then whole bytes.
  while (count > 0 && (size_ & 7) != 0) {
    push_back(value);
    --count;
  }
  const std::size_t whole = count / 8;
  bytes_.insert(bytes_.end(), whole, value ? 0xFF : 0x00);
  size_ += whole * 8;
  for (count -= whole * 8; count > 0; --count) {
    push_back(value);
  }
}

std::size_t BitSeq::popcount() const noexcept {
  std::size_t total = 0;
  for (std::uint8_t b : bytes_) {
    total += static_cast<std::size_t>(std::popcount(b));
  }
  return total;
}

std::string BitSeq::to_string() const {
  std::string out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    out.push_back((*this)[i] ? '1' : '0');
  }
  return out;
}

BitSeq BitSeq::operator^(const BitSeq& other) const {
  if (other.size_ != size_) {
    throw std::invalid_argument("xor of sequences with different lengths");
  }
  BitSeq out = *this;
  for (std::size_t i = 0; i < bytes_.size(); ++i) {
    out.bytes_[i] ^= other.bytes_[i];
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const BitSeq& seq) {
  os << '(';
  for (std::size_t i = 0; i < seq.size(); ++i) {
    os << (i ? "," : "") << (seq[i] ? '1' : '0');
  }
  return os << ')';
}

BitSeq apply_deletion(const BitSeq& parent, const DeletionPattern& pattern) {
  if (pattern.size() != parent.size()) {
    throw std::invalid_argument("deletion pattern length differs from parent length");
  }
  BitSeq child;
  child.reserve(parent.size() - pattern.deletions());
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (!pattern[i]) {
      child.push_back(parent[i]);
    }
  }
  return child;
}

std::vector<std::uint8_t> serialize_bits(const BitSeq& seq) {
  std::vector<std::uint8_t> out;
  out.reserve(8 + seq.bytes().size());
  std::uint64_t n = seq.size();
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
  }
  out.insert(out.end(), seq.bytes().begin(), seq.bytes().end());
  return out;
}

BitSeq parse_bits(std::span<const std::uint8_t> data) {
  if (data.size() < 8) {
    throw FormatError("bit file shorter than its 8-byte length header");
  }
  std::uint64_t n = 0;
  for (int i = 0; i < 8; ++i) {
    n |= static_cast<std::uint64_t>(data[i]) << (8 * i);
  }
  const std::uint64_t payload = data.size() - 8;
  if (n / 8 + ((n & 7) ? 1 : 0) != payload) {
    throw FormatError("bit file length header says " + std::to_string(n) + " bits but " +
                      std::to_string(payload) + " payload bytes follow");
  }
  std::vector<std::uint8_t> bytes(data.begin() + 8, data.end());
  if ((n & 7) != 0 && (bytes.back() & (0xFFu >> (n & 7))) != 0) {
    throw FormatError("bit file padding bits are not zero");
  }
  return BitSeq::from_bytes(std::move(bytes), static_cast<std::size_t>(n));
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "'");
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::string& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) {
    throw IoError("failed writing '" + path + "'");
  }
}

void write_bit_file(const std::string& path, const BitSeq& seq) {
  write_file_bytes(path, serialize_bits(seq));
}

BitSeq read_bit_file(const std::string& path) {
  return parse_bits(read_file_bytes(path));
}

}  // namespace msac
