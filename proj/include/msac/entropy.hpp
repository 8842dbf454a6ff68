#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "msac/bitseq.hpp"

namespace msac {

// Krichevsky-Trofimov (add-1/2) estimator over {0, ..., alphabet_size-1}.
//
// For coding, the estimate is quantized to 16-bit frequencies: every symbol
// gets at least 1/65536 and symbol 0 absorbs the rounding remainder.
class AdaptiveModel {
 public:
  static constexpr unsigned kPrecisionBits = 16;
  static constexpr std::uint32_t kTotal = 1u << kPrecisionBits;
  static constexpr std::size_t kMaxAlphabet = 4096;

  explicit AdaptiveModel(std::size_t alphabet_size);

  std::size_t alphabet_size() const noexcept { return weights_.size(); }
  std::uint64_t observations() const noexcept { return (total_ - weights_.size()) / 2; }
  std::uint64_t count(std::size_t symbol) const { return weights_.at(symbol) / 2; }

  // (count + 1/2) / (observations + alphabet/2)
  double probability(std::size_t symbol) const;
  // The quantized probability actually used by the range coder.
  double coding_probability(std::size_t symbol) const;

  void update(std::size_t symbol);

  // Quantized interval of `symbol`: [cum, cum + freq) out of kTotal. Symbol 0
  // sits at the top, so its interval ends at kTotal.
  void interval(std::size_t symbol, std::uint32_t& cum, std::uint32_t& freq) const;
  // Symbol whose interval contains target (target < kTotal, or >= for symbol 0).
  std::size_t find(std::uint32_t target, std::uint32_t& cum, std::uint32_t& freq) const;

 private:
  std::uint32_t scaled(std::size_t symbol) const noexcept {
    return 1u + static_cast<std::uint32_t>(weights_[symbol] * (kTotal - weights_.size()) / total_);
  }

  std::vector<std::uint64_t> weights_;  // 2 * count + 1
  std::uint64_t total_;
};

// Lazily created models indexed by a dense context id.
class ModelBank {
 public:
  explicit ModelBank(std::function<std::size_t(std::size_t)> alphabet_for)
      : alphabet_for_(std::move(alphabet_for)) {}

  AdaptiveModel& operator[](std::size_t context);
  const AdaptiveModel* find(std::size_t context) const;

 private:
  std::function<std::size_t(std::size_t)> alphabet_for_;
  std::vector<std::optional<AdaptiveModel>> models_;
};

// A count coded as a chain of binary "count > k" decisions. Decision k uses
// binary model min(k, stages-1).
//
// With a limit, decisions stop once k reaches it. Without one, after
// `stages` decisions the remainder (count - stages) is Elias-gamma coded.
class CountModel {
 public:
  static CountModel bounded(std::uint64_t limit, std::size_t stages);
  static CountModel escaped(std::size_t stages);

  std::optional<std::uint64_t> limit() const noexcept { return limit_; }
  std::size_t stages() const noexcept { return stages_.size(); }
  AdaptiveModel& stage(std::uint64_t k) {
    return stages_[static_cast<std::size_t>(std::min<std::uint64_t>(k, stages_.size() - 1))];
  }

 private:
  CountModel(std::optional<std::uint64_t> limit, std::size_t stages);

  std::optional<std::uint64_t> limit_;
  std::vector<AdaptiveModel> stages_;
};

struct CodedStream {
  std::vector<std::uint8_t> bytes;
  std::size_t bit_length() const noexcept { return bytes.size() * 8; }
};

// 32-bit range coder with carry propagation, MSB-first byte output.
//
// finish() flushes two bytes; the leading zero byte every such coder
// produces is not stored. Decoding therefore reads exactly three bytes past
// the end of a well-formed stream, which the decoder pads with zeros.
class RangeEncoder {
 public:
  void encode(AdaptiveModel& model, std::size_t symbol);
  void encode_count(CountModel& model, std::uint64_t count);
  void encode_bit(bool bit);
  void encode_bits(std::uint64_t value, unsigned nbits);
  // Elias gamma of n+1 through equiprobable bits. n < 2^63.
  void encode_uint(std::uint64_t n);

  CodedStream finish();

 private:
  void normalize();
  void shift_low();
  void emit(std::uint8_t byte);

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  bool skipped_first_ = false;
  std::vector<std::uint8_t> out_;
};

// Mirror of RangeEncoder. Throws CorruptStream when the input runs out or
// reaches a state no encoder could produce.
class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const std::uint8_t> data);

  std::size_t decode(AdaptiveModel& model);
  std::uint64_t decode_count(CountModel& model);
  bool decode_bit();
  std::uint64_t decode_bits(unsigned nbits);
  std::uint64_t decode_uint();

  // Verifies that the whole stream, and nothing past its flush, was consumed.
  void finish() const;

 private:
  std::uint8_t next();
  void normalize();
  void check() const;

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
  std::size_t overrun_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t code_ = 0;
};

// Generic schedule-driven coding: each symbol is coded with the model of its
// context, models adapt after every symbol.
using ContextSymbol = std::pair<std::size_t, std::size_t>;

CodedStream encode_symbols(std::span<const ContextSymbol> symbols, ModelBank& models);
std::vector<std::size_t> decode_symbols(const CodedStream& stream,
                                        std::span<const std::size_t> schedule,
                                        ModelBank& models);

// MSB-first bit writer/reader for plain (uncoded) bit strings.
class BitWriter {
 public:
  void put(bool bit) { bits_.push_back(bit); }
  void put_bits(std::uint64_t value, unsigned nbits);
  const BitSeq& bits() const noexcept { return bits_; }
  BitSeq take() { return std::move(bits_); }

 private:
  BitSeq bits_;
};

class BitReader {
 public:
  explicit BitReader(const BitSeq& bits, std::size_t pos = 0) : bits_(bits), pos_(pos) {}
  bool get();
  std::uint64_t get_bits(unsigned nbits);
  std::size_t position() const noexcept { return pos_; }

 private:
  const BitSeq& bits_;
  std::size_t pos_;
};

// Elias gamma code of n+1: 0 -> "1", 1 -> "010", 2 -> "011", ...
void write_uint(BitWriter& out, std::uint64_t n);
std::uint64_t read_uint(BitReader& in);
BitSeq encode_uint(std::uint64_t n);
std::uint64_t decode_uint(const BitSeq& bits);

}  // namespace msac
