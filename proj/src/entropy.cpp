#include "msac/entropy.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "msac/error.hpp"

namespace msac {

namespace {
constexpr std::uint32_t kTop = 1u << 24;
constexpr unsigned kMaxGammaZeros = 63;
}  // namespace

AdaptiveModel::AdaptiveModel(std::size_t alphabet_size)
    : weights_(alphabet_size, 1), total_(alphabet_size) {
  if (alphabet_size == 0 || alphabet_size > kMaxAlphabet) {
    throw std::invalid_argument("alphabet size must be in [1, " + std::to_string(kMaxAlphabet) + "]");
  }
}

double AdaptiveModel::probability(std::size_t symbol) const {
  return static_cast<double>(weights_.at(symbol)) / static_cast<double>(total_);
}

double AdaptiveModel::coding_probability(std::size_t symbol) const {
  std::uint32_t cum = 0;
  std::uint32_t freq = 0;
  interval(symbol, cum, freq);
  return static_cast<double>(freq) / kTotal;
}

void AdaptiveModel::update(std::size_t symbol) {
  weights_.at(symbol) += 2;
  total_ += 2;
}

void AdaptiveModel::interval(std::size_t symbol, std::uint32_t& cum, std::uint32_t& freq) const {
  const std::size_t k = weights_.size();
  if (symbol >= k) {
    throw std::out_of_range("symbol outside the model alphabet");
  }
  std::uint32_t below = 0;
  for (std::size_t t = k - 1; t > symbol; --t) {
    below += scaled(t);
  }
  if (symbol == 0) {
    cum = below;
    freq = kTotal - below;
  } else {
    cum = below;
    freq = scaled(symbol);
  }
}

std::size_t AdaptiveModel::find(std::uint32_t target, std::uint32_t& cum, std::uint32_t& freq) const {
  std::uint32_t below = 0;
  for (std::size_t t = weights_.size() - 1; t > 0; --t) {
    const std::uint32_t f = scaled(t);
    if (target < below + f) {
      cum = below;
      freq = f;
      return t;
    }
    below += f;
  }
  cum = below;
  freq = kTotal - below;
  return 0;
}

AdaptiveModel& ModelBank::operator[](std::size_t context) {
  if (context >= models_.size()) {
    models_.resize(context + 1);
  }
  auto& slot = models_[context];
  if (!slot) {
    slot.emplace(alphabet_for_(context));
  }
  return *slot;
}

const AdaptiveModel* ModelBank::find(std::size_t context) const {
  if (context >= models_.size() || !models_[context]) {
    return nullptr;
  }
  return &*models_[context];
}

CountModel::CountModel(std::optional<std::uint64_t> limit, std::size_t stages)
    : limit_(limit), stages_(std::max<std::size_t>(stages, 1), AdaptiveModel(2)) {}

CountModel CountModel::bounded(std::uint64_t limit, std::size_t stages) {
  return CountModel(limit, stages);
}

CountModel CountModel::escaped(std::size_t stages) {
  if (stages == 0) {
    throw std::invalid_argument("an escaped count model needs at least one stage");
  }
  return CountModel(std::nullopt, stages);
}

// ---------------------------------------------------------------------------
// Encoder

void RangeEncoder::emit(std::uint8_t byte) {
  if (!skipped_first_) {
    skipped_first_ = true;  // always the initial zero cache byte
    return;
  }
  out_.push_back(byte);
}

void RangeEncoder::shift_low() {
  if (static_cast<std::uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    const auto carry = static_cast<std::uint8_t>(low_ >> 32);
    std::uint8_t temp = cache_;
    do {
      emit(static_cast<std::uint8_t>(temp + carry));
      temp = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<std::uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00FFFFFFu) << 8;
}

void RangeEncoder::normalize() {
  while (range_ < kTop) {
    range_ <<= 8;
    shift_low();
  }
}

void RangeEncoder::encode(AdaptiveModel& model, std::size_t symbol) {
  if (model.alphabet_size() > 1) {
    std::uint32_t cum = 0;
    std::uint32_t freq = 0;
    model.interval(symbol, cum, freq);
    const std::uint32_t r = range_ >> AdaptiveModel::kPrecisionBits;
    low_ += static_cast<std::uint64_t>(r) * cum;
    range_ = symbol == 0 ? range_ - r * cum : r * freq;
    normalize();
  } else if (symbol != 0) {
    throw std::out_of_range("symbol outside the model alphabet");
  }
  model.update(symbol);
}

void RangeEncoder::encode_count(CountModel& model, std::uint64_t count) {
  const auto limit = model.limit();
  if (limit && count > *limit) {
    throw std::out_of_range("count exceeds its model limit");
  }
  std::uint64_t k = 0;
  for (;; ++k) {
    if (limit ? k == *limit : k == model.stages()) {
      break;
    }
    const bool more = count > k;
    encode(model.stage(k), more ? 1 : 0);
    if (!more) {
      return;
    }
  }
  if (!limit) {
    encode_uint(count - k);
  }
}

void RangeEncoder::encode_bit(bool bit) {
  range_ >>= 1;
  if (bit) {
    low_ += range_;
  }
  normalize();
}

void RangeEncoder::encode_bits(std::uint64_t value, unsigned nbits) {
  for (unsigned i = nbits; i-- > 0;) {
    encode_bit((value >> i) & 1u);
  }
}

void RangeEncoder::encode_uint(std::uint64_t n) {
  if (n >= (1ull << 63)) {
    throw std::out_of_range("gamma-coded values must be below 2^63");
  }
  const std::uint64_t v = n + 1;
  const auto width = static_cast<unsigned>(std::bit_width(v));
  encode_bits(0, width - 1);
  encode_bits(v, width);
}

CodedStream RangeEncoder::finish() {
  // Any value in [low, low + range) identifies the stream; pick the one
  // with the low 24 bits clear so the decoder's zero padding reproduces it.
  constexpr std::uint64_t mask = kTop - 1;
  low_ = (low_ + mask) & ~mask;
  shift_low();
  shift_low();
  CodedStream s{std::move(out_)};
  out_.clear();
  return s;
}

// ---------------------------------------------------------------------------
// Decoder

RangeDecoder::RangeDecoder(std::span<const std::uint8_t> data) : data_(data) {
  for (int i = 0; i < 4; ++i) {
    code_ = (code_ << 8) | next();
  }
  check();
}

std::uint8_t RangeDecoder::next() {
  if (pos_ < data_.size()) {
    return data_[pos_++];
  }
  if (++overrun_ > 3) {
    throw CorruptStream("coded stream ended early");
  }
  return 0;
}

void RangeDecoder::check() const {
  if (code_ >= range_) {
    throw CorruptStream("coded stream is inconsistent");
  }
}

void RangeDecoder::normalize() {
  while (range_ < kTop) {
    code_ = (code_ << 8) | next();
    range_ <<= 8;
  }
}

std::size_t RangeDecoder::decode(AdaptiveModel& model) {
  std::size_t symbol = 0;
  if (model.alphabet_size() > 1) {
    const std::uint32_t r = range_ >> AdaptiveModel::kPrecisionBits;
    const std::uint32_t target = code_ / r;
    std::uint32_t cum = 0;
    std::uint32_t freq = 0;
    symbol = model.find(target, cum, freq);
    code_ -= r * cum;
    range_ = symbol == 0 ? range_ - r * cum : r * freq;
    check();
    normalize();
  }
  model.update(symbol);
  return symbol;
}

std::uint64_t RangeDecoder::decode_count(CountModel& model) {
  const auto limit = model.limit();
  std::uint64_t k = 0;
  for (;; ++k) {
    if (limit ? k == *limit : k == model.stages()) {
      break;
    }
    if (decode(model.stage(k)) == 0) {
      return k;
    }
  }
  if (!limit) {
    const std::uint64_t rest = decode_uint();
    if (rest > ~0ull - k) {
      throw CorruptStream("count overflows");
    }
    return k + rest;
  }
  return k;
}

bool RangeDecoder::decode_bit() {
  range_ >>= 1;
  bool bit = false;
  if (code_ >= range_) {
    code_ -= range_;
    bit = true;
  }
  check();
  normalize();
  return bit;
}

std::uint64_t RangeDecoder::decode_bits(unsigned nbits) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < nbits; ++i) {
    v = (v << 1) | (decode_bit() ? 1u : 0u);
  }
  return v;
}

std::uint64_t RangeDecoder::decode_uint() {
  unsigned zeros = 0;
  while (!decode_bit()) {
    if (++zeros > kMaxGammaZeros) {
      throw CorruptStream("gamma code too long");
    }
  }
  const std::uint64_t v = (1ull << zeros) | decode_bits(zeros);
  return v - 1;
}

void RangeDecoder::finish() const {
  if (pos_ != data_.size() || overrun_ != 3) {
    throw CorruptStream("coded stream length does not match its content");
  }
}

CodedStream encode_symbols(std::span<const ContextSymbol> symbols, ModelBank& models) {
  RangeEncoder enc;
  for (const auto& [context, symbol] : symbols) {
    AdaptiveModel& m = models[context];
    if (symbol >= m.alphabet_size()) {
      throw std::out_of_range("symbol " + std::to_string(symbol) + " outside alphabet of context " +
                              std::to_string(context));
    }
    enc.encode(m, symbol);
  }
  return enc.finish();
}

std::vector<std::size_t> decode_symbols(const CodedStream& stream,
                                        std::span<const std::size_t> schedule,
                                        ModelBank& models) {
  RangeDecoder dec(stream.bytes);
  std::vector<std::size_t> out;
  out.reserve(schedule.size());
  for (std::size_t context : schedule) {
    out.push_back(dec.decode(models[context]));
  }
  dec.finish();
  return out;
}

// ---------------------------------------------------------------------------
// Plain bit strings

void BitWriter::put_bits(std::uint64_t value, unsigned nbits) {
  for (unsigned i = nbits; i-- > 0;) {
    bits_.push_back((value >> i) & 1u);
  }
}

bool BitReader::get() {
  if (pos_ >= bits_.size()) {
    throw CorruptStream("bit string ended early");
  }
  return bits_[pos_++];
}

std::uint64_t BitReader::get_bits(unsigned nbits) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < nbits; ++i) {
    v = (v << 1) | (get() ? 1u : 0u);
  }
  return v;
}

void write_uint(BitWriter& out, std::uint64_t n) {
  if (n >= (1ull << 63)) {
    throw std::out_of_range("gamma-coded values must be below 2^63");
  }
  const std::uint64_t v = n + 1;
  const auto width = static_cast<unsigned>(std::bit_width(v));
  out.put_bits(0, width - 1);
  out.put_bits(v, width);
}

std::uint64_t read_uint(BitReader& in) {
  unsigned zeros = 0;
  while (!in.get()) {
    if (++zeros > kMaxGammaZeros) {
      throw CorruptStream("gamma code too long");
    }
  }
  return ((1ull << zeros) | in.get_bits(zeros)) - 1;
}

BitSeq encode_uint(std::uint64_t n) {
  BitWriter w;
  write_uint(w, n);
  return w.take();
}

std::uint64_t decode_uint(const BitSeq& bits) {
  BitReader r(bits);
  return read_uint(r);
}

}  // namespace msac
