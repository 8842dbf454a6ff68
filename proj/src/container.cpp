#include "msac/container.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "msac/align.hpp"
#include "msac/error.hpp"
#include "msac/runs.hpp"

namespace msac {

namespace {

constexpr std::uint8_t kMagic[4] = {'M', 'S', 'A', 'C'};
constexpr std::size_t kDeletionStages = 3;
constexpr std::size_t kExtensionStages = 5;

// Deletion counts of extent-l runs lie in [0, l].
class DeletionCoder {
 public:
  CountModel& operator[](std::size_t extent) {
    if (extent >= models_.size()) {
      models_.resize(extent + 1);
    }
    if (!models_[extent]) {
      models_[extent] = CountModel::bounded(extent, kDeletionStages);
    }
    return *models_[extent];
  }

 private:
  std::vector<std::optional<CountModel>> models_;
};

class ExtensionCoder {
 public:
  CountModel& operator[](std::size_t extent) {
    if (extent >= models_.size()) {
      models_.resize(extent + 1);
    }
    if (!models_[extent]) {
      models_[extent] = CountModel::escaped(kExtensionStages);
    }
    return *models_[extent];
  }

 private:
  std::vector<std::optional<CountModel>> models_;
};

void encode_table(RangeEncoder& enc, const ExtentTable& table, DeletionCoder& coder) {
  for (std::size_t l = 1; l < table.size(); ++l) {
    for (std::uint64_t v : table[l]) {
      enc.encode_count(coder[l], v);
    }
  }
}

ExtentTable decode_table(RangeDecoder& dec, const RunDecomposition& rd, DeletionCoder& coder) {
  ExtentTable table = zero_extent_table(rd);
  for (std::size_t l = 1; l < table.size(); ++l) {
    for (auto& v : table[l]) {
      v = dec.decode_count(coder[l]);
    }
  }
  return table;
}

// Runs `fn`, turning stream and description failures into a CorruptMessage
// that names the section.
template <typename Fn>
auto in_section(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const CorruptMessage&) {
    throw;
  } catch (const CorruptStream& e) {
    throw CorruptMessage(name, e.what());
  } catch (const InvalidDescription& e) {
    throw CorruptMessage(name, e.what());
  }
}

void expect_mode(const Message& m, Mode mode) {
  if (m.mode != mode) {
    throw CorruptMessage("header", "message is not in the expected mode");
  }
}

}  // namespace

std::vector<std::uint8_t> Message::serialize() const {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(mode));
  const BitSeq len = encode_uint(x_length);
  out.insert(out.end(), len.bytes().begin(), len.bytes().end());
  out.insert(out.end(), payload.bytes.begin(), payload.bytes.end());
  return out;
}

std::size_t Message::header_bits() const {
  return 8 * (6 + (encode_uint(x_length).size() + 7) / 8);
}

Message Message::parse(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 7 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw CorruptMessage("header", "missing MSAC magic");
  }
  if (bytes[4] != kVersion) {
    throw CorruptMessage("header", "unsupported version " + std::to_string(bytes[4]));
  }
  if (bytes[5] > 1) {
    throw CorruptMessage("header", "unknown mode " + std::to_string(bytes[5]));
  }
  Message m;
  m.mode = static_cast<Mode>(bytes[5]);
  const std::size_t avail = std::min<std::size_t>(bytes.size() - 6, 17);
  const BitSeq head = BitSeq::from_bytes({bytes.begin() + 6, bytes.begin() + 6 + static_cast<std::ptrdiff_t>(avail)},
                                         avail * 8);
  BitReader reader(head);
  m.x_length = in_section("header", [&] { return read_uint(reader); });
  if (m.x_length > kMaxLength) {
    throw CorruptMessage("header", "source length out of range");
  }
  const std::size_t header_bytes = 6 + (reader.position() + 7) / 8;
  m.payload.bytes.assign(bytes.begin() + static_cast<std::ptrdiff_t>(header_bytes), bytes.end());
  return m;
}

Message encode_pure(const BitSeq& x, const BitSeq& y) {
  const DeletionPattern pattern = greedy_align(x, y);
  const DeletionDescription desc = describe_deletions(pattern, y);
  RangeEncoder enc;
  DeletionCoder coder;
  encode_table(enc, desc.counts, coder);
  return {Mode::PureDeletion, x.size(), enc.finish()};
}

DeletionDescription read_pure_description(const Message& m, const BitSeq& y) {
  expect_mode(m, Mode::PureDeletion);
  if (m.x_length > y.size()) {
    throw CorruptMessage("header", "source longer than the side-information in pure mode");
  }
  const RunDecomposition rd = decompose_runs(y);
  RangeDecoder dec = in_section("deletions", [&] { return RangeDecoder(m.payload.bytes); });
  DeletionCoder coder;
  DeletionDescription desc;
  desc.counts = in_section("deletions", [&] { return decode_table(dec, rd, coder); });
  in_section("trailer", [&] { dec.finish(); });
  if (desc.total() != y.size() - m.x_length) {
    throw CorruptMessage("length", "deletion counts do not match the recorded source length");
  }
  return desc;
}

BitSeq decode_pure(const Message& m, const BitSeq& y) {
  const DeletionDescription desc = read_pure_description(m, y);
  return in_section("deletions", [&] { return apply_deletion_description(y, desc); });
}

Message encode_general(const BitSeq& x, const BitSeq& y) {
  const Alignment a = nw_align(x, y);
  const GeneralDescription g = describe_general(a, y);

  RangeEncoder enc;
  ExtensionCoder ext;
  for (std::size_t l = 1; l < g.ins.extend_counts.size(); ++l) {
    for (std::uint64_t v : g.ins.extend_counts[l]) {
      enc.encode_count(ext[l], v);
    }
  }

  AdaptiveModel breaks(2);
  for (std::size_t i = 0; i < g.ins.break_flags.size(); ++i) {
    enc.encode(breaks, g.ins.break_flags[i] ? 1 : 0);
  }

  // Y'' is Y' plus one bit per break.
  const std::size_t y2_size = y.size() + table_sum(g.ins.extend_counts) + g.ins.break_flags.popcount();
  const std::size_t min_len = y2_size == 0 ? 1 : 2;
  enc.encode_uint(g.ins.bursts.size());
  std::size_t next_slot = 0;
  for (const Burst& b : g.ins.bursts) {
    enc.encode_uint(b.slot - next_slot);
    enc.encode_uint(b.content.size() - min_len);
    for (std::size_t i = 0; i < b.content.size(); ++i) {
      enc.encode_bit(b.content[i]);
    }
    next_slot = b.slot + 1;
  }

  AdaptiveModel subs(2);
  for (std::size_t i = 0; i < g.sub.mask.size(); ++i) {
    enc.encode(subs, g.sub.mask[i] ? 1 : 0);
  }

  DeletionCoder del;
  encode_table(enc, g.del.counts, del);
  return {Mode::General, x.size(), enc.finish()};
}

GeneralDescription read_general_description(const Message& m, const BitSeq& y) {
  expect_mode(m, Mode::General);
  // |Z_Y| = |X| + #deletions <= |X| + |Y|, which bounds every stage below.
  const std::uint64_t budget = m.x_length + y.size();
  GeneralDescription g;
  RangeDecoder dec = in_section("extensions", [&] { return RangeDecoder(m.payload.bytes); });

  const RunDecomposition y_runs = decompose_runs(y);
  const BitSeq y1 = in_section("extensions", [&] {
    ExtensionCoder ext;
    g.ins.extend_counts = zero_extent_table(y_runs);
    std::uint64_t grown = y.size();
    for (std::size_t l = 1; l < g.ins.extend_counts.size(); ++l) {
      for (auto& v : g.ins.extend_counts[l]) {
        v = dec.decode_count(ext[l]);
        if (v > l + 1 || (grown += v) > budget) {
          throw CorruptStream("extensions exceed the length budget");
        }
      }
    }
    return extend_runs(y, g.ins.extend_counts);
  });

  const BitSeq y2 = in_section("breaks", [&] {
    AdaptiveModel breaks(2);
    g.ins.break_flags = BitSeq(count_break_slots(y1));
    for (std::size_t i = 0; i < g.ins.break_flags.size(); ++i) {
      g.ins.break_flags.set(i, dec.decode(breaks) == 1);
    }
    BitSeq out = apply_breaks(y1, g.ins.break_flags);
    if (out.size() > budget) {
      throw CorruptStream("breaks exceed the length budget");
    }
    return out;
  });

  const BitSeq z_y = in_section("bursts", [&] {
    const std::uint64_t count = dec.decode_uint();
    std::uint64_t total = y2.size();
    if (count > budget) {
      throw CorruptStream("burst count exceeds the length budget");
    }
    const std::size_t min_len = min_burst_length(y2);
    std::uint64_t next_slot = 0;
    for (std::uint64_t b = 0; b < count; ++b) {
      const std::uint64_t gap = dec.decode_uint();
      const std::uint64_t extra = dec.decode_uint();
      if (gap > y2.size() || next_slot + gap > y2.size() || extra > budget ||
          (total += extra + min_len) > budget) {
        throw CorruptStream("burst exceeds the length budget");
      }
      Burst burst{static_cast<std::size_t>(next_slot + gap), {}};
      const std::uint64_t len = extra + min_len;
      burst.content.reserve(static_cast<std::size_t>(len));
      for (std::uint64_t i = 0; i < len; ++i) {
        burst.content.push_back(dec.decode_bit());
      }
      next_slot = burst.slot + 1;
      g.ins.bursts.push_back(std::move(burst));
    }
    return apply_bursts(y2, g.ins.bursts);
  });

  const BitSeq z_x = in_section("substitutions", [&] {
    AdaptiveModel subs(2);
    g.sub.mask = BitSeq(z_y.size());
    for (std::size_t i = 0; i < z_y.size(); ++i) {
      g.sub.mask.set(i, dec.decode(subs) == 1);
    }
    return z_y ^ g.sub.mask;
  });

  in_section("deletions", [&] {
    DeletionCoder del;
    g.del.counts = decode_table(dec, decompose_runs(z_x), del);
  });
  in_section("trailer", [&] { dec.finish(); });
  if (z_x.size() < g.del.total() || z_x.size() - g.del.total() != m.x_length) {
    throw CorruptMessage("length", "decoded description does not match the recorded source length");
  }
  return g;
}

BitSeq decode_general(const Message& m, const BitSeq& y) {
  const GeneralDescription g = read_general_description(m, y);
  return in_section("deletions", [&] { return decode_general_description(y, g); });
}

Mode select_mode(std::size_t pure_bytes, std::size_t general_bytes) {
  return general_bytes < pure_bytes ? Mode::General : Mode::PureDeletion;
}

Message encode_auto(const BitSeq& x, const BitSeq& y, AutoSelect select) {
  std::optional<Message> pure;
  try {
    pure = encode_pure(x, y);
  } catch (const NotSubsequence&) {
    return encode_general(x, y);
  }
  if (select == AutoSelect::kPreferPure) {
    return *pure;
  }
  Message general = encode_general(x, y);
  return select_mode(pure->serialize().size(), general.serialize().size()) == Mode::General
             ? std::move(general)
             : std::move(*pure);
}

BitSeq decode(const Message& m, const BitSeq& y) {
  BitSeq x = m.mode == Mode::PureDeletion ? decode_pure(m, y) : decode_general(m, y);
  if (x.size() != m.x_length) {
    throw CorruptMessage("length", "decoded length differs from the recorded source length");
  }
  return x;
}

}  // namespace msac
