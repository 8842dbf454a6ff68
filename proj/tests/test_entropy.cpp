#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "msac/entropy.hpp"
#include "msac/error.hpp"
#include "test_util.hpp"

using msac::AdaptiveModel;
using msac::BitSeq;
using msac::ContextSymbol;

namespace {

double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

msac::ModelBank bank_of(std::size_t alphabet) {
  return msac::ModelBank([alphabet](std::size_t) { return alphabet; });
}

std::vector<std::size_t> schedule_of(const std::vector<ContextSymbol>& symbols) {
  std::vector<std::size_t> out;
  for (const auto& cs : symbols) out.push_back(cs.first);
  return out;
}

std::vector<std::size_t> values_of(const std::vector<ContextSymbol>& symbols) {
  std::vector<std::size_t> out;
  for (const auto& cs : symbols) out.push_back(cs.second);
  return out;
}

}  // namespace

TEST(Gamma, KnownCodes) {
  EXPECT_EQ(msac::encode_uint(0).to_string(), "1");
  EXPECT_EQ(msac::encode_uint(1).to_string(), "010");
  EXPECT_EQ(msac::encode_uint(2).to_string(), "011");
  EXPECT_EQ(msac::encode_uint(6).to_string(), "00111");
}

TEST(Gamma, RoundTripRange) {
  msac::BitWriter w;
  for (std::uint64_t n = 0; n <= 10000; ++n) {
    ASSERT_EQ(msac::decode_uint(msac::encode_uint(n)), n);
    msac::write_uint(w, n);
  }
  const BitSeq all = w.take();
  msac::BitReader r(all);
  for (std::uint64_t n = 0; n <= 10000; ++n) ASSERT_EQ(msac::read_uint(r), n);
  EXPECT_EQ(r.position(), all.size());
  const std::uint64_t big = (1ull << 63) - 1;
  EXPECT_EQ(msac::decode_uint(msac::encode_uint(big)), big);
  EXPECT_THROW(msac::encode_uint(1ull << 63), std::out_of_range);
}

TEST(Gamma, MalformedInput) {
  EXPECT_THROW(msac::decode_uint(BitSeq::from_string("0001")), msac::CorruptStream);
  EXPECT_THROW(msac::decode_uint(BitSeq(70)), msac::CorruptStream);
}

TEST(AdaptiveModel, KrichevskyTrofimov) {
  AdaptiveModel m(3);
  EXPECT_DOUBLE_EQ(m.probability(0), 1.0 / 3);
  m.update(2);
  // (1 + 1/2) / (1 + 3/2)
  EXPECT_DOUBLE_EQ(m.probability(2), 0.6);
  EXPECT_DOUBLE_EQ(m.probability(0), 0.2);
  EXPECT_EQ(m.observations(), 1u);
  EXPECT_EQ(m.count(2), 1u);
  EXPECT_THROW(AdaptiveModel(0), std::invalid_argument);
  EXPECT_THROW(AdaptiveModel(AdaptiveModel::kMaxAlphabet + 1), std::invalid_argument);
}

TEST(AdaptiveModel, ProbabilitiesStayNormalisedAndMonotone) {
  std::mt19937_64 rng(59);
  AdaptiveModel m(7);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t s = rng() % 7;
    const double before = m.probability(s);
    const double coded_before = m.coding_probability(s);
    m.update(s);
    ASSERT_GT(m.probability(s), before);
    ASSERT_GE(m.coding_probability(s), coded_before - 1.0 / AdaptiveModel::kTotal);
    double sum = 0;
    double coded = 0;
    for (std::size_t k = 0; k < 7; ++k) {
      ASSERT_GT(m.coding_probability(k), 0.0);
      sum += m.probability(k);
      coded += m.coding_probability(k);
    }
    ASSERT_NEAR(sum, 1.0, 1e-12);
    ASSERT_NEAR(coded, 1.0, 1e-12);
  }
}

TEST(RangeCoder, EmptyStream) {
  auto bank = bank_of(2);
  const auto stream = msac::encode_symbols({}, bank);
  EXPECT_LE(stream.bytes.size(), 2u);
  auto dec_bank = bank_of(2);
  EXPECT_TRUE(msac::decode_symbols(stream, {}, dec_bank).empty());
}

TEST(RangeCoder, SkewedBinaryEfficiency) {
  std::mt19937_64 rng(61);
  std::bernoulli_distribution bit(0.01);
  std::vector<ContextSymbol> symbols;
  for (int i = 0; i < 100000; ++i) symbols.emplace_back(0, bit(rng) ? 1 : 0);
  auto bank = bank_of(2);
  const auto stream = msac::encode_symbols(symbols, bank);
  EXPECT_LE(stream.bit_length(), 1.02 * 100000 * h2(0.01));
  auto dec_bank = bank_of(2);
  EXPECT_EQ(msac::decode_symbols(stream, schedule_of(symbols), dec_bank), values_of(symbols));
}

// Coded length against the ideal adaptive code length of the model the coder
// actually uses.
TEST(RangeCoder, WithinSixteenBitsOfModelCost) {
  for (double p : {0.01, 0.2, 0.5}) {
    std::mt19937_64 rng(67);
    std::bernoulli_distribution bit(p);
    AdaptiveModel shadow(2);
    msac::RangeEncoder enc;
    AdaptiveModel model(2);
    double ideal = 0;
    for (int i = 0; i < 100000; ++i) {
      const std::size_t s = bit(rng) ? 1 : 0;
      ideal -= std::log2(shadow.coding_probability(s));
      shadow.update(s);
      enc.encode(model, s);
    }
    EXPECT_LE(static_cast<double>(enc.finish().bit_length()), ideal + 16) << "p=" << p;
  }
}

TEST(RangeCoder, FixedDistributionEfficiency) {
  const std::vector<double> weights = {8, 4, 2, 1, 1, 0.5, 0.5, 0.25, 0.25, 0.25, 0.25, 0.1, 0.1, 0.1, 0.1, 0.05};
  double total = 0;
  for (double w : weights) total += w;
  double entropy = 0;
  for (double w : weights) entropy -= (w / total) * std::log2(w / total);
  std::mt19937_64 rng(71);
  std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
  std::vector<ContextSymbol> symbols;
  for (int i = 0; i < 100000; ++i) symbols.emplace_back(0, dist(rng));
  auto bank = bank_of(weights.size());
  const auto stream = msac::encode_symbols(symbols, bank);
  EXPECT_LE(stream.bit_length(), 1.03 * 100000 * entropy);
  auto dec_bank = bank_of(weights.size());
  EXPECT_EQ(msac::decode_symbols(stream, schedule_of(symbols), dec_bank), values_of(symbols));
}

TEST(RangeCoder, RandomSchedulesRoundTrip) {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 300; ++t) {
    const std::size_t contexts = 1 + rng() % 6;
    std::vector<std::size_t> alphabet(contexts);
    for (auto& a : alphabet) a = 1 + rng() % (t % 10 == 0 ? 4096 : 20);
    std::vector<ContextSymbol> symbols;
    const std::size_t n = rng() % 3000;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = rng() % contexts;
      // Skewed draws reach the quantisation floor of large alphabets.
      const std::size_t s = rng() % 4 == 0 ? rng() % alphabet[c] : 0;
      symbols.emplace_back(c, s);
    }
    msac::ModelBank bank([&](std::size_t c) { return alphabet[c]; });
    const auto stream = msac::encode_symbols(symbols, bank);
    msac::ModelBank dec_bank([&](std::size_t c) { return alphabet[c]; });
    ASSERT_EQ(msac::decode_symbols(stream, schedule_of(symbols), dec_bank), values_of(symbols));
  }
}

TEST(RangeCoder, WorkedDescriptionUnderThreeContexts) {
  // Context l carries the extent-l counts, alphabet {0..l}.
  const std::vector<ContextSymbol> symbols = {{1, 1}, {1, 0}, {1, 0}, {1, 0}, {2, 1}, {2, 1}, {3, 1}};
  msac::ModelBank bank([](std::size_t l) { return l + 1; });
  const auto stream = msac::encode_symbols(symbols, bank);
  msac::ModelBank dec_bank([](std::size_t l) { return l + 1; });
  EXPECT_EQ(msac::decode_symbols(stream, schedule_of(symbols), dec_bank), values_of(symbols));
}

TEST(RangeCoder, ContextsAreIndependent) {
  msac::ModelBank bank([](std::size_t) { return 4; });
  const std::vector<ContextSymbol> symbols = {{0, 3}, {0, 3}, {2, 1}};
  msac::encode_symbols(symbols, bank);
  ASSERT_NE(bank.find(0), nullptr);
  EXPECT_EQ(bank.find(0)->count(3), 2u);
  EXPECT_EQ(bank.find(0)->count(1), 0u);
  EXPECT_EQ(bank.find(2)->observations(), 1u);
  EXPECT_EQ(bank.find(1), nullptr);
}

TEST(RangeCoder, RejectsBadInput) {
  auto bank = bank_of(2);
  const std::vector<ContextSymbol> bad = {{0, 2}};
  EXPECT_THROW(msac::encode_symbols(bad, bank), std::out_of_range);

  std::mt19937_64 rng(79);
  std::vector<ContextSymbol> symbols;
  for (int i = 0; i < 5000; ++i) symbols.emplace_back(0, rng() % 2);
  auto enc_bank = bank_of(2);
  auto stream = msac::encode_symbols(symbols, enc_bank);
  stream.bytes.resize(stream.bytes.size() / 2);
  auto dec_bank = bank_of(2);
  EXPECT_THROW(msac::decode_symbols(stream, schedule_of(symbols), dec_bank), msac::CorruptStream);

  auto extra_bank = bank_of(2);
  auto padded = msac::encode_symbols(symbols, extra_bank);
  padded.bytes.push_back(0x5A);
  auto dec2 = bank_of(2);
  EXPECT_THROW(msac::decode_symbols(padded, schedule_of(symbols), dec2), msac::CorruptStream);
}

TEST(RangeCoder, CountsRawBitsAndGamma) {
  std::mt19937_64 rng(83);
  std::vector<std::uint64_t> bounded_values;
  std::vector<std::uint64_t> escaped_values;
  std::vector<std::uint64_t> raw;
  msac::RangeEncoder enc;
  auto bounded = msac::CountModel::bounded(7, 3);
  auto escaped = msac::CountModel::escaped(5);
  for (int i = 0; i < 3000; ++i) {
    bounded_values.push_back(rng() % 8);
    escaped_values.push_back(i % 50 == 0 ? rng() % 100000 : rng() % 4);
    raw.push_back(rng() & 0xFFFFF);
    enc.encode_count(bounded, bounded_values.back());
    enc.encode_count(escaped, escaped_values.back());
    enc.encode_bits(raw.back(), 20);
    enc.encode_uint(escaped_values.back());
  }
  EXPECT_THROW(enc.encode_count(bounded, 8), std::out_of_range);
  const auto stream = enc.finish();
  msac::RangeDecoder dec(stream.bytes);
  auto bounded_d = msac::CountModel::bounded(7, 3);
  auto escaped_d = msac::CountModel::escaped(5);
  for (int i = 0; i < 3000; ++i) {
    ASSERT_EQ(dec.decode_count(bounded_d), bounded_values[static_cast<std::size_t>(i)]);
    ASSERT_EQ(dec.decode_count(escaped_d), escaped_values[static_cast<std::size_t>(i)]);
    ASSERT_EQ(dec.decode_bits(20), raw[static_cast<std::size_t>(i)]);
    ASSERT_EQ(dec.decode_uint(), escaped_values[static_cast<std::size_t>(i)]);
  }
  EXPECT_NO_THROW(dec.finish());
}

TEST(RangeCoder, BoundedCountsAtTheLimitCostNothingExtra) {
  // With limit 1 the decision "count > 1" is never coded.
  msac::RangeEncoder enc;
  auto m = msac::CountModel::bounded(1, 3);
  for (int i = 0; i < 1000; ++i) enc.encode_count(m, 1);
  EXPECT_LE(enc.finish().bit_length(), 32u);
}
