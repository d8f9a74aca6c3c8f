#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "gcdd/functionals.hpp"
#include "gcdd/huffman.hpp"
#include "gcdd/lzw.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gcdd;
using testing_support::random_bytes;
using testing_support::repeat;

namespace {

CodeStream stream_with(const std::vector<std::uint64_t> &freqs) {
  CodeStream s;
  Code c = 0;
  for (auto f : freqs) {
    for (std::uint64_t i = 0; i < f; ++i)
      s.codes.push_back(c);
    s.code_frequencies[c] = f;
    ++c;
  }
  return s;
}

} // namespace

TEST(LzwPass, RunOfFourBytes) {
  const auto pass = lzw_pass(ByteSequence("aaaa"));
  EXPECT_EQ(pass.dictionary.size(), 2u);
  EXPECT_TRUE(pass.dictionary.contains("aa"));
  EXPECT_TRUE(pass.dictionary.contains("aaa"));
  EXPECT_EQ(pass.stream.codes, (std::vector<Code>{'a', 256, 'a'}));
  EXPECT_EQ(pass.dictionary.frequency("aa"), 1u);
  EXPECT_EQ(pass.dictionary.frequency("aaa"), 0u);
}

TEST(LzwPass, DistinctBytes) {
  const auto pass = lzw_pass(ByteSequence("abcd"));
  EXPECT_EQ(pass.dictionary.sorted_patterns(), (std::vector<std::string>{"ab", "bc", "cd"}));
  ASSERT_EQ(pass.stream.codes.size(), 4u);
  for (Code c : pass.stream.codes)
    EXPECT_LT(c, kFirstLearnedCode);
}

TEST(LzwPass, SingleByte) {
  const auto pass = lzw_pass(ByteSequence("a"));
  EXPECT_EQ(pass.dictionary.size(), 0u);
  EXPECT_EQ(pass.stream.codes.size(), 1u);
  EXPECT_EQ(dict_size(pass.dictionary), 0u);
}

TEST(LzwPass, MatchesTextbookImplementation) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 600));
    const auto x = random_bytes(rng, n, trial % 2 ? 3 : 256);
    const auto pass = lzw_pass(x);
    const auto ref = oracle::lzw(x);
    ASSERT_EQ(pass.stream.codes, ref.codes);
    ASSERT_EQ(pass.dictionary.size(), ref.learned.size());
    for (const auto &[pattern, code] : ref.learned) {
      ASSERT_EQ(pass.dictionary.entries()[code - 256].pattern, pattern);
      const auto f = std::count(ref.codes.begin(), ref.codes.end(), code);
      ASSERT_EQ(pass.dictionary.frequency(pattern), static_cast<std::uint64_t>(f));
    }
  }
}

TEST(LzwPass, StructuralInvariants) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 2000));
    const auto x = random_bytes(rng, n, static_cast<unsigned>(rng.integer(1, 256)));
    const auto pass = lzw_pass(x);
    const auto &d = pass.dictionary;
    EXPECT_LE(d.size(), n - 1);
    EXPECT_LE(d.emitted_codes(), n);
    EXPECT_GE(d.emitted_codes(), 1u);
    EXPECT_EQ(d.source_length(), n);
    for (const auto &e : d.entries())
      EXPECT_GE(e.pattern.size(), 2u);
    std::uint64_t total = 0;
    for (const auto &[code, f] : pass.stream.code_frequencies)
      total += f;
    EXPECT_EQ(total, pass.stream.codes.size());
  }
}

TEST(LzwPass, Deterministic) {
  Rng rng(5);
  const auto x = random_bytes(rng, 777, 16);
  const auto a = lzw_pass(x);
  const auto b = lzw_pass(x);
  EXPECT_EQ(a.stream.codes, b.stream.codes);
  EXPECT_EQ(a.dictionary.sorted_patterns(), b.dictionary.sorted_patterns());
}

TEST(LzwRoundTrip, CodeNotYetInTable) {
  // "abababa": the code for "aba" is emitted in the same step it is defined.
  for (const char *s : {"abababa", "aaaaaaa", "aaa", "abcabcabcabcabc", "a"}) {
    const ByteSequence x(s);
    const auto codes = lzw_pass(x).stream.codes;
    EXPECT_EQ(ByteSequence(lzw_decode(codes)), x) << s;
    EXPECT_EQ(ByteSequence(lzw_decompress(lzw_compress(x))), x) << s;
  }
}

TEST(LzwRoundTrip, RandomAndStructured) {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 4096));
    const auto x = trial % 3 == 0 ? repeat("xyzxyq", n)
                                  : random_bytes(rng, n, trial % 3 == 1 ? 2 : 256);
    ASSERT_EQ(ByteSequence(lzw_decompress(lzw_compress(x))), x);
  }
}

TEST(LzwDecode, RejectsInvalidCodes) {
  EXPECT_TRUE(lzw_decode(std::vector<Code>{}).empty());
  EXPECT_THROW(lzw_decode(std::vector<Code>{300}), data_error);
  EXPECT_THROW(lzw_decode(std::vector<Code>{'a', 400}), data_error);
}

TEST(CompressedLength, SingleByteIsNineBits) {
  EXPECT_EQ(lzw_compressed_length(ByteSequence("a")), 9u);
  EXPECT_EQ(lzw_compress(ByteSequence("a")).bit_count, 9u);
}

TEST(CompressedLength, WidthGrowsWithTable) {
  // i-th code has width bit_width(256 + i): 255 codes of 9 bits, then 10.
  EXPECT_EQ(code_width(0), 9u);
  EXPECT_EQ(code_width(255), 9u);
  EXPECT_EQ(code_width(256), 10u);
  EXPECT_EQ(code_width(767), 10u);
  EXPECT_EQ(code_width(768), 11u);
  const auto x = ByteSequence("abcd");
  EXPECT_EQ(lzw_compressed_length(x), 36u);
}

TEST(CompressedLength, RepetitiveBeatsRandom) {
  Rng rng(23);
  for (std::size_t n : {64u, 100u, 256u, 1000u, 4096u}) {
    const auto rep = repeat("ab", n);
    const auto rnd = random_bytes(rng, n);
    EXPECT_LT(lzw_compressed_length(rep), lzw_compressed_length(rnd)) << n;
    EXPECT_EQ(lzw_compressed_length(rnd), lzw_compressed_length(rnd));
  }
}

TEST(LzwScanner, ContinuationMatchesFreshScan) {
  Rng rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_bytes(rng, static_cast<std::size_t>(rng.integer(1, 300)), 4);
    LzwScanner prefix(LzwScanner::kFrequencies | LzwScanner::kCodes, 700);
    prefix.feed(x.bytes());
    const auto mark = prefix.mark(400);
    for (int k = 0; k < 4; ++k) {
      const auto y = random_bytes(rng, static_cast<std::size_t>(rng.integer(1, 400)), 4);
      prefix.feed(y.bytes());
      prefix.finish();

      const auto xy = concat(x, y);
      LzwScanner fresh(LzwScanner::kFrequencies | LzwScanner::kCodes);
      fresh.feed(xy.bytes());
      fresh.finish();
      ASSERT_EQ(prefix.learned(), fresh.learned());
      ASSERT_EQ(prefix.emitted(), fresh.emitted());
      ASSERT_TRUE(std::equal(prefix.codes().begin(), prefix.codes().end(),
                             fresh.codes().begin(), fresh.codes().end()));
      for (auto f : kAllFunctionals)
        ASSERT_EQ(evaluate(f, prefix), evaluate(f, fresh));
      prefix.rollback(mark);
      prefix.mark(400);
    }
  }
}

TEST(LzwScanner, JournalOverflowThrows) {
  LzwScanner s;
  s.feed(ByteSequence("abc").bytes());
  s.mark(2);
  const auto y = repeat("qwertyuiop", 50);
  EXPECT_THROW(s.feed(y.bytes()), std::exception);
}

TEST(Huffman, ThreeSymbols) {
  const std::map<char, std::uint64_t> f{{'a', 1}, {'b', 1}, {'c', 2}};
  const auto lengths = huffman_code_lengths(f);
  EXPECT_EQ(lengths, (std::map<char, unsigned>{{'a', 2}, {'b', 2}, {'c', 1}}));
  const std::vector<std::uint64_t> w{1, 1, 2};
  EXPECT_EQ(huffman_weighted_bits(w), 6u);
}

TEST(Huffman, TwoSymbolsAndOne) {
  EXPECT_EQ(huffman_code_lengths(std::map<char, std::uint64_t>{{'a', 1}, {'b', 1}}),
            (std::map<char, unsigned>{{'a', 1}, {'b', 1}}));
  EXPECT_EQ(huffman_code_lengths(std::map<char, std::uint64_t>{{'z', 9}}),
            (std::map<char, unsigned>{{'z', 1}}));
}

TEST(Huffman, EmptyAlphabet) {
  try {
    huffman_lengths(std::vector<std::uint64_t>{});
    FAIL();
  } catch (const std::exception &e) {
    EXPECT_STREQ(e.what(), "empty alphabet");
  }
  EXPECT_THROW(huffman_code_lengths(std::map<int, std::uint64_t>{}), usage_error);
}

TEST(Huffman, KraftEqualityAndOptimality) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 6));
    std::vector<std::uint64_t> w(n);
    for (auto &v : w)
      v = static_cast<std::uint64_t>(rng.integer(1, 50));
    const auto lengths = huffman_lengths(w);
    double kraft = 0.0;
    for (unsigned l : lengths)
      kraft += std::ldexp(1.0, -static_cast<int>(l));
    EXPECT_DOUBLE_EQ(kraft, 1.0);
    EXPECT_EQ(huffman_weighted_bits(w), oracle::huffman_optimum(w));
  }
}

TEST(Huffman, EntropyBound) {
  Rng rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 256));
    std::vector<std::uint64_t> w(n);
    double total = 0;
    for (auto &v : w)
      total += static_cast<double>(v = static_cast<std::uint64_t>(rng.integer(1, 1000)));
    double h = 0.0;
    for (auto v : w)
      h += static_cast<double>(v) / total * std::log2(total / static_cast<double>(v));
    const double avg = static_cast<double>(huffman_weighted_bits(w)) / total;
    EXPECT_GE(avg, h - 1e-12);
    EXPECT_LT(avg, h + 1.0);
  }
}

TEST(Functionals, EntropyExamples) {
  EXPECT_DOUBLE_EQ(dict_entropy(stream_with({1, 1})), 2.0);
  EXPECT_DOUBLE_EQ(dict_entropy(stream_with({4})), 0.0);
  EXPECT_DOUBLE_EQ(dict_entropy(stream_with({1, 1, 2})), 6.0);
}

TEST(Functionals, HuffmanBitsExamples) {
  EXPECT_EQ(dict_huffman_bits(stream_with({1, 1, 2})), 6u);
  EXPECT_EQ(dict_huffman_bits(stream_with({7})), 7u);
}

TEST(Functionals, DictSizeExamples) {
  EXPECT_EQ(dict_size(lzw_pass(ByteSequence("aaaa")).dictionary), 2u);
  EXPECT_EQ(dict_size(lzw_pass(ByteSequence("a")).dictionary), 0u);
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_bytes(rng, static_cast<std::size_t>(rng.integer(1, 500)),
                                static_cast<unsigned>(rng.integer(1, 256)));
    EXPECT_GE(dict_size(lzw_pass(concat(x, x)).dictionary), dict_size(lzw_pass(x).dictionary));
  }
}

TEST(Functionals, Bounds) {
  Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_bytes(rng, static_cast<std::size_t>(rng.integer(1, 2000)),
                                static_cast<unsigned>(rng.integer(1, 20)));
    const auto pass = lzw_pass(x);
    const double h = dict_entropy(pass.dictionary, pass.stream);
    const auto n = static_cast<double>(pass.stream.codes.size());
    const auto distinct = static_cast<double>(pass.stream.code_frequencies.size());
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, n * std::log2(distinct) + 1e-9);
    const auto bits = static_cast<double>(dict_huffman_bits(pass.stream));
    EXPECT_GE(bits, h - 1e-9);
    EXPECT_LT(bits, h + n);
  }
}

TEST(Functionals, ScannerAgreesWithPass) {
  Rng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_bytes(rng, static_cast<std::size_t>(rng.integer(2, 1000)), 8);
    const auto pass = lzw_pass(x);
    EXPECT_EQ(PhiFunctional(Functional::kDictSize)(x), static_cast<double>(pass.dictionary.size()));
    EXPECT_NEAR(PhiFunctional(Functional::kDictEntropy)(x), dict_entropy(pass.stream), 1e-9);
    EXPECT_EQ(PhiFunctional(Functional::kDictHuffman)(x),
              static_cast<double>(dict_huffman_bits(pass.stream)));
  }
}

TEST(Functionals, Names) {
  for (auto f : kAllFunctionals) {
    EXPECT_EQ(parse_functional(functional_name(f)), f);
    EXPECT_EQ(PhiFunctional(f).name(), functional_name(f));
  }
  EXPECT_EQ(parse_functional("entropy"), Functional::kDictEntropy);
  EXPECT_THROW(parse_functional("dict-length"), usage_error);
}
