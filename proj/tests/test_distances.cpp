#include <gtest/gtest.h>

#include <cmath>

#include "gcdd/dataset.hpp"
#include "gcdd/distances.hpp"
#include "gcdd/measures.hpp"
#include "support.hpp"

using namespace gcdd;
using testing_support::random_bytes;
using testing_support::repeat;

namespace {

std::vector<double> random_series(Rng &rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto &x : v)
    x = rng.uniform(-5.0, 5.0);
  return v;
}

double naive_euclidean(const std::vector<double> &a, const std::vector<double> &b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (static_cast<long double>(a[i]) - b[i]) * (static_cast<long double>(a[i]) - b[i]);
  return static_cast<double>(std::sqrt(s));
}

// Pearson via the raw-moment formula in long double.
double naive_pearson(const std::vector<double> &a, const std::vector<double> &b) {
  long double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
  const auto n = static_cast<long double>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    saa += static_cast<long double>(a[i]) * a[i];
    sbb += static_cast<long double>(b[i]) * b[i];
    sab += static_cast<long double>(a[i]) * b[i];
  }
  const long double cov = sab - sa * sb / n;
  const long double r = cov / std::sqrt((saa - sa * sa / n) * (sbb - sb * sb / n));
  return static_cast<double>(1.0L - r);
}

ByteSequence corrupt(const ByteSequence &x, double fraction, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> b(x.bytes().begin(), x.bytes().end());
  std::vector<std::size_t> idx(b.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    idx[i] = i;
  // Partial Fisher-Yates: the first m positions are a uniform sample.
  const auto m = static_cast<std::size_t>(fraction * static_cast<double>(b.size()));
  for (std::size_t i = 0; i < m; ++i) {
    const auto j = static_cast<std::size_t>(rng.integer(static_cast<std::int64_t>(i),
                                                        static_cast<std::int64_t>(b.size() - 1)));
    std::swap(idx[i], idx[j]);
    b[idx[i]] = static_cast<std::uint8_t>(b[idx[i]] ^ (1 + rng.integer(0, 254)));
  }
  return ByteSequence(std::move(b));
}

} // namespace

TEST(Ncd, RandomKilobytesAreFar) {
  Rng rng(101);
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = random_bytes(rng, 1024);
    const auto y = random_bytes(rng, 1024);
    EXPECT_GE(ncd(x, y), 0.8);
    EXPECT_EQ(ncd(x, y), ncd(y, x));
  }
}

TEST(Ncd, SelfIsCloserThanOther) {
  Rng rng(103);
  const auto x = random_bytes(rng, 512);
  const auto y = random_bytes(rng, 512);
  EXPECT_LT(ncd_raw(x, x), ncd_raw(x, y));
  EXPECT_GE(ncd_raw(x, x), 0.0);
}

TEST(Ncd, MatchesDefinition) {
  const ByteSequence x("abracadabra abracadabra");
  const ByteSequence y("cadabra alakazam");
  const auto cx = static_cast<double>(lzw_compressed_length(x));
  const auto cy = static_cast<double>(lzw_compressed_length(y));
  const auto cxy = static_cast<double>(lzw_compressed_length(concat(x, y)));
  EXPECT_DOUBLE_EQ(ncd_raw(x, y), (cxy - std::min(cx, cy)) / std::max(cx, cy));
  EXPECT_DOUBLE_EQ(ncd(x, y), (ncd_raw(x, y) + ncd_raw(y, x)) / 2);
}

TEST(Fcd, SelfIsZero) {
  Rng rng(107);
  const auto x = random_bytes(rng, 300, 5);
  EXPECT_EQ(fcd(x, x), 0.0);
  EXPECT_EQ(fcd_raw(x, x), 0.0);
}

TEST(Fcd, DisjointAlphabets) {
  EXPECT_EQ(fcd(ByteSequence("abbaabab"), ByteSequence("cdcdccdd")), 1.0);
}

TEST(Fcd, RawIsAsymmetricForPrefix) {
  const ByteSequence y("abcabcabcxyzxyzxyz");
  const ByteSequence x("abcabcabc");
  const auto dx = lzw_pass(x).dictionary;
  const auto dy = lzw_pass(y).dictionary;
  ASSERT_NE(dx.size(), dy.size());
  std::size_t shared = 0;
  for (const auto &e : dx.entries())
    shared += dy.contains(e.pattern);
  ASSERT_GT(shared, 0u);
  const double nx = static_cast<double>(dx.size()), ny = static_cast<double>(dy.size());
  EXPECT_DOUBLE_EQ(fcd_raw(x, y), (nx - static_cast<double>(shared)) / nx);
  EXPECT_DOUBLE_EQ(fcd_raw(y, x), (ny - static_cast<double>(shared)) / ny);
  EXPECT_NE(fcd_raw(x, y), fcd_raw(y, x));
  EXPECT_EQ(fcd(x, y), std::max(fcd_raw(x, y), fcd_raw(y, x)));
}

TEST(Fcd, TooShort) {
  try {
    fcd_raw(ByteSequence("a"), ByteSequence("abab"));
    FAIL();
  } catch (const data_error &e) {
    EXPECT_STREQ(e.what(), "input too short for FCD");
  }
}

TEST(Gcdd, ComponentOrderFollowsRequest) {
  const ByteSequence x("the quick brown fox jumps over the lazy dog");
  const ByteSequence y("pack my box with five dozen liquor jugs");
  const std::vector<Functional> order{Functional::kDictHuffman, Functional::kDictSize,
                                      Functional::kDictEntropy};
  const auto v = gcdd::gcdd(x, y, order);
  ASSERT_EQ(v.size(), 3u);
  for (std::size_t i = 0; i < order.size(); ++i) {
    EXPECT_EQ(v.components[i].first, order[i]);
    EXPECT_DOUBLE_EQ(v[i], (gcdd_raw(x, y, order[i]) + gcdd_raw(y, x, order[i])) / 2);
  }
  EXPECT_THROW(gcdd::gcdd(x, y, {}), usage_error);
}

TEST(Gcdd, DegenerateFunctional) {
  const std::vector<Functional> size{Functional::kDictSize};
  try {
    gcdd::gcdd(ByteSequence("a"), ByteSequence("b"), size);
    FAIL();
  } catch (const data_error &e) {
    EXPECT_STREQ(e.what(), "degenerate functional value");
  }
}

TEST(Gcdd, PeriodicVersusRandom) {
  Rng rng(109);
  const auto x = repeat("ab", 1024);
  const auto x2 = repeat("ba", 1024);
  const auto y = random_bytes(rng, 1024);
  const std::vector<Functional> ent{Functional::kDictEntropy};
  EXPECT_GT(gcdd::gcdd(x, y, ent)[0], gcdd::gcdd(x, x2, ent)[0]);
}

TEST(Gcdd, CorruptionIsMonotone) {
  const auto data = generate(5, 2, 240);
  const auto scheme = pipeline_encoding(data);
  const std::vector<Functional> size{Functional::kDictSize};
  for (const auto &s : data) {
    const auto x = encode(s, scheme);
    double previous = -1.0;
    for (double level : {0.01, 0.10, 0.50}) {
      const double d = gcdd::gcdd(x, corrupt(x, level, 99), size)[0];
      EXPECT_GE(d, previous) << "level " << level;
      previous = d;
    }
  }
}

TEST(Gcdd, SelfDistanceIsBelowCrossDistance) {
  const auto data = generate(13, 3, 240);
  const auto bytes = encode_all(data, pipeline_encoding(data));
  for (auto f : kAllFunctionals) {
    for (std::size_t i = 0; i < bytes.size(); ++i) {
      const double self = gcdd_raw(bytes[i], bytes[i], f);
      EXPECT_GE(self, 0.0);
      Rng rng(i);
      EXPECT_LT(self, gcdd_raw(bytes[i], random_bytes(rng, 240), f));
    }
  }
}

TEST(Euclidean, Examples) {
  EXPECT_EQ(euclidean(std::vector<double>{0, 0}, std::vector<double>{3, 4}), 5.0);
  const std::vector<double> a{1, 2, 3};
  EXPECT_EQ(euclidean(a, a), 0.0);
  EXPECT_EQ(euclidean(a, std::vector<double>{1, 2, 4}), 1.0);
  EXPECT_THROW(euclidean(a, std::vector<double>{1, 2}), usage_error);
}

TEST(Pearson, Examples) {
  const std::vector<double> a{1, 5, 2, 8, 3};
  EXPECT_NEAR(pearson_distance(a, a), 0.0, 1e-15);
  std::vector<double> flipped;
  for (double v : a)
    flipped.push_back(-v + 7.0);
  EXPECT_NEAR(pearson_distance(a, flipped), 2.0, 1e-15);
  EXPECT_NEAR(pearson_distance(std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 6}), 0.0,
              1e-15);
  try {
    pearson_distance(a, std::vector<double>{4, 4, 4, 4, 4});
    FAIL();
  } catch (const data_error &e) {
    EXPECT_STREQ(e.what(), "zero variance");
  }
}

TEST(Baselines, MatchNaiveReferences) {
  Rng rng(113);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 80));
    const auto a = random_series(rng, n);
    const auto b = random_series(rng, n);
    const double e = euclidean(a, b), en = naive_euclidean(a, b);
    ASSERT_LE(std::abs(e - en), 1e-12 * std::max(1.0, std::abs(en)));
    const double p = pearson_distance(a, b), pn = naive_pearson(a, b);
    ASSERT_LE(std::abs(p - pn), 1e-12 * std::max(1.0, std::abs(pn)));
  }
}

TEST(Acf, Examples) {
  Rng rng(127);
  const auto noise = random_series(rng, 60);
  std::vector<double> periodic(60);
  for (std::size_t t = 0; t < 60; ++t)
    periodic[t] = std::sin(2 * M_PI * static_cast<double>(t) / 12.0);
  EXPECT_EQ(acf_distance(noise, noise, 10), 0.0);
  EXPECT_GT(acf_distance(noise, periodic, 10), 0.0);
  EXPECT_EQ(acf_distance(noise, periodic), acf_distance(periodic, noise));
  EXPECT_THROW(acf_distance(noise, std::vector<double>(60, 1.0)), data_error);
  EXPECT_THROW(acf_distance(noise, periodic, 60), usage_error);
}

TEST(Acf, LagOneOfALine) {
  // For 0..n-1 the lag-1 autocorrelation is a closed form; n = 5 gives 0.4.
  const auto r = autocorrelation(std::vector<double>{0, 1, 2, 3, 4}, 1);
  EXPECT_NEAR(r[0], 0.4, 1e-15);
}

TEST(Cort, Examples) {
  Rng rng(131);
  const auto a = random_series(rng, 40);
  const auto b = random_series(rng, 40);
  EXPECT_EQ(cort_distance(a, a, 2.0), 0.0);
  EXPECT_EQ(cort_distance(a, b, 0.0), euclidean(a, b));
  EXPECT_NEAR(temporal_correlation(a, a), 1.0, 1e-15);
  const double c = temporal_correlation(a, b);
  EXPECT_DOUBLE_EQ(cort_distance(a, b, 2.0), 2.0 / (1.0 + std::exp(2.0 * c)) * euclidean(a, b));
  try {
    cort_distance(a, std::vector<double>(40, 3.0));
    FAIL();
  } catch (const data_error &e) {
    EXPECT_STREQ(e.what(), "flat series");
  }
  EXPECT_THROW(cort_distance(a, b, -1.0), usage_error);
}

TEST(Measures, NamesRoundTrip) {
  for (Measure m : kAllMeasures)
    EXPECT_EQ(parse_measure(measure_name(m)), m);
  try {
    parse_measure("dtw");
    FAIL();
  } catch (const usage_error &e) {
    const std::string what = e.what();
    for (Measure m : kAllMeasures)
      EXPECT_NE(what.find(measure_name(m)), std::string::npos);
  }
}
