#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "pulab/rng.hpp"
#include "pulab/stats.hpp"

using namespace pulab;

// Known-answer vectors published with the Random123 library.
TEST(Philox, KnownAnswerZero)
{
    auto const out = Philox::bijection({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out, (Philox::Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerAllOnes)
{
    auto const out = Philox::bijection({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                       {0xffffffffu, 0xffffffffu});
    EXPECT_EQ(out, (Philox::Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi)
{
    auto const out = Philox::bijection({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                       {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(out, (Philox::Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, OutputIsCounterBlockWords)
{
    Philox rng(0, 0);
    auto const first = Philox::bijection({0, 0, 0, 0}, {0, 0});
    auto const second = Philox::bijection({1, 0, 0, 0}, {0, 0});
    EXPECT_EQ(rng(), (std::uint64_t{first[1]} << 32) | first[0]);
    EXPECT_EQ(rng(), (std::uint64_t{first[3]} << 32) | first[2]);
    EXPECT_EQ(rng(), (std::uint64_t{second[1]} << 32) | second[0]);
}

TEST(Philox, StreamsAndSeedsDiffer)
{
    Philox a(7, stream_id(StreamTag::BoxVolume, 0));
    Philox b(7, stream_id(StreamTag::BoxVolume, 1));
    Philox c(8, stream_id(StreamTag::BoxVolume, 0));
    Philox d(7, stream_id(StreamTag::OrderedCone, 0));
    std::set<std::uint64_t> firsts{a(), b(), c(), d()};
    EXPECT_EQ(firsts.size(), 4u);
}

TEST(Philox, Reproducible)
{
    Philox a(123, 5);
    Philox b(123, 5);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(Rng, StreamIdLayout)
{
    EXPECT_EQ(stream_id(StreamTag::BoxVolume, 3), (std::uint64_t{1} << 48) | 3u);
    EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
    EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));
}

TEST(Rng, UniformMomentsAndRange)
{
    Philox rng(42, 0);
    constexpr int N = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < N; ++i) {
        double const u = uniform01(rng);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum_sq += u * u;
    }
    double const mean = sum / N;
    EXPECT_NEAR(mean, 0.5, 3.0 * std::sqrt(1.0 / 12.0 / N));
    EXPECT_NEAR(sum_sq / N - mean * mean, 1.0 / 12.0, 2e-3);
}

TEST(Rng, UniformKs)
{
    Philox rng(9, 1);
    std::vector<double> xs(20000);
    for (auto& x : xs) x = uniform01(rng);
    double const d = stats::ks_statistic(xs, [](double x) { return x; });
    EXPECT_LT(d, stats::ks_critical_value(xs.size(), 0.01));
}

TEST(Rng, UniformIndexCoversRange)
{
    Philox rng(3, 0);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) ++counts[uniform_index(rng, 7)];
    for (int c : counts) EXPECT_NEAR(c, 10000, 400);
}

TEST(Rng, StandardNormalMoments)
{
    Philox rng(11, 0);
    constexpr int N = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < N; ++i) {
        double const z = standard_normal(rng);
        sum += z;
        sum_sq += z * z;
    }
    EXPECT_NEAR(sum / N, 0.0, 3.0 / std::sqrt(N));
    EXPECT_NEAR(sum_sq / N, 1.0, 0.02);
}

TEST(Rng, GammaIntegerShapeKs)
{
    Philox rng(5, 0);
    std::vector<double> xs(20000);
    for (auto& x : xs) x = gamma_integer_shape(rng, 3, 2.0);
    double const d = stats::ks_statistic(xs, [](double x) { return stats::gamma_cdf(x, 3, 2.0); });
    EXPECT_LT(d, stats::ks_critical_value(xs.size(), 0.01));
}

TEST(Rng, ShuffleIsPermutation)
{
    Philox rng(1, 0);
    std::vector<std::size_t> v{0, 1, 2, 3, 4, 5, 6, 7};
    shuffle(rng, std::span<std::size_t>(v));
    std::set<std::size_t> s(v.begin(), v.end());
    EXPECT_EQ(s.size(), 8u);
}

TEST(Rng, ParallelForVisitsEveryJobOnce)
{
    for (std::size_t limit : {1u, 2u, 5u}) {
        set_worker_limit(limit);
        std::vector<int> hits(37, 0);
        parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
        for (int h : hits) EXPECT_EQ(h, 1);
    }
    set_worker_limit(0);
}
