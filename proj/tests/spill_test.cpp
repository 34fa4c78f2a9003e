#include "uig/spill.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

namespace uig {
namespace {

TEST(BitBuf, MatchesBoolVectorModel) {
    std::mt19937_64 eng(7);
    for (int trial = 0; trial < 50; ++trial) {
        BitBuf buf;
        std::vector<bool> model;
        std::vector<std::tuple<uint64_t, uint32_t, u128>> writes;
        for (int w = 0; w < 200; ++w) {
            uint32_t width = eng() % 129;
            u128 value = (static_cast<u128>(eng()) << 64) | eng();
            if (width < 128) value &= (u128{1} << width) - 1;
            writes.push_back({model.size(), width, value});
            buf.append(value, width);
            for (uint32_t b = 0; b < width; ++b) model.push_back((value >> b) & 1);
        }
        ASSERT_EQ(buf.bit_size(), model.size());
        for (auto [pos, width, value] : writes) EXPECT_TRUE(buf.read(pos, width) == value);
        for (int r = 0; r < 500; ++r) {
            uint64_t pos = eng() % (model.size() + 1);
            uint32_t width = std::min<uint64_t>(eng() % 129, model.size() - pos);
            u128 got = buf.read(pos, width);
            for (uint32_t b = 0; b < width; ++b) EXPECT_EQ(static_cast<bool>((got >> b) & 1), model[pos + b]);
        }
    }
}

TEST(BitBuf, ProbeCounterCountsDistinctWords) {
    BitBuf buf;
    buf.append(~u128{0} >> 40, 88);
    buf.append(12345, 64);
    ProbeCounter pc;
    buf.read(0, 88, &pc);  // words 0 and 1
    EXPECT_EQ(pc.count(), 2u);
    buf.read(88, 64, &pc);  // words 1 and 2; word 1 is already counted
    EXPECT_EQ(pc.count(), 3u);
    buf.read(0, 64, &pc);  // already-touched word is free
    EXPECT_EQ(pc.count(), 3u);
}

double red_bits(const SpillParams& p) {
    return p.M + std::log2(static_cast<double>(p.S)) - std::log2(static_cast<double>(p.X)) -
           std::log2(static_cast<double>(p.Y));
}

TEST(SpillParams, WorkedExample) {
    SpillParams p = spill_params(9, 5);
    EXPECT_EQ(p.M, 4u);
    EXPECT_EQ(static_cast<uint64_t>(p.D), 3u);
    EXPECT_EQ(p.S, 3u);
    EXPECT_NEAR(red_bits(p), std::log2(48.0 / 45.0), 1e-12);
}

TEST(SpillParams, DegenerateSpill) {
    for (uint64_t y : {1ull, 2ull, 7ull, 100ull, 4096ull}) {
        SpillParams p = spill_params(1, y);
        EXPECT_EQ(p.S, 1u);
        EXPECT_EQ(p.M, ceil_log2_u64(y));
    }
}

TEST(SpillParams, GrowthInvariants) {
    std::mt19937_64 eng(3);
    for (int t = 0; t < 20000; ++t) {
        u128 X = 1 + eng() % (1ull << (1 + eng() % 40));
        uint64_t Y = 1 + eng() % (1ull << (1 + eng() % 40));
        SpillParams p = spill_params(X, Y);
        u128 r = ceil_sqrt_u128(X);
        EXPECT_GE(p.D, u128{1});
        EXPECT_GE(p.D * p.S, X);
        EXPECT_LE(static_cast<u128>(p.Y) * p.D, p.m_universe());
        EXPECT_LE(p.S, 4 * r);
        EXPECT_LE(p.m_universe(), 4 * static_cast<u128>(Y) * r);
        if (X >= 4) {
            double sx = std::sqrt(static_cast<double>(X));
            EXPECT_LE(red_bits(p), 3.1 / sx);
        }
    }
}

TEST(SpillMap, WorkedEncodeDecode) {
    SpillParams p = spill_params(9, 5);
    auto [m, s] = spill_encode(7, 4, p);
    EXPECT_EQ(static_cast<uint64_t>(m), 14u);
    EXPECT_EQ(s, 1u);
    EXPECT_EQ(spill_decode_y(14, p), 4u);
    EXPECT_EQ(static_cast<uint64_t>(spill_decode_x(14, 1, p)), 7u);
    auto [m0, s0] = spill_encode(0, 0, p);
    EXPECT_EQ(static_cast<uint64_t>(m0), 0u);
    EXPECT_EQ(s0, 0u);
}

TEST(SpillMap, ExhaustiveInjectivityAndRoundTripUpTo64) {
    for (uint64_t X = 1; X <= 64; ++X)
        for (uint64_t Y = 1; Y <= 64; ++Y) {
            SpillParams p = spill_params(X, Y);
            std::set<std::pair<uint64_t, uint64_t>> seen;
            for (uint64_t x = 0; x < X; ++x)
                for (uint64_t y = 0; y < Y; ++y) {
                    auto [m, s] = spill_encode(x, y, p);
                    EXPECT_LT(m, p.m_universe());
                    EXPECT_LT(s, p.S);
                    EXPECT_TRUE(seen.insert({static_cast<uint64_t>(m), s}).second);
                    EXPECT_EQ(spill_decode_y(m, p), y);
                    EXPECT_EQ(static_cast<uint64_t>(spill_decode_x(m, s, p)), x);
                }
        }
}

TEST(SpillMap, RejectsOutOfRangeAndCorruption) {
    SpillParams p = spill_params(9, 5);
    EXPECT_THROW(spill_encode(9, 0, p), std::invalid_argument);
    EXPECT_THROW(spill_encode(0, 5, p), std::invalid_argument);
    EXPECT_THROW(spill_decode_y(static_cast<u128>(p.Y) * p.D, p), std::runtime_error);
    EXPECT_THROW(spill_decode_x(0, p.S, p), std::runtime_error);
}

TEST(GroupPlan, GreedyBoundaries) {
    VectorUniverse u{{6, 5, 4, 3, 2, 1}};
    ChainPlan<VectorUniverse> plan = make_plan(u, 36);
    ASSERT_EQ(plan.links.size(), 2u);
    EXPECT_EQ(plan.links[0].elem_start, 0u);
    EXPECT_EQ(plan.links[0].elem_count, 2u);
    EXPECT_EQ(static_cast<uint64_t>(plan.links[0].universe), 30u);
    EXPECT_EQ(plan.links[1].elem_start, 2u);
    EXPECT_EQ(plan.links[1].elem_count, 4u);
    EXPECT_EQ(static_cast<uint64_t>(plan.links[1].universe), 24u);
}

TEST(GroupPlan, GreedyIsMaximalEverywhere) {
    std::mt19937_64 eng(11);
    for (int t = 0; t < 200; ++t) {
        uint64_t n = 1 + eng() % 60;
        VectorUniverse u;
        for (uint64_t i = 0; i < n; ++i) u.u.push_back(1 + eng() % 1000);
        u128 target = 1 + eng() % 100000;
        bool fits = true;
        for (uint64_t x : u.u)
            if (x > target) fits = false;
        if (!fits) {
            EXPECT_THROW(make_plan(u, target), std::invalid_argument);
            continue;
        }
        ChainPlan<VectorUniverse> plan = make_plan(u, target);
        uint64_t covered = 0;
        for (size_t g = 0; g < plan.links.size(); ++g) {
            const ChainLink& link = plan.links[g];
            EXPECT_EQ(link.elem_start, covered);
            EXPECT_LE(link.universe, target);
            uint64_t next = link.elem_start + link.elem_count;
            if (next < n) {  // adding one more element must exceed the target
                EXPECT_GT(link.universe * u.u[next], target);
            }
            covered = next;
        }
        EXPECT_EQ(covered, n);
    }
}

TEST(GroupPlan, AllOnesCollapseToOneEmptyGroup) {
    VectorUniverse u{std::vector<uint64_t>(100, 1)};
    ChainPlan<VectorUniverse> plan = make_plan(u);
    EXPECT_EQ(plan.links.size(), 1u);
    EXPECT_EQ(plan.total_bits(), 0u);
}

TEST(GroupPlan, HugeUniversesGoSingleton) {
    VectorUniverse u{{1ull << 40, 1ull << 40, 1ull << 40}};
    ChainPlan<VectorUniverse> plan = make_plan(u, u128{1} << 64);
    EXPECT_EQ(plan.links.size(), 3u);
    for (const auto& link : plan.links) EXPECT_EQ(link.elem_count, 1u);
}

TEST(GroupPlan, DeterministicAndValueIndependent) {
    VectorUniverse u{{6, 5, 4, 3, 2, 1}};
    ChainPlan<VectorUniverse> a = make_plan(u, 36);
    ChainPlan<VectorUniverse> b = make_plan(u, 36);
    ASSERT_EQ(a.links.size(), b.links.size());
    for (size_t g = 0; g < a.links.size(); ++g) {
        EXPECT_EQ(a.links[g].elem_start, b.links[g].elem_start);
        EXPECT_EQ(a.links[g].bit_off, b.links[g].bit_off);
        EXPECT_EQ(a.links[g].sp.M, b.links[g].sp.M);
        EXPECT_EQ(a.links[g].sp.S, b.links[g].sp.S);
    }
}

TEST(Chain, RoundTripSmallWorked) {
    VectorUniverse u{{6, 5, 4, 3, 2, 1}};
    std::vector<uint64_t> zeros(6, 0);
    SpillCode<VectorUniverse> code = encode_chain(u, zeros);
    for (uint64_t i = 0; i < 6; ++i) EXPECT_EQ(code.access(i), 0u);

    std::mt19937_64 eng(23);
    for (int t = 0; t < 10000; ++t) {
        std::vector<uint64_t> vals(6);
        for (uint64_t i = 0; i < 6; ++i) vals[i] = eng() % u.u[i];
        SpillCode<VectorUniverse> c = encode_chain(u, vals);
        for (uint64_t i = 0; i < 6; ++i) EXPECT_EQ(c.access(i), vals[i]);
    }
}

TEST(Chain, RoundTripRandomUniverses) {
    std::mt19937_64 eng(29);
    for (int t = 0; t < 60; ++t) {
        uint64_t n = 1 + eng() % 300;
        VectorUniverse u;
        std::vector<uint64_t> vals;
        for (uint64_t i = 0; i < n; ++i) {
            u.u.push_back(1 + eng() % (1ull << (eng() % 30)));
            vals.push_back(eng() % u.u.back());
        }
        SpillCode<VectorUniverse> c = encode_chain(u, vals);
        for (uint64_t i = 0; i < n; ++i) EXPECT_EQ(c.access(i), vals[i]);
    }
}

TEST(Chain, SpaceWithinTwoBitsOfEntropy) {
    for (uint64_t n : {64u, 256u, 1024u}) {
        DecreasingUniverse u{n};
        std::vector<uint64_t> vals(n);
        std::mt19937_64 eng(n);
        for (uint64_t i = 0; i < n; ++i) vals[i] = eng() % (n - i);
        SpillCode<DecreasingUniverse> c = encode_chain(u, vals);
        double entropy = 0;
        for (uint64_t i = 0; i < n; ++i) entropy += std::log2(static_cast<double>(n - i));
        EXPECT_LE(c.stored_bits(), static_cast<uint64_t>(std::ceil(entropy)) + 2);
        EXPECT_GE(static_cast<double>(c.stored_bits()), entropy - 1e-6);
    }
}

TEST(Chain, MismatchAndRangeErrors) {
    VectorUniverse u{{6, 5}};
    std::vector<uint64_t> tooFew = {1};
    ChainPlan<VectorUniverse> plan = make_plan(u);
    BitBuf out;
    EXPECT_THROW(encode_chain_append(plan, tooFew, out), std::invalid_argument);
    std::vector<uint64_t> outOfRange = {6, 0};
    EXPECT_THROW(encode_chain_append(plan, outOfRange, out), std::invalid_argument);
    std::vector<uint64_t> ok = {5, 4};
    SpillCode<VectorUniverse> c = encode_chain(u, ok);
    EXPECT_THROW(c.access(2), std::out_of_range);
}

TEST(Fixed, UnaryAlphabetStoresNothing) {
    std::vector<uint64_t> vals(100, 0);
    SpillCode<ConstantUniverse> c = encode_fixed(1, vals);
    EXPECT_EQ(c.stored_bits(), 0u);
    for (uint64_t i = 0; i < 100; ++i) EXPECT_EQ(access_fixed(c, i), 0u);
}

TEST(Fixed, ByteAlphabetIsExact) {
    std::mt19937_64 eng(81);
    std::vector<uint64_t> vals(4096);
    for (auto& v : vals) v = eng() % 256;
    SpillCode<ConstantUniverse> c = encode_fixed(256, vals);
    EXPECT_LE(c.stored_bits(), 4096 * 8 + 128u);
    for (uint64_t i = 0; i < vals.size(); ++i) EXPECT_EQ(access_fixed(c, i), vals[i]);
}

TEST(Fixed, Alphabet5AtTenThousand) {
    std::mt19937_64 eng(82);
    std::vector<uint64_t> vals(10000);
    for (auto& v : vals) v = eng() % 5;
    SpillCode<ConstantUniverse> c = encode_fixed(5, vals);
    uint64_t info = static_cast<uint64_t>(std::ceil(10000 * std::log2(5.0)));
    EXPECT_LE(c.stored_bits(), info + 128);
    for (uint64_t i = 0; i < vals.size(); ++i) EXPECT_EQ(access_fixed(c, i), vals[i]);
}

TEST(Chain, AccessTouchesAtMostFourWordsAndStaysLocal) {
    std::mt19937_64 eng(93);
    std::vector<uint64_t> vals(100000);
    for (auto& v : vals) v = eng() % 5;
    SpillCode<ConstantUniverse> c = encode_fixed(5, vals);
    for (int t = 0; t < 20000; ++t) {
        uint64_t i = eng() % vals.size();
        ProbeCounter pc;
        EXPECT_EQ(c.access(i, &pc), vals[i]);
        EXPECT_LE(pc.count(), 4u);
    }
}

TEST(Chain, CountedAndUncountedAnswersAgree) {
    std::mt19937_64 eng(94);
    std::vector<uint64_t> vals(5000);
    for (auto& v : vals) v = eng() % 1000;
    SpillCode<ConstantUniverse> c = encode_fixed(1000, vals);
    for (uint64_t i = 0; i < vals.size(); ++i) {
        ProbeCounter pc;
        EXPECT_EQ(c.access(i, &pc), c.access(i));
    }
}

TEST(Chain, ReadsStayWithinTheLocatedGroupPair) {
    std::mt19937_64 eng(95);
    std::vector<uint64_t> vals(20000);
    for (auto& v : vals) v = eng() % 321;
    SpillCode<ConstantUniverse> c = encode_fixed(321, vals);
    const auto& links = c.plan.links;
    for (int t = 0; t < 5000; ++t) {
        uint64_t i = eng() % vals.size();
        size_t g = c.plan.locate(i);
        uint64_t lo = links[g].bit_off;
        uint64_t hi = g + 1 < links.size() ? links[g + 1].bit_off + links[g + 1].sp.M
                                           : c.plan.body_bits + c.plan.tail_bits;
        ProbeCounter pc;
        c.access(i, &pc);
        for (auto [buf, word] : pc.touched()) {
            EXPECT_EQ(buf, static_cast<const void*>(&c.bits));
            EXPECT_GE((word + 1) * 64, lo + 1);  // word overlaps [lo, hi)
            EXPECT_LT(word * 64, hi);
        }
    }
}

TEST(Chain, TinyChainsUseTailOnly) {
    // Universe products small enough that the whole value rides in the spill.
    VectorUniverse u2{{2}};
    std::vector<uint64_t> v2 = {1};
    SpillCode<VectorUniverse> c2 = encode_chain(u2, v2);
    EXPECT_EQ(c2.stored_bits(), 1u);
    EXPECT_EQ(c2.access(0), 1u);

    VectorUniverse u3{{3, 2, 1}};
    std::vector<uint64_t> v3 = {2, 0, 0};
    SpillCode<VectorUniverse> c3 = encode_chain(u3, v3);
    EXPECT_EQ(c3.stored_bits(), 3u);  // ceil(log2 6)
    EXPECT_EQ(c3.access(0), 2u);
    EXPECT_EQ(c3.access(1), 0u);
    EXPECT_EQ(c3.access(2), 0u);
}

}  // namespace
}  // namespace uig
