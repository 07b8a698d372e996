#include <random>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace garside;
using namespace testing_support;

namespace {

// g <= h in the right weak order iff l(g) + l(g^-1 h) = l(h).
bool leq_by_length(const CoxeterSystem& W, Element g, Element h) {
    return g.length() + W.multiply(W.inverse(g), h).length() == h.length();
}

}  // namespace

TEST(WeakOrder, KnownValues) {
    auto D = make("Dinf");
    EXPECT_TRUE(weak_leq(D->identity(), D->element("st")));
    EXPECT_TRUE(weak_leq(D->element("s"), D->element("st")));
    EXPECT_FALSE(weak_leq(D->element("t"), D->element("st")));
    EXPECT_FALSE(weak_leq(D->element("st"), D->element("s")));

    auto S3 = make("I2_3");
    const std::vector<Element> st{S3->element("s"), S3->element("t")};
    EXPECT_EQ(join_search(*S3, st, 3).join, S3->element("sts"));
    EXPECT_EQ(meet(st), S3->identity());
    EXPECT_EQ(lower_interval(S3->element("sts")).members.size(), 6u);
}

TEST(WeakOrder, DinfGeneratorsHaveNoJoin) {
    auto D = make("Dinf");
    const PairJoin pj = join_pair(D->element("s"), D->element("t"), 20);
    EXPECT_EQ(pj.verdict, JoinVerdict::NoUpperBound);
    const std::vector<Element> st{D->element("s"), D->element("t")};
    EXPECT_FALSE(join_search(*D, st, 10).found());
}

class WeakOrderPerSystem : public ::testing::TestWithParam<NamedSystem> {};

TEST_P(WeakOrderPerSystem, ThreeRoutesAgree) {
    auto W = make(GetParam());
    CayleyBall ball(*W, W->rank() == 4 ? 3 : 4);
    for (Element g : ball)
        for (Element h : ball) {
            const bool want = leq_by_length(*W, g, h);
            EXPECT_EQ(weak_leq(g, h), want) << W->format(g) << " " << W->format(h);
            EXPECT_EQ(weak_leq_by_walls(g, h), want);
        }
}

TEST_P(WeakOrderPerSystem, PartialOrderAxioms) {
    auto W = make(GetParam());
    CayleyBall ball(*W, 3);
    for (Element a : ball) {
        EXPECT_TRUE(weak_leq(a, a));
        for (Element b : ball) {
            if (a != b && weak_leq(a, b)) EXPECT_FALSE(weak_leq(b, a));
            if (!weak_leq(a, b)) continue;
            for (Element c : ball)
                if (weak_leq(b, c)) EXPECT_TRUE(weak_leq(a, c));
        }
    }
}

TEST_P(WeakOrderPerSystem, LowerIntervalIsPrefixes) {
    auto W = make(GetParam());
    for (Element g : CayleyBall(*W, 4)) {
        std::vector<Element> brute;
        for (Element x : CayleyBall(*W, g.length()))
            if (leq_by_length(*W, x, g)) brute.push_back(x);
        std::sort(brute.begin(), brute.end());
        EXPECT_EQ(lower_interval(g).members, brute);
    }
}

TEST_P(WeakOrderPerSystem, MeetIsGreatestCommonLowerBound) {
    auto W = make(GetParam());
    CayleyBall ball(*W, 4);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const Element a = ball[rng() % ball.size()], b = ball[rng() % ball.size()];
        const std::vector<Element> A{a, b};
        const Element m = meet(A);
        EXPECT_TRUE(weak_leq(m, a) && weak_leq(m, b));
        for (Element x : CayleyBall(*W, std::min(a.length(), b.length())))
            if (weak_leq(x, a) && weak_leq(x, b)) EXPECT_TRUE(weak_leq(x, m));
    }
}

TEST_P(WeakOrderPerSystem, JoinPairMatchesExhaustiveSearch) {
    auto W = make(GetParam());
    const std::size_t r = W->rank() == 4 ? 2 : 3;
    const std::size_t cutoff = W->rank() == 4 ? 6 : 8;
    CayleyBall ball(*W, r);
    for (Element a : ball)
        for (Element b : ball) {
            const std::vector<Element> A{a, b};
            const JoinSearch js = join_search(*W, A, cutoff);
            const PairJoin pj = join_pair(a, b, cutoff);
            if (js.found()) {
                ASSERT_EQ(pj.verdict, JoinVerdict::Exists) << W->format(a) << " v " << W->format(b);
                EXPECT_EQ(*pj.join, *js.join);
                EXPECT_EQ(join_bounded(A, *js.join), *js.join);
            } else {
                EXPECT_NE(pj.verdict, JoinVerdict::Exists);
            }
        }
}

TEST_P(WeakOrderPerSystem, JoinIsBelowEveryUpperBound) {
    auto W = make(GetParam());
    CayleyBall big(*W, W->rank() == 4 ? 5 : 6);
    CayleyBall small(*W, 2);
    for (Element a : small)
        for (Element b : small) {
            const PairJoin pj = join_pair(a, b, big.radius());
            if (pj.verdict != JoinVerdict::Exists) continue;
            for (Element x : big)
                if (weak_leq(a, x) && weak_leq(b, x)) EXPECT_TRUE(weak_leq(*pj.join, x));
        }
}

INSTANTIATE_TEST_SUITE_P(Systems, WeakOrderPerSystem, ::testing::ValuesIn(test_systems()), system_name);

TEST(WeakOrder, EmptyMeetAndBadBoundThrow) {
    auto S3 = make("I2_3");
    EXPECT_THROW(meet(std::vector<Element>{}), std::invalid_argument);
    const std::vector<Element> A{S3->element("st")};
    EXPECT_THROW(join_bounded(A, S3->element("ts")), std::invalid_argument);
}

TEST(WeakOrder, ParabolicLongestLengths) {
    auto S3 = make("I2_3");
    EXPECT_EQ(parabolic_longest_length(*S3, 0b11), 3u);
    EXPECT_EQ(parabolic_longest_length(*S3, 0b01), 1u);
    EXPECT_EQ(parabolic_longest_length(*S3, 0), 0u);
    EXPECT_EQ(parabolic_longest_length(*make("I2_4"), 0b11), 4u);
    EXPECT_FALSE(parabolic_longest_length(*make("Dinf"), 0b11));
    auto A = make("A2aff");
    EXPECT_FALSE(parabolic_longest_length(*A, 0b111));
    EXPECT_EQ(parabolic_longest_length(*A, 0b011), 3u);
    auto T = make("Tri334");
    EXPECT_FALSE(parabolic_is_finite(*T, 0b111));
    EXPECT_EQ(support(T->element("st")), 0b011u);
}
