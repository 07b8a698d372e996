#include <map>
#include <set>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace garside;
using namespace testing_support;

namespace {

std::vector<Wall> sorted_roots(const SmallRootSet& s) {
    std::vector<Wall> v = s.roots();
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<Word> all_words(std::size_t rank, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == max_len) continue;
        for (std::size_t s = 0; s < rank; ++s) {
            Word w = out[i];
            w.push_back(static_cast<Gen>(s));
            out.push_back(std::move(w));
        }
    }
    return out;
}

bool alternating(const Word& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1]) return false;
    return true;
}

}  // namespace

TEST(MClose, KnownValues) {
    auto D = make("Dinf");
    const Wall ws = D->simple_wall(0);
    EXPECT_TRUE(m_close(ws, D->identity(), 0));
    EXPECT_TRUE(m_close(ws, D->element("s"), 0));
    const Wall tst = D->wall_of_reflection(D->element("tst"));
    EXPECT_FALSE(m_close(tst, D->identity(), 0));
    EXPECT_TRUE(m_close(tst, D->identity(), 1));
}

TEST(ElementaryWalls, Dinf) {
    auto D = make("Dinf");
    const SmallRootSet sigma = elementary_walls(*D, 0);
    EXPECT_EQ(sorted_roots(sigma), (std::vector<Wall>{D->simple_wall(0), D->simple_wall(1)}));
    const auto oracle = elementary_walls_by_wall_count(*D, 0, 8);
    EXPECT_EQ(oracle.elementary, sorted_roots(sigma));
}

TEST(ElementaryWalls, FiniteGroupsKeepEveryRoot) {
    EXPECT_EQ(elementary_walls(*make("I2_3"), 0).size(), 3u);
    EXPECT_EQ(elementary_walls(*make("I2_4"), 0).size(), 4u);
}

TEST(ElementaryWalls, OracleNeedsPositiveRadius) {
    EXPECT_THROW(elementary_walls_by_wall_count(*make("Dinf"), 0, 0), std::invalid_argument);
}

TEST(SignVector, KnownValues) {
    auto D = make("Dinf");
    const SmallRootSet sigma = elementary_walls(*D, 0);
    const SignVector id = shi_sign_vector(sigma, D->identity());
    EXPECT_EQ(std::count(id.begin(), id.end(), true), 0);
    EXPECT_EQ(shi_sign_vector(sigma, D->element("st")), shi_sign_vector(sigma, D->element("s")));
    EXPECT_NE(shi_sign_vector(sigma, D->element("s")), shi_sign_vector(sigma, D->element("t")));
}

TEST(ShiGates, Dinf) {
    auto D = make("Dinf");
    EXPECT_EQ(shi_gates(*D, 0), (std::vector<Element>{D->identity(), D->element("s"), D->element("t")}));
    EXPECT_EQ(cone_type_gates(*D), shi_gates(*D, 0));
}

TEST(ConeTypes, FiniteGroupsHaveOneTypePerElement) {
    auto S3 = make("I2_3");
    EXPECT_EQ(cone_type_gates(*S3).size(), 6u);
    EXPECT_EQ(ConeTypes(*S3).count(), 6u);
}

TEST(CanonicalAutomaton, DinfAcceptsAlternatingWords) {
    auto D = make("Dinf");
    const CanonicalAutomaton ca = canonical_automaton(*D, 0);
    EXPECT_TRUE(fsa_accepts(ca.fsa, Word{}).accepted);
    EXPECT_FALSE(fsa_accepts(ca.fsa, Word{0, 0}).accepted);
    for (const Word& w : all_words(2, 8)) EXPECT_EQ(fsa_accepts(ca.fsa, w).accepted, alternating(w));
    const Automaton min = minimize(ca.fsa, 2);
    EXPECT_EQ(min.state_count, 3u);
}

TEST(Minimize, IdempotentAndLanguagePreserving) {
    for (const auto& n : test_systems()) {
        auto W = make(n);
        const CanonicalAutomaton ca = canonical_automaton(*W, 1);
        const Automaton a = minimize(ca.fsa, W->rank());
        EXPECT_EQ(minimize(a, W->rank()).state_count, a.state_count) << n.name;
        EXPECT_LE(a.state_count, ca.fsa.state_count);
        for (const Word& w : all_words(W->rank(), W->rank() == 4 ? 5 : 7))
            EXPECT_EQ(fsa_accepts(a, w).accepted, fsa_accepts(ca.fsa, w).accepted) << n.name;
    }
}

class RootPerSystem : public ::testing::TestWithParam<NamedSystem> {};

TEST_P(RootPerSystem, DominanceRouteMatchesWallCount) {
    auto W = make(GetParam());
    for (std::size_t m = 0; m <= 1; ++m) {
        const SmallRootSet fast = elementary_walls(*W, m);
        const auto oracle = elementary_walls_by_wall_count(*W, m, 7);
        ASSERT_TRUE(oracle.covers(*W, fast));
        EXPECT_EQ(oracle.elementary, sorted_roots(fast)) << "m=" << m;
    }
}

TEST_P(RootPerSystem, ReflectionTableMatchesAction) {
    auto W = make(GetParam());
    const SmallRootSet sigma = elementary_walls(*W, 1);
    for (std::size_t i = 0; i < sigma.size(); ++i)
        for (std::size_t s = 0; s < W->rank(); ++s) {
            const SignedRoot r = W->reflect(Gen(s), SignedRoot{sigma[i].root, false});
            const long k = sigma.reflect(Gen(s), i);
            if (r.negative) {
                EXPECT_EQ(k, SmallRootSet::kNegative);
            } else if (sigma.contains(Wall{r.root})) {
                EXPECT_EQ(k, static_cast<long>(*sigma.index_of(Wall{r.root})));
            } else {
                EXPECT_EQ(k, SmallRootSet::kLeaves);
            }
        }
}

TEST_P(RootPerSystem, CanonicalAutomatonAcceptsExactlyReducedWords) {
    auto W = make(GetParam());
    const std::size_t n = W->rank() == 4 ? 5 : 7;
    BruteForceBall bf(*W, n);
    for (std::size_t m = 0; m <= 1; ++m) {
        const CanonicalAutomaton ca = canonical_automaton(*W, m);
        for (const Word& w : all_words(W->rank(), n))
            ASSERT_EQ(fsa_accepts(ca.fsa, w).accepted, brute_reduced(bf, w)) << W->format_word(w);
    }
}

TEST_P(RootPerSystem, GatesAreLowAndMinimalInTheirPart) {
    auto W = make(GetParam());
    const std::size_t r = W->rank() == 4 ? 5 : 6;
    CayleyBall ball(*W, r);
    for (std::size_t m = 0; m <= 1; ++m) {
        const SmallRootSet sigma = elementary_walls(*W, m);
        const std::vector<Element> gates = shi_gates(*W, m);
        std::map<SignVector, Element> first;  // shortest element per sign vector
        for (Element g : ball) first.emplace(shi_sign_vector(sigma, g), g);
        for (Element g : ball) {
            const SignVector v = shi_sign_vector(sigma, g);
            const Element low = first.at(v);
            EXPECT_EQ(is_m_low(g, m), low == g) << W->format(g);
            EXPECT_EQ(shi_gate_of(g, m), low);
            EXPECT_TRUE(weak_leq(low, g));
        }
        std::set<Element> from_ball;
        for (const auto& [v, g] : first) from_ball.insert(g);
        for (Element g : gates) EXPECT_TRUE(is_m_low(g, m)) << W->format(g);
        if (gates.back().length() < r) EXPECT_EQ(std::vector<Element>(from_ball.begin(), from_ball.end()), gates);
    }
}

TEST_P(RootPerSystem, ConeTypesMatchFingerprints) {
    auto W = make(GetParam());
    const ConeTypes ct(*W);
    const std::size_t fr = W->rank() == 4 ? 4 : 5;
    CayleyBall ball(*W, W->rank() == 4 ? 3 : 4);
    std::map<std::size_t, std::vector<Element>> by_type;
    std::map<std::size_t, Element> rep;
    for (Element g : ball) {
        const std::size_t q = ct.id(g);
        auto [it, fresh] = rep.emplace(q, g);
        if (!fresh) EXPECT_EQ(cone_type_fingerprint(g, fr), cone_type_fingerprint(it->second, fr)) << W->format(g);
    }
    std::set<std::vector<Element>> prints;
    for (const auto& [q, g] : rep) prints.insert(cone_type_fingerprint(g, fr + 2));
    EXPECT_EQ(prints.size(), rep.size());
    EXPECT_EQ(cone_type_fingerprint(W->identity(), 3).size(), CayleyBall(*W, 3).size());
}

TEST_P(RootPerSystem, ConeTypeGatesAreMinimal) {
    auto W = make(GetParam());
    const ConeTypes ct(*W);
    const std::vector<Element> gates = ct.gates();
    EXPECT_EQ(gates.size(), ct.count());
    EXPECT_EQ(gates.front(), W->identity());
    CayleyBall ball(*W, W->rank() == 4 ? 5 : 6);
    std::map<std::size_t, Element> gate_of;
    for (Element g : gates) gate_of.emplace(ct.id(g), g);
    EXPECT_EQ(gate_of.size(), gates.size());
    for (Element g : ball) {
        const Element gate = gate_of.at(ct.id(g));
        EXPECT_TRUE(weak_leq(gate, g)) << W->format(g);
    }
}

INSTANTIATE_TEST_SUITE_P(Systems, RootPerSystem, ::testing::ValuesIn(test_systems()), system_name);

TEST(ElementaryWalls, AffineA2GrowsLinearly) {
    auto W = make("A2aff");
    for (std::size_t m = 0; m <= 2; ++m) EXPECT_EQ(elementary_walls(*W, m).size(), 6 + 6 * m);
}
