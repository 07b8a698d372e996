#include <set>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace garside;
using namespace testing_support;

namespace {

std::vector<Word> words_of(const CoxeterSystem& W, std::initializer_list<const char*> ws) {
    std::vector<Word> out;
    for (const char* w : ws) out.push_back(W.parse_word(w));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Word> alternating_words(std::size_t max_len) {
    std::vector<Word> out{Word{}};
    for (std::size_t len = 1; len <= max_len; ++len)
        for (Gen first : {Gen(0), Gen(1)}) {
            Word w;
            for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<Gen>((first + i) % 2));
            out.push_back(w);
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(Voracious, DinfExamples) {
    auto D = make("Dinf");
    const GarsideShadow L = shadow_from_gates(*D, ShadowKind::low());
    EXPECT_EQ(voracious_projection(L, D->identity()), D->identity());
    EXPECT_EQ(voracious_projection(L, D->element("s")), D->identity());
    EXPECT_EQ(voracious_projection(L, D->element("stst")), D->element("sts"));
    EXPECT_EQ(op_voracious_projection(D->identity()), D->identity());
    EXPECT_EQ(op_voracious_projection(D->element("s")), D->identity());
    EXPECT_EQ(op_voracious_projection(D->element("stst")), D->element("sts"));

    const VoraciousChain c = voracious_chain(L, D->element("stst"));
    std::vector<std::string> got;
    for (Element x : c.chain) got.push_back(D->format(x));
    EXPECT_EQ(got, (std::vector<std::string>{"stst", "sts", "st", "s", "-"}));

    EXPECT_EQ(language_of(L, D->identity()), std::vector<Word>{Word{}});
    EXPECT_EQ(language_of(L, D->element("s")), words_of(*D, {"s"}));
    EXPECT_EQ(language_of(L, D->element("st")), words_of(*D, {"st"}));
    EXPECT_EQ(enumerate_language(L, 0).words(), std::vector<Word>{Word{}});
    EXPECT_EQ(enumerate_language(L, 4).words(), alternating_words(4));
    EXPECT_EQ(enumerate_language(L, 4).word_count(), 9u);
}

TEST(Voracious, DinfAutomaton) {
    auto D = make("Dinf");
    const GarsideShadow L = shadow_from_gates(*D, ShadowKind::low());
    const Automaton A = build_voracious_fsa(L);
    EXPECT_EQ(A.state_count, 3u);
    ASSERT_EQ(A.edge_count(), 4u);
    // states: 0 = id, 1 = s, 2 = t
    const std::vector<std::tuple<std::size_t, std::size_t, std::string>> want = {
        {0, 1, "s"}, {0, 2, "t"}, {1, 2, "t"}, {2, 1, "s"}};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(A.edges[i].from, std::get<0>(want[i]));
        EXPECT_EQ(A.edges[i].to, std::get<1>(want[i]));
        ASSERT_EQ(A.edges[i].labels.size(), 1u);
        EXPECT_EQ(D->format_word(A.edges[i].labels[0]), std::get<2>(want[i]));
    }
    const AcceptResult r = fsa_accepts(A, D->parse_word("stst"));
    EXPECT_TRUE(r.accepted);
    EXPECT_EQ(r.states, std::vector<std::size_t>{2});
    EXPECT_FALSE(fsa_accepts(A, D->parse_word("ss")).accepted);
    const AcceptResult e = fsa_accepts(A, Word{});
    EXPECT_EQ(e.states, std::vector<std::size_t>{0});

    EXPECT_TRUE(cross_validate_regularity(L, 0).passed());
    const RegularityReport rep = cross_validate_regularity(L, 8);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.accepted_words, alternating_words(8).size());
}

TEST(Voracious, ReducedWords) {
    auto S3 = make("I2_3");
    EXPECT_EQ(reduced_words(S3->element("sts")), words_of(*S3, {"sts", "tst"}));
    EXPECT_EQ(reduced_words(S3->identity()), std::vector<Word>{Word{}});
    auto W = make("A2aff");
    BruteForceBall bf(*W, 6);
    for (Element g : CayleyBall(*W, 5)) {
        auto want = bf.lookup(g.word()).reduced;
        std::sort(want.begin(), want.end());
        EXPECT_EQ(reduced_words(g), want);
    }
}

TEST(Voracious, WholeFiniteGroupGivesAllReducedWords) {
    for (const char* name : {"I2_3", "I2_4"}) {
        auto W = make(name);
        const GarsideShadow B = garside_closure(*W, {}, 8);
        std::vector<Word> want;
        for (Element g : B.elements())
            for (const Word& w : reduced_words(g)) want.push_back(w);
        std::sort(want.begin(), want.end());
        EXPECT_EQ(enumerate_language(B, 8).words(), want) << name;
        EXPECT_EQ(enumerate_language(B, 3).words().size(), 7u);  // -, s, t, st, ts, sts, tst
    }
}

class VoraciousPerSystem : public ::testing::TestWithParam<NamedSystem> {};

TEST_P(VoraciousPerSystem, WallProjectionMatchesNuL) {
    auto W = make(GetParam());
    const GarsideShadow L = shadow_from_gates(*W, ShadowKind::low());
    const VoraciousLanguage lang(L);
    for (Element g : CayleyBall(*W, W->rank() == 4 ? 5 : 6))
        EXPECT_EQ(op_voracious_projection(g), lang.nu(g)) << W->format(g);
}

TEST_P(VoraciousPerSystem, ChainsShortenAndStayWithinM) {
    auto W = make(GetParam());
    for (ShadowKind k : {ShadowKind::gamma(), ShadowKind::mlow(1)}) {
        const GarsideShadow B = shadow_from_gates(*W, k);
        for (Element g : CayleyBall(*W, 5)) {
            const VoraciousChain c = voracious_chain(B, g);
            for (std::size_t i = 1; i < c.chain.size(); ++i) {
                EXPECT_TRUE(weak_leq(c.chain[i], c.chain[i - 1]));
                EXPECT_LE(W->word_metric(c.chain[i], c.chain[i - 1]), B.constant_M());
            }
        }
    }
}

TEST_P(VoraciousPerSystem, LanguageWordsAreReducedAndRepresent) {
    auto W = make(GetParam());
    const GarsideShadow B = shadow_from_gates(*W, ShadowKind::gamma());
    const VoraciousLanguage lang(B);
    for (Element g : CayleyBall(*W, 5)) {
        const auto& ws = lang.words(g);
        ASSERT_FALSE(ws.empty());
        const auto all = reduced_words(g);
        const std::set<Word> red(all.begin(), all.end());
        for (const Word& w : ws) EXPECT_TRUE(red.count(w)) << W->format_word(w);
    }
}

TEST_P(VoraciousPerSystem, AcceptanceRoutesAgree) {
    auto W = make(GetParam());
    const GarsideShadow B = shadow_from_gates(*W, ShadowKind::low());
    const Automaton A = build_voracious_fsa(B);
    for (const auto& e : A.edges) {
        EXPECT_NE(e.to, 0u);
        EXPECT_FALSE(e.labels.empty());
    }
    std::vector<Word> words{Word{}};
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].size() == (W->rank() == 4 ? 4u : 6u)) continue;
        for (std::size_t s = 0; s < W->rank(); ++s) {
            Word w = words[i];
            w.push_back(static_cast<Gen>(s));
            words.push_back(std::move(w));
        }
    }
    for (const Word& w : words) {
        const AcceptResult a = fsa_accepts(A, w), b = accepts_by_decomposition(A, w);
        EXPECT_EQ(a.accepted, b.accepted) << W->format_word(w);
        EXPECT_EQ(a.states, b.states);
    }
}

TEST_P(VoraciousPerSystem, RegularityOnShortWords) {
    auto W = make(GetParam());
    for (ShadowKind k : {ShadowKind::gamma(), ShadowKind::low(), ShadowKind::mlow(1)}) {
        const GarsideShadow B = shadow_from_gates(*W, k);
        const RegularityReport r = cross_validate_regularity(B, W->rank() == 4 ? 5 : 6);
        EXPECT_TRUE(r.passed()) << to_string(k);
        EXPECT_EQ(r.accepted_words, r.language_words);
    }
}

INSTANTIATE_TEST_SUITE_P(Systems, VoraciousPerSystem, ::testing::ValuesIn(test_systems()), system_name);
