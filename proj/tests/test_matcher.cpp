#include <gtest/gtest.h>

#include "sigma/matcher.hpp"
#include "test_support.hpp"

using namespace sigma;
using namespace sigma::testing;

namespace {

bool same_trace(const Matching& a, const Matching& b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t t = 0; t < a.size(); ++t) {
        if (a.trace()[t].pair != b.trace()[t].pair || a.trace()[t].score != b.trace()[t].score) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST(Matcher, TwoEntityChain)
{
    const Instance s = chain_instance();
    const RunResult r = run(*s.model);
    ASSERT_EQ(r.matching.size(), 2u);
    EXPECT_EQ(r.matching.trace()[0].pair, (EntityPair{s.e1("a1"), s.e2("b1")}));
    EXPECT_EQ(r.matching.trace()[1].pair, (EntityPair{s.e1("m1"), s.e2("f1")}));
    EXPECT_NEAR(r.matching.trace()[1].score, 1.0 / 3.0, 1e-12);
    EXPECT_EQ(r.details[0].source, CommitSource::Seed);
    EXPECT_EQ(r.details[1].source, CommitSource::Queue);
    EXPECT_EQ(r.stats.seed_commits, 1u);
    EXPECT_EQ(r.stats.neighbor_suggestions, 1u);
    EXPECT_EQ(r.stopped_reason, StopReason::QueueEmpty);
}

TEST(Matcher, LinearMissesZeroOverlapPair)
{
    const Instance s = chain_instance();
    const RunResult r = run_linear(*s.model);
    ASSERT_EQ(r.matching.size(), 1u);
    EXPECT_FALSE(r.matching.first_matched(s.e1("m1")));
}

TEST(Matcher, EmptySeedNoS0GivesEmptyMatching)
{
    const Instance s = make_instance("a1|actedIn|m1\n", "a1|label|x y\nm1|label|z\n",
                                     "b1|actedIn|f1\n", "b1|label|x y\nf1|label|z\n",
                                     "rel|actedIn|actedIn\nlabel|label|label\n"
                                     "param|seed_mode|none\nparam|use_s0|false\n");
    const RunResult r = run(*s.model);
    EXPECT_TRUE(r.matching.empty());
    EXPECT_EQ(r.stopped_reason, StopReason::QueueEmpty);
    EXPECT_EQ(r.stats.pops, 0u);
}

TEST(Matcher, EmptyKnowledgeBases)
{
    const Instance s = make_instance("", "", "", "", "");
    const RunResult r = run(*s.model);
    EXPECT_TRUE(r.matching.empty());
    EXPECT_EQ(r.stopped_reason, StopReason::QueueEmpty);
}

TEST(Matcher, StopIsInclusive)
{
    // alpha 1/2: the neighbour pair scores exactly 1/2 * 1.
    const std::string base = "rel|actedIn|actedIn\nlabel|label|label\nparam|alpha|0.5\n";
    auto chain = [&](const std::string& extra) {
        return make_instance("a1|actedIn|m1\n", "a1|label|damian chapa\nm1|label|blood in\n",
                             "b1|actedIn|f1\n", "b1|label|damian chapa\nf1|label|bound by\n",
                             base + extra);
    };
    const Instance at = chain("param|threshold|0.5\n");
    const RunResult stopped = run(*at.model);
    EXPECT_EQ(stopped.matching.size(), 1u);
    EXPECT_EQ(stopped.stopped_reason, StopReason::Threshold);

    const Instance below = chain("param|threshold|0.49\n");
    EXPECT_EQ(run(*below.model).matching.size(), 2u);
}

TEST(ExactSeed, UniqueLabelsOnly)
{
    const Instance s = make_instance(
        "", "e1|label|Grease\ne2|label|John Smith\ne3|label|john  smith\ne4|label|Alien\n", "",
        "f1|label|grease\nf2|label|John Smith\nf4|label|Aliens\n", "label|label|label\n");
    const auto seed = exact_seed(*s.model);
    ASSERT_EQ(seed.size(), 1u);
    EXPECT_EQ(seed[0], (EntityPair{s.e1("e1"), s.e2("f1")}));
}

TEST(ExactSeed, NoSharedLabels)
{
    const Instance s = make_instance("", "e1|label|a\n", "", "f1|label|b\n", "label|label|label\n");
    EXPECT_TRUE(exact_seed(*s.model).empty());
}

TEST(S0, SharesTwoNonStopwords)
{
    const Instance s = make_instance(
        "", "e1|label|the matrix reloaded\ne2|label|the godfather\ne3|label|the end\n", "",
        "f1|label|matrix reloaded\nf2|label|the godfather part\nf3|label|the end\n",
        "label|label|label\nparam|stopword_count|1\n");
    const auto pairs = s0_pairs(*s.model);
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0], (EntityPair{s.e1("e1"), s.e2("f1")}));
}

TEST(S0, CutoffAndDisable)
{
    const std::string prop1 = "e1|label|alpha beta gamma\ne2|label|delta\n";
    const std::string prop2 = "f1|label|gamma beta alpha\nf2|label|epsilon\n";
    const std::string mapping =
        "label|label|label\nparam|stopword_count|0\nparam|seed_mode|none\n";
    const Instance s = make_instance("", prop1, "", prop2, mapping + "param|s0_threshold|0.2\n");
    const RunResult r = run(*s.model);
    EXPECT_EQ(r.stats.s0_suggestions, 1u);
    ASSERT_EQ(r.matching.size(), 1u);

    // Full scores are at most (1 - alpha) on an empty seed: 0.75 filters all.
    const Instance strict = make_instance("", prop1, "", prop2, mapping);
    EXPECT_EQ(run(*strict.model).stats.s0_suggestions, 0u);

    const Instance off = make_instance("", prop1, "", prop2,
                                       mapping + "param|s0_threshold|0.2\nparam|use_s0|false\n");
    EXPECT_EQ(run(*off.model).stats.s0_suggestions, 0u);
    EXPECT_TRUE(run(*off.model).matching.empty());
}

TEST(Matcher, InjectedSeed)
{
    const Instance s = make_instance("a1|actedIn|m1\n", "a1|label|x\nm1|label|y\n",
                                     "b1|actedIn|f1\n", "b1|label|p\nf1|label|q\n",
                                     "rel|actedIn|actedIn\nlabel|label|label\n"
                                     "param|seed_mode|file\n");
    const std::vector<EntityPair> seed = {{s.e1("a1"), s.e2("b1")}};
    const RunResult r = run(*s.model, seed);
    EXPECT_EQ(r.matching.size(), 2u);
    EXPECT_TRUE(run(*s.model).matching.empty());
    const std::vector<EntityPair> bad = {{7, 0}};
    EXPECT_THROW(run(*s.model, bad), ConfigError);
}

TEST(Matcher, InvariantsOnRandomInstances)
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Instance s = make_instance(small_synth(seed));
        const RunSettings settings = RunSettings::from(s.model->config());
        const RunResult r = run(*s.model, settings);
        const RunResult again = run(*s.model, settings);
        EXPECT_TRUE(same_trace(r.matching, again.matching));
        ASSERT_EQ(r.details.size(), r.matching.size());
        for (std::size_t t = 0; t < r.matching.size(); ++t) {
            const auto& e = r.matching.trace()[t];
            EXPECT_EQ(e.iteration, t);
            EXPECT_EQ(r.matching.forward(e.pair.left), e.pair.right);
            if (r.details[t].source == CommitSource::Queue) {
                EXPECT_GT(e.score, settings.stop_threshold);
            }
        }
        EXPECT_EQ(r.stats.pops, r.stats.commits + r.stats.skips +
                                    (r.stopped_reason == StopReason::Threshold ? 1 : 0));
        EXPECT_EQ(r.matching.size(), r.stats.commits + r.stats.seed_commits);
    }
}

TEST(Matcher, LinearCommitsStaticScoresOnly)
{
    for (std::uint64_t seed = 2; seed <= 20; seed += 2) {
        const Instance s = make_instance(small_synth(seed));
        const RunResult r = run_linear(*s.model);
        EXPECT_EQ(r.stats.neighbor_suggestions, 0u);
        for (std::size_t t = 0; t < r.matching.size(); ++t) {
            const auto& e = r.matching.trace()[t];
            EXPECT_EQ(e.score, s.model->static_sim(e.pair.left, e.pair.right));
            if (r.details[t].source == CommitSource::Queue) {
                EXPECT_GT(e.score, s.model->config().stop_threshold);
            }
        }
    }
}

TEST(Matcher, LinearEqualsZeroAlphaWithoutRelationOverlap)
{
    for (std::uint64_t seed = 2; seed <= 12; seed += 2) {
        SynthInstance synth = small_synth(seed);
        synth.rel2.clear();
        const Instance s = make_instance(synth);
        RunSettings zero = RunSettings::from(s.model->config());
        zero.alpha = 0.0;
        const RunResult a = run(*s.model, zero);
        const RunResult b = run_linear(*s.model);
        EXPECT_TRUE(same_trace(a.matching, b.matching)) << seed;
        EXPECT_EQ(run(*s.model).stats.neighbor_suggestions, 0u);
    }
}
