#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "sigma/matcher.hpp"
#include "sigma/scoring.hpp"
#include "test_support.hpp"

using namespace sigma;
using namespace sigma::testing;

namespace {

constexpr double kTol = 1e-9;
const char* kUnitNoSmoothing = "label|label|label\nparam|string_weight|uniform\nparam|smoothing|0\n";

// n entities per KB with distinct years; entity 0 carries 1999 (a full date
// in KB1, a bare year in KB2) and the given labels.
Instance year_instance(std::size_t n, const std::string& label1, const std::string& label2,
                       const std::string& extra_mapping = "")
{
    std::string p1 = "e0|released|1999-12-11\ne0|label|" + label1 + "\n";
    std::string p2 = "f0|year|1999\nf0|label|" + label2 + "\n";
    for (std::size_t k = 1; k < n; ++k) {
        const std::string y = std::to_string(1999 - k);
        p1 += "e" + std::to_string(k) + "|released|" + y + "-01-01\n";
        p1 += "e" + std::to_string(k) + "|label|p" + std::to_string(k) + "\n";
        p2 += "f" + std::to_string(k) + "|year|" + y + "\n";
        p2 += "f" + std::to_string(k) + "|label|q" + std::to_string(k) + "\n";
    }
    return make_instance("", p1, "", p2,
                         std::string(kUnitNoSmoothing) + "prop|released|year|year\n" + extra_mapping);
}

// Movie m with n actors in each KB, plus an isolated entity in KB1.
Instance star_instance(int n, const std::string& extra_rel1 = "",
                       const std::string& extra_rel2 = "", const std::string& mapping = "")
{
    std::string r1 = extra_rel1;
    std::string r2 = extra_rel2;
    std::string p1 = "z|label|lonely\nm|label|movie\n";
    std::string p2 = "f|label|film\n";
    for (int k = 1; k <= n; ++k) {
        r1 += "a" + std::to_string(k) + "|actedIn|m\n";
        r2 += "b" + std::to_string(k) + "|actedIn|f\n";
    }
    return make_instance(r1, p1, r2, p2, "rel|actedIn|actedIn\nlabel|label|label\n" + mapping);
}

Matching diagonal_actors(const Instance& s, int n)
{
    Matching y(s.kb1().num_entities(), s.kb2().num_entities());
    for (int k = 1; k <= n; ++k) {
        const std::string id = std::to_string(k);
        EXPECT_TRUE(y.commit(s.e1("a" + id), s.e2("b" + id), 0.0, k - 1));
    }
    return y;
}

}  // namespace

TEST(StringSim, UnitWeightExamples)
{
    const Instance a = make_instance("", "e|label|the matrix\n", "", "f|label|matrix\n",
                                     kUnitNoSmoothing);
    EXPECT_NEAR(a.model->string_sim(0, 0), 2.0 / 3.0, kTol);

    const Instance b = make_instance("", "e|label|matrix\n", "", "f|label|matrix\n",
                                     "label|label|label\nparam|string_weight|uniform\n"
                                     "param|smoothing|1\n");
    EXPECT_NEAR(b.model->string_sim(0, 0), 2.0 / 3.0, kTol);

    const Instance c = make_instance("", "e|label|blood in\n", "", "f|label|bound by honor\n",
                                     kUnitNoSmoothing);
    EXPECT_EQ(c.model->string_sim(0, 0), 0.0);
}

TEST(StringSim, IdfWeightsAndAutoSmoothing)
{
    // Two entities per KB; "matrix" is unique, "the" is everywhere.
    const Instance s = make_instance("", "e1|label|the matrix\ne2|label|the end\n", "",
                                     "f1|label|the matrix\nf2|label|the start\n",
                                     "label|label|label\n");
    const double w = std::log10(2.0);
    const double smoothing = 2 * std::log10(2.0);
    EXPECT_NEAR(s.model->smoothing(), smoothing, kTol);
    EXPECT_NEAR(s.model->string_sim(s.e1("e1"), s.e2("f1")), 2 * w / (smoothing + 2 * w), kTol);
    EXPECT_EQ(s.model->string_sim(s.e1("e2"), s.e2("f2")), 0.0);
}

TEST(StringSim, WordOrderInvariantAndSymmetric)
{
    const Instance a = make_instance("", "e|label|blood in blood out\ng|label|x\n", "",
                                     "f|label|out blood in\nh|label|y\n", "label|label|label\n");
    const Instance b = make_instance("", "e|label|in out blood\ng|label|x\n", "",
                                     "f|label|blood out in\nh|label|y\n", "label|label|label\n");
    const Instance swapped = make_instance("", "f|label|out blood in\nh|label|y\n", "",
                                           "e|label|blood in blood out\ng|label|x\n",
                                           "label|label|label\n");
    const double v = a.model->string_sim(0, 0);
    EXPECT_GT(v, 0.0);
    EXPECT_EQ(b.model->string_sim(0, 0), v);
    EXPECT_NEAR(swapped.model->string_sim(0, 0), v, 1e-15);
}

TEST(LiteralSim, Kinds)
{
    const Literal date = Literal::parse("1999-12-11");
    EXPECT_EQ(literal_sim(date, Literal::parse("1999"), SimKind::Year), 1.0);
    EXPECT_EQ(literal_sim(date, Literal::parse("2000"), SimKind::Year), 0.0);
    EXPECT_EQ(literal_sim(Literal::parse("17"), Literal::parse("17"), SimKind::Exact), 1.0);
    EXPECT_EQ(literal_sim(Literal::parse("17"), Literal::parse("18"), SimKind::Exact), 0.0);
    EXPECT_EQ(literal_sim(Literal::parse("Blood, In"), Literal::parse("blood in"), SimKind::Exact),
              1.0);
    EXPECT_EQ(literal_sim(Literal::parse("unknown"), Literal::parse("1999"), SimKind::Year), 0.0);
}

TEST(PropertySim, UnitWeights)
{
    const Instance s = year_instance(10, "x", "y");
    EXPECT_NEAR(s.model->properties(Side::First).weight_sum(0), 1.0, kTol);
    EXPECT_NEAR(s.model->property_sim(s.e1("e0"), s.e2("f0")), 0.5, kTol);
    EXPECT_EQ(s.model->property_sim(s.e1("e0"), s.e2("f1")), 0.0);
}

TEST(PropertySim, WeightTwo)
{
    const Instance s = year_instance(100, "x", "y");
    EXPECT_NEAR(s.model->property_sim(s.e1("e0"), s.e2("f0")), 2.0 / 3.0, kTol);
}

TEST(PropertySim, NoMatchedProperties)
{
    const Instance s = make_instance("", "e|label|a\ne|born|1999\n", "", "f|label|a\nf|born|1999\n",
                                     "label|label|label\n");
    EXPECT_EQ(s.model->property_sim(0, 0), 0.0);
}

TEST(StaticSim, Combination)
{
    const Instance s = year_instance(10, "the matrix", "matrix");
    const EntityId i = s.e1("e0");
    const EntityId j = s.e2("f0");
    EXPECT_NEAR(s.model->string_sim(i, j), 2.0 / 3.0, kTol);
    EXPECT_NEAR(s.model->static_sim(i, j), 0.625, kTol);
}

TEST(GraphNorms, Gamma)
{
    const Instance s = star_instance(3);
    const ScoringModel& m = *s.model;
    EXPECT_NEAR(m.gamma(Side::First, s.e1("z")), 0.5, kTol);
    EXPECT_NEAR(m.gamma(Side::First, s.e1("m")), 1.0 / 8.0, kTol);
    EXPECT_NEAR(m.gamma(Side::First, s.e1("a1")), 1.0 / 4.0, kTol);
    EXPECT_EQ(m.neighbor_weight(Side::First, s.e1("a1"), s.e1("m")), 1.0);
    EXPECT_EQ(m.neighbor_weight(Side::First, s.e1("a1"), s.e1("z")), 0.0);
}

TEST(GraphNorms, InverseWeights)
{
    const Instance s =
        make_instance("a1|actedIn|m\na2|actedIn|m\nd|directed|m\nd|actedIn|m\n", "m|label|x\n",
                      "b|actedIn|f\n", "f|label|x\n",
                      "rel|actedIn|actedIn\nlabel|label|label\nparam|neighbor_weight|inverse\n");
    const ScoringModel& m = *s.model;
    // Three actors (a1, a2, d) but d is the sole director.
    EXPECT_NEAR(m.neighbor_weight(Side::First, s.e1("a1"), s.e1("m")), 1.0 / 3.0, kTol);
    EXPECT_NEAR(m.neighbor_weight(Side::First, s.e1("d"), s.e1("m")), 1.0, kTol);
    EXPECT_NEAR(m.neighbor_weight(Side::First, s.e1("m"), s.e1("a1")), 1.0, kTol);
    EXPECT_NEAR(m.gamma(Side::First, s.e1("m")), 0.5 / 4.0, kTol);
    EXPECT_NEAR(m.gamma(Side::First, s.e1("a1")), 0.5 / (1.0 + 1.0 / 3.0), kTol);
}

TEST(GraphNorms, InverseWeightTwoActors)
{
    const Instance s = make_instance("a1|actedIn|m\na2|actedIn|m\n", "m|label|x\n", "b|actedIn|f\n",
                                     "f|label|x\n",
                                     "rel|actedIn|actedIn\nlabel|label|label\n"
                                     "param|neighbor_weight|inverse\n");
    EXPECT_NEAR(s.model->neighbor_weight(Side::First, s.e1("a1"), s.e1("m")), 0.5, kTol);
}

TEST(CompatibleNeighbors, StarCrossProduct)
{
    const Instance s = star_instance(3, "d|directed|m\n", "g|directed|f\n",
                                     "rel|directed|directed\n");
    const auto n = s.model->compatible_neighbors(s.e1("m"), s.e2("f"));
    EXPECT_EQ(n.size(), 10u);
    EXPECT_TRUE(std::is_sorted(n.begin(), n.end()));
    EXPECT_TRUE(std::binary_search(n.begin(), n.end(), EntityPair{s.e1("d"), s.e2("g")}));
    EXPECT_FALSE(std::binary_search(n.begin(), n.end(), EntityPair{s.e1("d"), s.e2("b1")}));
    EXPECT_TRUE(s.model->compatible_neighbors(s.e1("z"), s.e2("f")).empty());

    // Unmatched director relation: only the 3 x 3 actor pairs.
    const Instance t = star_instance(3, "d|directed|m\n", "g|directed|f\n");
    EXPECT_EQ(t.model->compatible_neighbors(t.e1("m"), t.e2("f")).size(), 9u);
}

TEST(CompatibleNeighbors, DuplicateLinksCountOnce)
{
    const Instance s = make_instance("a|actedIn|m\na|directed|m\n", "m|label|x\n",
                                     "b|actedIn|f\nb|directed|f\n", "f|label|x\n",
                                     "rel|actedIn|actedIn\nrel|directed|directed\n"
                                     "label|label|label\n");
    EXPECT_EQ(s.model->compatible_neighbors(s.e1("m"), s.e2("f")).size(), 1u);
}

TEST(CompatibleNeighbors, SymmetricOnRandomInstances)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Instance s = make_instance(small_synth(seed, 30));
        const ScoringModel& m = *s.model;
        for (EntityId i = 0; i < s.kb1().num_entities(); ++i) {
            for (EntityId j = 0; j < s.kb2().num_entities(); ++j) {
                for (EntityPair kl : m.compatible_neighbors(i, j)) {
                    const auto back = m.compatible_neighbors(kl.left, kl.right);
                    EXPECT_TRUE(std::binary_search(back.begin(), back.end(), EntityPair{i, j}));
                    EXPECT_TRUE(m.compatible(i, kl.left, j, kl.right));
                }
            }
        }
    }
}

TEST(GraphScore, StarThree)
{
    const Instance s = star_instance(3);
    const Matching y = diagonal_actors(s, 3);
    const EntityId m = s.e1("m");
    const EntityId f = s.e2("f");
    EXPECT_NEAR(s.model->graph_score(m, f, y), 0.75, kTol);
    EXPECT_NEAR(s.model->graph_increment(m, f, y) - s.model->graph_score(m, f, y), 1.5, kTol);
    EXPECT_NEAR(s.model->graph_increment(m, f, y), 9.0 / 4.0, kTol);
    const Matching empty(s.kb1().num_entities(), s.kb2().num_entities());
    EXPECT_EQ(s.model->graph_score(m, f, empty), 0.0);
    EXPECT_EQ(s.model->graph_increment(m, f, empty), 0.0);
}

TEST(GraphScore, StarOne)
{
    const Instance s = star_instance(1);
    const Matching y = diagonal_actors(s, 1);
    EXPECT_NEAR(s.model->graph_score(s.e1("m"), s.e2("f"), y), 0.5, kTol);
    EXPECT_NEAR(s.model->graph_increment(s.e1("m"), s.e2("f"), y), 1.0, kTol);
}

TEST(PairScore, ChainNeighbour)
{
    const Instance s = chain_instance();
    Matching y(2, 2);
    ASSERT_TRUE(y.commit(s.e1("a1"), s.e2("b1"), 0.0, 0));
    const ScoreParts p = s.model->pair_score(s.e1("m1"), s.e2("f1"), y);
    EXPECT_EQ(p.static_sim, 0.0);
    EXPECT_NEAR(p.graph_inc, 1.0, kTol);
    EXPECT_NEAR(p.total, 1.0 / 3.0, kTol);
}

TEST(PairScore, StaticOnly)
{
    const Instance s = make_instance("", "e|label|a b c d e\n", "", "f|label|a b c x y\n",
                                     std::string(kUnitNoSmoothing) + "param|beta|0\n");
    const Matching empty(1, 1);
    const ScoreParts p = s.model->pair_score(0, 0, empty);
    EXPECT_NEAR(p.static_sim, 0.6, kTol);
    EXPECT_NEAR(p.total, 0.4, kTol);
    EXPECT_NEAR(s.model->pair_score(0, 0, empty, 0.0).total, p.static_sim, kTol);
}

TEST(PairScore, PartsAreConsistent)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Instance s = make_instance(small_synth(seed, 30));
        const RunResult r = run(*s.model);
        const double alpha = s.model->config().alpha;
        const double beta = s.model->config().beta;
        for (EntityId i = 0; i < s.kb1().num_entities(); ++i) {
            for (EntityId j = 0; j < s.kb2().num_entities(); ++j) {
                const ScoreParts p = s.model->pair_score(i, j, r.matching);
                EXPECT_NEAR(p.static_sim, (1 - beta) * p.string_sim + beta * p.prop_sim, 1e-12);
                EXPECT_NEAR(p.total, (1 - alpha) * p.static_sim + alpha * p.graph_inc, 1e-12);
                EXPECT_GE(p.graph_inc + 1e-12, s.model->graph_score(i, j, r.matching));
            }
        }
    }
}

// With unit weights and no smoothing the string formula reduces to
// 2|A n B| / (|A| + |B|) on word sets.
TEST(StringSim, UnitWeightsGiveSetOverlapCoefficient)
{
    std::mt19937 rng(17);
    std::string p1;
    std::string p2;
    std::vector<std::set<int>> a(200);
    std::vector<std::set<int>> b(200);
    for (int k = 0; k < 200; ++k) {
        std::string l1;
        std::string l2;
        for (int t = 0, n = 1 + static_cast<int>(rng() % 5); t < n; ++t) {
            const int w = static_cast<int>(rng() % 12);
            a[k].insert(w);
            l1 += "w" + std::to_string(w) + " ";
        }
        for (int t = 0, n = 1 + static_cast<int>(rng() % 5); t < n; ++t) {
            const int w = static_cast<int>(rng() % 12);
            b[k].insert(w);
            l2 += "w" + std::to_string(w) + " ";
        }
        p1 += "e" + std::to_string(k) + "|label|" + l1 + "\n";
        p2 += "f" + std::to_string(k) + "|label|" + l2 + "\n";
    }
    const Instance s = make_instance("", p1, "", p2, kUnitNoSmoothing);
    for (int k = 0; k < 200; ++k) {
        std::vector<int> common;
        std::set_intersection(a[k].begin(), a[k].end(), b[k].begin(), b[k].end(),
                              std::back_inserter(common));
        const double dice = 2.0 * static_cast<double>(common.size()) /
                            static_cast<double>(a[k].size() + b[k].size());
        EXPECT_EQ(s.model->string_sim(s.e1("e" + std::to_string(k)), s.e2("f" + std::to_string(k))),
                  dice);
    }
}
