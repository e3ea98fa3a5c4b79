#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "naturegames/classifier.hpp"
#include "naturegames/harness.hpp"
#include "naturegames/io.hpp"

using namespace ng;

namespace {

PointedGraph nature_pair_graph() {
    NatureGame g = parse_game_text(read_file(std::string(FIXTURES_DIR) + "/nature_pair_graph.json"));
    PointedGraph pg;
    pg.succ = g.succ;
    pg.priority = g.priority;
    pg.point = g.initial;
    pg.labels = g.names;
    return pg;
}

PointedGraph self_loop(int priority) {
    PointedGraph g;
    g.succ = {{0}};
    g.priority = {priority};
    g.point = 0;
    g.labels = {"v"};
    return g;
}

}  // namespace

TEST_CASE("odd self-loop has exactly one losing branch") {
    BranchCardinality c = classify_losing(self_loop(1));
    CHECK(c.kind == BranchCardinality::Kind::Finite);
    CHECK(c.count == 1);
    CHECK(verify_lasso_list(self_loop(1), c.lassos));
}

TEST_CASE("the two-vertex Nature game has countably many losing branches") {
    CHECK(classify_losing(nature_pair_graph()).kind == BranchCardinality::Kind::CountablyInfinite);
}

TEST_CASE("an all-odd clique has a continuum of losing branches") {
    PointedGraph g;
    g.succ = {{0, 1}, {0, 1}};
    g.priority = {1, 1};
    g.point = 0;
    g.labels = {"a", "b"};
    BranchCardinality c = classify_losing(g);
    CHECK(c.kind == BranchCardinality::Kind::Uncountable);
    REQUIRE(c.witness.has_value());
    CHECK(verify_cycle_witness(g, *c.witness));
}

TEST_CASE("losing lasso enumeration on the odd self-loop") {
    auto lassos = enumerate_losing_lassos(self_loop(1), 1, 1);
    REQUIRE(lassos.size() == 1);
    CHECK(lassos[0].handle.empty());
    CHECK(lassos[0].loop == std::vector<Vertex>{0});
}

TEST_CASE("losing lassos of the two-vertex Nature game, bounds (3,2)") {
    auto lassos = enumerate_losing_lassos(nature_pair_graph(), 3, 2);
    CHECK(lassos.size() == 4);
}

TEST_CASE("winning classification shifts the parity") {
    CHECK(classify_winning(self_loop(0)).kind == BranchCardinality::Kind::Finite);
    CHECK(classify_winning(self_loop(0)).count == 1);
    CHECK(classify_winning(nature_pair_graph()).kind == BranchCardinality::Kind::Uncountable);
    PointedGraph clique;
    clique.succ = {{0, 1}, {0, 1}};
    clique.priority = {1, 1};
    clique.point = 0;
    BranchCardinality c = classify_winning(clique);
    CHECK(c.kind == BranchCardinality::Kind::Finite);
    CHECK(c.count == 0);
}

TEST_CASE("normal forms identify equal branches") {
    Lasso a{{0}, {1, 2}};
    Lasso b{{0, 1}, {2, 1}};
    CHECK(normalize_lasso(a) == normalize_lasso(b));
    Lasso doubled{{}, {1, 2, 1, 2}};
    Lasso simple{{}, {1, 2}};
    CHECK(normalize_lasso(doubled) == normalize_lasso(simple));
}

TEST_CASE("adding edges never shrinks the verdict") {
    auto rank = [](const BranchCardinality& c) {
        switch (c.kind) {
            case BranchCardinality::Kind::Finite: return static_cast<long long>(c.count);
            case BranchCardinality::Kind::CountablyInfinite: return (1LL << 40);
            default: return (1LL << 50);
        }
    };
    Rng rng(23);
    for (int i = 0; i < 120; ++i) {
        PointedGraph g = random_pointed_graph(rng, 4, 2);
        BranchCardinality before = classify_losing(g);
        Vertex from = static_cast<Vertex>(rng.below(g.size()));
        Vertex to = static_cast<Vertex>(rng.below(g.size()));
        auto& sl = g.succ[from];
        if (std::find(sl.begin(), sl.end(), to) != sl.end()) continue;
        sl.insert(std::lower_bound(sl.begin(), sl.end(), to), to);
        BranchCardinality after = classify_losing(g);
        CHECK(rank(after) >= rank(before));
    }
}

TEST_CASE("loop vertex sets of odd lassos sit inside a trap") {
    Rng rng(29);
    for (int i = 0; i < 200; ++i) {
        PointedGraph g = random_pointed_graph(rng, 4, 2);
        // random lasso from the point
        std::vector<Vertex> walk{g.point};
        for (int k = 0; k < 6; ++k) {
            const auto& sl = g.succ[walk.back()];
            walk.push_back(sl[rng.below(sl.size())]);
        }
        // close a loop wherever possible
        const auto& sl = g.succ[walk.back()];
        Vertex back = kNoVertex;
        std::size_t loop_start = 0;
        for (std::size_t j = 0; j < walk.size(); ++j)
            if (std::find(sl.begin(), sl.end(), walk[j]) != sl.end()) {
                back = walk[j];
                loop_start = j;
                break;
            }
        if (back == kNoVertex) continue;
        std::vector<Vertex> loop(walk.begin() + loop_start, walk.end());
        int liminf = g.priority[loop[0]];
        for (Vertex v : loop) liminf = std::min(liminf, g.priority[v]);
        if (liminf % 2 == 0) continue;
        // the loop's vertex set must sit inside the priority >= liminf region,
        // strongly connected (it is a closed walk), and contain a liminf vertex
        for (Vertex v : loop) CHECK(g.priority[v] >= liminf);
    }
}

TEST_CASE("trichotomy on the exhaustive and sampled corpus") {
    HarnessConfig cfg;
    cfg.seed = 31;
    SuiteReport rep = suite_classifier_oracle(cfg);
    CHECK(rep.violations == 0);
    CHECK(rep.guard_overflows == 0);
}
