#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "naturegames/harness.hpp"
#include "naturegames/io.hpp"
#include "naturegames/parity.hpp"
#include "naturegames/topology.hpp"

using namespace ng;

namespace {

NatureGame load(const std::string& name) {
    return parse_game_text(read_file(std::string(FIXTURES_DIR) + "/" + name));
}

}  // namespace

TEST_CASE("an already alternating game normalizes to itself") {
    NatureGame t1 = load("t1.json");
    AlternatingGame a = alternate_normalize(t1);
    CHECK(a.game.size() == t1.size());
    CHECK(a.game.edge_count() == t1.edge_count());
}

TEST_CASE("an Eloise-to-Eloise edge gets one dummy") {
    NatureGame g;
    Vertex e1 = g.add_vertex("e1", Owner::Eloise, 0);
    Vertex e2 = g.add_vertex("e2", Owner::Eloise, 1);
    Vertex n = g.add_vertex("n", Owner::Nature, 0);
    g.add_edge(e1, e2);
    g.add_edge(e2, n);
    g.add_edge(n, e1);
    g.initial = e1;
    AlternatingGame a = alternate_normalize(g);
    CHECK(a.game.size() == g.size() + 1);
    CHECK(validate_game(a.game).empty());
    CHECK(a.dummy_priority == 2);
}

TEST_CASE("a Nature self-loop gets a dummy Eloise vertex") {
    NatureGame g;
    Vertex e = g.add_vertex("e", Owner::Eloise, 0);
    Vertex n = g.add_vertex("n", Owner::Nature, 1);
    g.add_edge(e, n);
    g.add_edge(n, n);
    g.add_edge(n, e);
    g.initial = e;
    AlternatingGame a = alternate_normalize(g);
    CHECK(a.game.size() == 3);
    bool found = false;
    for (Vertex v = 0; v < a.game.size(); ++v)
        if (a.source_of[v] == kNoVertex && a.game.owner[v] == Owner::Eloise) found = true;
    CHECK(found);
}

TEST_CASE("normalization rejects Abelard vertices") {
    NatureGame g = load("single_leak.json");
    CHECK_THROWS_AS(alternate_normalize(g), ValidationError);
}

TEST_CASE("simulation arena of the contrast fixture has the displayed size") {
    AlternatingGame a = alternate_normalize(load("t1.json"));
    TildeGame tg = build_tilde(a);
    CHECK(tg.game.size() == 10);  // 2 mains + 2*2*2 gadgets
}

TEST_CASE("gadgets of an out-degree-one Nature vertex only follow") {
    AlternatingGame a = alternate_normalize(load("t1.json"));
    TildeGame tg = build_tilde(a);
    Vertex m = *a.game.vertex_by_name("m");
    for (Vertex v = 0; v < tg.game.size(); ++v) {
        if (!tg.info[v].gadget || tg.info[v].nature != m) continue;
        if (tg.info[v].pointer != *a.game.vertex_by_name("g")) continue;
        for (const auto& e : tg.game.succ[v]) CHECK(e.event.flag == Flag::Follow);
    }
}

TEST_CASE("non-alternating input is rejected by the simulation builder") {
    NatureGame g;
    Vertex e1 = g.add_vertex("e1", Owner::Eloise, 0);
    Vertex e2 = g.add_vertex("e2", Owner::Eloise, 0);
    g.add_edge(e1, e2);
    g.add_edge(e2, e1);
    g.initial = e1;
    AlternatingGame fake;
    fake.game = g;
    fake.source_of = {0, 1};
    fake.dummy_edge = {{kNoVertex, kNoVertex}, {kNoVertex, kNoVertex}};
    CHECK_THROWS_AS(build_tilde(fake), ValidationError);
}

TEST_CASE("contrast pair: topologically good but not surely winning") {
    NatureGame t1 = load("t1.json");
    CHECK(!solve_parity(to_adversarial_parity(t1)).eloise_wins_initial);
    Decision d = decide_topo_good(t1);
    CHECK(d.yes);
    REQUIRE(d.strategy.has_value());
    // single losing branch (e n)^w is nowhere dense: no losing cone
    OutcomeGraph og = restrict_by_strategy(t1, *d.strategy);
    BranchCardinality c = classify_losing(og.graph);
    CHECK(c.kind == BranchCardinality::Kind::Finite);
    CHECK(c.count == 1);
}

TEST_CASE("the trap fixture has a losing cone and no good strategy") {
    NatureGame t2 = load("t2.json");
    CHECK(!decide_topo_good(t2).yes);
}

TEST_CASE("a branchless even loop is topologically good") {
    NatureGame g;
    Vertex e = g.add_vertex("e", Owner::Eloise, 0);
    Vertex n = g.add_vertex("n", Owner::Nature, 0);
    g.add_edge(e, n);
    g.add_edge(n, e);
    g.initial = e;
    CHECK(decide_topo_good(g).yes);
}

TEST_CASE("topology suite invariants hold on a seeded population") {
    HarnessConfig cfg;
    cfg.seed = 53;
    cfg.cases = 300;
    SuiteReport rep = suite_topology(cfg);
    CHECK(rep.cases == 300);
    CHECK(rep.violations == 0);
}
