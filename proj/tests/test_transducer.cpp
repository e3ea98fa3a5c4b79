#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "naturegames/harness.hpp"
#include "naturegames/parity.hpp"
#include "naturegames/transducer.hpp"

using namespace ng;

namespace {
StepEvent pri(int p) { return {p, Flag::None}; }
StepEvent ev(int p, Flag f) { return {p, f}; }
StepEvent gadget() { return {std::nullopt, Flag::None}; }
}  // namespace

TEST_CASE("avoid-condition transducer on simple lassos") {
    PriorityTransducer t = compile_hat(1);
    CHECK(t.neutral == 2);
    CHECK(t.state_count() == 3);
    // obey every round, block minimum 0: accept
    CHECK(eval_on_lasso(t, {}, {pri(1), ev(0, Flag::Obey)}));
    // obey every round, block minimum 1: reject
    CHECK(!eval_on_lasso(t, {}, {ev(1, Flag::Obey)}));
    // no obey after the handle: accept regardless of priorities
    CHECK(eval_on_lasso(t, {ev(1, Flag::Obey)}, {pri(1), ev(1, Flag::Disobey)}));
}

TEST_CASE("budget-condition transducer on simple lassos") {
    PriorityTransducer t = compile_check(1);
    CHECK(t.state_count() == 2);
    CHECK(eval_on_lasso(t, {}, {pri(1), gadget()}));                       // no zero step
    CHECK(!eval_on_lasso(t, {ev(1, Flag::Zero)}, {pri(1)}));               // zero, then odd
    CHECK(eval_on_lasso(t, {ev(0, Flag::Zero)}, {pri(0), gadget()}));      // zero, then even
}

TEST_CASE("density-condition transducer on simple lassos") {
    PriorityTransducer t = compile_tilde(1);
    CHECK(t.state_count() == 3);
    CHECK(eval_on_lasso(t, {}, {ev(0, Flag::Top), ev(1, Flag::Follow)}));
    CHECK(eval_on_lasso(t, {}, {ev(1, Flag::Bot), ev(1, Flag::Deviate)}));
    CHECK(!eval_on_lasso(t, {}, {ev(0, Flag::Bot), ev(0, Flag::Follow)}));
    // top recurring but odd block minimum: reject
    CHECK(!eval_on_lasso(t, {}, {ev(1, Flag::Top), ev(1, Flag::Follow)}));
}

TEST_CASE("illegal flags are rejected per condition") {
    CHECK_THROWS_AS(compile_hat(0).step(0, ev(0, Flag::Top)), ValidationError);
    CHECK_THROWS_AS(compile_check(0).step(0, ev(0, Flag::Obey)), ValidationError);
    CHECK_THROWS_AS(compile_tilde(0).step(0, gadget()), ValidationError);
    CHECK_THROWS_AS(compile_hat(-1), ValidationError);
}

TEST_CASE("product of a single self-loop with the avoid condition") {
    PriorityTransducer t = compile_hat(1);
    {
        EventGame g;
        Vertex v = g.add_vertex("v", Owner::Eloise);
        g.add_edge(v, v, pri(0));
        g.seed_priority = 0;
        ProductResult pr = product(g, t);
        CHECK(solve_parity(pr.game).eloise_wins_initial);
    }
    {
        EventGame g;
        Vertex v = g.add_vertex("v", Owner::Eloise);
        g.add_edge(v, v, ev(1, Flag::Obey));
        g.seed_priority = 1;
        ProductResult pr = product(g, t);
        CHECK(!solve_parity(pr.game).eloise_wins_initial);
    }
}

TEST_CASE("product subdivision keeps main vertices neutral") {
    EventGame g;
    Vertex a = g.add_vertex("a", Owner::Eloise);
    Vertex b = g.add_vertex("b", Owner::Abelard);
    g.add_edge(a, b, pri(1));
    g.add_edge(b, a, ev(0, Flag::Obey));
    g.seed_priority = 0;
    PriorityTransducer t = compile_hat(1);
    ProductResult pr = product(g, t);
    // every main vertex priority strictly above every emission
    for (std::size_t i = 0; i < pr.main_states.size(); ++i) {
        int p = pr.game.priority[pr.main_index[i]];
        CHECK(p % 2 == 0);
        CHECK(p > t.max_emitted());
    }
}

TEST_CASE("the product rejects events outside the condition's vocabulary") {
    EventGame g;
    Vertex v = g.add_vertex("v", Owner::Eloise);
    g.add_edge(v, v, {0, Flag::Top});
    g.seed_priority = 0;
    CHECK_THROWS_AS(product(g, compile_hat(1)), ValidationError);
}

TEST_CASE("lassos need a nonempty loop") {
    CHECK_THROWS_AS(eval_on_lasso(compile_hat(1), {}, {}), ValidationError);
}

TEST_CASE("transducers agree with the defining formulas on random lassos") {
    HarnessConfig cfg;
    cfg.seed = 3;
    cfg.lassos = 2000;
    SuiteReport rep = suite_transducer(cfg);
    CHECK(rep.cases == 3 * 2000);
    CHECK(rep.violations == 0);
}

TEST_CASE("block minima track the liminf") {
    HarnessConfig cfg;
    cfg.seed = 3;
    cfg.lassos = 2000;
    SuiteReport rep = suite_block_minimum(cfg);
    CHECK(rep.violations == 0);
}
