#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "naturegames/harness.hpp"
#include "naturegames/imperfect.hpp"
#include "naturegames/io.hpp"
#include "naturegames/parity.hpp"
#include "naturegames/topology.hpp"

using namespace ng;

namespace {

ImperfectArena load_arena(const std::string& name) {
    return parse_imperfect(Json::parse(read_file(std::string(FIXTURES_DIR) + "/" + name)));
}

Vertex by_name(const ImperfectArena& a, const std::string& n) {
    for (Vertex v = 0; v < a.size(); ++v)
        if (a.names[v] == n) return v;
    REQUIRE(false);
    return kNoVertex;
}

}  // namespace

TEST_CASE("the matching-bits arena validates cleanly") {
    ImperfectArena a = load_arena("matching_bits.json");
    CHECK(validate_imperfect(a).empty());
}

TEST_CASE("class constancy violations are reported") {
    ImperfectArena a = load_arena("matching_bits.json");
    a.priority[by_name(a, "v0")] = 0;  // breaks constancy on the {v0, v1} class
    bool found = false;
    for (const auto& d : validate_imperfect(a)) found |= d.invariant == "class-priority";
    CHECK(found);

    ImperfectArena b = load_arena("matching_bits.json");
    b.obs[by_name(b, "v")] = b.obs[by_name(b, "v0")];
    found = false;
    for (const auto& d : validate_imperfect(b)) found |= d.invariant == "class-owner";
    CHECK(found);
}

TEST_CASE("avoid-table sizes follow the class-local out-degrees") {
    ImperfectArena a = load_arena("matching_bits.json");
    ImperfectEventGame hat = build_hat_imperfect(a);
    // sharp at the {v0, v1} class: 2 choices per member
    int sharp = 0, n_at_inner = 0;
    Vertex v0 = by_name(a, "v0");
    Vertex v00 = by_name(a, "v00");
    for (std::size_t act = 0; act < hat.action_names.size(); ++act) {
        if (!hat.act[v0][act].empty() && hat.action_gamma[act] == 0) ++sharp;
        if (!hat.act[v00][act].empty() && hat.action_gamma[act] == 3) ++n_at_inner;
    }
    CHECK(sharp == 4);
    CHECK(n_at_inner == 1);
}

TEST_CASE("identity observations degenerate the avoid tables to singletons") {
    ImperfectArena a;
    a.add_action("g");
    Vertex x = a.add_vertex("x", Owner::Eloise, 0);
    Vertex y = a.add_vertex("y", Owner::Eloise, 1);
    a.delta_e[x][0] = {x, y};
    a.delta_e[y][0] = {x};
    a.initial = x;
    ImperfectEventGame hat = build_hat_imperfect(a);
    int at_x = 0;
    for (std::size_t act = 0; act < hat.action_names.size(); ++act)
        if (!hat.act[x][act].empty()) ++at_x;
    CHECK(at_x == 2);  // one per avoided successor
}

TEST_CASE("the bounded solver finds the lucky-mimic witness on the matching-bits game") {
    ImperfectArena a = load_arena("matching_bits.json");
    ImperfectEventGame hat = build_hat_imperfect(a);
    std::optional<ObsStrategy> s = solve_imperfect_bounded(hat, 1);
    REQUIRE(s.has_value());
    CHECK(verify_obs_strategy(hat, *s));
    // at the post-Nature class the action component is N
    Vertex v00 = by_name(a, "v00");
    int act = s->move_at(0, a.obs[v00]);
    REQUIRE(act >= 0);
    CHECK(a.actions[hat.action_gamma[act]] == "N");
}

TEST_CASE("a totally blind all-odd game admits no strategy within bounds") {
    ImperfectArena a;
    a.add_action("g");
    Vertex x = a.add_vertex("x", Owner::Eloise, 1);
    Vertex y = a.add_vertex("y", Owner::Eloise, 1);
    a.delta_e[x][0] = {x, y};
    a.delta_e[y][0] = {x, y};
    a.obs[x] = 0;
    a.obs[y] = 0;
    a.initial = x;
    ImperfectEventGame hat = build_hat_imperfect(a);
    CHECK(!solve_imperfect_bounded(hat, 2).has_value());
}

TEST_CASE("verification rejects the always-zero strategy on the matching-bits game") {
    ImperfectArena a = load_arena("matching_bits.json");
    ImperfectEventGame hat = build_hat_imperfect(a);
    // always play bit 0 at the inner class, sharp elsewhere
    ObsStrategy s;
    s.n_obs = hat.obs_count();
    s.memory = 1;
    s.m0 = 0;
    s.up.assign(s.n_obs, 0);
    s.move.assign(s.n_obs, -1);
    Vertex v00 = by_name(a, "v00");
    for (Vertex v = 0; v < a.size(); ++v) {
        if (a.owner[v] != Owner::Eloise) continue;
        int wanted = a.obs[v] == a.obs[v00] ? 1 : 0;  // gamma id: "0" is action 1
        for (std::size_t act = 0; act < hat.action_names.size(); ++act)
            if (!hat.act[v][act].empty() && hat.action_gamma[act] == wanted) {
                s.move[a.obs[v]] = static_cast<int>(act);
                break;
            }
    }
    CHECK(!verify_obs_strategy(hat, s));
}

TEST_CASE("all-even games verify under any strategy") {
    ImperfectArena a;
    a.add_action("g");
    Vertex x = a.add_vertex("x", Owner::Eloise, 0);
    a.delta_e[x][0] = {x};
    a.initial = x;
    ImperfectEventGame hat = build_hat_imperfect(a);
    std::optional<ObsStrategy> s = solve_imperfect_bounded(hat, 1);
    REQUIRE(s.has_value());
    CHECK(verify_obs_strategy(hat, *s));
}

TEST_CASE("Banach-Mazur reduction sizes and rejection of Abelard") {
    ImperfectArena topo = load_arena("matching_bits_oneplayer.json");
    ImperfectEventGame tilde = build_tilde_imperfect(topo);
    CHECK(tilde.size() == topo.size() * 4);
    ImperfectArena full = load_arena("matching_bits.json");
    CHECK_THROWS_AS(build_tilde_imperfect(full), ValidationError);
}

TEST_CASE("the one-player matching-bits restriction is topologically good") {
    ImperfectArena a = load_arena("matching_bits_oneplayer.json");
    ImperfectEventGame tilde = build_tilde_imperfect(a);
    std::optional<ObsStrategy> s = solve_imperfect_bounded(tilde, 1);
    REQUIRE(s.has_value());
    CHECK(verify_obs_strategy(tilde, *s));
}

TEST_CASE("perfect-information lift agrees with the direct topology route") {
    NatureGame t1 = parse_game_text(read_file(std::string(FIXTURES_DIR) + "/t1.json"));
    // lift: Eloise vertices keep one action per successor; Nature vertices
    // become Eloise vertices with a single Nature-resolved action
    ImperfectArena a;
    int act_pick0 = a.add_action("pick0");
    int act_pick1 = a.add_action("pick1");
    for (Vertex v = 0; v < t1.size(); ++v) a.add_vertex(t1.names[v], Owner::Eloise, t1.priority[v]);
    for (Vertex v = 0; v < t1.size(); ++v) {
        if (t1.owner[v] == Owner::Eloise) {
            for (std::size_t i = 0; i < t1.succ[v].size(); ++i)
                a.delta_e[v][i == 0 ? act_pick0 : act_pick1] = {t1.succ[v][i]};
        } else {
            a.delta_e[v][act_pick0] = t1.succ[v];
        }
    }
    a.initial = t1.initial;
    ImperfectEventGame tilde = build_tilde_imperfect(a);
    std::optional<ObsStrategy> s = solve_imperfect_bounded(tilde, 1);
    CHECK(s.has_value() == decide_topo_good(t1).yes);
}

TEST_CASE("knowledge construction on identity observations mirrors the arena") {
    ImperfectArena a;
    a.add_action("g");
    Vertex x = a.add_vertex("x", Owner::Eloise, 0);
    Vertex y = a.add_vertex("y", Owner::Eloise, 1);
    a.delta_e[x][0] = {x, y};
    a.delta_e[y][0] = {x};
    a.initial = x;
    KnowledgeGame kg = knowledge_construction(a);
    CHECK(kg.main_vertices.size() == 2);
    CHECK(solve_parity(kg.game).eloise_wins_initial ==
          solve_parity(expand_two_player(a)).eloise_wins_initial);
}

TEST_CASE("knowledge sets grow along observation classes") {
    ImperfectArena a;
    a.add_action("g");
    Vertex x = a.add_vertex("a", Owner::Eloise, 0);
    Vertex y = a.add_vertex("b", Owner::Eloise, 0);
    a.delta_e[x][0] = {x, y};
    a.delta_e[y][0] = {x, y};
    a.obs[x] = 0;
    a.obs[y] = 0;
    a.initial = x;
    KnowledgeGame kg = knowledge_construction(a);
    REQUIRE(kg.main_vertices.size() == 2);
    CHECK(kg.knowledge[0] == std::vector<Vertex>{x});
    CHECK(kg.knowledge[1] == std::vector<Vertex>{x, y});
}

TEST_CASE("sure Buchi play of the matching-bits game favours Abelard") {
    ImperfectArena a = load_arena("matching_bits.json");
    KnowledgeGame kg = knowledge_construction(a);
    CHECK(!solve_parity(kg.game).eloise_wins_initial);
}

namespace {

// Independent route for the universal check: a violating play exists iff two
// designated features lie on a common cycle, decided by pairwise reachability
// instead of SCC decomposition.
struct FlatProduct {
    std::vector<std::vector<std::pair<Vertex, Flag>>> succ;
    std::vector<int> priority;
    std::vector<int> phase;
    bool illegal = false;
};

FlatProduct flat_product(const ImperfectEventGame& g, const ObsStrategy& s) {
    FlatProduct out;
    std::map<std::pair<Vertex, int>, Vertex> index;
    std::vector<std::pair<Vertex, int>> states;
    std::vector<Vertex> work;
    auto intern = [&](Vertex v, int m) {
        auto key = std::make_pair(v, m);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        Vertex id = static_cast<Vertex>(states.size());
        index.emplace(key, id);
        states.push_back(key);
        out.succ.emplace_back();
        out.priority.push_back(g.priority[v]);
        out.phase.push_back(g.phase[v]);
        work.push_back(id);
        return id;
    };
    intern(g.initial, s.m0);
    while (!work.empty()) {
        Vertex id = work.back();
        work.pop_back();
        auto [v, m] = states[id];
        std::vector<std::pair<Vertex, Flag>> nexts;
        if (g.owner[v] == Owner::Eloise) {
            int act = s.move_at(m, g.obs[v]);
            if (act < 0 || g.act[v][act].empty()) {
                out.illegal = true;
                continue;
            }
            nexts = g.act[v][act];
        } else {
            for (Vertex w : g.abelard_succ[v]) nexts.push_back({w, Flag::None});
        }
        for (auto [w, f] : nexts) {
            Vertex tid = intern(w, s.up_at(m, g.obs[w]));
            out.succ[id].push_back({tid, f});
        }
    }
    return out;
}

// vertices reachable from `from` through at least one edge, inside prio >= c
std::vector<char> mask_reach(const FlatProduct& p, int c, Vertex from) {
    std::vector<char> seen(p.succ.size(), 0);
    std::vector<Vertex> work;
    if (p.priority[from] >= c)
        for (auto [w, f] : p.succ[from])
            if (p.priority[w] >= c && !seen[w]) {
                seen[w] = 1;
                work.push_back(w);
            }
    while (!work.empty()) {
        Vertex v = work.back();
        work.pop_back();
        for (auto [w, f] : p.succ[v])
            if (p.priority[w] >= c && !seen[w]) {
                seen[w] = 1;
                work.push_back(w);
            }
    }
    return seen;
}

bool oracle_verify(const ImperfectEventGame& g, const ObsStrategy& s) {
    FlatProduct p = flat_product(g, s);
    if (p.illegal) return false;
    std::size_t n = p.succ.size();
    std::vector<int> prios = p.priority;
    std::sort(prios.begin(), prios.end());
    prios.erase(std::unique(prios.begin(), prios.end()), prios.end());
    if (g.condition == Condition::Hat) {
        // odd c, obey edge (u -> w): violating iff w reaches u inside prio >= c
        for (int c : prios) {
            if (c % 2 == 0) continue;
            for (Vertex u = 0; u < n; ++u) {
                if (p.priority[u] < c) continue;
                for (auto [w, f] : p.succ[u]) {
                    if (f != Flag::Obey || p.priority[w] < c) continue;
                    std::vector<char> r = mask_reach(p, c, w);
                    if (!r[u]) continue;
                    // some cycle through the edge must also carry priority c
                    for (Vertex y = 0; y < n; ++y) {
                        if (p.priority[y] != c || !r[y]) continue;
                        std::vector<char> back = mask_reach(p, c, y);
                        if (back[u]) return false;
                    }
                }
            }
        }
        return true;
    }
    // tilde: all-Eloise-phase cycle, or odd cycle through an Eloise phase
    for (Vertex u = 0; u < n; ++u) {
        if (p.phase[u] != 1) continue;
        // cycle through u using only phase-1 vertices
        std::vector<char> seen(n, 0);
        std::vector<Vertex> work{u};
        bool cycle = false;
        while (!work.empty() && !cycle) {
            Vertex v = work.back();
            work.pop_back();
            for (auto [w, f] : p.succ[v]) {
                if (p.phase[w] != 1) continue;
                if (w == u) cycle = true;
                if (!seen[w]) {
                    seen[w] = 1;
                    work.push_back(w);
                }
            }
        }
        if (cycle) return false;
    }
    for (int c : prios) {
        if (c % 2 == 0) continue;
        for (Vertex x = 0; x < n; ++x) {
            if (p.phase[x] != 1 || p.priority[x] < c) continue;
            std::vector<char> from_x = mask_reach(p, c, x);
            for (Vertex y = 0; y < n; ++y) {
                if (p.priority[y] != c || !from_x[y]) continue;
                std::vector<char> back = mask_reach(p, c, y);
                if (back[x]) return false;
            }
        }
    }
    return true;
}

ObsStrategy random_obs_strategy(Rng& rng, const ImperfectEventGame& g, int memory) {
    ObsStrategy s;
    s.n_obs = g.obs_count();
    s.memory = memory;
    s.m0 = 0;
    s.up.assign(static_cast<std::size_t>(memory) * s.n_obs, 0);
    s.move.assign(static_cast<std::size_t>(memory) * s.n_obs, -1);
    for (int m = 0; m < memory; ++m)
        for (int o = 0; o < s.n_obs; ++o) {
            s.up[static_cast<std::size_t>(m) * s.n_obs + o] = static_cast<int>(rng.below(memory));
            // a random action enabled at some member of the class
            std::vector<int> options;
            for (Vertex v = 0; v < g.size(); ++v) {
                if (g.obs[v] != o || g.owner[v] != Owner::Eloise) continue;
                for (std::size_t a = 0; a < g.act[v].size(); ++a)
                    if (!g.act[v][a].empty()) options.push_back(static_cast<int>(a));
            }
            if (!options.empty())
                s.move[static_cast<std::size_t>(m) * s.n_obs + o] =
                    options[rng.below(options.size())];
        }
    return s;
}

}  // namespace

TEST_CASE("the universal check agrees with a pairwise-reachability oracle") {
    Rng rng(67);
    std::size_t hats = 0, tildes = 0;
    for (int i = 0; i < 150; ++i) {
        ImperfectArena a = random_imperfect_arena(rng);
        ImperfectEventGame hat = build_hat_imperfect(a);
        for (int rep = 0; rep < 4; ++rep) {
            ObsStrategy s = random_obs_strategy(rng, hat, 1 + rng.below(2));
            CHECK(verify_obs_strategy(hat, s) == oracle_verify(hat, s));
            ++hats;
        }
        bool has_abelard = false;
        for (Owner o : a.owner) has_abelard |= o == Owner::Abelard;
        if (has_abelard) continue;
        ImperfectEventGame tilde_game = build_tilde_imperfect(a);
        for (int rep = 0; rep < 4; ++rep) {
            ObsStrategy s = random_obs_strategy(rng, tilde_game, 1 + rng.below(2));
            CHECK(verify_obs_strategy(tilde_game, s) == oracle_verify(tilde_game, s));
            ++tildes;
        }
    }
    CHECK(hats > 100);
    CHECK(tildes > 50);
}

TEST_CASE("knowledge games with identity observations match the direct solve") {
    Rng rng(71);
    std::size_t done = 0;
    for (int i = 0; i < 200 && done < 60; ++i) {
        ImperfectArena a = random_imperfect_arena(rng);
        for (Vertex v = 0; v < a.size(); ++v) a.obs[v] = static_cast<int>(v);
        if (!validate_imperfect(a).empty()) continue;
        ++done;
        KnowledgeGame kg = knowledge_construction(a);
        CHECK(solve_parity(kg.game).eloise_wins_initial ==
              solve_parity(expand_two_player(a)).eloise_wins_initial);
    }
    CHECK(done == 60);
}

TEST_CASE("imperfect soundness sweep on a seeded population") {
    HarnessConfig cfg;
    cfg.seed = 59;
    cfg.cases = 200;
    SuiteReport rep = suite_imperfect_soundness(cfg);
    CHECK(rep.cases == 200);
    CHECK(rep.violations == 0);
}
