#include "naturegames/topology.hpp"

#include <algorithm>
#include <map>

namespace ng {

AlternatingGame alternate_normalize(const NatureGame& g) {
    auto diags = validate_game(g);
    if (!diags.empty())
        throw ValidationError("alternate_normalize: invalid game: " + diags.front().detail);
    for (Owner o : g.owner)
        if (o == Owner::Abelard)
            throw ValidationError("alternate_normalize: Abelard vertex present");

    AlternatingGame a;
    int dummy_prio = g.max_priority() + 1;
    a.dummy_priority = dummy_prio;
    for (Vertex v = 0; v < g.size(); ++v) {
        a.game.add_vertex(g.names[v], g.owner[v], g.priority[v]);
        a.source_of.push_back(v);
        a.dummy_edge.push_back({kNoVertex, kNoVertex});
    }
    for (Vertex v = 0; v < g.size(); ++v) {
        for (Vertex w : g.succ[v]) {
            if (g.owner[v] != g.owner[w]) {
                a.game.add_edge(v, w);
            } else {
                Owner dummy_owner = g.owner[v] == Owner::Eloise ? Owner::Nature : Owner::Eloise;
                Vertex x = a.game.add_vertex(g.names[v] + "~" + g.names[w], dummy_owner, dummy_prio);
                a.source_of.push_back(kNoVertex);
                a.dummy_edge.push_back({v, w});
                a.game.add_edge(v, x);
                a.game.add_edge(x, w);
            }
        }
    }
    a.game.initial = g.initial;
    if (g.owner[g.initial] == Owner::Nature) {
        Vertex e0 = a.game.add_vertex("~start", Owner::Eloise, dummy_prio);
        a.source_of.push_back(kNoVertex);
        a.dummy_edge.push_back({kNoVertex, g.initial});
        a.game.add_edge(e0, g.initial);
        a.game.initial = e0;
    }
    return a;
}

TildeGame build_tilde(const AlternatingGame& a) {
    const NatureGame& g = a.game;
    for (Vertex v = 0; v < g.size(); ++v)
        for (Vertex w : g.succ[v])
            if (g.owner[v] == g.owner[w])
                throw ValidationError("build_tilde: input is not alternating");
    if (g.owner[g.initial] != Owner::Eloise)
        throw ValidationError("build_tilde: initial vertex must be Eloise's");

    TildeGame tg;
    tg.alt = a;
    std::vector<Vertex> eloise_ids(g.size(), kNoVertex);
    for (Vertex v = 0; v < g.size(); ++v) {
        if (g.owner[v] != Owner::Eloise) continue;
        eloise_ids[v] = tg.game.add_vertex(g.names[v], Owner::Eloise);
        TildeGame::Info inf;
        inf.main = v;
        tg.info.push_back(inf);
    }
    // the full display V_N x V_E x {top, bot}; gadgets with w not a successor
    // of v' stay unreachable but keep the displayed shape
    std::map<std::tuple<Vertex, Vertex, bool>, Vertex> gadget;
    for (Vertex nv = 0; nv < g.size(); ++nv) {
        if (g.owner[nv] != Owner::Nature) continue;
        for (Vertex w = 0; w < g.size(); ++w) {
            if (g.owner[w] != Owner::Eloise) continue;
            for (bool b : {false, true}) {
                Vertex id = tg.game.add_vertex(
                    g.names[nv] + "|" + g.names[w] + (b ? "|top" : "|bot"), Owner::Abelard);
                TildeGame::Info inf;
                inf.gadget = true;
                inf.nature = nv;
                inf.pointer = w;
                inf.top = b;
                tg.info.push_back(inf);
                gadget.emplace(std::make_tuple(nv, w, b), id);
            }
        }
    }
    for (Vertex v = 0; v < g.size(); ++v) {
        if (g.owner[v] == Owner::Eloise) {
            for (Vertex nv : g.succ[v])
                for (Vertex w : g.succ[nv])
                    for (bool b : {false, true})
                        tg.game.add_edge(eloise_ids[v], gadget.at({nv, w, b}),
                                         {g.priority[nv], b ? Flag::Top : Flag::Bot});
        } else {
            for (Vertex w0 = 0; w0 < g.size(); ++w0) {
                if (g.owner[w0] != Owner::Eloise) continue;
                for (bool b : {false, true}) {
                    Vertex id = gadget.at({v, w0, b});
                    for (Vertex w2 : g.succ[v])
                        tg.game.add_edge(id, eloise_ids[w2],
                                         {g.priority[w2], w2 == w0 ? Flag::Follow : Flag::Deviate});
                }
            }
        }
    }
    tg.game.initial = eloise_ids[g.initial];
    tg.game.seed_priority = g.priority[g.initial];
    return tg;
}

namespace {

// Source-game Moore strategy from a solved tilde product.  Memory tracks the
// main product state; normalization dummies are crossed inside each update.
MooreStrategy pull_back_tilde(const NatureGame& src, const TildeGame& tg,
                              const ProductResult& pr, const SolveResult& sol) {
    const NatureGame& g = tg.alt.game;
    std::size_t n = src.size();
    PriorityTransducer t = compile_tilde(g.max_priority());

    std::map<std::pair<Vertex, int>, std::size_t> main_id;
    for (std::size_t i = 0; i < pr.main_states.size(); ++i) main_id.emplace(pr.main_states[i], i);
    std::vector<std::size_t> choice = main_strategy(pr, sol, Owner::Eloise);

    std::size_t mem = pr.main_states.size() + 1;
    std::size_t dead = mem - 1;

    // one alternating step: from memory st to the alternating vertex x
    auto advance_alt = [&](std::size_t st, Vertex x) -> std::size_t {
        if (st == dead) return dead;
        auto [rv, ts] = pr.main_states[st];
        const TildeGame::Info& inf = tg.info[rv];
        if (!inf.gadget) {
            std::size_t ei = choice[st];
            if (ei == ProductResult::npos) return dead;
            const EventGame::Edge& e = tg.game.succ[rv][ei];
            if (tg.info[e.to].nature != x) return dead;
            auto it = main_id.find({e.to, t.step(ts, e.event).first});
            return it == main_id.end() ? dead : it->second;
        }
        for (const EventGame::Edge& e : tg.game.succ[rv]) {
            if (tg.info[e.to].main != x) continue;
            auto it = main_id.find({e.to, t.step(ts, e.event).first});
            return it == main_id.end() ? dead : it->second;
        }
        return dead;
    };

    // source edge (v, w) -> subdividing dummy, if any
    std::map<std::pair<Vertex, Vertex>, Vertex> dummy_for;
    for (Vertex x = 0; x < g.size(); ++x)
        if (tg.alt.source_of[x] == kNoVertex && tg.alt.dummy_edge[x].first != kNoVertex)
            dummy_for.emplace(tg.alt.dummy_edge[x], x);

    auto advance_src = [&](std::size_t st, Vertex v, Vertex v2) -> std::size_t {
        auto it = dummy_for.find({v, v2});
        if (it == dummy_for.end()) return advance_alt(st, v2);
        return advance_alt(advance_alt(st, it->second), v2);
    };

    MooreStrategy s;
    s.player = Owner::Eloise;
    s.n_vertices = static_cast<std::uint32_t>(n);
    s.memory = static_cast<int>(mem);
    s.up.assign(mem * n, static_cast<int>(dead));
    s.move.assign(mem * n, kNoVertex);

    for (std::size_t st = 0; st < pr.main_states.size(); ++st) {
        Vertex rv = pr.main_states[st].first;
        const TildeGame::Info& inf = tg.info[rv];
        Vertex at_alt = inf.gadget ? inf.nature : inf.main;
        Vertex at_src = tg.alt.source_of[at_alt];
        if (at_src == kNoVertex) continue;  // stands at a dummy; crossed in updates
        for (Vertex v2 : src.succ[at_src])
            s.up[st * n + v2] = static_cast<int>(advance_src(st, at_src, v2));
        if (src.owner[at_src] == Owner::Eloise && !inf.gadget) {
            std::size_t ei = choice[st];
            if (ei != ProductResult::npos) {
                Vertex nv = tg.info[tg.game.succ[rv][ei].to].nature;
                Vertex target = tg.alt.source_of[nv] != kNoVertex ? tg.alt.source_of[nv]
                                                                  : tg.alt.dummy_edge[nv].second;
                s.move[st * n + at_src] = target;
            }
        }
    }
    for (std::size_t m = 0; m < mem; ++m)
        for (Vertex v = 0; v < n; ++v)
            if (src.owner[v] == Owner::Eloise && s.move[m * n + v] == kNoVertex)
                s.move[m * n + v] = src.succ[v][0];
    for (Vertex v = 0; v < n; ++v) s.up[dead * n + v] = static_cast<int>(dead);

    std::map<Vertex, std::size_t> parity_to_main;
    for (std::size_t i = 0; i < pr.main_states.size(); ++i)
        parity_to_main.emplace(pr.main_index[i], i);
    std::size_t m0 = parity_to_main.at(pr.game.initial);
    // a fresh start vertex was inserted when the source starts at Nature
    if (tg.alt.source_of[g.initial] == kNoVertex) m0 = advance_alt(m0, src.initial);
    s.m0 = static_cast<int>(m0);
    return s;
}

}  // namespace

Decision decide_topo_good(const NatureGame& g) {
    AlternatingGame a = alternate_normalize(g);
    TildeGame tg = build_tilde(a);
    PriorityTransducer t = compile_tilde(a.game.max_priority());
    ProductResult pr = product(tg.game, t);
    SolveResult sol = solve_parity(pr.game);
    Decision d;
    d.reduced_vertices = tg.game.size();
    d.product_vertices = pr.main_states.size();
    d.yes = sol.eloise_wins_initial;
    if (d.yes) d.strategy = pull_back_tilde(g, tg, pr, sol);
    return d;
}

}  // namespace ng
