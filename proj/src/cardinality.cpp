#include "naturegames/cardinality.hpp"

#include <algorithm>
#include <map>

namespace ng {

namespace {

void require_valid(const NatureGame& g, const char* who) {
    auto diags = validate_game(g);
    if (!diags.empty())
        throw ValidationError(std::string(who) + ": invalid game: " + diags.front().detail);
}

}  // namespace

ReducedGame build_hat(const NatureGame& g) {
    require_valid(g, "build_hat");
    ReducedGame r;
    r.condition = Condition::Hat;
    r.source = g;

    // mains keep the source indices
    for (Vertex v = 0; v < g.size(); ++v) {
        Owner o = g.owner[v] == Owner::Abelard ? Owner::Abelard : Owner::Eloise;
        r.game.add_vertex(g.names[v], o);
        r.info.push_back({Role::Main, v, kNoVertex, -1, {}});
    }
    std::map<std::pair<Vertex, Vertex>, Vertex> gadget;
    for (Vertex v = 0; v < g.size(); ++v) {
        if (g.owner[v] != Owner::Nature) continue;
        for (Vertex w : g.succ[v]) {
            Vertex id = r.game.add_vertex(g.names[v] + "!" + g.names[w], Owner::Abelard);
            r.info.push_back({Role::Avoid, v, w, -1, {}});
            gadget.emplace(std::make_pair(v, w), id);
        }
    }
    for (Vertex v = 0; v < g.size(); ++v) {
        if (g.owner[v] == Owner::Nature) {
            for (Vertex w : g.succ[v])
                r.game.add_edge(v, gadget.at({v, w}), {std::nullopt, Flag::None});
            for (Vertex w : g.succ[v]) {
                Vertex gad = gadget.at({v, w});
                for (Vertex w2 : g.succ[v])
                    r.game.add_edge(gad, w2,
                                    {g.priority[w2], w2 == w ? Flag::Disobey : Flag::Obey});
            }
        } else {
            for (Vertex w : g.succ[v]) r.game.add_edge(v, w, {g.priority[w], Flag::None});
        }
    }
    r.game.initial = g.initial;
    r.game.seed_priority = g.priority[g.initial];
    return r;
}

namespace {

// All functions succ(v) -> {0..k} with a fixed sum, in lexicographic order.
void compositions(int slots, int sum, int k, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out, std::size_t cap) {
    if (slots == 0) {
        if (sum == 0) {
            if (out.size() >= cap) throw GuardError("build_check: mu-vertex guard exceeded");
            out.push_back(cur);
        }
        return;
    }
    for (int x = 0; x <= std::min(sum, k); ++x) {
        cur.push_back(x);
        compositions(slots - 1, sum - x, k, cur, out, cap);
        cur.pop_back();
    }
}

}  // namespace

ReducedGame build_check(const NatureGame& g, int k) {
    require_valid(g, "build_check");
    if (k < 0) throw ValidationError("build_check: k must be >= 0");
    ReducedGame r;
    r.condition = Condition::Check;
    r.source = g;
    r.k = k;

    Vertex start = r.game.add_vertex("start", Owner::Eloise);
    r.info.push_back({Role::Start, kNoVertex, kNoVertex, -1, {}});

    std::map<std::pair<Vertex, int>, Vertex> budget;  // (v, i)
    for (Vertex v = 0; v < g.size(); ++v)
        for (int i = 0; i <= k; ++i) {
            Owner o = g.owner[v] == Owner::Abelard ? Owner::Abelard : Owner::Eloise;
            Vertex id = r.game.add_vertex(g.names[v] + "#" + std::to_string(i), o);
            r.info.push_back({Role::Budget, v, kNoVertex, i, {}});
            budget.emplace(std::make_pair(v, i), id);
        }

    // query vertices (w, i, ?) for every successor w of an Abelard vertex
    std::map<std::pair<Vertex, int>, Vertex> query;
    for (Vertex v = 0; v < g.size(); ++v) {
        if (g.owner[v] != Owner::Abelard) continue;
        for (Vertex w : g.succ[v])
            for (int i = 0; i <= k; ++i)
                if (!query.count({w, i})) {
                    Vertex id =
                        r.game.add_vertex(g.names[w] + "#" + std::to_string(i) + "?", Owner::Eloise);
                    r.info.push_back({Role::Query, w, kNoVertex, i, {}});
                    query.emplace(std::make_pair(w, i), id);
                }
    }

    // mu vertices per Nature vertex and composition with sum <= k
    std::map<std::pair<Vertex, std::vector<int>>, Vertex> mu_vertex;
    for (Vertex v = 0; v < g.size(); ++v) {
        if (g.owner[v] != Owner::Nature) continue;
        std::vector<std::vector<int>> all;
        std::vector<int> cur;
        for (int s = 0; s <= k; ++s) compositions(static_cast<int>(g.succ[v].size()), s, k, cur, all, guard_cap());
        for (const auto& mu : all) {
            std::string label = g.names[v] + "$";
            for (std::size_t j = 0; j < mu.size(); ++j)
                label += (j ? "," : "") + std::to_string(mu[j]);
            Vertex id = r.game.add_vertex(label, Owner::Abelard);
            r.info.push_back({Role::Mu, v, kNoVertex, -1, mu});
            mu_vertex.emplace(std::make_pair(v, mu), id);
        }
    }

    auto enter_event = [&](Vertex w, int i) {
        return StepEvent{g.priority[w], i == 0 ? Flag::Zero : Flag::None};
    };

    for (int i = 0; i <= k; ++i) r.game.add_edge(start, budget.at({g.initial, i}), enter_event(g.initial, i));
    for (Vertex v = 0; v < g.size(); ++v) {
        for (int i = 0; i <= k; ++i) {
            Vertex from = budget.at({v, i});
            switch (g.owner[v]) {
                case Owner::Eloise:
                    for (Vertex w : g.succ[v]) r.game.add_edge(from, budget.at({w, i}), enter_event(w, i));
                    break;
                case Owner::Abelard:
                    for (Vertex w : g.succ[v])
                        r.game.add_edge(from, query.at({w, i}), {std::nullopt, Flag::None});
                    break;
                case Owner::Nature:
                    for (const auto& [key, id] : mu_vertex) {
                        if (key.first != v) continue;
                        int sum = 0;
                        for (int x : key.second) sum += x;
                        if (sum == i) r.game.add_edge(from, id, {std::nullopt, Flag::None});
                    }
                    break;
            }
        }
    }
    for (const auto& [key, id] : query) {
        auto [w, i] = key;
        for (int j = 0; j <= i; ++j) r.game.add_edge(id, budget.at({w, j}), enter_event(w, j));
    }
    for (const auto& [key, id] : mu_vertex) {
        Vertex v = key.first;
        for (std::size_t j = 0; j < g.succ[v].size(); ++j) {
            Vertex w = g.succ[v][j];
            r.game.add_edge(id, budget.at({w, key.second[j]}), enter_event(w, key.second[j]));
        }
    }
    r.game.initial = start;
    r.game.seed_priority = std::nullopt;
    return r;
}

MooreStrategy pull_back(const ReducedGame& r, const ProductResult& pr, const SolveResult& sol) {
    const NatureGame& g = r.source;
    std::size_t n = g.size();
    const PriorityTransducer t = r.condition == Condition::Hat
                                     ? compile_hat(g.max_priority())
                                     : compile_check(g.max_priority());

    // product main state lookup
    std::map<std::pair<Vertex, int>, std::size_t> main_id;
    for (std::size_t i = 0; i < pr.main_states.size(); ++i) main_id.emplace(pr.main_states[i], i);
    std::vector<std::size_t> choice = main_strategy(pr, sol, Owner::Eloise);

    // memory: one state per main product state plus a trailing dead state
    std::size_t mem = pr.main_states.size() + 1;
    std::size_t dead = mem - 1;

    MooreStrategy s;
    s.player = Owner::Eloise;
    s.n_vertices = static_cast<std::uint32_t>(n);
    s.memory = static_cast<int>(mem);
    s.up.assign(mem * n, static_cast<int>(dead));
    s.move.assign(mem * n, kNoVertex);

    auto main_target = [&](std::size_t state, std::size_t edge_idx) -> std::pair<Vertex, int> {
        auto [rv, ts] = pr.main_states[state];
        const EventGame::Edge& e = r.game.succ[rv][edge_idx];
        return {e.to, t.step(ts, e.event).first};
    };

    // Source-step simulation: from a main product state whose reduced vertex
    // stands at source vertex v, advance by the source move to v2.
    auto advance = [&](std::size_t state, Vertex v2) -> std::size_t {
        auto [rv, ts] = pr.main_states[state];
        const ReducedVertexInfo& inf = r.info[rv];
        Vertex v = inf.source;
        // step along the unique edge whose target stands at source vertex
        // `target` (Main / Budget targets only)
        auto step_to = [&](std::size_t st, Vertex target) -> std::size_t {
            auto [crv, cts] = pr.main_states[st];
            for (std::size_t ei = 0; ei < r.game.succ[crv].size(); ++ei) {
                const EventGame::Edge& e = r.game.succ[crv][ei];
                const ReducedVertexInfo& ti = r.info[e.to];
                if (ti.role != Role::Main && ti.role != Role::Budget) continue;
                if (ti.source != target) continue;
                auto key = std::make_pair(e.to, t.step(cts, e.event).first);
                auto it = main_id.find(key);
                return it == main_id.end() ? dead : it->second;
            }
            return dead;
        };
        if (r.condition == Condition::Hat) {
            if (g.owner[v] != Owner::Nature) {
                // one reduced step along the edge to v2
                return step_to(state, v2);
            }
            // gadget hop: Eloise's announced avoid vertex, then the resolution
            std::size_t ei = choice[state];
            if (ei == ProductResult::npos) return dead;
            auto [gv, gs] = main_target(state, ei);
            auto git = main_id.find({gv, gs});
            if (git == main_id.end()) return dead;
            return step_to(git->second, v2);
        }
        // Check: main states are budget vertices (v, i)
        if (g.owner[v] == Owner::Eloise) return step_to(state, v2);
        if (g.owner[v] == Owner::Abelard) {
            // via the query vertex (v2, i, ?), Eloise then picks the budget
            for (std::size_t ei = 0; ei < r.game.succ[rv].size(); ++ei) {
                const EventGame::Edge& e = r.game.succ[rv][ei];
                if (r.info[e.to].source != v2) continue;
                auto key = std::make_pair(e.to, t.step(ts, e.event).first);
                auto it = main_id.find(key);
                if (it == main_id.end()) return dead;
                std::size_t qstate = it->second;
                std::size_t qe = choice[qstate];
                if (qe == ProductResult::npos) return dead;
                auto [bv, bs] = main_target(qstate, qe);
                auto bit = main_id.find({bv, bs});
                return bit == main_id.end() ? dead : bit->second;
            }
            return dead;
        }
        // Nature: via Eloise's chosen mu vertex
        std::size_t ei = choice[state];
        if (ei == ProductResult::npos) return dead;
        auto [mv, ms] = main_target(state, ei);
        auto mit = main_id.find({mv, ms});
        if (mit == main_id.end()) return dead;
        return step_to(mit->second, v2);
    };

    for (std::size_t st = 0; st < pr.main_states.size(); ++st) {
        Vertex rv = pr.main_states[st].first;
        const ReducedVertexInfo& inf = r.info[rv];
        if (inf.role != Role::Main && inf.role != Role::Budget) continue;
        Vertex v = inf.source;
        for (Vertex v2 = 0; v2 < n; ++v2) {
            if (!std::binary_search(g.succ[v].begin(), g.succ[v].end(), v2)) continue;
            s.up[st * n + v2] = static_cast<int>(advance(st, v2));
        }
        if (g.owner[v] == Owner::Eloise) {
            std::size_t ei = choice[st];
            if (ei != ProductResult::npos) {
                Vertex target_rv = r.game.succ[rv][ei].to;
                s.move[st * n + v] = r.info[target_rv].source;
            }
        }
    }
    // dead memory: absorb with arbitrary legal moves
    for (Vertex v = 0; v < n; ++v) {
        s.up[dead * n + v] = static_cast<int>(dead);
        if (g.owner[v] == Owner::Eloise) s.move[dead * n + v] = g.succ[v][0];
    }
    // moves must be total on Eloise vertices for every memory state
    for (std::size_t m = 0; m < mem; ++m)
        for (Vertex v = 0; v < n; ++v)
            if (g.owner[v] == Owner::Eloise && s.move[m * n + v] == kNoVertex)
                s.move[m * n + v] = g.succ[v][0];

    // initial memory: the product's initial main state; for Check the play
    // starts after Eloise's opening budget claim.
    std::size_t m0 = 0;
    std::map<Vertex, std::size_t> parity_to_main;
    for (std::size_t i = 0; i < pr.main_states.size(); ++i)
        parity_to_main.emplace(pr.main_index[i], i);
    std::size_t init_main = parity_to_main.at(pr.game.initial);
    if (r.condition == Condition::Check) {
        std::size_t ei = choice[init_main];
        if (ei == ProductResult::npos) throw ValidationError("pull_back: product strategy undefined at start");
        auto [bv, bs] = main_target(init_main, ei);
        m0 = main_id.at({bv, bs});
    } else {
        m0 = init_main;
    }
    s.m0 = static_cast<int>(m0);
    return s;
}

namespace {

Decision decide_with(ReducedGame r, const PriorityTransducer& t) {
    ProductResult pr = product(r.game, t);
    SolveResult sol = solve_parity(pr.game);
    Decision d;
    d.reduced_vertices = r.game.size();
    d.product_vertices = pr.main_states.size();
    d.yes = sol.eloise_wins_initial;
    if (d.yes) d.strategy = pull_back(r, pr, sol);
    return d;
}

}  // namespace

Decision decide_countable(const NatureGame& g) {
    PriorityTransducer t = compile_hat(g.max_priority());
    return decide_with(build_hat(g), t);
}

Decision decide_bounded(const NatureGame& g, int k) {
    PriorityTransducer t = compile_check(g.max_priority());
    return decide_with(build_check(g, k), t);
}

std::optional<int> least_bound(const NatureGame& g, int cap) {
    for (int k = 0; k <= cap; ++k)
        if (decide_bounded(g, k).yes) return k;
    return std::nullopt;
}

ParityGame to_adversarial_parity(const NatureGame& g) {
    require_valid(g, "to_adversarial_parity");
    ParityGame p;
    p.names = g.names;
    p.succ = g.succ;
    p.priority = g.priority;
    p.initial = g.initial;
    p.owner.reserve(g.size());
    for (Owner o : g.owner) p.owner.push_back(o == Owner::Nature ? Owner::Abelard : o);
    return p;
}

}  // namespace ng
