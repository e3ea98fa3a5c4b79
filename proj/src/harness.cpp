#include "naturegames/harness.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "naturegames/graph_util.hpp"
#include "naturegames/parity.hpp"

namespace ng {

std::uint64_t Rng::next() {
    // splitmix64
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::size_t Rng::below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }

bool Rng::chance(int num, int den) { return below(static_cast<std::size_t>(den)) < static_cast<std::size_t>(num); }

NatureGame random_nature_game(Rng& rng, const GameGenOptions& opt) {
    NatureGame g;
    std::size_t n = opt.min_vertices + rng.below(opt.max_vertices - opt.min_vertices + 1);
    for (std::size_t v = 0; v < n; ++v) {
        Owner o;
        for (;;) {
            switch (rng.below(3)) {
                case 0: o = Owner::Eloise; break;
                case 1: o = Owner::Abelard; break;
                default: o = Owner::Nature; break;
            }
            if (o == Owner::Abelard && !opt.allow_abelard) continue;
            if (o == Owner::Eloise && !opt.allow_eloise) continue;
            break;
        }
        g.add_vertex("v" + std::to_string(v), o, static_cast<int>(rng.below(opt.max_priority + 1)));
    }
    for (Vertex v = 0; v < n; ++v) {
        std::size_t cap = g.owner[v] == Owner::Nature ? opt.nature_out_degree : opt.player_out_degree;
        std::size_t deg = 1 + rng.below(cap);
        for (std::size_t i = 0; i < deg; ++i) g.add_edge(v, static_cast<Vertex>(rng.below(n)));
    }
    g.initial = static_cast<Vertex>(rng.below(n));
    return g;
}

ParityGame random_parity_game(Rng& rng, std::size_t max_vertices, int max_priority) {
    ParityGame p;
    std::size_t n = 1 + rng.below(max_vertices);
    for (std::size_t v = 0; v < n; ++v)
        p.add_vertex("v" + std::to_string(v), rng.chance(1, 2) ? Owner::Eloise : Owner::Abelard,
                     static_cast<int>(rng.below(max_priority + 1)));
    for (Vertex v = 0; v < n; ++v) {
        std::size_t deg = 1 + rng.below(3);
        for (std::size_t i = 0; i < deg; ++i) p.add_edge(v, static_cast<Vertex>(rng.below(n)));
    }
    p.initial = static_cast<Vertex>(rng.below(n));
    return p;
}

PointedGraph random_pointed_graph(Rng& rng, std::size_t max_vertices, int max_priority) {
    PointedGraph g;
    std::size_t n = 1 + rng.below(max_vertices);
    g.succ.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        g.priority.push_back(static_cast<int>(rng.below(max_priority + 1)));
        g.labels.push_back("v" + std::to_string(v));
        std::size_t deg = 1 + rng.below(3);
        std::set<Vertex> targets;
        for (std::size_t i = 0; i < deg; ++i) targets.insert(static_cast<Vertex>(rng.below(n)));
        g.succ[v].assign(targets.begin(), targets.end());
    }
    g.point = static_cast<Vertex>(rng.below(n));
    return g;
}

ImperfectArena random_imperfect_arena(Rng& rng) {
    ImperfectArena a;
    std::size_t n = 2 + rng.below(4);  // 2..5
    std::size_t n_ab = rng.chance(1, 3) ? 1 : 0;
    if (n_ab >= n) n_ab = 0;
    std::size_t n_el = n - n_ab;
    int n_act = 1 + static_cast<int>(rng.below(2));
    for (int i = 0; i < n_act; ++i) a.add_action("g" + std::to_string(i));
    for (std::size_t v = 0; v < n; ++v)
        a.add_vertex("v" + std::to_string(v), v < n_el ? Owner::Eloise : Owner::Abelard,
                     static_cast<int>(rng.below(3)));
    // up to two nontrivial observation classes over Eloise vertices
    std::vector<int> pool(n_el);
    for (std::size_t v = 0; v < n_el; ++v) pool[v] = static_cast<int>(rng.below(3));  // 0,1 pooled; 2 singleton
    std::map<int, std::vector<Vertex>> pools;
    for (std::size_t v = 0; v < n_el; ++v)
        if (pool[v] < 2) pools[pool[v]].push_back(static_cast<Vertex>(v));
    int next_obs = 0;
    std::vector<int> obs(n, -1);
    for (auto& [p, members] : pools) {
        if (members.size() < 2) continue;
        for (Vertex v : members) {
            obs[v] = next_obs;
            a.priority[v] = a.priority[members[0]];  // constant on the class
        }
        ++next_obs;
    }
    for (std::size_t v = 0; v < n; ++v)
        if (obs[v] < 0) obs[v] = next_obs++;
    for (std::size_t v = 0; v < n; ++v) a.obs[v] = obs[v];

    for (std::size_t v = 0; v < n_el; ++v) {
        for (int act = 0; act < n_act; ++act) {
            if (act > 0 && rng.chance(1, 3)) continue;  // action disabled here
            std::size_t deg = 1 + rng.below(2);
            std::set<Vertex> targets;
            for (std::size_t i = 0; i < deg; ++i) targets.insert(static_cast<Vertex>(rng.below(n)));
            a.delta_e[v][act].assign(targets.begin(), targets.end());
        }
    }
    for (std::size_t v = n_el; v < n; ++v) {
        std::size_t deg = 1 + rng.below(2);
        std::set<Vertex> targets;
        for (std::size_t i = 0; i < deg; ++i) targets.insert(static_cast<Vertex>(rng.below(n)));
        a.delta_a[v].assign(targets.begin(), targets.end());
    }
    a.initial = static_cast<Vertex>(rng.below(n));
    return a;
}

namespace {

struct GuardTrip {};

// Incremental enumeration of restrict(g, eloise, tau) over all behaviourally
// distinct memory-`mem` Abelard reactions, branching on the strategy cells
// the product actually reaches.
struct OutcomeEnumerator {
    std::size_t n;
    int mem;
    const std::function<void(const PointedGraph&)>& fn;
    std::size_t budget;

    std::map<std::tuple<Vertex, int, int>, Vertex> index;
    std::vector<std::tuple<Vertex, int, int>> states;
    std::vector<std::vector<Vertex>> succ;
    std::vector<int> prio;
    std::vector<int> up;      // tau memory update, mem x n, -1 unassigned
    std::vector<Vertex> mv;   // tau move at Abelard vertices, mem x n

    // problem-specific hooks
    std::function<int(Vertex)> vertex_priority;
    std::function<Owner(Vertex)> owner_of;
    std::function<std::vector<Vertex>(Vertex, int)> free_successors;  // Eloise/Nature moves
    std::function<const std::vector<Vertex>&(Vertex)> abelard_options;
    std::function<int(int, Vertex)> eloise_up;

    OutcomeEnumerator(std::size_t n_, int mem_, const std::function<void(const PointedGraph&)>& f,
                      std::size_t budget_)
        : n(n_), mem(mem_), fn(f), budget(budget_) {
        up.assign(static_cast<std::size_t>(mem) * n, -1);
        mv.assign(static_cast<std::size_t>(mem) * n, kNoVertex);
    }

    Vertex intern(Vertex v, int me, int ma, std::vector<Vertex>& created) {
        auto key = std::make_tuple(v, me, ma);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        Vertex id = static_cast<Vertex>(states.size());
        index.emplace(key, id);
        states.push_back(key);
        succ.emplace_back();
        prio.push_back(vertex_priority(v));
        created.push_back(id);
        return id;
    }

    void leaf() {
        if (budget == 0) throw GuardTrip{};
        --budget;
        PointedGraph g;
        g.succ = succ;
        g.priority = prio;
        g.point = 0;
        fn(g);
    }

    void dfs(std::deque<Vertex> queue) {
        if (queue.empty()) {
            leaf();
            return;
        }
        Vertex id = queue.front();
        auto [v, me, ma] = states[id];
        std::vector<Vertex> nexts;
        if (owner_of(v) == Owner::Abelard) {
            std::size_t cell = static_cast<std::size_t>(ma) * n + v;
            if (mv[cell] == kNoVertex) {
                for (Vertex choice : abelard_options(v)) {
                    mv[cell] = choice;
                    dfs(queue);
                }
                mv[cell] = kNoVertex;
                return;
            }
            nexts.push_back(mv[cell]);
        } else {
            nexts = free_successors(v, me);
        }
        for (Vertex v2 : nexts) {
            std::size_t cell = static_cast<std::size_t>(ma) * n + v2;
            if (up[cell] < 0) {
                for (int m2 = 0; m2 < mem; ++m2) {
                    up[cell] = m2;
                    dfs(queue);
                }
                up[cell] = -1;
                return;
            }
        }
        // all cells assigned: expand this state and move on
        queue.pop_front();
        std::vector<Vertex> created;
        std::vector<std::pair<Vertex, Vertex>> added_edges;
        for (Vertex v2 : nexts) {
            int ma2 = up[static_cast<std::size_t>(ma) * n + v2];
            int me2 = eloise_up(me, v2);
            Vertex tid = intern(v2, me2, ma2, created);
            auto& sl = succ[id];
            auto it = std::lower_bound(sl.begin(), sl.end(), tid);
            if (it == sl.end() || *it != tid) {
                sl.insert(it, tid);
                added_edges.push_back({id, tid});
            }
        }
        for (Vertex c : created) queue.push_back(c);
        dfs(queue);
        // undo
        for (auto [from, to] : added_edges) {
            auto& sl = succ[from];
            sl.erase(std::lower_bound(sl.begin(), sl.end(), to));
        }
        for (auto it = created.rbegin(); it != created.rend(); ++it) {
            index.erase(states[*it]);
            states.pop_back();
            succ.pop_back();
            prio.pop_back();
        }
    }
};

}  // namespace

bool for_each_abelard_outcome(const NatureGame& g, const MooreStrategy& eloise, int mem_bound,
                              const std::function<void(const PointedGraph&)>& fn) {
    OutcomeEnumerator en(g.size(), mem_bound, fn, guard_cap());
    en.vertex_priority = [&](Vertex v) { return g.priority[v]; };
    en.owner_of = [&](Vertex v) { return g.owner[v]; };
    en.free_successors = [&](Vertex v, int me) -> std::vector<Vertex> {
        if (g.owner[v] == Owner::Eloise) return {eloise.move_at(me, v)};
        return g.succ[v];
    };
    en.abelard_options = [&](Vertex v) -> const std::vector<Vertex>& { return g.succ[v]; };
    en.eloise_up = [&](int me, Vertex v2) { return eloise.up_at(me, v2); };
    std::vector<Vertex> created;
    std::deque<Vertex> queue;
    queue.push_back(en.intern(g.initial, eloise.m0, 0, created));
    try {
        en.dfs(std::move(queue));
    } catch (const GuardTrip&) {
        return false;
    }
    return true;
}

bool for_each_abelard_outcome_imperfect(const ImperfectArena& a, const ObsStrategy& eloise,
                                        const std::vector<int>& gamma_of, int mem_bound,
                                        const std::function<void(const PointedGraph&)>& fn) {
    OutcomeEnumerator en(a.size(), mem_bound, fn, guard_cap());
    en.vertex_priority = [&](Vertex v) { return a.priority[v]; };
    en.owner_of = [&](Vertex v) { return a.owner[v]; };
    en.free_successors = [&](Vertex v, int me) -> std::vector<Vertex> {
        int act = eloise.move_at(me, a.obs[v]);
        if (act < 0) throw ValidationError("for_each_abelard_outcome_imperfect: no action");
        int gamma = act < static_cast<int>(gamma_of.size()) ? gamma_of[act] : act;
        return a.delta_e[v][gamma];
    };
    en.abelard_options = [&](Vertex v) -> const std::vector<Vertex>& { return a.delta_a[v]; };
    en.eloise_up = [&](int me, Vertex v2) { return eloise.up_at(me, a.obs[v2]); };
    std::vector<Vertex> created;
    std::deque<Vertex> queue;
    queue.push_back(en.intern(a.initial, eloise.m0, 0, created));
    try {
        en.dfs(std::move(queue));
    } catch (const GuardTrip&) {
        return false;
    }
    return true;
}

namespace {

void record(SuiteReport& r, const std::string& what) {
    ++r.violations;
    if (r.details.size() < 20) r.details.push_back(what);
}

}  // namespace

SuiteReport suite_parity_oracle(const HarnessConfig& cfg) {
    SuiteReport rep;
    rep.name = "parity-oracle";
    Rng rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.cases; ++i) {
        ParityGame p = random_parity_game(rng, 6, 3);
        ++rep.cases;
        SolveResult a = solve_parity(p);
        SolveResult b = brute_solve(p);
        if (a.eloise_region != b.eloise_region) {
            record(rep, "region mismatch, case " + std::to_string(i));
            continue;
        }
        MooreStrategy se = positional_strategy(p, a.eloise_strategy, Owner::Eloise);
        MooreStrategy sa = positional_strategy(p, a.abelard_strategy, Owner::Abelard);
        for (Vertex v = 0; v < p.size(); ++v) {
            if (a.eloise_region[v] && !verify_sure_from(p, se, v))
                record(rep, "eloise strategy fails at case " + std::to_string(i));
            if (!a.eloise_region[v] && !verify_sure_from(p, sa, v))
                record(rep, "abelard strategy fails at case " + std::to_string(i));
        }
    }
    return rep;
}

namespace {

StepEvent hat_event(Rng& rng, bool force_priority) {
    switch (force_priority ? 1 + rng.below(3) : rng.below(4)) {
        case 0: return {std::nullopt, Flag::None};                                     // gadget
        case 1: return {static_cast<int>(rng.below(4)), Flag::None};                   // plain entry
        case 2: return {static_cast<int>(rng.below(4)), Flag::Obey};
        default: return {static_cast<int>(rng.below(4)), Flag::Disobey};
    }
}

StepEvent check_event(Rng& rng, bool force_priority) {
    switch (force_priority ? 1 + rng.below(2) : rng.below(3)) {
        case 0: return {std::nullopt, Flag::None};
        case 1: return {static_cast<int>(rng.below(4)), Flag::None};
        default: return {static_cast<int>(rng.below(4)), Flag::Zero};
    }
}

StepEvent tilde_event(Rng& rng, bool eloise_step) {
    int prio = static_cast<int>(rng.below(4));
    if (eloise_step) return {prio, rng.chance(1, 2) ? Flag::Top : Flag::Bot};
    return {prio, rng.chance(1, 2) ? Flag::Deviate : Flag::Follow};
}

bool hat_formula(const std::vector<StepEvent>& loop) {
    bool obey = false;
    int min_prio = 1 << 20;
    for (const StepEvent& e : loop) {
        if (e.flag == Flag::Obey) obey = true;
        if (e.priority) min_prio = std::min(min_prio, *e.priority);
    }
    return !obey || min_prio % 2 == 0;
}

bool check_formula(const std::vector<StepEvent>& handle, const std::vector<StepEvent>& loop) {
    bool zero = false;
    for (const StepEvent& e : handle)
        if (e.flag == Flag::Zero) zero = true;
    for (const StepEvent& e : loop)
        if (e.flag == Flag::Zero) zero = true;
    int min_prio = 1 << 20;
    for (const StepEvent& e : loop)
        if (e.priority) min_prio = std::min(min_prio, *e.priority);
    return !zero || min_prio % 2 == 0;
}

bool tilde_formula(const std::vector<StepEvent>& loop) {
    bool top = false, deviate = false;
    int min_prio = 1 << 20;
    for (const StepEvent& e : loop) {
        if (e.flag == Flag::Top) top = true;
        if (e.flag == Flag::Deviate) deviate = true;
        if (e.priority) min_prio = std::min(min_prio, *e.priority);
    }
    if (top) return min_prio % 2 == 0;
    return deviate;
}

}  // namespace

SuiteReport suite_transducer(const HarnessConfig& cfg) {
    SuiteReport rep;
    rep.name = "transducer";
    Rng rng(cfg.seed);
    const int d = 3;
    PriorityTransducer hat = compile_hat(d), check = compile_check(d), tilde = compile_tilde(d);
    for (std::size_t i = 0; i < cfg.lassos; ++i) {
        // total length <= 12, nonempty loop with at least one priority event
        std::size_t loop_len = 1 + rng.below(8);
        std::size_t handle_len = rng.below(13 - loop_len);
        {
            std::vector<StepEvent> handle, loop;
            for (std::size_t k = 0; k < handle_len; ++k) handle.push_back(hat_event(rng, false));
            for (std::size_t k = 0; k < loop_len; ++k)
                loop.push_back(hat_event(rng, k == 0));
            ++rep.cases;
            if (eval_on_lasso(hat, handle, loop) != hat_formula(loop))
                record(rep, "hat disagreement, case " + std::to_string(i));
        }
        {
            std::vector<StepEvent> handle, loop;
            for (std::size_t k = 0; k < handle_len; ++k) handle.push_back(check_event(rng, false));
            for (std::size_t k = 0; k < loop_len; ++k) loop.push_back(check_event(rng, k == 0));
            ++rep.cases;
            if (eval_on_lasso(check, handle, loop) != check_formula(handle, loop))
                record(rep, "check disagreement, case " + std::to_string(i));
        }
        {
            // alternation: even positions are Eloise steps, loop length even
            std::size_t llen = 2 * (1 + rng.below(4));
            std::size_t hlen = 2 * rng.below((12 - llen) / 2 + 1);
            std::vector<StepEvent> handle, loop;
            for (std::size_t k = 0; k < hlen; ++k) handle.push_back(tilde_event(rng, k % 2 == 0));
            for (std::size_t k = 0; k < llen; ++k) loop.push_back(tilde_event(rng, k % 2 == 0));
            ++rep.cases;
            if (eval_on_lasso(tilde, handle, loop) != tilde_formula(loop))
                record(rep, "tilde disagreement, case " + std::to_string(i));
        }
    }
    return rep;
}

SuiteReport suite_block_minimum(const HarnessConfig& cfg) {
    SuiteReport rep;
    rep.name = "block-minimum";
    Rng rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.lassos; ++i) {
        std::size_t handle_len = rng.below(6);
        std::size_t loop_len = 1 + rng.below(6);
        std::vector<std::pair<int, bool>> handle, loop;  // (priority, reset-after?)
        for (std::size_t k = 0; k < handle_len; ++k)
            handle.push_back({static_cast<int>(rng.below(4)), rng.chance(1, 3)});
        bool any_reset = false;
        for (std::size_t k = 0; k < loop_len; ++k) {
            bool reset = rng.chance(1, 3) || (k + 1 == loop_len && !any_reset);
            any_reset |= reset;
            loop.push_back({static_cast<int>(rng.below(4)), reset});
        }
        ++rep.cases;
        // liminf of the sequence = min priority in the loop
        int liminf = 1 << 20;
        for (auto [p, r] : loop) liminf = std::min(liminf, p);
        // block minima over an unrolled stretch; keep the fully periodic ones
        std::vector<std::pair<int, bool>> word = handle;
        for (int rep_i = 0; rep_i < 6; ++rep_i) word.insert(word.end(), loop.begin(), loop.end());
        std::vector<std::pair<std::size_t, int>> blocks;  // (start index, min)
        int cur = 1 << 20;
        std::size_t start = 0;
        for (std::size_t k = 0; k < word.size(); ++k) {
            cur = std::min(cur, word[k].first);
            if (word[k].second) {
                blocks.push_back({start, cur});
                cur = 1 << 20;
                start = k + 1;
            }
        }
        int block_liminf = 1 << 20;
        std::size_t lo = handle.size() + 2 * loop.size();
        std::size_t hi = handle.size() + 5 * loop.size();
        for (auto [s, m] : blocks)
            if (s >= lo && s < hi) block_liminf = std::min(block_liminf, m);
        if (block_liminf != liminf) record(rep, "block-minimum mismatch, case " + std::to_string(i));
    }
    return rep;
}

namespace {

// enumerates nonempty successor sets over n vertices
std::vector<std::vector<Vertex>> all_successor_sets(std::size_t n) {
    std::vector<std::vector<Vertex>> out;
    for (std::size_t bits = 1; bits < (1u << n); ++bits) {
        std::vector<Vertex> s;
        for (std::size_t v = 0; v < n; ++v)
            if (bits & (1u << v)) s.push_back(static_cast<Vertex>(v));
        out.push_back(std::move(s));
    }
    return out;
}

void classifier_check_one(SuiteReport& rep, const PointedGraph& g, const std::string& tag) {
    ++rep.cases;
    BranchCardinality c;
    try {
        c = classify_losing(g);
    } catch (const GuardError&) {
        ++rep.guard_overflows;
        return;
    }
    if (c.kind == BranchCardinality::Kind::Finite) {
        std::vector<Lasso> expect;
        try {
            expect = enumerate_losing_lassos(g, g.size(), g.size());
        } catch (const GuardError&) {
            ++rep.guard_overflows;
            return;
        }
        if (expect.size() != c.count) {
            record(rep, tag + ": finite count " + std::to_string(c.count) + " vs lassos " +
                            std::to_string(expect.size()));
            return;
        }
        std::vector<Lasso> got = c.lassos;
        std::sort(got.begin(), got.end());
        if (got != expect) record(rep, tag + ": lasso sets differ");
        if (!verify_lasso_list(g, c.lassos)) record(rep, tag + ": lasso witness fails re-verification");
    } else if (c.kind == BranchCardinality::Kind::Uncountable) {
        if (!c.witness || !verify_cycle_witness(g, *c.witness))
            record(rep, tag + ": uncountable witness fails re-verification");
    }
}

}  // namespace

SuiteReport suite_classifier_oracle(const HarnessConfig& cfg) {
    SuiteReport rep;
    rep.name = "classifier-oracle";
    // exhaustive sweep of <= 3-vertex graphs with priorities <= 2
    for (std::size_t n = 1; n <= 3; ++n) {
        auto sets = all_successor_sets(n);
        std::size_t prio_combos = 1;
        for (std::size_t v = 0; v < n; ++v) prio_combos *= 3;
        std::size_t set_combos = 1;
        for (std::size_t v = 0; v < n; ++v) set_combos *= sets.size();
        for (std::size_t sc = 0; sc < set_combos; ++sc) {
            for (std::size_t pc = 0; pc < prio_combos; ++pc) {
                PointedGraph g;
                g.succ.resize(n);
                std::size_t x = sc;
                for (std::size_t v = 0; v < n; ++v) {
                    g.succ[v] = sets[x % sets.size()];
                    x /= sets.size();
                }
                std::size_t y = pc;
                for (std::size_t v = 0; v < n; ++v) {
                    g.priority.push_back(static_cast<int>(y % 3));
                    y /= 3;
                    g.labels.push_back(std::to_string(v));
                }
                for (std::size_t point = 0; point < n; ++point) {
                    g.point = static_cast<Vertex>(point);
                    classifier_check_one(rep, g, "exhaustive n=" + std::to_string(n));
                }
            }
        }
    }
    // sampled <= 4-vertex graphs
    Rng rng(cfg.seed);
    for (std::size_t i = 0; i < 1000; ++i) {
        PointedGraph g = random_pointed_graph(rng, 4, 2);
        classifier_check_one(rep, g, "sampled case " + std::to_string(i));
    }
    return rep;
}

namespace {

GameGenOptions sweep_options() {
    GameGenOptions opt;
    opt.min_vertices = 2;
    opt.max_vertices = 6;
    opt.max_priority = 3;
    opt.nature_out_degree = 3;
    opt.player_out_degree = 2;
    return opt;
}

}  // namespace

SuiteReport suite_hat_soundness(const HarnessConfig& cfg) {
    SuiteReport rep;
    rep.name = "hat-soundness";
    Rng rng(cfg.seed);
    GameGenOptions opt = sweep_options();
    std::size_t checked = 0;
    while (checked < cfg.cases) {
        NatureGame g = random_nature_game(rng, opt);
        Decision d = decide_countable(g);
        bool complete = true;
        if (d.yes) {
            try {
                complete = for_each_abelard_outcome(g, *d.strategy, 2, [&](const PointedGraph& og) {
                    if (classify_kind(og) == BranchCardinality::Kind::Uncountable)
                        record(rep, "uncountable leak despite countable verdict, case " +
                                        std::to_string(checked));
                });
            } catch (const GuardError&) {
                complete = false;
            }
        }
        if (!complete) {
            ++rep.guard_overflows;  // replacement game is drawn
            continue;
        }
        ++checked;
        ++rep.cases;
    }
    return rep;
}

SuiteReport suite_bounded_soundness(const HarnessConfig& cfg) {
    SuiteReport rep;
    rep.name = "bounded-soundness";
    Rng rng(cfg.seed);
    GameGenOptions opt = sweep_options();
    std::size_t checked = 0;
    while (checked < cfg.cases) {
        NatureGame g = random_nature_game(rng, opt);
        Decision dk[3];
        for (int k = 0; k < 3; ++k) dk[k] = decide_bounded(g, k);
        Decision dc = decide_countable(g);
        // implication chain
        if (dk[0].yes && !dk[1].yes) record(rep, "chain broken 0=>1");
        if (dk[1].yes && !dk[2].yes) record(rep, "chain broken 1=>2");
        if (dk[2].yes && !dc.yes) record(rep, "chain broken 2=>countable");
        bool complete = true;
        for (int k = 0; k < 3 && complete; ++k) {
            if (!dk[k].yes) continue;
            try {
                complete = for_each_abelard_outcome(
                    g, *dk[k].strategy, 2, [&](const PointedGraph& og) {
                        BranchCardinality c = classify_losing(og);
                        if (c.kind != BranchCardinality::Kind::Finite ||
                            c.count > static_cast<std::size_t>(k))
                            record(rep, "bound " + std::to_string(k) + " violated, case " +
                                            std::to_string(checked));
                    });
            } catch (const GuardError&) {
                complete = false;
            }
        }
        if (!complete) {
            ++rep.guard_overflows;
            continue;
        }
        ++checked;
        ++rep.cases;
    }
    return rep;
}

namespace {

// winning branch exists from every reachable node of the strategy-restricted
// graph (no losing cone)
bool no_losing_cone(const PointedGraph& g) {
    std::size_t n = g.size();
    std::vector<char> reach = reachable_from(g.succ, {}, {g.point});
    std::vector<char> core(n, 0);
    std::vector<int> prios = g.priority;
    std::sort(prios.begin(), prios.end());
    prios.erase(std::unique(prios.begin(), prios.end()), prios.end());
    for (int c : prios) {
        if (c % 2 == 1) continue;
        std::vector<char> mask(n, 0);
        for (Vertex v = 0; v < n; ++v) mask[v] = reach[v] && g.priority[v] >= c;
        SccResult scc = strongly_connected_components(g.succ, mask);
        std::vector<char> has_c(static_cast<std::size_t>(scc.count), 0);
        std::vector<char> nontrivial(static_cast<std::size_t>(scc.count), 0);
        for (Vertex v = 0; v < n; ++v) {
            if (!mask[v]) continue;
            if (g.priority[v] == c) has_c[scc.comp[v]] = 1;
            for (Vertex w : g.succ[v])
                if (mask[w] && scc.comp[w] == scc.comp[v]) nontrivial[scc.comp[v]] = 1;
        }
        for (Vertex v = 0; v < n; ++v)
            if (mask[v] && has_c[scc.comp[v]] && nontrivial[scc.comp[v]]) core[v] = 1;
    }
    std::vector<char> can = can_reach(g.succ, reach, core);
    for (Vertex v = 0; v < n; ++v)
        if (reach[v] && !can[v]) return false;
    return true;
}

}  // namespace

SuiteReport suite_topology(const HarnessConfig& cfg) {
    SuiteReport rep;
    rep.name = "topology";
    Rng rng(cfg.seed);
    GameGenOptions opt = sweep_options();
    opt.allow_abelard = false;
    for (std::size_t i = 0; i < cfg.cases; ++i) {
        NatureGame g = random_nature_game(rng, opt);
        ++rep.cases;
        bool sure = solve_parity(to_adversarial_parity(g)).eloise_wins_initial;
        Decision topo = decide_topo_good(g);
        if (sure && !topo.yes) {
            record(rep, "sure winner not topologically good, case " + std::to_string(i));
            continue;
        }
        if (topo.yes) {
            OutcomeGraph og = restrict_by_strategy(g, *topo.strategy);
            if (!no_losing_cone(og.graph))
                record(rep, "losing cone under topo strategy, case " + std::to_string(i));
            BranchCardinality winning = classify_winning(og.graph);
            if (winning.kind == BranchCardinality::Kind::Finite && winning.count == 0)
                record(rep, "empty winning set under topo strategy, case " + std::to_string(i));
        }
        // normalization preserves adversarial winners
        AlternatingGame a = alternate_normalize(g);
        bool sure_alt = solve_parity(to_adversarial_parity(a.game)).eloise_wins_initial;
        if (sure != sure_alt) record(rep, "normalization changed the winner, case " + std::to_string(i));
    }
    return rep;
}

SuiteReport suite_imperfect_soundness(const HarnessConfig& cfg) {
    SuiteReport rep;
    rep.name = "imperfect-soundness";
    Rng rng(cfg.seed);
    std::size_t checked = 0;
    while (checked < cfg.cases) {
        ImperfectArena a = random_imperfect_arena(rng);
        ImperfectEventGame hat;
        try {
            hat = build_hat_imperfect(a);
        } catch (const GuardError&) {
            ++rep.guard_overflows;
            continue;
        }
        std::optional<ObsStrategy> s;
        try {
            s = solve_imperfect_bounded(hat, 1);
        } catch (const GuardError&) {
            ++rep.guard_overflows;
            continue;
        }
        bool complete = true;
        if (s) {
            if (!verify_obs_strategy(hat, *s))
                record(rep, "returned strategy fails re-verification, case " + std::to_string(checked));
            try {
                complete = for_each_abelard_outcome_imperfect(
                    a, *s, hat.action_gamma, 2, [&](const PointedGraph& og) {
                        if (classify_kind(og) == BranchCardinality::Kind::Uncountable)
                            record(rep, "uncountable leak, case " + std::to_string(checked));
                    });
            } catch (const GuardError&) {
                complete = false;
            }
        }
        if (!complete) {
            ++rep.guard_overflows;
            continue;
        }
        ++checked;
        ++rep.cases;
    }
    return rep;
}

std::vector<SuiteReport> run_harness(const HarnessConfig& cfg) {
    std::vector<SuiteReport> out;
    auto want = [&](const char* name) { return cfg.only.empty() || cfg.only == name; };
    if (want("parity-oracle")) out.push_back(suite_parity_oracle(cfg));
    if (want("transducer")) out.push_back(suite_transducer(cfg));
    if (want("block-minimum")) out.push_back(suite_block_minimum(cfg));
    if (want("classifier-oracle")) out.push_back(suite_classifier_oracle(cfg));
    if (want("hat-soundness")) out.push_back(suite_hat_soundness(cfg));
    if (want("bounded-soundness")) out.push_back(suite_bounded_soundness(cfg));
    if (want("topology")) out.push_back(suite_topology(cfg));
    if (want("imperfect-soundness")) out.push_back(suite_imperfect_soundness(cfg));
    return out;
}

}  // namespace ng
