#include "naturegames/parity.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "naturegames/graph_util.hpp"

namespace ng {

int ParityGame::max_priority() const {
    int d = 0;
    for (int p : priority) d = std::max(d, p);
    return d;
}

Vertex ParityGame::add_vertex(std::string name, Owner o, int prio) {
    names.push_back(std::move(name));
    owner.push_back(o);
    succ.emplace_back();
    priority.push_back(prio);
    return static_cast<Vertex>(owner.size() - 1);
}

void ParityGame::add_edge(Vertex from, Vertex to) {
    auto& s = succ[from];
    auto it = std::lower_bound(s.begin(), s.end(), to);
    if (it == s.end() || *it != to) s.insert(it, to);
}

std::vector<Diagnostic> validate_parity_game(const ParityGame& p) {
    std::vector<Diagnostic> out;
    if (p.size() == 0) {
        out.push_back({"nonempty", "game has no vertices"});
        return out;
    }
    if (p.initial >= p.size()) out.push_back({"initial", "initial vertex out of range"});
    for (Vertex v = 0; v < p.size(); ++v) {
        if (p.owner[v] == Owner::Nature)
            out.push_back({"two-player", "vertex '" + p.names[v] + "' is owned by Nature"});
        if (p.succ[v].empty())
            out.push_back({"dead-end", "vertex '" + p.names[v] + "' has no outgoing edge"});
        if (p.priority[v] < 0)
            out.push_back({"priority-range", "vertex '" + p.names[v] + "' has negative priority"});
    }
    return out;
}

namespace {

struct Regions {
    std::vector<char> win_e;  // valid on alive vertices only
    std::vector<Vertex> strat_e;
    std::vector<Vertex> strat_a;
};

// Attractor of `seed` for player pl within `alive`; records, for pl's
// vertices newly attracted, a move one step closer to the seed.
std::vector<char> attractor(const ParityGame& p, const std::vector<std::vector<Vertex>>& pred,
                            const std::vector<char>& alive, const std::vector<char>& seed,
                            Owner pl, std::vector<Vertex>& strat) {
    std::size_t n = p.size();
    std::vector<char> in(n, 0);
    std::vector<int> cnt(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        for (Vertex w : p.succ[v])
            if (alive[w]) ++cnt[v];
    }
    std::deque<Vertex> work;
    for (Vertex v = 0; v < n; ++v)
        if (alive[v] && seed[v]) {
            in[v] = 1;
            work.push_back(v);
        }
    while (!work.empty()) {
        Vertex u = work.front();
        work.pop_front();
        for (Vertex w : pred[u]) {
            if (!alive[w] || in[w]) continue;
            if (p.owner[w] == pl) {
                in[w] = 1;
                if (strat[w] == kNoVertex) strat[w] = u;
                work.push_back(w);
            } else if (--cnt[w] == 0) {
                in[w] = 1;
                work.push_back(w);
            }
        }
    }
    return in;
}

Regions zielonka(const ParityGame& p, const std::vector<std::vector<Vertex>>& pred,
                 std::vector<char> alive) {
    std::size_t n = p.size();
    Regions r;
    r.win_e.assign(n, 0);
    r.strat_e.assign(n, kNoVertex);
    r.strat_a.assign(n, kNoVertex);

    int d = -1;
    for (Vertex v = 0; v < n; ++v)
        if (alive[v] && (d == -1 || p.priority[v] < d)) d = p.priority[v];
    if (d == -1) return r;  // empty subgame

    Owner i = (d % 2 == 0) ? Owner::Eloise : Owner::Abelard;
    Owner opp = (i == Owner::Eloise) ? Owner::Abelard : Owner::Eloise;

    std::vector<char> seed(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if (alive[v] && p.priority[v] == d) seed[v] = 1;

    std::vector<Vertex> attr_strat(n, kNoVertex);
    std::vector<char> a = attractor(p, pred, alive, seed, i, attr_strat);

    std::vector<char> rest = alive;
    for (Vertex v = 0; v < n; ++v)
        if (a[v]) rest[v] = 0;
    Regions sub = zielonka(p, pred, rest);

    bool opp_empty = true;
    for (Vertex v = 0; v < n; ++v)
        if (rest[v] && ((opp == Owner::Eloise) ? sub.win_e[v] : !sub.win_e[v])) {
            opp_empty = false;
            break;
        }

    auto& strat_i = (i == Owner::Eloise) ? r.strat_e : r.strat_a;
    if (opp_empty) {
        for (Vertex v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            r.win_e[v] = (i == Owner::Eloise);
            if (rest[v]) {
                r.strat_e[v] = sub.strat_e[v];
                r.strat_a[v] = sub.strat_a[v];
            } else if (p.owner[v] == i) {
                if (seed[v]) {
                    // any alive successor keeps the minimum priority recurring
                    for (Vertex w : p.succ[v])
                        if (alive[w]) {
                            strat_i[v] = w;
                            break;
                        }
                } else {
                    strat_i[v] = attr_strat[v];
                }
            }
        }
        return r;
    }

    std::vector<char> opp_seed(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if (rest[v] && ((opp == Owner::Eloise) ? sub.win_e[v] : !sub.win_e[v])) opp_seed[v] = 1;
    std::vector<Vertex> opp_attr_strat(n, kNoVertex);
    std::vector<char> b = attractor(p, pred, alive, opp_seed, opp, opp_attr_strat);

    std::vector<char> rest2 = alive;
    for (Vertex v = 0; v < n; ++v)
        if (b[v]) rest2[v] = 0;
    Regions sub2 = zielonka(p, pred, rest2);

    auto& strat_opp = (opp == Owner::Eloise) ? r.strat_e : r.strat_a;
    auto& sub_strat_opp = (opp == Owner::Eloise) ? sub.strat_e : sub.strat_a;
    for (Vertex v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        if (b[v]) {
            r.win_e[v] = (opp == Owner::Eloise);
            if (p.owner[v] == opp) {
                if (opp_seed[v])
                    strat_opp[v] = sub_strat_opp[v];
                else
                    strat_opp[v] = opp_attr_strat[v];
            }
        } else {
            r.win_e[v] = sub2.win_e[v];
            r.strat_e[v] = sub2.strat_e[v];
            r.strat_a[v] = sub2.strat_a[v];
        }
    }
    return r;
}

}  // namespace

SolveResult solve_parity(const ParityGame& p) {
    auto diags = validate_parity_game(p);
    if (!diags.empty())
        throw ValidationError("solve_parity: invalid game: " + diags.front().detail);

    std::size_t n = p.size();
    std::vector<std::vector<Vertex>> pred(n);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : p.succ[v]) pred[w].push_back(v);

    Regions r = zielonka(p, pred, std::vector<char>(n, 1));
    SolveResult out;
    out.eloise_region.assign(n, false);
    for (Vertex v = 0; v < n; ++v) out.eloise_region[v] = r.win_e[v];
    out.eloise_strategy = std::move(r.strat_e);
    out.abelard_strategy = std::move(r.strat_a);
    // Normalise: strategies defined exactly on the owner's winning region.
    for (Vertex v = 0; v < n; ++v) {
        if (p.owner[v] == Owner::Eloise && !out.eloise_region[v]) out.eloise_strategy[v] = kNoVertex;
        if (p.owner[v] == Owner::Abelard && out.eloise_region[v]) out.abelard_strategy[v] = kNoVertex;
        if (p.owner[v] == Owner::Abelard) out.eloise_strategy[v] = kNoVertex;
        if (p.owner[v] == Owner::Eloise) out.abelard_strategy[v] = kNoVertex;
    }
    out.eloise_wins_initial = out.eloise_region[p.initial];
    return out;
}

MooreStrategy positional_strategy(const ParityGame& p, const std::vector<Vertex>& choice,
                                  Owner player) {
    MooreStrategy s;
    s.player = player;
    s.n_vertices = static_cast<std::uint32_t>(p.size());
    s.memory = 1;
    s.m0 = 0;
    s.up.assign(p.size(), 0);
    s.move.assign(p.size(), kNoVertex);
    for (Vertex v = 0; v < p.size(); ++v)
        if (p.owner[v] == player)
            s.move[v] = choice[v] != kNoVertex ? choice[v] : p.succ[v][0];
    return s;
}

namespace {

// Restricted graph of a Moore strategy on a parity game: product states
// (vertex, memory); owner's moves fixed, all other moves kept.
struct Restricted {
    std::vector<std::vector<Vertex>> succ;
    std::vector<int> priority;
    Vertex start = 0;
};

Restricted restrict_product(const ParityGame& p, const MooreStrategy& s, Vertex from) {
    Restricted out;
    std::map<std::pair<Vertex, int>, Vertex> index;
    std::deque<Vertex> work;
    std::vector<std::pair<Vertex, int>> states;
    auto intern = [&](Vertex v, int m) {
        auto key = std::make_pair(v, m);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        Vertex id = static_cast<Vertex>(states.size());
        index.emplace(key, id);
        states.push_back(key);
        out.succ.emplace_back();
        out.priority.push_back(p.priority[v]);
        work.push_back(id);
        return id;
    };
    out.start = intern(from, s.m0);
    while (!work.empty()) {
        Vertex id = work.front();
        work.pop_front();
        auto [v, m] = states[id];
        std::vector<Vertex> nexts;
        if (p.owner[v] == s.player)
            nexts.push_back(s.move_at(m, v));
        else
            nexts = p.succ[v];
        for (Vertex v2 : nexts) {
            Vertex tid = intern(v2, s.up_at(m, v2));
            out.succ[id].push_back(tid);
        }
    }
    return out;
}

bool no_bad_cycle(const Restricted& g, Owner player) {
    // Bad = reachable cycle whose minimum priority has the losing parity.
    std::size_t n = g.succ.size();
    std::vector<int> prios = g.priority;
    std::sort(prios.begin(), prios.end());
    prios.erase(std::unique(prios.begin(), prios.end()), prios.end());
    for (int c : prios) {
        bool bad = (player == Owner::Eloise) ? (c % 2 == 1) : (c % 2 == 0);
        if (!bad) continue;
        std::vector<char> mask(n, 0);
        for (Vertex v = 0; v < n; ++v) mask[v] = g.priority[v] >= c;
        std::vector<char> cyc = on_cycle(g.succ, mask);
        for (Vertex v = 0; v < n; ++v)
            if (cyc[v] && g.priority[v] == c) return false;
    }
    return true;
}

}  // namespace

bool verify_sure_from(const ParityGame& p, const MooreStrategy& s, Vertex from) {
    Restricted g = restrict_product(p, s, from);
    return no_bad_cycle(g, s.player);
}

bool verify_sure(const ParityGame& p, const MooreStrategy& s) {
    return verify_sure_from(p, s, p.initial);
}

namespace {

// Vertices from which the positional strategy `choice` is surely winning.
std::vector<char> winning_set(const ParityGame& p, const std::vector<Vertex>& choice,
                              Owner player) {
    std::size_t n = p.size();
    std::vector<std::vector<Vertex>> succ(n);
    for (Vertex v = 0; v < n; ++v) {
        if (p.owner[v] == player)
            succ[v].push_back(choice[v]);
        else
            succ[v] = p.succ[v];
    }
    // Bad vertices: lie on a cycle whose minimum priority has losing parity.
    std::vector<char> bad_core(n, 0);
    std::vector<int> prios = p.priority;
    std::sort(prios.begin(), prios.end());
    prios.erase(std::unique(prios.begin(), prios.end()), prios.end());
    for (int c : prios) {
        bool bad = (player == Owner::Eloise) ? (c % 2 == 1) : (c % 2 == 0);
        if (!bad) continue;
        std::vector<char> mask(n, 0);
        for (Vertex v = 0; v < n; ++v) mask[v] = p.priority[v] >= c;
        SccResult scc = strongly_connected_components(succ, mask);
        std::vector<char> has_edge(static_cast<std::size_t>(scc.count), 0);
        std::vector<char> has_c(static_cast<std::size_t>(scc.count), 0);
        for (Vertex v = 0; v < n; ++v) {
            if (!mask[v]) continue;
            if (p.priority[v] == c) has_c[scc.comp[v]] = 1;
            for (Vertex w : succ[v])
                if (mask[w] && scc.comp[w] == scc.comp[v]) has_edge[scc.comp[v]] = 1;
        }
        for (Vertex v = 0; v < n; ++v)
            if (mask[v] && has_edge[scc.comp[v]] && has_c[scc.comp[v]]) bad_core[v] = 1;
    }
    std::vector<char> losing = can_reach(succ, {}, bad_core);
    std::vector<char> out(n, 1);
    for (Vertex v = 0; v < n; ++v) out[v] = !losing[v];
    return out;
}

}  // namespace

SolveResult brute_solve(const ParityGame& p) {
    auto diags = validate_parity_game(p);
    if (!diags.empty())
        throw ValidationError("brute_solve: invalid game: " + diags.front().detail);
    std::size_t n = p.size();

    SolveResult out;
    out.eloise_region.assign(n, false);
    out.eloise_strategy.assign(n, kNoVertex);
    out.abelard_strategy.assign(n, kNoVertex);

    for (Owner player : {Owner::Eloise, Owner::Abelard}) {
        std::vector<Vertex> owned;
        std::size_t combos = 1;
        for (Vertex v = 0; v < n; ++v)
            if (p.owner[v] == player) {
                owned.push_back(v);
                if (combos > guard_cap() / std::max<std::size_t>(p.succ[v].size(), 1))
                    throw GuardError("brute_solve: size guard exceeded");
                combos *= p.succ[v].size();
            }
        std::vector<char> region(n, 0);
        for (std::size_t it = 0; it < combos; ++it) {
            std::vector<Vertex> choice(n, kNoVertex);
            std::size_t x = it;
            for (std::size_t j = 0; j < owned.size(); ++j) {
                choice[owned[j]] = p.succ[owned[j]][x % p.succ[owned[j]].size()];
                x /= p.succ[owned[j]].size();
            }
            std::vector<char> win = winning_set(p, choice, player);
            for (Vertex v = 0; v < n; ++v)
                if (win[v]) region[v] = 1;
        }
        // Positional determinacy: some single positional strategy wins on the
        // whole region; re-scan for it so the witness covers the region.
        std::vector<Vertex> witness(n, kNoVertex);
        bool found = false;
        for (std::size_t it = 0; it < combos && !found; ++it) {
            std::vector<Vertex> choice(n, kNoVertex);
            std::size_t x = it;
            for (std::size_t j = 0; j < owned.size(); ++j) {
                choice[owned[j]] = p.succ[owned[j]][x % p.succ[owned[j]].size()];
                x /= p.succ[owned[j]].size();
            }
            std::vector<char> win = winning_set(p, choice, player);
            bool covers = true;
            for (Vertex v = 0; v < n; ++v)
                if (region[v] && !win[v]) {
                    covers = false;
                    break;
                }
            if (covers) {
                witness = choice;
                found = true;
            }
        }
        if (!found) throw std::logic_error("brute_solve: no positional strategy covers the region");
        if (player == Owner::Eloise) {
            for (Vertex v = 0; v < n; ++v) out.eloise_region[v] = region[v];
            for (Vertex v = 0; v < n; ++v)
                if (p.owner[v] == Owner::Eloise && region[v]) out.eloise_strategy[v] = witness[v];
        } else {
            for (Vertex v = 0; v < n; ++v)
                if (static_cast<bool>(region[v]) == static_cast<bool>(out.eloise_region[v]))
                    throw std::logic_error("brute_solve: regions are not complementary");
            for (Vertex v = 0; v < n; ++v)
                if (p.owner[v] == Owner::Abelard && region[v]) out.abelard_strategy[v] = witness[v];
        }
    }
    out.eloise_wins_initial = out.eloise_region[p.initial];
    return out;
}

}  // namespace ng
