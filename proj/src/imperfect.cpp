#include "naturegames/imperfect.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "naturegames/graph_util.hpp"

namespace ng {

int ImperfectArena::max_priority() const {
    int d = 0;
    for (int p : priority) d = std::max(d, p);
    return d;
}

int ImperfectArena::obs_count() const {
    int m = 0;
    for (int o : obs) m = std::max(m, o + 1);
    return m;
}

Vertex ImperfectArena::add_vertex(std::string name, Owner o, int prio) {
    names.push_back(std::move(name));
    owner.push_back(o);
    priority.push_back(prio);
    delta_e.emplace_back(actions.size());
    delta_a.emplace_back();
    obs.push_back(static_cast<int>(obs.size()));  // singleton class by default
    return static_cast<Vertex>(owner.size() - 1);
}

int ImperfectArena::add_action(std::string name) {
    actions.push_back(std::move(name));
    for (auto& row : delta_e) row.emplace_back();
    return static_cast<int>(actions.size() - 1);
}

int ImperfectEventGame::obs_count() const {
    int m = 0;
    for (int o : obs) m = std::max(m, o + 1);
    return m;
}

std::vector<Diagnostic> validate_imperfect(const ImperfectArena& a) {
    std::vector<Diagnostic> out;
    if (a.size() == 0) {
        out.push_back({"nonempty", "arena has no vertices"});
        return out;
    }
    if (a.initial >= a.size()) out.push_back({"initial", "initial vertex out of range"});
    std::map<int, Vertex> rep;
    for (Vertex v = 0; v < a.size(); ++v) {
        auto [it, fresh] = rep.emplace(a.obs[v], v);
        if (!fresh) {
            Vertex u = it->second;
            if (a.owner[u] != a.owner[v])
                out.push_back({"class-owner", "class mixes '" + a.names[u] + "' and '" +
                                                  a.names[v] + "' of different owners"});
            if (a.priority[u] != a.priority[v])
                out.push_back({"class-priority", "class mixes priorities at '" + a.names[v] + "'"});
        }
        if (a.owner[v] == Owner::Nature)
            out.push_back({"owner", "vertex '" + a.names[v] + "' owned by Nature"});
        bool enabled = false;
        if (a.owner[v] == Owner::Eloise) {
            for (const auto& succ : a.delta_e[v])
                if (!succ.empty()) enabled = true;
        } else {
            enabled = !a.delta_a[v].empty();
        }
        if (!enabled)
            out.push_back({"enabled", "vertex '" + a.names[v] + "' has no enabled action/move"});
    }
    return out;
}

namespace {

std::vector<std::vector<Vertex>> classes_of(const ImperfectArena& a) {
    std::vector<std::vector<Vertex>> cls(a.obs_count());
    for (Vertex v = 0; v < a.size(); ++v) cls[a.obs[v]].push_back(v);
    return cls;
}

void require_valid(const ImperfectArena& a, const char* who) {
    auto diags = validate_imperfect(a);
    if (!diags.empty())
        throw ValidationError(std::string(who) + ": invalid arena: " + diags.front().detail);
}

}  // namespace

ImperfectEventGame build_hat_imperfect(const ImperfectArena& a) {
    require_valid(a, "build_hat_imperfect");
    ImperfectEventGame g;
    g.condition = Condition::Hat;
    g.names = a.names;
    g.owner = a.owner;
    g.priority = a.priority;
    g.obs = a.obs;
    g.phase.assign(a.size(), 0);
    g.abelard_succ = a.delta_a;
    g.initial = a.initial;
    g.act.assign(a.size(), {});

    auto cls = classes_of(a);
    for (std::size_t c = 0; c < cls.size(); ++c) {
        if (cls[c].empty() || a.owner[cls[c][0]] != Owner::Eloise) continue;
        for (std::size_t ga = 0; ga < a.actions.size(); ++ga) {
            std::vector<Vertex> enabled;
            for (Vertex v : cls[c])
                if (!a.delta_e[v][ga].empty()) enabled.push_back(v);
            if (enabled.empty()) continue;
            // theta tables: one avoided successor per enabled class member
            std::size_t total = 1;
            for (Vertex v : enabled) {
                if (total > guard_cap() / a.delta_e[v][ga].size())
                    throw GuardError("build_hat_imperfect: theta table guard exceeded");
                total *= a.delta_e[v][ga].size();
            }
            for (std::size_t idx = 0; idx < total; ++idx) {
                std::map<Vertex, Vertex> theta;
                std::size_t x = idx;
                std::string label = a.actions[ga];
                for (Vertex v : enabled) {
                    const auto& opts = a.delta_e[v][ga];
                    theta[v] = opts[x % opts.size()];
                    x /= opts.size();
                    label += "|" + a.names[v] + "!" + a.names[theta[v]];
                }
                int act_id = static_cast<int>(g.action_names.size());
                g.action_names.push_back(label);
                g.action_gamma.push_back(static_cast<int>(ga));
                for (Vertex v : enabled) {
                    if (g.act[v].size() <= static_cast<std::size_t>(act_id))
                        g.act[v].resize(act_id + 1);
                    for (Vertex w : a.delta_e[v][ga])
                        g.act[v][act_id].push_back(
                            {w, w == theta[v] ? Flag::Disobey : Flag::Obey});
                }
            }
        }
    }
    for (Vertex v = 0; v < a.size(); ++v) g.act[v].resize(g.action_names.size());
    return g;
}

namespace {

struct LocalTheta {
    // per enabled class member: ((first pointer, first mark), (next pointer, next mark))
    std::vector<std::array<std::pair<Vertex, bool>, 2>> table;
    bool uniform = true;
};

}  // namespace

ImperfectEventGame build_tilde_imperfect(const ImperfectArena& a) {
    require_valid(a, "build_tilde_imperfect");
    for (Owner o : a.owner)
        if (o == Owner::Abelard)
            throw ValidationError("build_tilde_imperfect: Abelard vertex present");

    ImperfectEventGame g;
    g.condition = Condition::Tilde;
    // vertices (v, X, x): X = who plays the Banach-Mazur game, x = first-move flag
    auto vid = [&](Vertex v, int X, int x) { return static_cast<Vertex>(v * 4 + X * 2 + x); };
    for (Vertex v = 0; v < a.size(); ++v) {
        for (int X = 0; X < 2; ++X)
            for (int x = 0; x < 2; ++x) {
                g.names.push_back(a.names[v] + (X == 0 ? "|E" : "|A") + (x == 0 ? "f" : "n"));
                g.owner.push_back(Owner::Eloise);
                g.priority.push_back(a.priority[v]);
                g.obs.push_back(a.obs[v]);
                g.phase.push_back(X == 0 ? 1 : 2);
            }
    }
    g.abelard_succ.assign(g.names.size(), {});
    g.act.assign(g.names.size(), {});
    g.initial = vid(a.initial, 1, 0);  // (v0, A, f)

    auto cls = classes_of(a);
    for (std::size_t c = 0; c < cls.size(); ++c) {
        if (cls[c].empty()) continue;
        for (std::size_t ga = 0; ga < a.actions.size(); ++ga) {
            std::vector<Vertex> enabled;
            for (Vertex v : cls[c])
                if (!a.delta_e[v][ga].empty()) enabled.push_back(v);
            if (enabled.empty()) continue;
            std::size_t per_member = 1;
            std::size_t total = 1;
            for (Vertex v : enabled) {
                per_member = a.delta_e[v][ga].size() * 2;
                std::size_t options = per_member * per_member;
                if (total > guard_cap() / options)
                    throw GuardError("build_tilde_imperfect: theta table guard exceeded");
                total *= options;
            }
            std::vector<LocalTheta> thetas;
            for (std::size_t idx = 0; idx < total; ++idx) {
                LocalTheta th;
                std::size_t x = idx;
                for (Vertex v : enabled) {
                    const auto& opts = a.delta_e[v][ga];
                    std::size_t m = opts.size() * 2;
                    std::size_t f = x % m;
                    x /= m;
                    std::size_t nxt = x % m;
                    x /= m;
                    std::array<std::pair<Vertex, bool>, 2> row{
                        std::make_pair(opts[f / 2], (f % 2) == 1),
                        std::make_pair(opts[nxt / 2], (nxt % 2) == 1)};
                    if (row[0] != row[1]) th.uniform = false;
                    th.table.push_back(row);
                }
                thetas.push_back(std::move(th));
            }
            // first-move/next-move-agreeing tables first: the common winners
            // sit early in the enumeration order
            std::stable_sort(thetas.begin(), thetas.end(),
                             [](const LocalTheta& l, const LocalTheta& r) {
                                 return l.uniform && !r.uniform;
                             });
            for (const LocalTheta& th : thetas) {
                int act_id = static_cast<int>(g.action_names.size());
                std::string label = a.actions[ga];
                for (std::size_t j = 0; j < enabled.size(); ++j) {
                    label += "|" + a.names[enabled[j]] + ">" + a.names[th.table[j][0].first] +
                             (th.table[j][0].second ? "T" : "_") + a.names[th.table[j][1].first] +
                             (th.table[j][1].second ? "T" : "_");
                }
                g.action_names.push_back(label);
                g.action_gamma.push_back(static_cast<int>(ga));
                for (std::size_t j = 0; j < enabled.size(); ++j) {
                    Vertex v = enabled[j];
                    for (int X = 0; X < 2; ++X)
                        for (int x = 0; x < 2; ++x) {
                            Vertex from = vid(v, X, x);
                            if (g.act[from].size() <= static_cast<std::size_t>(act_id))
                                g.act[from].resize(act_id + 1);
                            auto& res = g.act[from][act_id];
                            if (X == 1) {
                                // Abelard plays the BM game: any successor, any handover
                                for (Vertex w : a.delta_e[v][ga])
                                    for (int Y = 0; Y < 2; ++Y)
                                        res.push_back({vid(w, Y, x), Flag::None});
                            } else {
                                auto [w, mark] = th.table[j][x];
                                Vertex to = mark ? vid(w, 1, 1) : vid(w, 0, x);
                                res.push_back({to, Flag::None});
                            }
                        }
                }
            }
        }
    }
    for (Vertex v = 0; v < g.size(); ++v) g.act[v].resize(g.action_names.size());
    return g;
}

namespace {

struct ObsProduct {
    std::vector<std::vector<std::pair<Vertex, Flag>>> succ;  // flagged edges
    std::vector<int> priority;
    std::vector<int> phase;
    bool illegal = false;  // strategy prescribed a disabled action somewhere
};

ObsProduct obs_product(const ImperfectEventGame& g, const ObsStrategy& s) {
    ObsProduct out;
    std::map<std::pair<Vertex, int>, Vertex> index;
    std::vector<std::pair<Vertex, int>> states;
    std::deque<Vertex> work;
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
        Vertex id = work.front();
        work.pop_front();
        auto [v, m] = states[id];
        std::vector<std::pair<Vertex, Flag>> nexts;
        if (g.owner[v] == Owner::Eloise) {
            int act = s.move_at(m, g.obs[v]);
            if (act < 0 || static_cast<std::size_t>(act) >= g.act[v].size() ||
                g.act[v][act].empty()) {
                out.illegal = true;
                continue;
            }
            nexts = g.act[v][act];
        } else {
            for (Vertex w : g.abelard_succ[v]) nexts.push_back({w, Flag::None});
        }
        for (auto [w, flag] : nexts) {
            Vertex tid = intern(w, s.up_at(m, g.obs[w]));
            out.succ[id].push_back({tid, flag});
        }
    }
    return out;
}

std::vector<int> product_priorities(const ObsProduct& p) {
    std::vector<int> prios = p.priority;
    std::sort(prios.begin(), prios.end());
    prios.erase(std::unique(prios.begin(), prios.end()), prios.end());
    return prios;
}

}  // namespace

bool verify_obs_strategy(const ImperfectEventGame& g, const ObsStrategy& s) {
    ObsProduct p = obs_product(g, s);
    if (p.illegal) return false;
    std::size_t n = p.succ.size();
    std::vector<std::vector<Vertex>> plain(n);
    for (Vertex v = 0; v < n; ++v)
        for (auto [w, f] : p.succ[v]) plain[v].push_back(w);

    if (g.condition == Condition::Hat) {
        // violating: a cycle with odd minimum priority and an obey step on it
        for (int c : product_priorities(p)) {
            if (c % 2 == 0) continue;
            std::vector<char> mask(n, 0);
            for (Vertex v = 0; v < n; ++v) mask[v] = p.priority[v] >= c;
            SccResult scc = strongly_connected_components(plain, mask);
            std::vector<char> has_c(static_cast<std::size_t>(scc.count), 0);
            std::vector<char> has_obey(static_cast<std::size_t>(scc.count), 0);
            for (Vertex v = 0; v < n; ++v) {
                if (!mask[v]) continue;
                if (p.priority[v] == c) has_c[scc.comp[v]] = 1;
                for (auto [w, f] : p.succ[v])
                    if (mask[w] && scc.comp[w] == scc.comp[v] && f == Flag::Obey)
                        has_obey[scc.comp[v]] = 1;
            }
            for (int id = 0; id < scc.count; ++id)
                if (has_c[id] && has_obey[id]) return false;
        }
        return true;
    }
    // Tilde: violating when Eloise eventually plays the Banach-Mazur game
    // forever, or it alternates forever with an odd liminf.
    std::vector<char> emask(n, 0);
    for (Vertex v = 0; v < n; ++v) emask[v] = p.phase[v] == 1;
    std::vector<char> ecyc = on_cycle(plain, emask);
    for (Vertex v = 0; v < n; ++v)
        if (ecyc[v]) return false;
    for (int c : product_priorities(p)) {
        if (c % 2 == 0) continue;
        std::vector<char> mask(n, 0);
        for (Vertex v = 0; v < n; ++v) mask[v] = p.priority[v] >= c;
        SccResult scc = strongly_connected_components(plain, mask);
        std::vector<char> has_c(static_cast<std::size_t>(scc.count), 0);
        std::vector<char> has_e(static_cast<std::size_t>(scc.count), 0);
        std::vector<char> nontrivial(static_cast<std::size_t>(scc.count), 0);
        for (Vertex v = 0; v < n; ++v) {
            if (!mask[v]) continue;
            if (p.priority[v] == c) has_c[scc.comp[v]] = 1;
            if (p.phase[v] == 1) has_e[scc.comp[v]] = 1;
            for (auto [w, f] : p.succ[v])
                if (mask[w] && scc.comp[w] == scc.comp[v]) nontrivial[scc.comp[v]] = 1;
        }
        for (int id = 0; id < scc.count; ++id)
            if (has_c[id] && has_e[id] && nontrivial[id]) return false;
    }
    return true;
}

std::optional<ObsStrategy> solve_imperfect_bounded(const ImperfectEventGame& g, int memory_bound) {
    if (memory_bound < 1)
        throw ValidationError("solve_imperfect_bounded: memory bound must be >= 1");
    int n_obs = g.obs_count();

    std::optional<ObsStrategy> found;
    std::size_t budget = guard_cap();

    for (int memory = 1; memory <= memory_bound && !found; ++memory) {
        ObsStrategy s;
        s.n_obs = n_obs;
        s.memory = memory;
        s.m0 = 0;
        s.up.assign(static_cast<std::size_t>(memory) * n_obs, -1);
        s.move.assign(static_cast<std::size_t>(memory) * n_obs, -1);

        // lazy DFS over reachable (memory, vertex) pairs, assigning move
        // cells per class and update cells on demand
        std::function<void(std::vector<std::pair<int, Vertex>>, std::set<std::pair<int, Vertex>>)>
            go = [&](std::vector<std::pair<int, Vertex>> queue,
                     std::set<std::pair<int, Vertex>> seen) {
                if (found) return;
                while (!queue.empty()) {
                    auto [m, v] = queue.front();
                    queue.erase(queue.begin());
                    int o = g.obs[v];
                    if (g.owner[v] == Owner::Eloise &&
                        s.move[static_cast<std::size_t>(m) * n_obs + o] < 0) {
                        for (std::size_t a = 0; a < g.act[v].size(); ++a) {
                            if (g.act[v][a].empty()) continue;
                            s.move[static_cast<std::size_t>(m) * n_obs + o] = static_cast<int>(a);
                            auto q2 = queue;
                            q2.insert(q2.begin(), {m, v});
                            go(q2, seen);
                            if (found) break;
                        }
                        s.move[static_cast<std::size_t>(m) * n_obs + o] = -1;
                        return;
                    }
                    std::vector<Vertex> nexts;
                    if (g.owner[v] == Owner::Eloise) {
                        int act = s.move[static_cast<std::size_t>(m) * n_obs + o];
                        for (auto [w, f] : g.act[v][act]) nexts.push_back(w);
                    } else {
                        nexts = g.abelard_succ[v];
                    }
                    for (Vertex w : nexts) {
                        int wo = g.obs[w];
                        if (s.up[static_cast<std::size_t>(m) * n_obs + wo] < 0) {
                            for (int m2 = 0; m2 < memory; ++m2) {
                                s.up[static_cast<std::size_t>(m) * n_obs + wo] = m2;
                                auto q2 = queue;
                                q2.insert(q2.begin(), {m, v});
                                go(q2, seen);
                                if (found) break;
                            }
                            s.up[static_cast<std::size_t>(m) * n_obs + wo] = -1;
                            return;
                        }
                    }
                    for (Vertex w : nexts) {
                        auto key = std::make_pair(s.up[static_cast<std::size_t>(m) * n_obs + g.obs[w]], w);
                        if (seen.insert(key).second) queue.push_back(key);
                    }
                }
                if (budget == 0) throw GuardError("solve_imperfect_bounded: guard exceeded");
                --budget;
                ObsStrategy full = s;
                for (int& x : full.up)
                    if (x < 0) x = 0;
                if (verify_obs_strategy(g, full)) found = full;
            };
        go({{0, g.initial}}, {{0, g.initial}});
    }
    return found;
}

KnowledgeGame knowledge_construction(const ImperfectArena& a) {
    require_valid(a, "knowledge_construction");
    KnowledgeGame kg;
    int d = a.max_priority();
    int neutral = (d % 2 == 0) ? d + 2 : d + 1;

    std::map<std::vector<Vertex>, Vertex> index;
    std::vector<std::vector<Vertex>> todo;
    Vertex sink = kNoVertex;

    auto set_name = [&](const std::vector<Vertex>& k) {
        std::string name = "{";
        for (std::size_t i = 0; i < k.size(); ++i) name += (i ? "," : "") + a.names[k[i]];
        return name + "}";
    };
    auto intern = [&](std::vector<Vertex> k) {
        std::sort(k.begin(), k.end());
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        Vertex id = kg.game.add_vertex(set_name(k), a.owner[k[0]], a.priority[k[0]]);
        index.emplace(k, id);
        kg.knowledge.push_back(k);
        kg.main_vertices.push_back(id);
        todo.push_back(k);
        return id;
    };

    kg.game.initial = intern({a.initial});
    for (std::size_t i = 0; i < todo.size(); ++i) {
        std::vector<Vertex> k = todo[i];
        Vertex from = index.at(k);
        if (a.owner[k[0]] == Owner::Eloise) {
            bool any = false;
            for (std::size_t act = 0; act < a.actions.size(); ++act) {
                bool enabled = true;
                for (Vertex v : k)
                    if (a.delta_e[v][act].empty()) enabled = false;
                if (!enabled) continue;
                any = true;
                Vertex mid = kg.game.add_vertex(kg.game.names[from] + ":" + a.actions[act],
                                                Owner::Abelard, neutral);
                kg.game.add_edge(from, mid);
                std::set<Vertex> post;
                for (Vertex v : k)
                    for (Vertex w : a.delta_e[v][act]) post.insert(w);
                std::map<int, std::vector<Vertex>> by_class;
                for (Vertex w : post) by_class[a.obs[w]].push_back(w);
                for (auto& [cls, members] : by_class) kg.game.add_edge(mid, intern(members));
            }
            if (!any) {
                // no action is enabled on the whole knowledge set: Eloise is stuck
                if (sink == kNoVertex) {
                    sink = kg.game.add_vertex("stuck", Owner::Eloise, 1);
                    kg.game.add_edge(sink, sink);
                }
                kg.game.add_edge(from, sink);
            }
        } else {
            std::set<Vertex> post;
            for (Vertex v : k)
                for (Vertex w : a.delta_a[v]) post.insert(w);
            std::map<int, std::vector<Vertex>> by_class;
            for (Vertex w : post) by_class[a.obs[w]].push_back(w);
            for (auto& [cls, members] : by_class) kg.game.add_edge(from, intern(members));
        }
    }
    return kg;
}

ParityGame expand_two_player(const ImperfectArena& a) {
    require_valid(a, "expand_two_player");
    ParityGame p;
    int d = a.max_priority();
    int neutral = (d % 2 == 0) ? d + 2 : d + 1;
    for (Vertex v = 0; v < a.size(); ++v) p.add_vertex(a.names[v], a.owner[v], a.priority[v]);
    for (Vertex v = 0; v < a.size(); ++v) {
        if (a.owner[v] == Owner::Eloise) {
            for (std::size_t act = 0; act < a.actions.size(); ++act) {
                if (a.delta_e[v][act].empty()) continue;
                Vertex mid = p.add_vertex(a.names[v] + ":" + a.actions[act], Owner::Abelard, neutral);
                p.add_edge(v, mid);
                for (Vertex w : a.delta_e[v][act]) p.add_edge(mid, w);
            }
        } else {
            for (Vertex w : a.delta_a[v]) p.add_edge(v, w);
        }
    }
    p.initial = a.initial;
    return p;
}

PointedGraph imperfect_outcomes(const ImperfectArena& a, const ObsStrategy& eloise,
                                const std::vector<int>& eloise_gamma_of_action,
                                const MooreStrategy& abelard) {
    PointedGraph out;
    std::map<std::tuple<Vertex, int, int>, Vertex> index;
    std::vector<std::tuple<Vertex, int, int>> states;
    std::deque<Vertex> work;
    auto intern = [&](Vertex v, int me, int ma) {
        auto key = std::make_tuple(v, me, ma);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        Vertex id = static_cast<Vertex>(states.size());
        index.emplace(key, id);
        states.push_back(key);
        out.succ.emplace_back();
        out.priority.push_back(a.priority[v]);
        out.labels.push_back(a.names[v]);
        work.push_back(id);
        return id;
    };
    out.point = intern(a.initial, eloise.m0, abelard.m0);
    while (!work.empty()) {
        Vertex id = work.front();
        work.pop_front();
        auto [v, me, ma] = states[id];
        std::vector<Vertex> nexts;
        if (a.owner[v] == Owner::Eloise) {
            int act = eloise.move_at(me, a.obs[v]);
            if (act < 0) throw ValidationError("imperfect_outcomes: strategy undefined");
            int gamma = act < static_cast<int>(eloise_gamma_of_action.size())
                            ? eloise_gamma_of_action[act]
                            : act;
            if (a.delta_e[v][gamma].empty())
                throw ValidationError("imperfect_outcomes: disabled action prescribed");
            nexts = a.delta_e[v][gamma];
        } else {
            nexts.push_back(abelard.move_at(ma, v));
        }
        for (Vertex w : nexts) {
            Vertex tid = intern(w, eloise.up_at(me, a.obs[w]), abelard.up_at(ma, w));
            auto& sl = out.succ[id];
            auto it = std::lower_bound(sl.begin(), sl.end(), tid);
            if (it == sl.end() || *it != tid) sl.insert(it, tid);
        }
    }
    return out;
}

NatureGame abelard_view(const ImperfectArena& a) {
    NatureGame g;
    for (Vertex v = 0; v < a.size(); ++v)
        g.add_vertex(a.names[v], a.owner[v] == Owner::Abelard ? Owner::Abelard : Owner::Nature,
                     a.priority[v]);
    for (Vertex v = 0; v < a.size(); ++v) {
        if (a.owner[v] == Owner::Abelard) {
            for (Vertex w : a.delta_a[v]) g.add_edge(v, w);
        } else {
            for (const auto& row : a.delta_e[v])
                for (Vertex w : row) g.add_edge(v, w);
        }
    }
    g.initial = a.initial;
    return g;
}

}  // namespace ng
