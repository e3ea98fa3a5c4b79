#include "naturegames/classifier.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "naturegames/graph_util.hpp"

namespace ng {

namespace {

bool has_edge(const PointedGraph& g, Vertex a, Vertex b) {
    const auto& s = g.succ[a];
    return std::binary_search(s.begin(), s.end(), b);
}

void check_graph(const PointedGraph& g) {
    if (g.size() == 0) throw ValidationError("classifier: empty graph");
    if (g.point >= g.size()) throw ValidationError("classifier: point out of range");
    std::vector<char> reach = reachable_from(g.succ, {}, {g.point});
    for (Vertex v = 0; v < g.size(); ++v)
        if (reach[v] && g.succ[v].empty())
            throw ValidationError("classifier: reachable dead-end");
}

std::vector<int> distinct_priorities(const PointedGraph& g, const std::vector<char>& reach) {
    std::vector<int> prios;
    for (Vertex v = 0; v < g.size(); ++v)
        if (reach[v]) prios.push_back(g.priority[v]);
    std::sort(prios.begin(), prios.end());
    prios.erase(std::unique(prios.begin(), prios.end()), prios.end());
    return prios;
}

struct Trap {
    int colour;                  // the odd priority c
    std::vector<Vertex> members; // sorted
    bool fat = false;            // some member has >= 2 successors inside
    Vertex fat_vertex = kNoVertex;
};

// c-traps: SCCs of the reachable priority->=c subgraph that contain a
// priority-c vertex and at least one internal edge (self-loops count).
std::vector<Trap> collect_traps(const PointedGraph& g, const std::vector<char>& reach) {
    std::vector<Trap> traps;
    for (int c : distinct_priorities(g, reach)) {
        if (c % 2 == 0) continue;
        std::vector<char> mask(g.size(), 0);
        for (Vertex v = 0; v < g.size(); ++v) mask[v] = reach[v] && g.priority[v] >= c;
        SccResult scc = strongly_connected_components(g.succ, mask);
        std::vector<char> has_c(static_cast<std::size_t>(scc.count), 0);
        std::vector<char> cyc(static_cast<std::size_t>(scc.count), 0);
        for (Vertex v = 0; v < g.size(); ++v) {
            if (!mask[v]) continue;
            if (g.priority[v] == c) has_c[scc.comp[v]] = 1;
            for (Vertex w : g.succ[v])
                if (mask[w] && scc.comp[w] == scc.comp[v]) cyc[scc.comp[v]] = 1;
        }
        for (int id = 0; id < scc.count; ++id) {
            if (!has_c[id] || !cyc[id]) continue;
            Trap t;
            t.colour = c;
            for (Vertex v = 0; v < g.size(); ++v)
                if (mask[v] && scc.comp[v] == id) t.members.push_back(v);
            for (Vertex v : t.members) {
                int inside = 0;
                for (Vertex w : g.succ[v])
                    if (mask[w] && scc.comp[w] == id) ++inside;
                if (inside >= 2) {
                    t.fat = true;
                    t.fat_vertex = v;
                    break;
                }
            }
            traps.push_back(std::move(t));
        }
    }
    return traps;
}

std::vector<Vertex> shortest_path_inside(const PointedGraph& g, const std::vector<Vertex>& inside,
                                         Vertex from, Vertex to) {
    // BFS within the member set; returns vertex sequence from -> to (both ends
    // included); empty handle when from == to.
    std::set<Vertex> member(inside.begin(), inside.end());
    std::map<Vertex, Vertex> parent;
    std::deque<Vertex> work{from};
    parent[from] = from;
    while (!work.empty()) {
        Vertex v = work.front();
        work.pop_front();
        if (v == to) break;
        for (Vertex w : g.succ[v])
            if (member.count(w) && !parent.count(w)) {
                parent[w] = v;
                work.push_back(w);
            }
    }
    std::vector<Vertex> path;
    if (!parent.count(to)) return path;
    for (Vertex v = to; v != from; v = parent[v]) path.push_back(v);
    path.push_back(from);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<Vertex> cycle_through(const PointedGraph& g, const Trap& t, Vertex start, Vertex first,
                                  Vertex via) {
    // start -> first -> ... -> via -> ... -> start, all inside the trap;
    // returned as a vertex list beginning at start (the closing edge back to
    // start is implicit).
    std::vector<Vertex> a = shortest_path_inside(g, t.members, first, via);
    std::vector<Vertex> b = shortest_path_inside(g, t.members, via, start);
    std::vector<Vertex> cycle{start};
    cycle.insert(cycle.end(), a.begin(), a.end());
    cycle.insert(cycle.end(), b.begin() + 1, b.end());
    cycle.pop_back();  // drop the final start; it closes implicitly
    return cycle;
}

std::vector<Vertex> repeat_cycle(const std::vector<Vertex>& c, std::size_t times) {
    std::vector<Vertex> out;
    out.reserve(c.size() * times);
    for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), c.begin(), c.end());
    return out;
}

CycleWitness make_witness(const PointedGraph& g, const Trap& t) {
    Vertex x = t.fat_vertex;
    std::vector<Vertex> in_succ;
    std::set<Vertex> member(t.members.begin(), t.members.end());
    for (Vertex w : g.succ[x])
        if (member.count(w)) in_succ.push_back(w);
    Vertex y = kNoVertex;  // a priority-c vertex of the trap
    for (Vertex v : t.members)
        if (g.priority[v] == t.colour) {
            y = v;
            break;
        }
    std::vector<Vertex> a = cycle_through(g, t, x, in_succ[0], y);
    std::vector<Vertex> b = cycle_through(g, t, x, in_succ[1], y);
    std::size_t l = std::lcm(a.size(), b.size());
    CycleWitness w;
    w.pivot = x;
    w.cycle_a = repeat_cycle(a, l / a.size());
    w.cycle_b = repeat_cycle(b, l / b.size());
    return w;
}

}  // namespace

Lasso normalize_lasso(Lasso l) {
    // primitive period
    for (std::size_t p = 1; p < l.loop.size(); ++p) {
        if (l.loop.size() % p != 0) continue;
        bool ok = true;
        for (std::size_t i = p; i < l.loop.size() && ok; ++i)
            if (l.loop[i] != l.loop[i % p]) ok = false;
        if (ok) {
            l.loop.resize(p);
            break;
        }
    }
    // absorb the handle tail into the loop
    while (!l.handle.empty() && l.handle.back() == l.loop.back()) {
        l.loop.insert(l.loop.begin(), l.loop.back());
        l.loop.pop_back();
        l.handle.pop_back();
    }
    return l;
}

namespace {

bool lasso_is_losing(const PointedGraph& g, const Lasso& l) {
    int c = g.priority[l.loop[0]];
    for (Vertex v : l.loop) c = std::min(c, g.priority[v]);
    return c % 2 == 1;
}

bool lasso_in_graph(const PointedGraph& g, const Lasso& l) {
    if (l.loop.empty()) return false;
    Vertex first = l.handle.empty() ? l.loop[0] : l.handle[0];
    if (first != g.point) return false;
    std::vector<Vertex> word = l.handle;
    word.insert(word.end(), l.loop.begin(), l.loop.end());
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
        if (!has_edge(g, word[i], word[i + 1])) return false;
    return has_edge(g, l.loop.back(), l.loop[0]);
}

}  // namespace

std::vector<Lasso> enumerate_losing_lassos(const PointedGraph& g, std::size_t handle_bound,
                                           std::size_t loop_bound) {
    if (handle_bound < 1 || loop_bound < 1)
        throw ValidationError("enumerate_losing_lassos: bounds must be >= 1");
    check_graph(g);
    std::set<Lasso> seen;
    std::size_t budget = guard_cap();

    // DFS over handles (arbitrary walks from the point) and loops.
    std::vector<Vertex> handle;
    std::vector<Vertex> loop;

    std::function<void(Vertex)> loops = [&](Vertex at) {
        if (budget == 0) throw GuardError("enumerate_losing_lassos: guard exceeded");
        --budget;
        // close the loop whenever an edge back to loop[0] exists
        if (has_edge(g, at, loop[0])) {
            Lasso l{handle, loop};
            if (lasso_is_losing(g, l)) seen.insert(normalize_lasso(l));
        }
        if (loop.size() >= loop_bound) return;
        for (Vertex w : g.succ[at]) {
            loop.push_back(w);
            loops(w);
            loop.pop_back();
        }
    };

    std::function<void(Vertex)> handles = [&](Vertex at) {
        if (budget == 0) throw GuardError("enumerate_losing_lassos: guard exceeded");
        --budget;
        // try starting the loop at every successor, then extend the handle
        for (Vertex w : g.succ[at]) {
            loop.assign(1, w);
            loops(w);
        }
        loop.clear();
        if (handle.size() >= handle_bound) return;
        for (Vertex w : g.succ[at]) {
            handle.push_back(w);
            handles(w);
            handle.pop_back();
        }
    };

    // empty handle: loop starts at the point
    loop.assign(1, g.point);
    loops(g.point);
    loop.clear();
    handle.assign(1, g.point);
    handles(g.point);

    return std::vector<Lasso>(seen.begin(), seen.end());
}

namespace {

// Shared phase analysis; returns the verdict kind and, when finite, the traps.
BranchCardinality::Kind kind_and_traps(const PointedGraph& g, const std::vector<char>& reach,
                                       std::vector<Trap>& traps, const Trap** fat) {
    traps = collect_traps(g, reach);
    for (const Trap& t : traps)
        if (t.fat) {
            if (fat) *fat = &t;
            return BranchCardinality::Kind::Uncountable;
        }
    // All traps are thin (single simple cycles).  Countably infinite iff a
    // vertex outside some trap lies on a cycle and can reach it.
    std::vector<char> cyc = on_cycle(g.succ, reach);
    for (const Trap& t : traps) {
        std::vector<char> seed(g.size(), 0);
        for (Vertex v : t.members) seed[v] = 1;
        std::vector<char> reaches = can_reach(g.succ, reach, seed);
        for (Vertex v = 0; v < g.size(); ++v) {
            if (!reach[v] || !cyc[v] || !reaches[v]) continue;
            if (!std::binary_search(t.members.begin(), t.members.end(), v))
                return BranchCardinality::Kind::CountablyInfinite;
        }
    }
    return BranchCardinality::Kind::Finite;
}

}  // namespace

BranchCardinality::Kind classify_kind(const PointedGraph& g) {
    check_graph(g);
    std::vector<char> reach = reachable_from(g.succ, {}, {g.point});
    std::vector<Trap> traps;
    return kind_and_traps(g, reach, traps, nullptr);
}

BranchCardinality classify_losing(const PointedGraph& g) {
    check_graph(g);
    std::vector<char> reach = reachable_from(g.succ, {}, {g.point});
    std::vector<Trap> traps;
    const Trap* fat = nullptr;
    BranchCardinality out;
    out.kind = kind_and_traps(g, reach, traps, &fat);
    if (out.kind == BranchCardinality::Kind::Uncountable) {
        out.witness = make_witness(g, *fat);
        return out;
    }
    if (out.kind == BranchCardinality::Kind::CountablyInfinite) return out;

    // A stem is a simple path from the point ending inside a trap, whose
    // entering step is not the trap's own forced move; settling there yields
    // one losing branch.
    std::map<Vertex, std::pair<int, Vertex>> trap_of;  // member -> (trap idx, forced successor)
    for (std::size_t i = 0; i < traps.size(); ++i) {
        const Trap& t = traps[i];
        std::set<Vertex> member(t.members.begin(), t.members.end());
        for (Vertex v : t.members) {
            Vertex forced = kNoVertex;
            for (Vertex w : g.succ[v])
                if (member.count(w)) forced = w;  // thin: at most one
            trap_of[v] = {static_cast<int>(i), forced};
        }
    }
    // restrict the search to vertices that can reach some trap
    std::vector<char> seed(g.size(), 0);
    for (const Trap& t : traps)
        for (Vertex v : t.members) seed[v] = 1;
    std::vector<char> relevant = can_reach(g.succ, reach, seed);

    std::size_t budget = guard_cap();
    std::vector<char> on_path(g.size(), 0);
    std::vector<Vertex> path;

    auto settle_here = [&](Vertex v, Vertex prev) {
        auto it = trap_of.find(v);
        if (it == trap_of.end()) return false;
        if (prev == kNoVertex) return true;  // the point itself settles
        auto pit = trap_of.find(prev);
        // minimal stem: the entering step must not be the forced in-trap move
        if (pit != trap_of.end() && pit->second.first == it->second.first &&
            pit->second.second == v)
            return false;
        return true;
    };

    std::function<void(Vertex, Vertex)> dfs = [&](Vertex v, Vertex prev) {
        if (budget == 0) throw GuardError("classify_losing: finite-count guard exceeded");
        --budget;
        if (settle_here(v, prev)) {
            out.count += 1;
            Lasso l;
            l.handle = path;
            Vertex w = v;
            do {
                l.loop.push_back(w);
                w = trap_of[w].second;
            } while (w != v);
            l.handle.pop_back();  // the settle vertex opens the loop
            out.lassos.push_back(normalize_lasso(l));
        }
        for (Vertex w : g.succ[v]) {
            if (!relevant[w] || on_path[w]) continue;
            on_path[w] = 1;
            path.push_back(w);
            dfs(w, v);
            path.pop_back();
            on_path[w] = 0;
        }
    };

    if (relevant[g.point]) {
        on_path[g.point] = 1;
        path.push_back(g.point);
        dfs(g.point, kNoVertex);
    }
    std::sort(out.lassos.begin(), out.lassos.end());
    return out;
}

BranchCardinality classify_winning(const PointedGraph& g) {
    PointedGraph shifted = g;
    for (int& p : shifted.priority) p += 1;
    return classify_losing(shifted);
}

bool verify_cycle_witness(const PointedGraph& g, const CycleWitness& w) {
    const auto& a = w.cycle_a;
    const auto& b = w.cycle_b;
    if (a.empty() || b.empty() || a.size() != b.size() || a == b) return false;
    if (a[0] != w.pivot || b[0] != w.pivot) return false;
    for (const auto* c : {&a, &b}) {
        for (std::size_t i = 0; i + 1 < c->size(); ++i)
            if (!has_edge(g, (*c)[i], (*c)[i + 1])) return false;
        if (!has_edge(g, c->back(), (*c)[0])) return false;
    }
    int m = g.priority[a[0]];
    for (Vertex v : a) m = std::min(m, g.priority[v]);
    for (Vertex v : b) m = std::min(m, g.priority[v]);
    if (m % 2 == 0) return false;
    // not both powers of one common cycle word
    auto primitive = [](const std::vector<Vertex>& c) {
        for (std::size_t p = 1; p < c.size(); ++p) {
            if (c.size() % p != 0) continue;
            bool ok = true;
            for (std::size_t i = p; i < c.size() && ok; ++i)
                if (c[i] != c[i % p]) ok = false;
            if (ok) return std::vector<Vertex>(c.begin(), c.begin() + p);
        }
        return c;
    };
    return primitive(a) != primitive(b);
}

bool verify_lasso_list(const PointedGraph& g, const std::vector<Lasso>& lassos) {
    std::set<Lasso> seen;
    for (const Lasso& l : lassos) {
        Lasso n = normalize_lasso(l);
        if (!seen.insert(n).second) return false;
        if (!lasso_in_graph(g, n)) return false;
        if (!lasso_is_losing(g, n)) return false;
    }
    return true;
}

}  // namespace ng
