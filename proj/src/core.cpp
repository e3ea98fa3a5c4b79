#include "naturegames/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace ng {

const char* owner_name(Owner o) {
    switch (o) {
        case Owner::Eloise: return "eloise";
        case Owner::Abelard: return "abelard";
        case Owner::Nature: return "nature";
    }
    return "?";
}

namespace {
std::size_t g_guard_cap = 0;

std::size_t default_guard_cap() {
    if (const char* env = std::getenv("NATUREGAMES_GUARD")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 2'000'000;
}
}  // namespace

std::size_t guard_cap() {
    if (g_guard_cap == 0) g_guard_cap = default_guard_cap();
    return g_guard_cap;
}

void set_guard_cap(std::size_t cap) { g_guard_cap = cap; }

int NatureGame::max_priority() const {
    int d = 0;
    for (int p : priority) d = std::max(d, p);
    return d;
}

std::size_t NatureGame::edge_count() const {
    std::size_t n = 0;
    for (const auto& s : succ) n += s.size();
    return n;
}

Vertex NatureGame::add_vertex(std::string name, Owner o, int prio) {
    names.push_back(std::move(name));
    owner.push_back(o);
    succ.emplace_back();
    priority.push_back(prio);
    return static_cast<Vertex>(owner.size() - 1);
}

void NatureGame::add_edge(Vertex from, Vertex to) {
    auto& s = succ[from];
    auto it = std::lower_bound(s.begin(), s.end(), to);
    if (it == s.end() || *it != to) s.insert(it, to);
}

std::optional<Vertex> NatureGame::vertex_by_name(const std::string& name) const {
    for (Vertex v = 0; v < names.size(); ++v)
        if (names[v] == name) return v;
    return std::nullopt;
}

MooreStrategy MooreStrategy::empty_for(const NatureGame& g, Owner player) {
    MooreStrategy s;
    s.player = player;
    s.n_vertices = static_cast<std::uint32_t>(g.size());
    s.memory = 1;
    s.m0 = 0;
    s.up.assign(g.size(), 0);
    s.move.assign(g.size(), kNoVertex);
    for (Vertex v = 0; v < g.size(); ++v)
        if (g.owner[v] == player) s.move[v] = g.succ[v].empty() ? kNoVertex : g.succ[v][0];
    return s;
}

std::vector<Diagnostic> validate_game(const NatureGame& g) {
    std::vector<Diagnostic> out;
    if (g.names.empty()) {
        out.push_back({"nonempty", "game has no vertices"});
        return out;
    }
    if (g.owner.size() != g.names.size() || g.succ.size() != g.names.size() ||
        g.priority.size() != g.names.size()) {
        out.push_back({"partition", "owner map does not cover the vertex set"});
        return out;
    }
    if (g.initial >= g.size()) out.push_back({"initial", "initial vertex out of range"});
    for (Vertex v = 0; v < g.size(); ++v) {
        if (g.succ[v].empty())
            out.push_back({"dead-end", "vertex '" + g.names[v] + "' has no outgoing edge"});
        if (g.priority[v] < 0)
            out.push_back({"priority-range", "vertex '" + g.names[v] + "' has negative priority"});
        for (Vertex w : g.succ[v])
            if (w >= g.size())
                out.push_back({"edge-range", "edge from '" + g.names[v] + "' leaves the vertex set"});
    }
    return out;
}

std::vector<Diagnostic> validate_strategy(const NatureGame& g, const MooreStrategy& s) {
    std::vector<Diagnostic> out;
    if (s.player == Owner::Nature) {
        out.push_back({"player", "Nature has no strategies"});
        return out;
    }
    if (s.n_vertices != g.size() || s.memory < 1 ||
        s.up.size() != static_cast<std::size_t>(s.memory) * g.size() ||
        s.move.size() != static_cast<std::size_t>(s.memory) * g.size()) {
        out.push_back({"tables", "strategy table sizes do not match the game"});
        return out;
    }
    for (int m = 0; m < s.memory; ++m) {
        for (Vertex v = 0; v < g.size(); ++v) {
            int nm = s.up_at(m, v);
            if (nm < 0 || nm >= s.memory)
                out.push_back({"memory-range", "up(" + std::to_string(m) + ",'" + g.names[v] + "')"});
            if (g.owner[v] == s.player) {
                Vertex mv = s.move_at(m, v);
                if (mv == kNoVertex || !std::binary_search(g.succ[v].begin(), g.succ[v].end(), mv))
                    out.push_back({"move-edge", "move(" + std::to_string(m) + ",'" + g.names[v] +
                                                    "') is not an edge target"});
            }
        }
    }
    return out;
}

OutcomeGraph restrict_by_strategies(const NatureGame& g, const MooreStrategy& eloise,
                                    const MooreStrategy& abelard) {
    if (eloise.player != Owner::Eloise || abelard.player != Owner::Abelard)
        throw ValidationError("restrict_by_strategies: strategy/player mismatch");
    for (const auto& d : validate_strategy(g, eloise))
        throw ValidationError("restrict_by_strategies: eloise strategy invalid: " + d.invariant);
    for (const auto& d : validate_strategy(g, abelard))
        throw ValidationError("restrict_by_strategies: abelard strategy invalid: " + d.invariant);

    OutcomeGraph out;
    std::map<std::tuple<Vertex, int, int>, Vertex> index;
    std::deque<Vertex> work;

    auto intern = [&](Vertex v, int me, int ma) {
        auto key = std::make_tuple(v, me, ma);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        Vertex id = static_cast<Vertex>(out.states.size());
        index.emplace(key, id);
        out.states.push_back({v, me, ma});
        out.graph.succ.emplace_back();
        out.graph.priority.push_back(g.priority[v]);
        out.graph.labels.push_back(g.names[v] + "#" + std::to_string(me) + "." + std::to_string(ma));
        work.push_back(id);
        return id;
    };

    out.graph.point = intern(g.initial, eloise.m0, abelard.m0);
    while (!work.empty()) {
        Vertex id = work.front();
        work.pop_front();
        auto st = out.states[id];
        std::vector<Vertex> nexts;
        switch (g.owner[st.vertex]) {
            case Owner::Eloise: nexts.push_back(eloise.move_at(st.mem_e, st.vertex)); break;
            case Owner::Abelard: nexts.push_back(abelard.move_at(st.mem_a, st.vertex)); break;
            case Owner::Nature: nexts = g.succ[st.vertex]; break;
        }
        for (Vertex v2 : nexts) {
            Vertex tid = intern(v2, eloise.up_at(st.mem_e, v2), abelard.up_at(st.mem_a, v2));
            auto& s = out.graph.succ[id];
            auto it = std::lower_bound(s.begin(), s.end(), tid);
            if (it == s.end() || *it != tid) s.insert(it, tid);
        }
    }
    return out;
}

OutcomeGraph restrict_by_strategy(const NatureGame& g, const MooreStrategy& s) {
    MooreStrategy other = MooreStrategy::empty_for(
        g, s.player == Owner::Eloise ? Owner::Abelard : Owner::Eloise);
    for (Vertex v = 0; v < g.size(); ++v)
        if (g.owner[v] == other.player)
            throw ValidationError("restrict_by_strategy: game has vertices of the other player");
    if (s.player == Owner::Eloise) return restrict_by_strategies(g, s, other);
    return restrict_by_strategies(g, other, s);
}

namespace {

// Behaviour signature of a Moore machine: the quotient of reachable
// (memory, vertex) pairs under bisimulation, rendered in BFS order.
// Reachability is taken over all play steps (owned vertices contribute
// only the chosen move, others all successors).
struct MachineKey {
    std::vector<int> data;
    bool operator<(const MachineKey& o) const { return data < o.data; }
};

MachineKey canonical_key(const NatureGame& g, const MooreStrategy& s) {
    std::size_t n = g.size();
    auto at = [&](int m, Vertex v) { return static_cast<std::size_t>(m) * n + v; };
    // Partition refinement over states (m, v) of the product machine.
    // Initial blocks: by vertex and by move choice at owned vertices.
    std::vector<int> block(static_cast<std::size_t>(s.memory) * n);
    std::size_t n_blocks;
    {
        std::map<std::pair<Vertex, Vertex>, int> init;
        for (int m = 0; m < s.memory; ++m)
            for (Vertex v = 0; v < n; ++v) {
                Vertex choice = g.owner[v] == s.player ? s.move_at(m, v) : kNoVertex;
                auto it = init.emplace(std::make_pair(v, choice), static_cast<int>(init.size())).first;
                block[at(m, v)] = it->second;
            }
        n_blocks = init.size();
    }
    for (;;) {
        std::map<std::vector<int>, int> sigs;
        std::vector<int> next(block.size());
        for (int m = 0; m < s.memory; ++m)
            for (Vertex v = 0; v < n; ++v) {
                std::vector<int> sig{block[at(m, v)]};
                std::vector<Vertex> nexts;
                if (g.owner[v] == s.player)
                    nexts.push_back(s.move_at(m, v));
                else
                    nexts = g.succ[v];
                for (Vertex v2 : nexts) sig.push_back(block[at(s.up_at(m, v2), v2)]);
                auto it = sigs.emplace(std::move(sig), static_cast<int>(sigs.size())).first;
                next[at(m, v)] = it->second;
            }
        if (sigs.size() == n_blocks) break;
        n_blocks = sigs.size();
        block = std::move(next);
    }

    // BFS over quotient states from (m0, initial); serialize transitions.
    auto state_block = [&](int m, Vertex v) { return block[at(m, v)]; };
    std::map<std::pair<int, Vertex>, int> order;  // (block, vertex) -> bfs id
    std::deque<std::pair<int, Vertex>> work;
    std::map<std::pair<int, Vertex>, std::pair<int, Vertex>> rep;  // quotient -> concrete
    MachineKey key;

    auto visit = [&](int m, Vertex v) {
        auto q = std::make_pair(state_block(m, v), v);
        auto it = order.find(q);
        if (it != order.end()) return it->second;
        int id = static_cast<int>(order.size());
        order.emplace(q, id);
        rep.emplace(q, std::make_pair(m, v));
        work.push_back(q);
        return id;
    };

    for (Vertex v0 = 0; v0 < n; ++v0) visit(s.m0, static_cast<Vertex>(v0));
    while (!work.empty()) {
        auto q = work.front();
        work.pop_front();
        auto [m, v] = rep[q];
        key.data.push_back(static_cast<int>(v));
        if (g.owner[v] == s.player) {
            Vertex choice = s.move_at(m, v);
            key.data.push_back(static_cast<int>(choice));
            key.data.push_back(visit(s.up_at(m, choice), choice));
        } else {
            key.data.push_back(-1);
            for (Vertex v2 : g.succ[v]) key.data.push_back(visit(s.up_at(m, v2), v2));
        }
        key.data.push_back(-2);
    }
    return key;
}

// Exhaustive enumeration over total tables: every move cell of the owned
// vertices and, beyond one memory state, every update cell.
void enumerate_raw(const NatureGame& g, Owner player, int memory,
                   const std::function<void(const MooreStrategy&)>& emit, std::size_t& budget) {
    std::size_t n = g.size();
    MooreStrategy s;
    s.player = player;
    s.n_vertices = static_cast<std::uint32_t>(n);
    s.memory = memory;
    s.m0 = 0;
    s.up.assign(static_cast<std::size_t>(memory) * n, 0);
    s.move.assign(static_cast<std::size_t>(memory) * n, kNoVertex);

    struct MoveCell {
        int m;
        Vertex v;
    };
    std::vector<MoveCell> move_cells;
    for (int m = 0; m < memory; ++m)
        for (Vertex v = 0; v < n; ++v)
            if (g.owner[v] == player) move_cells.push_back({m, v});
    std::size_t up_cells = memory > 1 ? static_cast<std::size_t>(memory) * n : 0;

    std::function<void(std::size_t)> fill_moves = [&](std::size_t i) {
        if (i == move_cells.size()) {
            if (budget == 0) throw GuardError("enumerate_strategies: size guard exceeded");
            --budget;
            emit(s);
            return;
        }
        auto [m, v] = move_cells[i];
        for (Vertex choice : g.succ[v]) {
            s.set_move(m, v, choice);
            fill_moves(i + 1);
        }
        s.set_move(m, v, kNoVertex);
    };

    std::function<void(std::size_t)> fill_ups = [&](std::size_t cell) {
        if (cell == up_cells) {
            fill_moves(0);
            return;
        }
        for (int m2 = 0; m2 < memory; ++m2) {
            s.up[cell] = m2;
            fill_ups(cell + 1);
        }
        s.up[cell] = 0;
    };

    fill_ups(0);
}

}  // namespace

std::vector<MooreStrategy> enumerate_strategies(const NatureGame& g, Owner player,
                                                int memory_bound) {
    if (player == Owner::Nature) throw ValidationError("enumerate_strategies: Nature has no strategies");
    if (memory_bound < 1) throw ValidationError("enumerate_strategies: memory bound must be >= 1");
    for (const auto& d : validate_game(g))
        throw ValidationError("enumerate_strategies: invalid game: " + d.detail);

    std::vector<MooreStrategy> out;
    std::set<MachineKey> seen;
    std::size_t budget = guard_cap();
    for (int memory = 1; memory <= memory_bound; ++memory) {
        enumerate_raw(g, player, memory,
                      [&](const MooreStrategy& s) {
                          MachineKey key = canonical_key(g, s);
                          if (seen.insert(std::move(key)).second) out.push_back(s);
                      },
                      budget);
    }
    return out;
}

}  // namespace ng
