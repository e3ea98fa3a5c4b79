#include "naturegames/graph_util.hpp"

#include <algorithm>
#include <deque>

namespace ng {

SccResult strongly_connected_components(const std::vector<std::vector<Vertex>>& succ,
                                        const std::vector<char>& mask) {
    std::size_t n = succ.size();
    auto alive = [&](Vertex v) { return mask.empty() || mask[v]; };

    SccResult res;
    res.comp.assign(n, -1);
    std::vector<int> low(n, -1), num(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<Vertex> stack;
    int counter = 0;

    struct Frame {
        Vertex v;
        std::size_t edge;
    };
    std::vector<Frame> call;

    for (Vertex root = 0; root < n; ++root) {
        if (!alive(root) || num[root] != -1) continue;
        call.push_back({root, 0});
        num[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& fr = call.back();
            if (fr.edge < succ[fr.v].size()) {
                Vertex w = succ[fr.v][fr.edge++];
                if (!alive(w)) continue;
                if (num[w] == -1) {
                    num[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[fr.v] = std::min(low[fr.v], num[w]);
                }
            } else {
                Vertex v = fr.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
                if (low[v] == num[v]) {
                    for (;;) {
                        Vertex w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        res.comp[w] = res.count;
                        if (w == v) break;
                    }
                    ++res.count;
                }
            }
        }
    }
    return res;
}

std::vector<char> on_cycle(const std::vector<std::vector<Vertex>>& succ,
                           const std::vector<char>& mask) {
    std::size_t n = succ.size();
    auto alive = [&](Vertex v) { return mask.empty() || mask[v]; };
    SccResult scc = strongly_connected_components(succ, mask);
    std::vector<char> nontrivial(static_cast<std::size_t>(scc.count), 0);
    for (Vertex v = 0; v < n; ++v) {
        if (!alive(v)) continue;
        for (Vertex w : succ[v])
            if (alive(w) && scc.comp[v] == scc.comp[w]) nontrivial[scc.comp[v]] = 1;
    }
    std::vector<char> out(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if (alive(v) && nontrivial[scc.comp[v]]) out[v] = 1;
    return out;
}

std::vector<char> reachable_from(const std::vector<std::vector<Vertex>>& succ,
                                 const std::vector<char>& mask, const std::vector<Vertex>& seeds) {
    std::size_t n = succ.size();
    auto alive = [&](Vertex v) { return mask.empty() || mask[v]; };
    std::vector<char> seen(n, 0);
    std::deque<Vertex> work;
    for (Vertex s : seeds)
        if (alive(s) && !seen[s]) {
            seen[s] = 1;
            work.push_back(s);
        }
    while (!work.empty()) {
        Vertex v = work.front();
        work.pop_front();
        for (Vertex w : succ[v])
            if (alive(w) && !seen[w]) {
                seen[w] = 1;
                work.push_back(w);
            }
    }
    return seen;
}

std::vector<char> can_reach(const std::vector<std::vector<Vertex>>& succ,
                            const std::vector<char>& mask, const std::vector<char>& seeds) {
    std::size_t n = succ.size();
    auto alive = [&](Vertex v) { return mask.empty() || mask[v]; };
    std::vector<std::vector<Vertex>> pred(n);
    for (Vertex v = 0; v < n; ++v)
        if (alive(v))
            for (Vertex w : succ[v])
                if (alive(w)) pred[w].push_back(v);
    std::vector<char> seen(n, 0);
    std::deque<Vertex> work;
    for (Vertex v = 0; v < n; ++v)
        if (alive(v) && seeds[v]) {
            seen[v] = 1;
            work.push_back(v);
        }
    while (!work.empty()) {
        Vertex v = work.front();
        work.pop_front();
        for (Vertex w : pred[v])
            if (!seen[w]) {
                seen[w] = 1;
                work.push_back(w);
            }
    }
    return seen;
}

}  // namespace ng
