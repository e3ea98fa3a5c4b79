#include "naturegames/transducer.hpp"

#include <algorithm>
#include <map>

namespace ng {

const char* flag_name(Flag f) {
    switch (f) {
        case Flag::None: return "none";
        case Flag::Obey: return "obey";
        case Flag::Disobey: return "disobey";
        case Flag::Zero: return "zero";
        case Flag::Top: return "top";
        case Flag::Bot: return "bot";
        case Flag::Deviate: return "deviate";
        case Flag::Follow: return "follow";
    }
    return "?";
}

namespace {
int smallest_even_above(int d) { return (d % 2 == 0) ? d + 2 : d + 1; }

[[noreturn]] void illegal(Flag f) {
    throw ValidationError(std::string("transducer: illegal event flag '") + flag_name(f) +
                          "' for this condition");
}
}  // namespace

int PriorityTransducer::state_count() const {
    return condition == Condition::Check ? 2 : d + 2;
}

int PriorityTransducer::initial_state(std::optional<int> seed_priority) const {
    if (condition == Condition::Check) return 0;
    if (seed_priority) return std::min(*seed_priority, d);
    return d + 1;  // top: nothing recorded yet
}

int PriorityTransducer::max_emitted() const {
    switch (condition) {
        case Condition::Hat:
        case Condition::Check: return neutral;
        case Condition::Tilde: return neutral + 2;
    }
    return neutral;
}

std::pair<int, int> PriorityTransducer::step(int state, const StepEvent& ev) const {
    switch (condition) {
        case Condition::Hat: {
            if (ev.flag != Flag::None && ev.flag != Flag::Obey && ev.flag != Flag::Disobey)
                illegal(ev.flag);
            int rec = state;  // d+1 encodes top
            if (ev.priority) rec = std::min(rec, *ev.priority);
            if (ev.flag == Flag::Obey) {
                if (!ev.priority) illegal(ev.flag);
                return {d + 1, rec};  // emit the block minimum, reset to top
            }
            return {rec, neutral};
        }
        case Condition::Check: {
            if (ev.flag != Flag::None && ev.flag != Flag::Zero) illegal(ev.flag);
            int next = (ev.flag == Flag::Zero) ? 1 : state;
            if (next == 1 && ev.priority) return {next, *ev.priority};
            return {next, neutral};
        }
        case Condition::Tilde: {
            int rec = state;
            if (ev.priority) rec = std::min(rec, *ev.priority);
            switch (ev.flag) {
                case Flag::Top:
                    if (!ev.priority) illegal(ev.flag);
                    return {d + 1, rec};
                case Flag::Bot:
                    if (!ev.priority) illegal(ev.flag);
                    return {rec, neutral + 2};  // N_1
                case Flag::Deviate:
                    if (!ev.priority) illegal(ev.flag);
                    return {rec, neutral};  // N_e
                case Flag::Follow:
                    if (!ev.priority) illegal(ev.flag);
                    return {rec, neutral + 1};  // N_o
                default: illegal(ev.flag);
            }
        }
    }
    throw std::logic_error("transducer: unreachable");
}

PriorityTransducer compile_hat(int d) {
    if (d < 0) throw ValidationError("compile_hat: d must be >= 0");
    return {Condition::Hat, d, smallest_even_above(d)};
}

PriorityTransducer compile_check(int d) {
    if (d < 0) throw ValidationError("compile_check: d must be >= 0");
    return {Condition::Check, d, smallest_even_above(d)};
}

PriorityTransducer compile_tilde(int d) {
    if (d < 0) throw ValidationError("compile_tilde: d must be >= 0");
    return {Condition::Tilde, d, smallest_even_above(d)};
}

bool eval_on_lasso(const PriorityTransducer& t, const std::vector<StepEvent>& handle,
                   const std::vector<StepEvent>& loop, std::optional<int> seed_priority) {
    if (loop.empty()) throw ValidationError("eval_on_lasso: loop must be nonempty");
    int state = t.initial_state(seed_priority);
    for (const StepEvent& ev : handle) state = t.step(state, ev).first;
    // run the loop until (state, position 0) repeats
    std::map<int, std::size_t> seen;  // state at loop position 0 -> emission index
    std::vector<int> emissions;
    for (;;) {
        auto it = seen.find(state);
        if (it != seen.end()) {
            int lim = emissions[it->second];
            for (std::size_t i = it->second; i < emissions.size(); ++i)
                lim = std::min(lim, emissions[i]);
            return lim % 2 == 0;
        }
        seen.emplace(state, emissions.size());
        for (const StepEvent& ev : loop) {
            auto [next, emit] = t.step(state, ev);
            emissions.push_back(emit);
            state = next;
        }
    }
}

Vertex EventGame::add_vertex(std::string name, Owner o) {
    names.push_back(std::move(name));
    owner.push_back(o);
    succ.emplace_back();
    return static_cast<Vertex>(owner.size() - 1);
}

void EventGame::add_edge(Vertex from, Vertex to, StepEvent ev) {
    succ[from].push_back({to, ev});
}

std::size_t ProductResult::main_of_parity(Vertex pv) const {
    if (pv < mid_edge.size() && mid_edge[pv] == npos) return mid_source[pv];
    return npos;
}

ProductResult product(const EventGame& g, const PriorityTransducer& t) {
    if (g.size() == 0) throw ValidationError("product: empty event game");
    ProductResult out;
    std::map<std::pair<Vertex, int>, Vertex> index;  // main (vertex,state) -> parity vertex
    std::vector<std::pair<Vertex, int>> todo;

    int neutral_main = t.max_emitted() + 2 - (t.max_emitted() % 2);  // smallest even > emissions

    auto intern = [&](Vertex v, int s) {
        auto key = std::make_pair(v, s);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        Vertex id = out.game.add_vertex(g.names[v] + "@" + std::to_string(s), g.owner[v],
                                        neutral_main);
        index.emplace(key, id);
        out.main_states.push_back(key);
        out.main_index.push_back(id);
        out.mid_source.push_back(out.main_states.size() - 1);
        out.mid_edge.push_back(ProductResult::npos);
        todo.push_back(key);
        return id;
    };

    out.game.initial = intern(g.initial, t.initial_state(g.seed_priority));
    for (std::size_t i = 0; i < todo.size(); ++i) {
        auto [v, s] = todo[i];
        Vertex from = index.at({v, s});
        std::size_t from_main = out.mid_source[from];
        for (std::size_t ei = 0; ei < g.succ[v].size(); ++ei) {
            const EventGame::Edge& e = g.succ[v][ei];
            auto [s2, emitted] = t.step(s, e.event);
            Vertex to = intern(e.to, s2);
            // subdivide: the emission is the priority of a fresh mid vertex
            Vertex mid = out.game.add_vertex(
                out.game.names[from] + ">" + out.game.names[to], g.owner[v], emitted);
            out.mid_source.push_back(from_main);
            out.mid_edge.push_back(ei);
            out.game.add_edge(from, mid);
            out.game.add_edge(mid, to);
        }
    }
    return out;
}

std::vector<std::size_t> main_strategy(const ProductResult& pr, const SolveResult& sol,
                                       Owner player) {
    const auto& strat = (player == Owner::Eloise) ? sol.eloise_strategy : sol.abelard_strategy;
    std::vector<std::size_t> out(pr.main_states.size(), ProductResult::npos);
    for (std::size_t i = 0; i < pr.main_states.size(); ++i) {
        Vertex mid = strat[pr.main_index[i]];
        if (mid == kNoVertex) continue;
        out[i] = pr.mid_edge[mid];
    }
    return out;
}

}  // namespace ng
