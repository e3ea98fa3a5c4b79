// transducer.hpp -- deterministic per-edge priority emitters compiling the
// composite winning conditions of the reductions down to liminf parity
#pragma once

#include "naturegames/parity.hpp"

namespace ng {

enum class Flag : std::uint8_t { None, Obey, Disobey, Zero, Top, Bot, Deviate, Follow };

const char* flag_name(Flag f);

// What one edge of a reduced game reports to the transducer: the priority of
// the entered original vertex (absent on gadget-only steps) and a condition
// flag.
struct StepEvent {
    std::optional<int> priority;
    Flag flag = Flag::None;
};

enum class Condition { Hat, Check, Tilde };

// Deterministic priority transducer.  States:
//   hat/tilde: 0..d = minimum original priority recorded since the last
//              reset emission, d+1 = nothing recorded (top);
//   check:     0 = no zero step seen yet, 1 = zero step seen.
// Reset steps follow update-then-emit-then-reset order: the entered vertex's
// priority belongs to the emitted block.
struct PriorityTransducer {
    Condition condition;
    int d;        // maximum original priority
    int neutral;  // smallest even number > d

    int state_count() const;
    int initial_state(std::optional<int> seed_priority) const;
    // Returns (next state, emitted priority); throws on illegal events.
    std::pair<int, int> step(int state, const StepEvent& ev) const;
    int max_emitted() const;
};

PriorityTransducer compile_hat(int d);
PriorityTransducer compile_check(int d);
PriorityTransducer compile_tilde(int d);

// True iff the liminf of emitted priorities over handle . loop^omega is even;
// exact, via state-position repetition on the loop.
bool eval_on_lasso(const PriorityTransducer& t, const std::vector<StepEvent>& handle,
                   const std::vector<StepEvent>& loop,
                   std::optional<int> seed_priority = std::nullopt);

// Two-player game whose edges carry StepEvents; the shape produced by the
// reduction builders and consumed by product().
struct EventGame {
    struct Edge {
        Vertex to;
        StepEvent event;
    };
    std::vector<std::string> names;
    std::vector<Owner> owner;  // Eloise or Abelard
    std::vector<std::vector<Edge>> succ;
    Vertex initial = 0;
    std::optional<int> seed_priority;  // priority of the source initial vertex

    std::size_t size() const { return owner.size(); }
    Vertex add_vertex(std::string name, Owner o);
    void add_edge(Vertex from, Vertex to, StepEvent ev);
};

// Product of an event game with a transducer, subdivided to a vertex-priority
// parity game.  Main vertices carry a neutral priority strictly above every
// emission; edge vertices carry the emission.
struct ProductResult {
    ParityGame game;
    // main product vertices: main_states[i] = (event-game vertex, t-state)
    std::vector<std::pair<Vertex, int>> main_states;
    std::vector<Vertex> main_index;       // parity-game vertex of main state i
    std::vector<std::size_t> mid_source;  // per parity vertex: owning main state (itself for mains)
    std::vector<std::size_t> mid_edge;    // per parity vertex: event-game edge index taken

    std::size_t main_of_parity(Vertex pv) const;  // main id, or npos for mids
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

ProductResult product(const EventGame& g, const PriorityTransducer& t);

// Positional choice read off a solved product: for each main product state
// owned by the player, the index of the event-game edge its strategy takes
// (npos where undefined).
std::vector<std::size_t> main_strategy(const ProductResult& pr, const SolveResult& sol,
                                       Owner player);

}  // namespace ng
