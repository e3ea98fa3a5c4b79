// core.hpp -- arenas with Nature, finite-memory strategies, outcome graphs
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ng {

using Vertex = std::uint32_t;
constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

enum class Owner : std::uint8_t { Eloise, Abelard, Nature };

const char* owner_name(Owner o);

// Thrown when a combinatorial enumeration exceeds the configured cap.
struct GuardError : std::runtime_error {
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Global size guard; NATUREGAMES_GUARD overrides the default cap.
std::size_t guard_cap();
void set_guard_cap(std::size_t cap);

// Finite three-player arena with a parity colouring and an initial vertex.
// Successor lists are kept sorted; vertex order is construction order.
struct NatureGame {
    std::vector<std::string> names;
    std::vector<Owner> owner;
    std::vector<std::vector<Vertex>> succ;
    std::vector<int> priority;
    Vertex initial = 0;

    std::size_t size() const { return owner.size(); }
    int max_priority() const;
    std::size_t edge_count() const;

    Vertex add_vertex(std::string name, Owner o, int prio);
    void add_edge(Vertex from, Vertex to);
    std::optional<Vertex> vertex_by_name(const std::string& name) const;
};

// Moore machine strategy: m0 is active at v0 and updates consume the next
// vertex, m_{k+1} = up(m_k, v_{k+1}).  move is defined (!= kNoVertex) on the
// owner's vertices.  Tables are indexed by m * n_vertices + v.
struct MooreStrategy {
    Owner player = Owner::Eloise;
    std::uint32_t n_vertices = 0;
    int memory = 1;
    int m0 = 0;
    std::vector<int> up;
    std::vector<Vertex> move;

    int up_at(int m, Vertex v) const { return up[static_cast<std::size_t>(m) * n_vertices + v]; }
    Vertex move_at(int m, Vertex v) const { return move[static_cast<std::size_t>(m) * n_vertices + v]; }
    void set_up(int m, Vertex v, int to) { up[static_cast<std::size_t>(m) * n_vertices + v] = to; }
    void set_move(int m, Vertex v, Vertex to) { move[static_cast<std::size_t>(m) * n_vertices + v] = to; }

    static MooreStrategy empty_for(const NatureGame& g, Owner player);
};

// Pointed priority graph: the finite quotient of a strategy tree, and the
// input shape of the branch classifier.
struct PointedGraph {
    std::vector<std::vector<Vertex>> succ;
    std::vector<int> priority;
    Vertex point = 0;
    std::vector<std::string> labels;

    std::size_t size() const { return succ.size(); }
};

// Outcome graph of a strategy pair: states are (vertex, memE, memA) triples.
struct OutcomeGraph {
    struct State {
        Vertex vertex;
        int mem_e;
        int mem_a;
    };
    PointedGraph graph;
    std::vector<State> states;
};

struct Diagnostic {
    std::string invariant;
    std::string detail;
};

// Empty result iff the game satisfies all arena invariants (total owner
// map is enforced by construction; checks dead-ends, initial, priorities).
std::vector<Diagnostic> validate_game(const NatureGame& g);

// Checks move targets are edges of the owner's vertices and table sizes line up.
std::vector<Diagnostic> validate_strategy(const NatureGame& g, const MooreStrategy& s);

OutcomeGraph restrict_by_strategies(const NatureGame& g, const MooreStrategy& eloise,
                                    const MooreStrategy& abelard);

// One-player variant: the other player must own no vertex.
OutcomeGraph restrict_by_strategy(const NatureGame& g, const MooreStrategy& s);

// All Moore strategies with |memory| <= memory_bound, canonicalised
// (reachable-state pruning, behaviour quotient, BFS renaming) and
// deduplicated, in a deterministic order.  Throws GuardError past the cap.
std::vector<MooreStrategy> enumerate_strategies(const NatureGame& g, Owner player, int memory_bound);

}  // namespace ng
