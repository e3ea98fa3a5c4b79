// imperfect.hpp -- imperfect-information arenas, the avoid/Banach-Mazur
// reductions to imperfect two-player games, a bounded-memory solver with
// exact universal verification, and a knowledge-set construction
#pragma once

#include "naturegames/classifier.hpp"
#include "naturegames/transducer.hpp"

namespace ng {

struct ImperfectArena {
    std::vector<std::string> names;
    std::vector<Owner> owner;  // Eloise or Abelard
    std::vector<int> priority;
    std::vector<std::string> actions;
    // delta_e[v][a]: sorted successors (empty = action disabled); Eloise v only
    std::vector<std::vector<std::vector<Vertex>>> delta_e;
    std::vector<std::vector<Vertex>> delta_a;  // Abelard v only
    std::vector<int> obs;                      // observation class per vertex
    Vertex initial = 0;

    std::size_t size() const { return owner.size(); }
    int max_priority() const;
    int obs_count() const;
    Vertex add_vertex(std::string name, Owner o, int prio);
    int add_action(std::string name);
};

std::vector<Diagnostic> validate_imperfect(const ImperfectArena& a);

// Observation-based Moore strategy: tables are indexed by m * n_obs + class.
struct ObsStrategy {
    int n_obs = 0;
    int memory = 1;
    int m0 = 0;
    std::vector<int> up;    // memory x class -> memory
    std::vector<int> move;  // memory x class -> action id (or -1)

    int up_at(int m, int o) const { return up[static_cast<std::size_t>(m) * n_obs + o]; }
    int move_at(int m, int o) const { return move[static_cast<std::size_t>(m) * n_obs + o]; }
};

// Two-player imperfect game produced by the reductions: Eloise plays composed
// actions, Abelard resolves them (and owns his original vertices in the hat
// case).  Flags mark obey steps; the tilde case tracks phases on vertices.
struct ImperfectEventGame {
    Condition condition;
    std::vector<std::string> names;
    std::vector<Owner> owner;
    std::vector<int> priority;
    std::vector<int> obs;
    std::vector<int> phase;  // tilde: 0 none, 1 Eloise plays BM, 2 Abelard plays BM
    std::vector<std::string> action_names;
    std::vector<int> action_gamma;  // composed action -> source action id
    // act[v][a]: resolutions (successor, flag); empty = disabled
    std::vector<std::vector<std::vector<std::pair<Vertex, Flag>>>> act;
    std::vector<std::vector<Vertex>> abelard_succ;
    Vertex initial = 0;

    std::size_t size() const { return owner.size(); }
    int obs_count() const;
};

// Avoid-annotated actions: with each source action, a table naming the
// successor to dodge for every class member where the action is enabled.
ImperfectEventGame build_hat_imperfect(const ImperfectArena& a);

// Banach-Mazur simulation with local-strategy tables (first-move and
// subsequent-move pointers with density marks); requires an Abelard-free
// arena.
ImperfectEventGame build_tilde_imperfect(const ImperfectArena& a);

// True iff no play consistent with the strategy violates the composite
// condition; exact, by SCC analysis of the arena x memory product.
bool verify_obs_strategy(const ImperfectEventGame& g, const ObsStrategy& s);

// Bounded-memory enumeration, first verified strategy returned.  Sound;
// complete only up to the memory bound.
std::optional<ObsStrategy> solve_imperfect_bounded(const ImperfectEventGame& g, int memory_bound);

// Knowledge-subset construction for plain observable-parity objectives.
struct KnowledgeGame {
    ParityGame game;
    std::vector<std::vector<Vertex>> knowledge;  // per main vertex: the set
    std::vector<Vertex> main_vertices;
};

KnowledgeGame knowledge_construction(const ImperfectArena& a);

// Perfect-information expansion of an imperfect two-player game (Eloise
// picks actions, Abelard resolves); the direct-solve reference for identity
// observations.
ParityGame expand_two_player(const ImperfectArena& a);

// Outcome graph of (obs strategy, Abelard Moore strategy) with Nature free:
// the object the classifier sweeps run on.  The Abelard strategy is a Moore
// machine over the arena vertices (he is perfectly informed); pass the
// trivial strategy when no Abelard vertex exists.
PointedGraph imperfect_outcomes(const ImperfectArena& a, const ObsStrategy& eloise,
                                const std::vector<int>& eloise_gamma_of_action,
                                const MooreStrategy& abelard);

// Adapter: the arena as a NatureGame whose Nature vertices are everything
// Eloise or Nature controls (for enumerating Abelard Moore strategies).
NatureGame abelard_view(const ImperfectArena& a);

}  // namespace ng
