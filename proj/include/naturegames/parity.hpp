// parity.hpp -- exact solving of two-player parity games (min-parity: the
// smallest infinitely repeated priority decides; even favours Eloise)
#pragma once

#include "naturegames/core.hpp"

namespace ng {

// Two-player restriction of NatureGame; kept as its own type so Nature can
// never leak into the solver.
struct ParityGame {
    std::vector<std::string> names;
    std::vector<Owner> owner;  // Eloise or Abelard only
    std::vector<std::vector<Vertex>> succ;
    std::vector<int> priority;
    Vertex initial = 0;

    std::size_t size() const { return owner.size(); }
    int max_priority() const;
    Vertex add_vertex(std::string name, Owner o, int prio);
    void add_edge(Vertex from, Vertex to);
};

std::vector<Diagnostic> validate_parity_game(const ParityGame& p);

struct SolveResult {
    std::vector<bool> eloise_region;       // per vertex
    std::vector<Vertex> eloise_strategy;   // positional, defined on her region
    std::vector<Vertex> abelard_strategy;  // positional, defined on his region
    bool eloise_wins_initial = false;
};

// Zielonka attractor recursion with positional strategy extraction.
// Tie-breaking: lowest-index admissible successor.
SolveResult solve_parity(const ParityGame& p);

// True iff every play consistent with the strategy (opponent and priorities
// unrestricted) satisfies the player's objective: no reachable cycle in the
// restricted graph has an odd (for Eloise; even for Abelard) minimum priority.
bool verify_sure(const ParityGame& p, const MooreStrategy& s);
bool verify_sure_from(const ParityGame& p, const MooreStrategy& s, Vertex from);

// Oracle solver: exhaustive positional strategy search.  Guarded.
SolveResult brute_solve(const ParityGame& p);

// Positional strategy on the parity game, as a Moore strategy for reuse of
// the shared verification code.
MooreStrategy positional_strategy(const ParityGame& p, const std::vector<Vertex>& choice,
                                  Owner player);

}  // namespace ng
