// cardinality.hpp -- the avoid-gadget game and the budget game deciding
// whether the leaking value is countable / at most k, with strategy pull-back
#pragma once

#include "naturegames/transducer.hpp"

namespace ng {

enum class Role : std::uint8_t { Main, Avoid, Start, Budget, Query, Mu };

struct ReducedVertexInfo {
    Role role = Role::Main;
    Vertex source = kNoVertex;  // Main/Budget: v; Avoid: the Nature vertex v; Query: w; Mu: v
    Vertex avoided = kNoVertex; // Avoid: the successor Eloise asks to dodge
    int budget = -1;            // Budget/Query: i
    std::vector<int> mu;        // Mu: budget per successor of source, in succ order
};

// Event-annotated two-player game plus the total back-mapping to the source.
struct ReducedGame {
    Condition condition;
    NatureGame source;
    EventGame game;
    std::vector<ReducedVertexInfo> info;
    int k = -1;  // budget bound for Check
};

// Avoid-gadget game: Nature vertices pass to Eloise, who announces a
// successor to dodge; Abelard resolves, obeying when he picks anything else.
ReducedGame build_hat(const NatureGame& g);

// Budget game: Eloise claims how many plays she may lose and splits the
// claim across Nature's successors; hitting budget zero forfeits the escape
// clause of the winning condition.
ReducedGame build_check(const NatureGame& g, int k);

struct Decision {
    bool yes = false;
    std::optional<MooreStrategy> strategy;  // on the source game, when yes
    // provenance
    std::size_t reduced_vertices = 0;
    std::size_t product_vertices = 0;
};

Decision decide_countable(const NatureGame& g);
Decision decide_bounded(const NatureGame& g, int k);

// Iterates k = 0..cap and reports the least witnessed bound, if any; the
// bounded verdicts are monotone in k, so this is the minimal finite claim
// the reduction can certify within the cap.
std::optional<int> least_bound(const NatureGame& g, int cap);

// Moore strategy on the source from a positional product strategy; memory is
// the tracked main product state.
MooreStrategy pull_back(const ReducedGame& r, const ProductResult& pr, const SolveResult& sol);

// Nature handed to Abelard: sure (adversarial) solving of a game with Nature.
ParityGame to_adversarial_parity(const NatureGame& g);

}  // namespace ng
