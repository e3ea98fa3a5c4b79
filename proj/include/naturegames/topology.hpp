// topology.hpp -- Banach-Mazur simulation game deciding the existence of
// topologically-good strategies in Eloise-Nature games
#pragma once

#include "naturegames/cardinality.hpp"

namespace ng {

// Strictly E/N-alternating Eloise-Nature game, with the certificate mapping
// inserted out-degree-one dummies back to source edges.
struct AlternatingGame {
    NatureGame game;
    // per vertex: the source vertex it stands for, or kNoVertex for dummies
    std::vector<Vertex> source_of;
    // per dummy vertex: the source edge it subdivides (from, to)
    std::vector<std::pair<Vertex, Vertex>> dummy_edge;
    int dummy_priority = 0;
};

// Inserts fresh out-degree-one vertices on E->E and N->N edges (and a fresh
// Eloise start when the initial vertex is Nature's), priority d+1.  Original
// vertices recur along every play, so the liminf never lands on a dummy and
// branching structure is unchanged.
AlternatingGame alternate_normalize(const NatureGame& g);

// Banach-Mazur simulation arena: Eloise extends the play and maintains a
// direction pointer plus a density mark; Abelard resolves Nature, deviating
// whenever he ignores the pointer.
struct TildeGame {
    AlternatingGame alt;
    EventGame game;
    // per event-game vertex: role data
    struct Info {
        bool gadget = false;
        Vertex nature = kNoVertex;   // gadget: v'
        Vertex pointer = kNoVertex;  // gadget: w
        bool top = false;            // gadget: b
        Vertex main = kNoVertex;     // non-gadget: the alternating-game vertex
    };
    std::vector<Info> info;
};

TildeGame build_tilde(const AlternatingGame& a);

Decision decide_topo_good(const NatureGame& g);

}  // namespace ng
