// classifier.hpp -- exact cardinality trichotomy of the losing-branch set of
// a finite pointed priority graph (losing = liminf of priorities is odd)
#pragma once

#include <optional>
#include <tuple>

#include "naturegames/core.hpp"

namespace ng {

// Eventually periodic branch handle . loop^omega.  The handle starts at the
// point (or the loop does, when the handle is empty).
struct Lasso {
    std::vector<Vertex> handle;
    std::vector<Vertex> loop;

    bool operator==(const Lasso& o) const { return handle == o.handle && loop == o.loop; }
    bool operator<(const Lasso& o) const {
        return std::tie(handle, loop) < std::tie(o.handle, o.loop);
    }
};

// Unique normal form: primitive loop, handle shortened as far as rotation
// allows.  Two lassos denote the same branch iff their normal forms agree.
Lasso normalize_lasso(Lasso l);

// Two distinct same-length cycles through a shared vertex, jointly realising
// an odd minimum priority; certifies a continuum of losing branches.
struct CycleWitness {
    Vertex pivot;
    std::vector<Vertex> cycle_a;  // starts at pivot, closes back to it
    std::vector<Vertex> cycle_b;
};

struct BranchCardinality {
    enum class Kind { Finite, CountablyInfinite, Uncountable };
    Kind kind = Kind::Finite;
    std::size_t count = 0;                 // meaningful for Finite
    std::vector<Lasso> lassos;             // Finite: the explicit branches
    std::optional<CycleWitness> witness;   // Uncountable
};

// Exact verdict for the set of losing branches, via the c-trap analysis.
BranchCardinality classify_losing(const PointedGraph& g);

// Kind only: skips the finite branch enumeration (no count, no witnesses).
BranchCardinality::Kind classify_kind(const PointedGraph& g);

// Complement condition: shift priorities by one and classify.
BranchCardinality classify_winning(const PointedGraph& g);

// All pairwise distinct eventually periodic losing branches with handle and
// loop bounded by the given number of vertices.  Guarded.
std::vector<Lasso> enumerate_losing_lassos(const PointedGraph& g, std::size_t handle_bound,
                                           std::size_t loop_bound);

// Re-verification of an Uncountable witness: the cycles exist in the graph,
// are distinct, of equal length, pass through the pivot, their joint minimum
// priority is odd, and they are not both powers of a common cycle word.
bool verify_cycle_witness(const PointedGraph& g, const CycleWitness& w);

// Re-verification of a Finite witness list: pairwise distinct normal forms,
// each a losing branch of the graph starting at the point.
bool verify_lasso_list(const PointedGraph& g, const std::vector<Lasso>& lassos);

}  // namespace ng
