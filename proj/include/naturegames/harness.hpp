// harness.hpp -- seeded random generators and the cross-validation suites
// wiring the reductions against the brute-force oracles
#pragma once

#include <cstdint>
#include <functional>

#include "naturegames/cardinality.hpp"
#include "naturegames/classifier.hpp"
#include "naturegames/imperfect.hpp"
#include "naturegames/topology.hpp"

namespace ng {

// Deterministic generator (splitmix64); identical seeds give identical runs.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    std::size_t below(std::size_t n);  // uniform in [0, n)
    bool chance(int num, int den);
};

struct GameGenOptions {
    std::size_t min_vertices = 2;
    std::size_t max_vertices = 6;
    int max_priority = 3;
    std::size_t nature_out_degree = 3;
    std::size_t player_out_degree = 2;
    bool allow_abelard = true;
    bool allow_eloise = true;
};

NatureGame random_nature_game(Rng& rng, const GameGenOptions& opt);
ParityGame random_parity_game(Rng& rng, std::size_t max_vertices, int max_priority);
PointedGraph random_pointed_graph(Rng& rng, std::size_t max_vertices, int max_priority);
ImperfectArena random_imperfect_arena(Rng& rng);

// Enumerates the outcome graphs restrict(g, eloise, tau) over every Abelard
// Moore strategy tau with memory <= mem_bound, visiting each behaviourally
// distinct restriction once.  Returns false when the enumeration guard
// tripped instead of completing.
bool for_each_abelard_outcome(const NatureGame& g, const MooreStrategy& eloise, int mem_bound,
                              const std::function<void(const PointedGraph&)>& fn);

// Same quantification for imperfect arenas with Nature unrestricted.
bool for_each_abelard_outcome_imperfect(const ImperfectArena& a, const ObsStrategy& eloise,
                                        const std::vector<int>& gamma_of, int mem_bound,
                                        const std::function<void(const PointedGraph&)>& fn);

struct SuiteReport {
    std::string name;
    std::size_t cases = 0;
    std::size_t violations = 0;
    std::size_t guard_overflows = 0;
    std::vector<std::string> details;  // one line per violation
};

struct HarnessConfig {
    std::uint64_t seed = 42;
    std::size_t cases = 500;
    std::size_t lassos = 10000;
    std::string only;  // run a single suite when nonempty
};

SuiteReport suite_parity_oracle(const HarnessConfig& cfg);
SuiteReport suite_transducer(const HarnessConfig& cfg);
SuiteReport suite_block_minimum(const HarnessConfig& cfg);
SuiteReport suite_classifier_oracle(const HarnessConfig& cfg);
SuiteReport suite_hat_soundness(const HarnessConfig& cfg);
SuiteReport suite_bounded_soundness(const HarnessConfig& cfg);
SuiteReport suite_topology(const HarnessConfig& cfg);
SuiteReport suite_imperfect_soundness(const HarnessConfig& cfg);

std::vector<SuiteReport> run_harness(const HarnessConfig& cfg);

}  // namespace ng
