// io.hpp -- JSON file formats, strategy serialization, DOT rendering
#pragma once

#include <iosfwd>

#include "naturegames/cardinality.hpp"
#include "naturegames/imperfect.hpp"
#include "naturegames/topology.hpp"

#include <json.hpp>

namespace ng {

using Json = nlohmann::json;

// {"vertices":[{"id":...,"owner":...,"priority":...}],"edges":[[src,dst]...],
//  "initial":...}; unknown fields rejected.
NatureGame parse_game(const Json& j);
NatureGame parse_game_text(const std::string& text);
Json game_to_json(const NatureGame& g);

// Same schema restricted to owners {eloise, abelard}.
ParityGame parse_parity_game(const Json& j);
Json parity_game_to_json(const ParityGame& p);

// Adds "actions", "delta_e", "delta_a", "observations" to the vertex list.
ImperfectArena parse_imperfect(const Json& j);
Json imperfect_to_json(const ImperfectArena& a);

Json strategy_to_json(const NatureGame& g, const MooreStrategy& s);
Json obs_strategy_to_json(const ImperfectEventGame& g, const ObsStrategy& s);

Json classification_to_json(const PointedGraph& g, const BranchCardinality& c);

// Annotated parity-game JSON of a reduced game (provenance block per vertex).
Json reduced_to_json(const ReducedGame& r);

std::string canonical_dump(const Json& j);  // 2-space indent, sorted keys, trailing newline

void export_dot(const NatureGame& g, std::ostream& os);
void export_dot(const ReducedGame& r, std::ostream& os);
void export_dot(const TildeGame& t, std::ostream& os);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ng
