#pragma once

#include <json.hpp>

#include "crossing/game.hpp"

namespace crossing {

using json = nlohmann::json;

json edge_json(const EdgeId& e);
EdgeId edge_from_json(const json& j);
json edges_json(const std::vector<EdgeId>& edges);
std::vector<EdgeId> edges_from_json(const json& j);

// {"variant","m","n","kind","p","q","moves":[{"player","edges":[[u,v],...]}],"result"}
// plus "first" when the opening player is not the default one.
json game_record(const GameState& state);
// Replays a record and checks that the stored result is reproduced.
GameState replay_record(const json& record);

// Claim map as [[u,v,"Blue"],...] sorted by edge.
json claims_json(const GameState& state);

}  // namespace crossing
