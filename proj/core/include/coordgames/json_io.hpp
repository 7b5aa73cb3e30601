#pragma once

#include <json.hpp>

#include "coordgames/game.hpp"

namespace coord {

using Json = nlohmann::ordered_json;

// {n, choices: [[label...]...], winning: [[i1,...,in]...]} with 0-based
// per-player indices; stages add history: [[...]...].
Json game_to_json(const WlcGame& g);
WlcGame game_from_json(const Json& j);
Json stage_to_json(const Stage& s);
Stage stage_from_json(const Json& j);

}  // namespace coord
