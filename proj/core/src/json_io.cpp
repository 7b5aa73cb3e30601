#include "coordgames/json_io.hpp"

namespace coord {

Json game_to_json(const WlcGame& g) {
  Json j;
  j["n"] = g.players;
  Json choices = Json::array();
  for (int p = 0; p < g.players; ++p) {
    Json side = Json::array();
    auto [b, e] = g.side_range(p);
    for (int c = b; c < e; ++c) side.push_back(g.label[c]);
    choices.push_back(side);
  }
  j["choices"] = choices;
  Json winning = Json::array();
  for (const auto& w : g.winning) {
    Json t = Json::array();
    for (int p = 0; p < g.players; ++p) t.push_back(g.local_index(w[p]));
    winning.push_back(t);
  }
  j["winning"] = winning;
  return j;
}

WlcGame game_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("choices") || !j.contains("winning"))
    throw ValidationError("game JSON needs n, choices, winning");
  int n = j.at("n").get<int>();
  const auto& choices = j.at("choices");
  if (static_cast<int>(choices.size()) != n)
    throw ValidationError("choices array size does not match n");
  std::vector<int> sizes;
  std::vector<std::string> labels;
  for (const auto& side : choices) {
    sizes.push_back(static_cast<int>(side.size()));
    for (const auto& l : side) labels.push_back(l.get<std::string>());
  }
  std::vector<Profile> winning;
  for (const auto& t : j.at("winning")) {
    Profile w;
    for (const auto& c : t) w.push_back(c.get<int>());
    winning.push_back(w);
  }
  WlcGame g = make_game(std::move(sizes), std::move(winning), std::move(labels));
  validate_or_throw(g);
  return g;
}

Json stage_to_json(const Stage& s) {
  Json j = game_to_json(s.game);
  Json history = Json::array();
  for (const auto& h : s.history) {
    Json t = Json::array();
    for (int p = 0; p < s.game.players; ++p) t.push_back(s.game.local_index(h[p]));
    history.push_back(t);
  }
  j["history"] = history;
  return j;
}

Stage stage_from_json(const Json& j) {
  Stage s;
  s.game = game_from_json(j);
  if (j.contains("history")) {
    for (const auto& t : j.at("history")) {
      if (static_cast<int>(t.size()) != s.game.players)
        throw ValidationError("history profile arity does not match n");
      Profile p;
      for (int i = 0; i < s.game.players; ++i)
        p.push_back(s.game.global_id(i, t[i].get<int>()));
      if (s.is_final()) throw FinalStageError("history continues past a winning profile");
      s.history.push_back(p);
    }
  }
  return s;
}

}  // namespace coord
