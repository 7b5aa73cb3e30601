#include "coordgames/game.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace coord {

int WlcGame::num_choices() const {
  return std::accumulate(side_size_.begin(), side_size_.end(), 0);
}

std::pair<int, int> WlcGame::side_range(int player) const {
  int b = 0;
  for (int i = 0; i < player; ++i) b += side_size_[i];
  return {b, b + side_size_[player]};
}

int WlcGame::side_of(int choice) const {
  int b = 0;
  for (int i = 0; i < players; ++i) {
    b += side_size_[i];
    if (choice < b) return i;
  }
  throw DomainError("choice id out of range");
}

int WlcGame::local_index(int choice) const {
  return choice - side_range(side_of(choice)).first;
}

int WlcGame::global_id(int player, int local) const {
  if (player < 0 || player >= players || local < 0 || local >= side_size_[player])
    throw DomainError("local choice index out of range");
  return side_range(player).first + local;
}

bool WlcGame::is_winning(const Profile& p) const {
  return std::binary_search(winning.begin(), winning.end(), p);
}

int WlcGame::degree(int choice) const {
  int side = side_of(choice);
  int d = 0;
  for (const auto& w : winning)
    if (w[side] == choice) ++d;
  return d;
}

std::vector<std::pair<int, int>> WlcGame::edges() const {
  require_two_player(*this, "edges");
  std::vector<std::pair<int, int>> out;
  out.reserve(winning.size());
  for (const auto& w : winning) out.emplace_back(w[0], w[1]);
  return out;
}

static std::string default_label(int player, int local) {
  std::string name;
  if (local < 26) {
    name = std::string(1, static_cast<char>('a' + local));
  } else {
    name = "c" + std::to_string(local);
  }
  return name + std::to_string(player + 1);
}

WlcGame make_game(std::vector<int> sizes, std::vector<Profile> winning_local,
                  std::vector<std::string> labels) {
  WlcGame g;
  g.players = static_cast<int>(sizes.size());
  g.side_size_ = std::move(sizes);
  int total = g.num_choices();
  if (labels.empty()) {
    for (int p = 0; p < g.players; ++p)
      for (int l = 0; l < g.side_size_[p]; ++l) g.label.push_back(default_label(p, l));
  } else {
    if (static_cast<int>(labels.size()) != total)
      throw ValidationError("label count does not match choice count");
    g.label = std::move(labels);
  }
  for (auto& w : winning_local) {
    if (static_cast<int>(w.size()) != g.players)
      throw ValidationError("winning tuple arity does not match player count");
    Profile global(g.players);
    for (int p = 0; p < g.players; ++p) {
      if (p >= static_cast<int>(g.side_size_.size()) || w[p] < 0 || w[p] >= g.side_size_[p])
        throw ValidationError("winning tuple uses a local index out of range");
      global[p] = g.global_id(p, w[p]);
    }
    g.winning.push_back(std::move(global));
  }
  std::sort(g.winning.begin(), g.winning.end());
  g.winning.erase(std::unique(g.winning.begin(), g.winning.end()), g.winning.end());
  validate_or_throw(g);
  return g;
}

ValidationReport validate(const WlcGame& g) {
  ValidationReport r;
  if (g.players < 1) r.problems.push_back("no players");
  for (int p = 0; p < g.players; ++p)
    if (g.side_size(p) < 1)
      r.problems.push_back("player " + std::to_string(p + 1) + " has no choices");
  if (!r.ok()) return r;
  if (g.winning.empty()) r.problems.push_back("winning relation is empty");
  for (const auto& w : g.winning) {
    for (int p = 0; p < g.players; ++p) {
      auto [b, e] = g.side_range(p);
      if (w[p] < b || w[p] >= e) {
        r.problems.push_back("winning tuple uses a choice of the wrong player");
        return r;
      }
    }
  }
  for (int c = 0; c < g.num_choices(); ++c)
    if (g.degree(c) == 0)
      r.problems.push_back("surely losing choice " + g.label[c]);
  return r;
}

void validate_or_throw(const WlcGame& g) {
  auto r = validate(g);
  if (!r.ok()) throw ValidationError("invalid game: " + r.problems.front());
}

WlcGame complement(const WlcGame& g) {
  WlcGame out = g;
  out.winning.clear();
  std::set<Profile> win(g.winning.begin(), g.winning.end());
  Profile cur(g.players);
  // Enumerate the full choice product in lexicographic order.
  std::vector<std::pair<int, int>> ranges(g.players);
  for (int p = 0; p < g.players; ++p) ranges[p] = g.side_range(p);
  auto rec = [&](auto&& self, int p) -> void {
    if (p == g.players) {
      if (!win.count(cur)) out.winning.push_back(cur);
      return;
    }
    for (int c = ranges[p].first; c < ranges[p].second; ++c) {
      cur[p] = c;
      self(self, p + 1);
    }
  };
  rec(rec, 0);
  if (out.winning.empty()) throw EmptyComplementError("complement has no winning profiles");
  auto r = validate(out);
  if (!r.ok()) throw ValidationError("complement is not a WLC-game: " + r.problems.front());
  return out;
}

bool Stage::is_final() const {
  return !history.empty() && game.is_winning(history.back());
}

Stage initial_stage(WlcGame g) {
  validate_or_throw(g);
  return Stage{std::move(g), {}};
}

Stage play_round(const Stage& s, const Profile& p) {
  if (s.is_final()) throw FinalStageError("cannot play a round at a final stage");
  if (static_cast<int>(p.size()) != s.game.players)
    throw ValidationError("profile arity does not match player count");
  for (int i = 0; i < s.game.players; ++i) {
    auto [b, e] = s.game.side_range(i);
    if (p[i] < b || p[i] >= e)
      throw ValidationError("profile uses a choice of the wrong player");
  }
  Stage out = s;
  out.history.push_back(p);
  return out;
}

std::vector<Profile> touched_edges(const Stage& s) {
  std::set<int> played;
  for (const auto& h : s.history)
    for (int c : h) played.insert(c);
  std::vector<Profile> out;
  for (const auto& w : s.game.winning) {
    bool touched = std::any_of(w.begin(), w.end(), [&](int c) { return played.count(c) > 0; });
    if (touched) out.push_back(w);
  }
  return out;
}

std::vector<std::vector<int>> touched_choices(const Stage& s) {
  require_two_player(s.game, "touched_choices");
  std::vector<std::set<int>> per_side(2);
  for (const auto& w : touched_edges(s)) {
    per_side[0].insert(w[0]);
    per_side[1].insert(w[1]);
  }
  return {std::vector<int>(per_side[0].begin(), per_side[0].end()),
          std::vector<int>(per_side[1].begin(), per_side[1].end())};
}

std::string profile_to_string(const WlcGame& g, const Profile& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += g.label[p[i]];
  }
  return out + ")";
}

void require_two_player(const WlcGame& g, const char* op) {
  if (g.players != 2)
    throw UnsupportedPlayerCountError(std::string(op) + " requires a two-player game, got " +
                                      std::to_string(g.players) + " players");
}

}  // namespace coord
