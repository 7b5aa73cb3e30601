#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coordgames/errors.hpp"

namespace coord {

using Profile = std::vector<int>;  // one global choice id per player

// Win-lose coordination game. Choices carry global ids 0..num_choices()-1,
// stored player-major: player 0's choices first, then player 1's, and so on.
struct WlcGame {
  int players = 0;
  std::vector<int> side_size_;                // choices per player
  std::vector<std::string> label;             // one per global id
  std::vector<Profile> winning;               // sorted, unique

  int num_choices() const;
  int side_size(int player) const { return side_size_[player]; }
  // [begin, end) of the player's global ids.
  std::pair<int, int> side_range(int player) const;
  int side_of(int choice) const;
  int local_index(int choice) const;          // index within its own side
  int global_id(int player, int local) const;
  bool is_winning(const Profile& p) const;
  int degree(int choice) const;               // winning tuples containing it
  // Two-player view of the winning relation as (choice of p0, choice of p1).
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const WlcGame&) const = default;
};

// winning_local uses per-player local indices. Labels are generated as
// a1..z1 / a2..z2 style names when not provided.
WlcGame make_game(std::vector<int> sizes, std::vector<Profile> winning_local,
                  std::vector<std::string> labels = {});

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

ValidationReport validate(const WlcGame& g);
void validate_or_throw(const WlcGame& g);

// Full product minus the winning relation. Throws EmptyComplementError or
// ValidationError (surely losing choice) when the result is not a WLC-game.
WlcGame complement(const WlcGame& g);

struct Stage {
  WlcGame game;
  std::vector<Profile> history;

  int rounds() const { return static_cast<int>(history.size()); }
  // Final when the last played profile is winning.
  bool is_final() const;
};

Stage initial_stage(WlcGame g);

// Appends a profile; throws FinalStageError on a final stage and
// ValidationError on a malformed profile.
Stage play_round(const Stage& s, const Profile& p);

// Winning tuples sharing at least one choice with some history profile.
std::vector<Profile> touched_edges(const Stage& s);

// Choices lying on at least one touched edge, per player of a 2-player game.
std::vector<std::vector<int>> touched_choices(const Stage& s);

std::string profile_to_string(const WlcGame& g, const Profile& p);

void require_two_player(const WlcGame& g, const char* op);

}  // namespace coord
