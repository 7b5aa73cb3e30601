#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coordgames/game.hpp"
#include "coordgames/json_io.hpp"

namespace coord {

// Renaming (beta, pi) between two-player stages. beta is either the identity
// or the player swap; pi maps global choice ids of the source stage to global
// ids of the target stage. With swap = true, pi sends player 1 choices to
// player 2 choices and vice versa.
struct Renaming {
  bool swap = false;
  std::vector<int> pi;

  bool operator==(const Renaming&) const = default;
  bool operator<(const Renaming& o) const {
    return std::tie(swap, pi) < std::tie(o.swap, o.pi);
  }
};

Renaming compose(const Renaming& f, const Renaming& g);  // f after g
Renaming inverse(const Renaming& r);

struct EquivPartition {
  std::vector<int> block_of;              // choice -> block id
  std::vector<std::vector<int>> blocks;   // sorted ids, blocks ordered by min element

  bool operator==(const EquivPartition&) const = default;
};

struct SearchOptions {
  std::vector<std::pair<int, int>> pins;      // forced pi[first] = second
  const EquivPartition* src_blocks = nullptr; // with dst_blocks: require pi to
  const EquivPartition* dst_blocks = nullptr; // map source blocks onto target blocks
  // With dst_colors: require pi to map each choice onto one with equal color.
  const std::vector<std::string>* src_colors = nullptr;
  const std::vector<std::string>* dst_colors = nullptr;
  std::optional<bool> swap_only;              // restrict beta
};

// Visits renamings from s to t; visitor returns false to stop the search.
void for_each_renaming(const Stage& s, const Stage& t, const SearchOptions& opt,
                       const std::function<bool(const Renaming&)>& visit);

std::optional<Renaming> find_renaming(const Stage& s, const Stage& t,
                                      const SearchOptions& opt = {});

inline constexpr std::size_t kDefaultGroupCap = 100000;

std::vector<Renaming> renaming_group(const Stage& s, std::size_t cap = kDefaultGroupCap);

// Exhaustive enumeration over all 2*(|C1|!*|C2|!) candidates; test oracle.
std::vector<Renaming> renaming_group_brute(const Stage& s);

EquivPartition equiv_partition(const Stage& s);
EquivPartition equiv_partition_brute(const Stage& s);

// Same game, equal structural-equivalence partitions.
bool automorphism_equivalent(const Stage& s1, const Stage& s2);

// Structural similarity: chain of renamings and automorphism-equivalences.
bool similar(const Stage& s1, const Stage& s2);

// Bare-game renaming carrying the partition of s1 onto the partition of s2;
// exists iff similar(s1, s2).
std::optional<Renaming> similarity_witness(const Stage& s1, const Stage& s2);

using StageClassKey = std::string;

inline constexpr int kMaxCanonSide = 6;

// Canonical encoding of the game up to renaming-isomorphism, plus the
// relabeling that achieves it. Exact for sides up to kMaxCanonSide.
std::pair<std::string, Renaming> canonical_game_code(const WlcGame& g);

// Stage class key over (game, equivalence partition, touched incidence).
// Equal keys imply similar stages; the touched refinement splits similarity
// classes whose touched-choice patterns differ, which is what history-reading
// protocols address.
StageClassKey canonical_key(const Stage& s);

// Canonical key plus the relabeling of the stage's choices into the
// canonical labeling that realizes the key.
std::pair<StageClassKey, Renaming> canonical_key_with_map(const Stage& s);

std::vector<int> focal_points(const Stage& s);

// Pairs {u, u'} of same-player choices of a CM stage whose matched partners
// are structurally equivalent crosswise.
std::vector<std::pair<int, int>> conjugates(const Stage& s);

struct OneRoundSolution {
  std::vector<int> k1, k2;  // K1 x K2 subset of W
};

std::optional<OneRoundSolution> one_round_solvable(const Stage& s);

// Cheap similarity-class bucket string; equal for similar stages of one game.
std::string partition_invariant(const WlcGame& g, const EquivPartition& p);

Json partition_to_json(const EquivPartition& p);
Json renaming_to_json(const Renaming& r);

}  // namespace coord
