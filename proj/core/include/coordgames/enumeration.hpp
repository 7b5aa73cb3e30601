#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coordgames/analysis.hpp"

namespace coord {

struct CensusEntry {
  std::string notation;  // display name; parseable except for the G* special
  WlcGame game;
  int edge_count = 0;
  std::array<std::vector<int>, 2> degree_multiset;
  bool has_initial_focal_point = false;
  bool solvable = false;  // one-round solvable
  AlgebraicValue ect;     // exact optimal ECT or certified upper bound
  std::string ect_method; // "one-round", "exact:la", "bound:wm", ...
  bool ect_is_bound = false;
};

struct EnumerationConstraints {
  std::optional<int> max_degree;
  std::optional<std::pair<int, int>> edge_range;  // inclusive |W| bounds
};

// One representative per renaming-isomorphism class of valid games with
// maximum side m. Unconstrained enumeration scans all relations (m <= 3);
// with max_degree <= 2 a path/cycle component enumeration covers m <= 5.
std::vector<CensusEntry> enumerate_m_choice(int m, const EnumerationConstraints& c = {});

struct CensusReport {
  int m = 0;
  std::vector<CensusEntry> entries;            // degree <= 2 census
  std::map<int, int> counts_by_edges;
  std::vector<CensusEntry> specials;           // named higher-degree games (m = 5)
};

CensusReport census_report(int m);  // m in {3, 5}

WlcGame gstar();  // the 5-choice degree-3 special without a focal point

// Decomposes into path/cycle/product components; empty when the game is not
// expressible in the notation grammar.
std::string decompose_notation(const WlcGame& g);

}  // namespace coord
