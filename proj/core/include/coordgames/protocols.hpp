#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "coordgames/rational.hpp"
#include "coordgames/symmetry.hpp"

namespace coord {

struct Distribution {
  std::map<int, Rational> weights;  // global choice id -> probability, zeros dropped

  Rational at(int choice) const {
    auto it = weights.find(choice);
    return it == weights.end() ? Rational(0) : it->second;
  }
  bool operator==(const Distribution&) const = default;
};

struct ProtocolSpec {
  enum class Kind { WM, LA, Uniform, Touched, Table };
  Kind kind = Kind::Uniform;
  Rational touched_p;  // Touched only, in [0, 1]
  // class key -> per-player distributions over canonical-labeling choice ids
  std::map<StageClassKey, std::array<std::map<int, Rational>, 2>> table;

  static ProtocolSpec wm();
  static ProtocolSpec la();
  static ProtocolSpec uniform();
  static ProtocolSpec touched(Rational p);
  static ProtocolSpec table_from_json(const Json& j);
  // "wm" | "la" | "uniform" | "touched:p"; table protocols are built from JSON.
  static ProtocolSpec parse(const std::string& text);

  bool similarity_invariant() const { return true; }
  std::string name() const;

  // Per-choice class tags; chain states merge only through renamings that
  // preserve them. Tags capture the history features the protocol reads
  // beyond the equivalence partition (e.g. touched incidence).
  std::vector<int> class_tags(const Stage& s) const;
};

// player is 0-based.
Distribution evaluate(const ProtocolSpec& p, const Stage& s, int player);

bool check_structurality(const ProtocolSpec& p, const Stage& s);

std::vector<std::pair<Profile, Rational>> support_profiles(const ProtocolSpec& p, const Stage& s);
std::vector<std::pair<Profile, Rational>> support_profiles(const Distribution& d0,
                                                           const Distribution& d1);

Json distribution_to_json(const Distribution& d, const WlcGame& g);

}  // namespace coord
