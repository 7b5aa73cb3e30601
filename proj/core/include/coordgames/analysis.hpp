#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coordgames/protocols.hpp"

namespace coord {

inline constexpr int kDefaultClassCap = 10000;
inline constexpr int kMaxSummaryM = 9;

// Similarity-quotient chain. States are similarity classes of reachable
// non-final stages plus one absorbing WIN state (the last index).
struct MarkovQuotient {
  std::vector<std::string> states;               // per-class labels
  std::vector<Stage> reps;                       // class representatives
  std::vector<std::vector<Rational>> transitions;  // rows sum to 1, WIN absorbing
  int start = 0;
  int win_state = 0;
};

struct EctResult {
  Rational value;
  int chain_size = 0;
  std::string derivation;
};

struct GctResult {
  bool infinite = false;
  long value = 0;
  std::vector<std::string> witness;  // longest path or non-final cycle
};

Rational oscp(const Stage& s, const ProtocolSpec& p);

MarkovQuotient build_quotient(const Stage& start, const ProtocolSpec& p,
                              int max_classes = kDefaultClassCap);

EctResult exact_ect(const WlcGame& g, const ProtocolSpec& p, int max_classes = kDefaultClassCap);
EctResult exact_ect_from(const Stage& s, const ProtocolSpec& p,
                         int max_classes = kDefaultClassCap);

GctResult gct(const WlcGame& g, const ProtocolSpec& p, int max_classes = kDefaultClassCap);
GctResult gct_from(const Stage& s, const ProtocolSpec& p, int max_classes = kDefaultClassCap);

// 3 - 2 * oscp(initial, UNIFORM); equals exact_ect(CM(m), WM) on CM games.
Rational wm_ect_bound(const WlcGame& g);

struct LaClosedForm {
  std::vector<Rational> per_round;  // P_{l,m}, l = 1..(m+1)/2
  Rational expected;                // E_m
};

LaClosedForm la_cm_closed_form(int m);  // m odd

struct FormulaEParams {
  Rational p;
  int n = 1;        // untouched-edge count
  Rational e1, e2;  // continuation values, >= 1
};

Rational formula_e_value(const FormulaEParams& params);

struct FormulaEMinimum {
  enum class Kind { Point, TwoPoints, Interval };
  Kind kind = Kind::Point;
  std::vector<Rational> points;  // minimizers (empty for Interval = all of [0,1])
  Rational value;
};

FormulaEMinimum formula_e_minimize(int n, const Rational& e1, const Rational& e2);

struct ThreeChoiceFixedPoint {
  Float50 e2, p2, e1, p1;
};

// Closed forms E2 = (3+sqrt(17))/4, E1 = (1+sqrt(4+sqrt(17)))/2, cross-checked
// against damped fixed-point iteration to 1e-12.
ThreeChoiceFixedPoint three_choice_fixed_point();

struct SummaryRow {
  int m = 0;
  Rational ect;
  std::string ect_protocol;  // optimal protocol name, "(any)" or "NONE-UNIQUE"
  bool gct_infinite = false;
  long gct_value = 0;
  std::string gct_protocol;
};

std::vector<SummaryRow> summary_table(int m_max = kMaxSummaryM);

inline constexpr const char* kGctTypoNote =
    "note: the source table lists GCT for m=2k+1 as k; the closed form and the "
    "m=3,5,7 rows give ceil(m/2)=k+1, which this table follows (suspected typo)";

struct AlgebraicValue {
  bool is_rational = true;
  Rational q;
  std::string tag;     // symbolic form when not rational
  Float50 approx;      // 50-digit shadow
  bool strict = false; // value is a strict upper bound

  std::string display() const;
  double to_double() const;
};

struct BoundsRow {
  int m = 0;
  AlgebraicValue bound;
  std::string witness;
};

BoundsRow bounds_table(int m);

}  // namespace coord
