#pragma once

#include <string>
#include <vector>

#include "coordgames/game.hpp"

namespace coord {

// AST for the game notation:
//   expr  := term (' + ' term)*
//   term  := INT 'x' INT | INT '*' '(' expr ')' | NAME '(' args ')' | '(' expr ')'
//   NAME  := CM | CMn | O | Z | Sigma | SigmaR | complement
struct GameExpr {
  enum class Kind { CM, CMn, O, Z, Sigma, SigmaR, Product, Repeat, Sum, Complement };
  Kind kind;
  int a = 0;  // m, or n for CMn, or product rows, or repeat count
  int b = 0;  // m for CMn, product cols
  std::vector<GameExpr> children;

  bool operator==(const GameExpr&) const = default;
};

GameExpr parse_notation(const std::string& text);  // throws ParseError
std::string print_notation(const GameExpr& e);
WlcGame build(const GameExpr& e);
WlcGame build_notation(const std::string& text);

// Disjoint union of two games with the same player count.
WlcGame disjoint_union(const WlcGame& a, const WlcGame& b);

}  // namespace coord
