#include "coordgames/notation.hpp"

#include <cctype>

namespace coord {

namespace {

struct Parser {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(i, msg); }

  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  int integer() {
    skip_ws();
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected integer");
    long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > 1000000) fail("integer too large");
      ++i;
    }
    return static_cast<int>(v);
  }

  std::string name() {
    skip_ws();
    std::size_t b = i;
    while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
    if (b == i) fail("expected name");
    return s.substr(b, i - b);
  }

  GameExpr expr() {
    GameExpr first = term();
    skip_ws();
    if (i >= s.size() || s[i] != '+') return first;
    GameExpr sum;
    sum.kind = GameExpr::Kind::Sum;
    sum.children.push_back(std::move(first));
    while (eat('+')) sum.children.push_back(term());
    return sum;
  }

  GameExpr term() {
    skip_ws();
    if (i >= s.size()) fail("unexpected end of input");
    if (s[i] == '(') {
      ++i;
      GameExpr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      int k = integer();
      skip_ws();
      if (i < s.size() && s[i] == 'x') {
        ++i;
        int cols = integer();
        GameExpr e;
        e.kind = GameExpr::Kind::Product;
        e.a = k;
        e.b = cols;
        return e;
      }
      expect('*');
      expect('(');
      GameExpr child = expr();
      expect(')');
      GameExpr e;
      e.kind = GameExpr::Kind::Repeat;
      e.a = k;
      e.children.push_back(std::move(child));
      return e;
    }
    std::string n = name();
    if (n == "complement") {
      expect('(');
      GameExpr child = expr();
      expect(')');
      GameExpr e;
      e.kind = GameExpr::Kind::Complement;
      e.children.push_back(std::move(child));
      return e;
    }
    GameExpr e;
    if (n == "CM") e.kind = GameExpr::Kind::CM;
    else if (n == "CMn") e.kind = GameExpr::Kind::CMn;
    else if (n == "O") e.kind = GameExpr::Kind::O;
    else if (n == "Z") e.kind = GameExpr::Kind::Z;
    else if (n == "Sigma") e.kind = GameExpr::Kind::Sigma;
    else if (n == "SigmaR") e.kind = GameExpr::Kind::SigmaR;
    else fail("unknown builder '" + n + "'");
    expect('(');
    e.a = integer();
    if (e.kind == GameExpr::Kind::CMn) {
      expect(',');
      e.b = integer();
    }
    expect(')');
    return e;
  }
};

WlcGame build_cm(int m) {
  if (m < 1) throw ValidationError("CM(m) needs m >= 1");
  std::vector<Profile> w;
  for (int i = 0; i < m; ++i) w.push_back({i, i});
  return make_game({m, m}, std::move(w));
}

WlcGame build_cmn(int n, int m) {
  if (n < 1 || m < 1) throw ValidationError("CMn(n,m) needs n,m >= 1");
  std::vector<int> sizes(n, m);
  std::vector<Profile> w;
  for (int i = 0; i < m; ++i) w.push_back(Profile(n, i));
  return make_game(std::move(sizes), std::move(w));
}

WlcGame build_cycle(int m) {
  if (m < 2) throw ValidationError("O(m) needs m >= 2");
  std::vector<Profile> w;
  for (int i = 0; i < m; ++i) {
    w.push_back({i, i});
    w.push_back({i, (i + 1) % m});
  }
  return make_game({m, m}, std::move(w));
}

WlcGame build_path(int m) {
  if (m < 1) throw ValidationError("Z(m) needs m >= 1");
  std::vector<Profile> w;
  for (int i = 0; i < m; ++i) {
    w.push_back({i, i});
    if (i + 1 < m) w.push_back({i, i + 1});
  }
  return make_game({m, m}, std::move(w));
}

WlcGame build_sigma(int m, bool mirrored) {
  if (m < 2) throw ValidationError("Sigma(m) needs m >= 2");
  std::vector<Profile> w;
  for (int i = 0; i + 1 < m; ++i) {
    if (mirrored) {
      w.push_back({i, i});
      w.push_back({i + 1, i});
    } else {
      w.push_back({i, i});
      w.push_back({i, i + 1});
    }
  }
  return mirrored ? make_game({m, m - 1}, std::move(w))
                  : make_game({m - 1, m}, std::move(w));
}

WlcGame build_product(int rows, int cols) {
  if (rows < 1 || cols < 1) throw ValidationError("product needs positive sides");
  std::vector<Profile> w;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) w.push_back({i, j});
  return make_game({rows, cols}, std::move(w));
}

}  // namespace

GameExpr parse_notation(const std::string& text) {
  Parser p{text};
  GameExpr e = p.expr();
  p.skip_ws();
  if (p.i != text.size()) p.fail("trailing input");
  return e;
}

std::string print_notation(const GameExpr& e) {
  using K = GameExpr::Kind;
  switch (e.kind) {
    case K::CM: return "CM(" + std::to_string(e.a) + ")";
    case K::CMn: return "CMn(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
    case K::O: return "O(" + std::to_string(e.a) + ")";
    case K::Z: return "Z(" + std::to_string(e.a) + ")";
    case K::Sigma: return "Sigma(" + std::to_string(e.a) + ")";
    case K::SigmaR: return "SigmaR(" + std::to_string(e.a) + ")";
    case K::Product: return std::to_string(e.a) + "x" + std::to_string(e.b);
    case K::Repeat:
      return std::to_string(e.a) + "*(" + print_notation(e.children[0]) + ")";
    case K::Complement:
      return "complement(" + print_notation(e.children[0]) + ")";
    case K::Sum: {
      std::string out;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += " + ";
        const GameExpr& c = e.children[i];
        if (c.kind == K::Sum) out += "(" + print_notation(c) + ")";
        else out += print_notation(c);
      }
      return out;
    }
  }
  throw DomainError("unreachable notation kind");
}

WlcGame disjoint_union(const WlcGame& a, const WlcGame& b) {
  if (a.players != b.players)
    throw ValidationError("disjoint union needs equal player counts");
  std::vector<int> sizes(a.players);
  for (int p = 0; p < a.players; ++p) sizes[p] = a.side_size(p) + b.side_size(p);
  std::vector<Profile> w;
  for (const auto& t : a.winning) {
    Profile loc(a.players);
    for (int p = 0; p < a.players; ++p) loc[p] = a.local_index(t[p]);
    w.push_back(loc);
  }
  for (const auto& t : b.winning) {
    Profile loc(b.players);
    for (int p = 0; p < b.players; ++p) loc[p] = a.side_size(p) + b.local_index(t[p]);
    w.push_back(loc);
  }
  std::vector<std::string> labels;
  for (int p = 0; p < a.players; ++p) {
    auto [ab, ae] = a.side_range(p);
    for (int c = ab; c < ae; ++c) labels.push_back(a.label[c]);
    auto [bb, be] = b.side_range(p);
    for (int c = bb; c < be; ++c) labels.push_back(b.label[c] + "'");
  }
  return make_game(std::move(sizes), std::move(w), std::move(labels));
}

WlcGame build(const GameExpr& e) {
  using K = GameExpr::Kind;
  switch (e.kind) {
    case K::CM: return build_cm(e.a);
    case K::CMn: return build_cmn(e.a, e.b);
    case K::O: return build_cycle(e.a);
    case K::Z: return build_path(e.a);
    case K::Sigma: return build_sigma(e.a, false);
    case K::SigmaR: return build_sigma(e.a, true);
    case K::Product: return build_product(e.a, e.b);
    case K::Complement: return complement(build(e.children[0]));
    case K::Repeat: {
      if (e.a < 1) throw ValidationError("repeat count must be positive");
      WlcGame g = build(e.children[0]);
      WlcGame out = g;
      for (int k = 1; k < e.a; ++k) out = disjoint_union(out, g);
      return out;
    }
    case K::Sum: {
      WlcGame out = build(e.children[0]);
      for (std::size_t i = 1; i < e.children.size(); ++i)
        out = disjoint_union(out, build(e.children[i]));
      return out;
    }
  }
  throw DomainError("unreachable notation kind");
}

WlcGame build_notation(const std::string& text) { return build(parse_notation(text)); }

}  // namespace coord
