#include "coordgames/rational.hpp"

#include <cctype>

namespace coord {

std::string rational_to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational rational_from_string(std::string_view s) {
  auto bad = [&] { throw ParseError(0, "bad rational '" + std::string(s) + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(BigInt(std::string(s)));
    }
    BigInt num{std::string(s.substr(0, slash))};
    BigInt den{std::string(s.substr(slash + 1))};
    if (den == 0) bad();
    return Rational(num, den);
  } catch (const std::exception&) {
    bad();
  }
  return {};
}

std::string rational_to_decimal(const Rational& q, int digits) {
  bool neg = q < 0;
  Rational a = neg ? Rational(-q) : q;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled_twice = numerator(a) * scale * 2 / denominator(a);
  BigInt rounded = (scaled_twice + 1) / 2;
  BigInt ip = rounded / scale;
  BigInt fp = rounded % scale;
  std::string frac = fp.str();
  frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
  std::string out = ip.str();
  if (digits > 0) out += "." + frac;
  if (neg && (ip != 0 || fp != 0)) out.insert(out.begin(), '-');
  return out;
}

double rational_to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace coord
