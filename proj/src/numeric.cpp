#include "randsol/numeric.hpp"

#include <cmath>
#include <cstdlib>

#include "randsol/error.hpp"

namespace randsol {

std::string rat_to_string(const Rat& q) {
  Int num = boost::multiprecision::numerator(q);
  Int den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rat parse_rational(const std::string& text) {
  require(!text.empty(), Errc::parse_error, "empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    try {
      Int num(text.substr(0, slash));
      Int den(text.substr(slash + 1));
      require(den != 0, Errc::parse_error, "zero denominator in '" + text + "'");
      return Rat(num, den);
    } catch (const std::exception&) {
      fail(Errc::parse_error, "bad rational literal '" + text + "'");
    }
  }
  auto dot = text.find('.');
  try {
    if (dot == std::string::npos) return Rat(Int(text));
    std::string head = text.substr(0, dot);
    std::string tail = text.substr(dot + 1);
    bool negative = !head.empty() && head[0] == '-';
    if (head == "-" || head.empty()) head = "0";
    Int whole(head);
    Int frac = tail.empty() ? Int(0) : Int(tail);
    Int scale = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
    Int num = whole * scale + (whole < 0 || negative ? -frac : frac);
    return Rat(num, scale);
  } catch (const std::exception&) {
    fail(Errc::parse_error, "bad rational literal '" + text + "'");
  }
}

Rat rat_from_double(double x) {
  require(std::isfinite(x), Errc::parse_error, "non-finite double");
  if (x == 0.0) return Rat(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);           // x = mant * 2^exp, |mant| in [0.5, 1)
  auto m = (long long)std::ldexp(mant, 53);    // exact: 53-bit integer
  int shift = 53 - exp;
  if (shift >= 0) return Rat(Int(m), Int(1) << shift);
  return Rat(Int(m) << (-shift), Int(1));
}

Rat rat_pow(const Rat& base, long long exponent) {
  if (exponent < 0) {
    require(base != 0, Errc::degenerate_denominator, "zero to a negative power");
    return Rat(1) / rat_pow(base, -exponent);
  }
  Rat result(1);
  Rat cur = base;
  unsigned long long e = (unsigned long long)exponent;
  while (e > 0) {
    if (e & 1) result *= cur;
    cur *= cur;
    e >>= 1;
  }
  return result;
}

Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / boost::multiprecision::gcd(a, b) * b);
}

}  // namespace randsol
