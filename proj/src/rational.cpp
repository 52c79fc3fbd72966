#include "nnr/rational.hpp"

#include "nnr/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace nnr {

namespace {

bool parse_uint_digits(const std::string& s, std::size_t& pos, BigInt& out, int* ndigits = nullptr) {
  int count = 0;
  BigInt v = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    v = v * 10 + (s[pos] - '0');
    ++pos;
    ++count;
  }
  if (ndigits) *ndigits = count;
  if (count == 0) return false;
  out = v;
  return true;
}

BigInt pow10(long e) {
  BigInt r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

std::optional<Rational> parse_decimal(const std::string& s) {
  std::size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = (s[pos] == '-');
    ++pos;
  }
  BigInt ipart = 0, fpart = 0;
  int idigits = 0, fdigits = 0;
  bool has_int = parse_uint_digits(s, pos, ipart, &idigits);
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    if (!parse_uint_digits(s, pos, fpart, &fdigits) && !has_int) return std::nullopt;
  }
  if (!has_int && fdigits == 0) return std::nullopt;
  long exp = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    bool eneg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      eneg = (s[pos] == '-');
      ++pos;
    }
    BigInt ev;
    if (!parse_uint_digits(s, pos, ev)) return std::nullopt;
    if (ev > 100000) return std::nullopt;
    exp = ev.convert_to<long>();
    if (eneg) exp = -exp;
  }
  if (pos != s.size()) return std::nullopt;

  BigInt num = ipart * pow10(fdigits) + fpart;
  BigInt den = pow10(fdigits);
  long e = exp;
  if (e > 0)
    num *= pow10(e);
  else if (e < 0)
    den *= pow10(-e);
  Rational r(num, den);
  if (neg) r = -r;
  return r;
}

}  // namespace

std::optional<Rational> try_parse_rational(const std::string& text) {
  std::size_t a = text.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return std::nullopt;
  std::size_t b = text.find_last_not_of(" \t\r\n");
  std::string s = text.substr(a, b - a + 1);
  std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    auto num = parse_decimal(s.substr(0, slash));
    auto den = parse_decimal(s.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return *num / *den;
  }
  return parse_decimal(s);
}

Rational parse_rational(const std::string& text) {
  auto r = try_parse_rational(text);
  if (!r) fail("ParseError", "not a number: '" + text + "'");
  return *r;
}

std::string format_rational(const Rational& v) {
  BigInt num = boost::multiprecision::numerator(v);
  BigInt den = boost::multiprecision::denominator(v);
  bool neg = num < 0;
  if (neg) num = -num;

  // How many 2s and 5s make up the denominator?
  BigInt d = den;
  long a = 0, b = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++a;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++b;
  }
  if (d == 1) {
    long c = std::max(a, b);
    // num/den == num*2^(c-a)*5^(c-b) / 10^c
    BigInt scaled = num;
    for (long i = 0; i < c - a; ++i) scaled *= 2;
    for (long i = 0; i < c - b; ++i) scaled *= 5;
    BigInt ip = scaled / pow10(c);
    BigInt fp = scaled % pow10(c);
    std::string s = (neg ? "-" : "") + ip.str();
    if (fp != 0) {
      std::string frac = fp.str();
      frac.insert(frac.begin(), static_cast<std::size_t>(c) - frac.size(), '0');
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
      s += "." + frac;
    }
    return s;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", to_double(v));
  return buf;
}

double to_double(const Rational& v) {
  BigInt num = boost::multiprecision::numerator(v);
  BigInt den = boost::multiprecision::denominator(v);
  // Shift both down when they exceed double range; the ratio is preserved.
  long nb = (num == 0) ? 0 : static_cast<long>(boost::multiprecision::msb(boost::multiprecision::abs(num)));
  long db = static_cast<long>(boost::multiprecision::msb(den));
  long shift = std::max(nb, db) - 900;
  if (shift > 0) {
    num >>= shift;
    den >>= shift;
    if (den == 0) den = 1;
  }
  return num.convert_to<double>() / den.convert_to<double>();
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) fail("ParseError", "non-finite value");
  return Rational(x);
}

}  // namespace nnr
