#include "expthresh/rational.hpp"

#include "expthresh/errors.hpp"

#include <cctype>

namespace expthresh {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Base 10 always; the string constructor would read a leading 0 as octal.
BigInt decimal(const std::string& digits) {
  BigInt v;
  mpz_set_str(v.backend().data(), digits.c_str(), 10);
  return v;
}

BigInt parse_int(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) fail(ErrorCode::parse_error, "not an integer: '" + std::string(s) + "'");
  BigInt v = decimal(std::string(s));
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) fail(ErrorCode::parse_error, "empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) fail(ErrorCode::parse_error, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  // decimal with optional exponent: [-]ddd[.ddd][e[-]dd]
  std::string_view mant = text;
  long exp10 = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mant = text.substr(0, e);
    BigInt ev = parse_int(text.substr(e + 1));
    if (abs(ev) > 100000) fail(ErrorCode::parse_error, "exponent out of range");
    exp10 = ev.convert_to<long>();
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  if (auto dot = mant.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mant.substr(0, dot), fp = mant.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      fail(ErrorCode::parse_error, "bad decimal '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(mant)) fail(ErrorCode::parse_error, "bad number '" + std::string(text) + "'");
    digits = std::string(mant);
  }
  Rational v{decimal(digits)};
  BigInt ten = 10;
  if (exp10 > 0) v *= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(exp10)));
  if (exp10 < 0) v /= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(-exp10)));
  return neg ? Rational(-v) : v;
}

std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

BigInt floor_of(const Rational& q) {
  BigInt n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
  BigInt f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

BigInt ceil_of(const Rational& q) {
  BigInt n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
  BigInt f = n / d;
  if (n > 0 && f * d != n) f += 1;
  return f;
}

BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.backend().data(), n, k);
  return r;
}

Rational pow(const Rational& q, long e) {
  if (e == 0) return 1;
  if (e < 0) {
    if (q == 0) fail(ErrorCode::invalid_argument, "negative power of zero");
    return pow(Rational(1) / q, -e);
  }
  BigInt n = boost::multiprecision::pow(boost::multiprecision::numerator(q), static_cast<unsigned>(e));
  BigInt d = boost::multiprecision::pow(boost::multiprecision::denominator(q), static_cast<unsigned>(e));
  return Rational(n, d);
}

bool exact_root(const Rational& q, unsigned long k, Rational& out) {
  if (k == 0) return false;
  if (k == 1) {
    out = q;
    return true;
  }
  if (q < 0) return false;
  BigInt n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
  BigInt rn, rd;
  bool en = mpz_root(rn.backend().data(), n.backend().data(), k) != 0;
  bool ed = mpz_root(rd.backend().data(), d.backend().data(), k) != 0;
  if (!en || !ed) return false;
  out = Rational(rn, rd);
  return true;
}

}  // namespace expthresh
