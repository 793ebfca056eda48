#include "expthresh/interval.hpp"

#include "expthresh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace expthresh {

namespace {

struct Tmp {
  mpfr_t v;
  explicit Tmp(int bits) { mpfr_init2(v, bits); }
  ~Tmp() { mpfr_clear(v); }
  Tmp(const Tmp&) = delete;
  Tmp& operator=(const Tmp&) = delete;
};

int joint_bits(const Interval& a, const Interval& b) { return std::max(a.bits(), b.bits()); }

using BinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Evaluates op over the four endpoint pairs and keeps min (rounded down) and
// max (rounded up).
void corner_hull(mpfr_ptr lo, mpfr_ptr hi, const Interval& a, const Interval& b, BinOp op, int bits) {
  mpfr_srcptr as[2] = {a.lo(), a.hi()};
  mpfr_srcptr bs[2] = {b.lo(), b.hi()};
  Tmp d(bits), u(bits);
  bool first = true;
  for (auto x : as)
    for (auto y : bs) {
      op(d.v, x, y, MPFR_RNDD);
      op(u.v, x, y, MPFR_RNDU);
      if (first || mpfr_less_p(d.v, lo)) mpfr_set(lo, d.v, MPFR_RNDD);
      if (first || mpfr_greater_p(u.v, hi)) mpfr_set(hi, u.v, MPFR_RNDU);
      first = false;
    }
}

std::string format_decimal(mpfr_srcptr x, mpfr_rnd_t rnd) {
  if (mpfr_nan_p(x)) return "nan";
  if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(x)) return "0";
  size_t digits = static_cast<size_t>(std::ceil(mpfr_get_prec(x) * 0.30103)) + 2;
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, digits, x, rnd);
  std::string m(raw);
  mpfr_free_str(raw);
  bool neg = !m.empty() && m[0] == '-';
  if (neg) m.erase(0, 1);
  while (m.size() > 1 && m.back() == '0') m.pop_back();
  // value = 0.m * 10^exp10
  std::string out;
  if (exp10 > -6 && exp10 <= 24) {
    if (exp10 <= 0) {
      out = "0." + std::string(static_cast<size_t>(-exp10), '0') + m;
    } else if (static_cast<size_t>(exp10) >= m.size()) {
      out = m + std::string(static_cast<size_t>(exp10) - m.size(), '0');
    } else {
      out = m.substr(0, static_cast<size_t>(exp10)) + "." + m.substr(static_cast<size_t>(exp10));
    }
  } else {
    out = m.substr(0, 1);
    if (m.size() > 1) out += "." + m.substr(1);
    out += "e" + std::to_string(static_cast<long>(exp10) - 1);
  }
  return neg ? "-" + out : out;
}

Rational exact_value(mpfr_srcptr x) {
  if (!mpfr_number_p(x)) fail(ErrorCode::invalid_argument, "non-finite interval endpoint");
  if (mpfr_zero_p(x)) return 0;
  BigInt z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.backend().data(), x);
  Rational r(z);
  BigInt two = 2;
  if (e > 0) r *= Rational(boost::multiprecision::pow(two, static_cast<unsigned>(e)));
  if (e < 0) r /= Rational(boost::multiprecision::pow(two, static_cast<unsigned>(-e)));
  return r;
}

}  // namespace

Interval::Interval(int bits) : bits_(bits) {
  require(bits >= MPFR_PREC_MIN && bits <= 1 << 20, ErrorCode::invalid_argument, "bad interval precision");
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) : bits_(other.bits_) {
  mpfr_init2(lo_, bits_);
  mpfr_init2(hi_, bits_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other) {}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  if (bits_ != other.bits_) {
    bits_ = other.bits_;
    mpfr_set_prec(lo_, bits_);
    mpfr_set_prec(hi_, bits_);
  }
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  if (this != &other) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    std::swap(bits_, other.bits_);
  }
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::of(long v, int bits) {
  Interval r(bits);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::of(const Rational& q, int bits) { return between(q, q, bits); }

Interval Interval::between(const Rational& lo, const Rational& hi, int bits) {
  require(lo <= hi, ErrorCode::invalid_argument, "interval endpoints out of order");
  Interval r(bits);
  mpfr_set_q(r.lo_, lo.backend().data(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.backend().data(), MPFR_RNDU);
  return r;
}

Interval Interval::e(int bits) {
  Interval one = of(1, bits);
  return one.exp();
}

Interval Interval::parse(std::string_view lo, std::string_view hi, int bits) {
  Interval r(bits);
  std::string a(lo), b(hi);
  if (mpfr_set_str(r.lo_, a.c_str(), 10, MPFR_RNDD) != 0 || mpfr_set_str(r.hi_, b.c_str(), 10, MPFR_RNDU) != 0)
    fail(ErrorCode::parse_error, "bad interval endpoints '" + a + "', '" + b + "'");
  if (mpfr_greater_p(r.lo_, r.hi_)) fail(ErrorCode::parse_error, "interval endpoints out of order");
  return r;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(joint_bits(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(joint_bits(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  int bits = joint_bits(a, b);
  Interval r(bits);
  corner_hull(r.lo_, r.hi_, a, b, mpfr_mul, bits);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
    fail(ErrorCode::indeterminate_at_precision, "interval division by an interval containing 0");
  int bits = joint_bits(a, b);
  Interval r(bits);
  corner_hull(r.lo_, r.hi_, a, b, mpfr_div, bits);
  return r;
}

Interval Interval::operator-() const {
  Interval r(bits_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::pow(long n) const {
  if (n == 0) return of(1, bits_);
  if (n < 0) return of(1, bits_) / pow(-n);
  Interval r(bits_);
  bool odd = n % 2 != 0;
  unsigned long un = static_cast<unsigned long>(n);
  if (mpfr_sgn(lo_) >= 0 || odd) {
    mpfr_pow_ui(r.lo_, lo_, un, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, hi_, un, MPFR_RNDU);
  } else if (mpfr_sgn(hi_) <= 0) {
    mpfr_pow_ui(r.lo_, hi_, un, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, lo_, un, MPFR_RNDU);
  } else {
    Tmp a(bits_), b(bits_);
    mpfr_pow_ui(a.v, lo_, un, MPFR_RNDU);
    mpfr_pow_ui(b.v, hi_, un, MPFR_RNDU);
    mpfr_set_zero(r.lo_, 1);
    mpfr_max(r.hi_, a.v, b.v, MPFR_RNDU);
  }
  return r;
}

Interval Interval::root(unsigned long k) const {
  require(k >= 1, ErrorCode::invalid_argument, "root index must be positive");
  if (mpfr_sgn(lo_) < 0) fail(ErrorCode::invalid_argument, "root of an interval with negative part");
  Interval r(bits_);
  mpfr_rootn_ui(r.lo_, lo_, k, MPFR_RNDD);
  mpfr_rootn_ui(r.hi_, hi_, k, MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(bits_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0) fail(ErrorCode::invalid_argument, "log of an interval reaching 0");
  Interval r(bits_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow(const Interval& y) const { return (y * log()).exp(); }

Interval Interval::hull(const Interval& other) const {
  Interval r(joint_bits(*this, other));
  mpfr_min(r.lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, hi_, other.hi_, MPFR_RNDU);
  return r;
}

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.backend().data()) <= 0 && mpfr_cmp_q(hi_, q.backend().data()) >= 0;
}

bool Interval::contains(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_greaterequal_p(hi_, other.hi_);
}

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_); }

Rational Interval::lower_rational() const { return exact_value(lo_); }
Rational Interval::upper_rational() const { return exact_value(hi_); }
double Interval::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double Interval::mid_double() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }

double Interval::width_double() const {
  Tmp w(bits_);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

std::string Interval::lower_string() const { return format_decimal(lo_, MPFR_RNDD); }
std::string Interval::upper_string() const { return format_decimal(hi_, MPFR_RNDU); }
std::string Interval::str() const { return "[" + lower_string() + ", " + upper_string() + "]"; }

Tri certainly_le(const Interval& a, const Interval& b) {
  if (mpfr_lessequal_p(a.hi_, b.lo_)) return Tri::yes;
  if (mpfr_greater_p(a.lo_, b.hi_)) return Tri::no;
  return Tri::unknown;
}

Tri certainly_lt(const Interval& a, const Interval& b) {
  if (mpfr_less_p(a.hi_, b.lo_)) return Tri::yes;
  if (mpfr_greaterequal_p(a.lo_, b.hi_)) return Tri::no;
  return Tri::unknown;
}

}  // namespace expthresh
