#pragma once

#include "expthresh/rational.hpp"

#include <mpfr.h>

#include <string>
#include <string_view>

namespace expthresh {

enum class Tri { no, yes, unknown };

inline Tri tri_of(bool b) { return b ? Tri::yes : Tri::no; }

/// Closed interval [lo, hi] of MPFR floats. Every operation rounds the lower
/// end down and the upper end up, so the true value is always enclosed.
/// Binary operations work at the larger of the two precisions.
class Interval {
 public:
  explicit Interval(int bits = 128);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval of(long v, int bits);
  static Interval of(const Rational& q, int bits);
  static Interval between(const Rational& lo, const Rational& hi, int bits);
  static Interval e(int bits);
  /// Parses decimal endpoints, rounding outward.
  static Interval parse(std::string_view lo, std::string_view hi, int bits);

  int bits() const { return bits_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;

  Interval pow(long n) const;
  Interval root(unsigned long k) const;
  Interval sqrt() const { return root(2); }
  Interval exp() const;
  Interval log() const;
  /// x^y for x > 0 via exp(y log x).
  Interval pow(const Interval& y) const;

  Interval hull(const Interval& other) const;

  bool contains(const Rational& q) const;
  bool contains(const Interval& other) const;
  bool is_point() const;

  /// Exact rational values of the endpoints (MPFR floats are dyadic).
  Rational lower_rational() const;
  Rational upper_rational() const;
  double lower_double() const;
  double upper_double() const;
  double mid_double() const;
  double width_double() const;

  /// Decimal endpoints rounded outward, enough digits to be faithful.
  std::string lower_string() const;
  std::string upper_string() const;
  std::string str() const;

  /// Certified comparisons: yes/no only when the intervals decide it.
  friend Tri certainly_le(const Interval& a, const Interval& b);
  friend Tri certainly_lt(const Interval& a, const Interval& b);

 private:
  int bits_;
  mpfr_t lo_;
  mpfr_t hi_;
};

Tri certainly_le(const Interval& a, const Interval& b);
Tri certainly_lt(const Interval& a, const Interval& b);
inline Tri certainly_ge(const Interval& a, const Interval& b) { return certainly_le(b, a); }
inline Tri certainly_gt(const Interval& a, const Interval& b) { return certainly_lt(b, a); }

}  // namespace expthresh
