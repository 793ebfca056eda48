#pragma once

#include "expthresh/interval.hpp"
#include "expthresh/rational.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace expthresh {

/// coeff * e^power, the closed form most constants in this library take.
struct Monomial {
  Rational coeff;
  Rational power;
};

/// An exact real number given as an expression over rationals and e.
/// Evaluates to an enclosing Interval at any precision; when the value is of
/// the form q*e^r that form is tracked exactly, so e.g. (4e)/(4e) is exactly 1.
class Real {
 public:
  Real();
  Real(long v);  // NOLINT(google-explicit-constructor)
  Real(int v) : Real(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Real(const Rational& q);  // NOLINT(google-explicit-constructor)

  static Real e();
  /// A constant known only to lie in [lo, hi].
  static Real enclosed(const Rational& lo, const Rational& hi);
  /// The unique p in [0,1] with sum_j coeffs[j] p^j = target. The polynomial
  /// must be nondecreasing on [0,1]; NoRoot if target is outside [f(0), f(1)].
  static Real poly_root(std::vector<Rational> coeffs, Rational target);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real operator-() const;

  friend Real pow(const Real& x, long n);
  friend Real pow(const Real& x, const Real& y);
  friend Real root(const Real& x, unsigned long k);
  friend Real sqrt(const Real& x);

  Interval eval(int bits) const;
  std::optional<Monomial> monomial() const;
  std::optional<Rational> exact() const;

  Real with_label(std::string label) const;
  std::string str() const;

  nlohmann::json to_json() const;
  static Real from_json(const nlohmann::json& j);

  struct Node;

 private:
  explicit Real(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Real pow(const Real& x, long n);
Real pow(const Real& x, const Real& y);
Real root(const Real& x, unsigned long k);
Real sqrt(const Real& x);

/// a <= b decided exactly when both sides are monomials, otherwise by interval
/// evaluation escalating the precision from `bits` up to `max_bits`.
Tri certify_le(const Real& a, const Real& b, int bits, int max_bits);
Tri certify_lt(const Real& a, const Real& b, int bits, int max_bits);

/// Interval x compared against Real bound with escalation of the bound only.
Tri certify_le(const Interval& x, const Real& bound, int max_bits);

/// Ceiling/floor of a real, exact when possible; IndeterminateAtPrecision when
/// the value cannot be separated from an integer at max_bits.
BigInt certified_ceil(const Real& x, int bits, int max_bits);
BigInt certified_floor(const Real& x, int bits, int max_bits);

}  // namespace expthresh
