#include "expthresh/real.hpp"

#include "expthresh/errors.hpp"

#include <map>
#include <mutex>

namespace expthresh {

enum class Op { rat, e, enclosed, add, sub, mul, div, neg, pow_int, pow_real, root, poly_root };

struct Real::Node {
  Op op = Op::rat;
  Rational q;   // rat value, enclosed lower end, poly_root target
  Rational q2;  // enclosed upper end
  long n = 0;   // pow_int exponent, root index
  std::vector<std::shared_ptr<const Node>> args;
  std::vector<Rational> coeffs;
  std::string label;
  std::optional<Monomial> mono;

  struct Cache {
    std::mutex mu;
    std::map<int, Interval> by_bits;
  };
  std::shared_ptr<Cache> cache;
};

namespace {

using NodePtr = std::shared_ptr<const Real::Node>;

std::optional<Monomial> combine(Op op, const std::vector<NodePtr>& args, long n) {
  auto get = [&](size_t i) -> const std::optional<Monomial>& { return args[i]->mono; };
  switch (op) {
    case Op::add:
    case Op::sub: {
      if (!get(0) || !get(1)) return std::nullopt;
      Monomial a = *get(0), b = *get(1);
      if (op == Op::sub) b.coeff = -b.coeff;
      if (b.coeff == 0) return a;
      if (a.coeff == 0) return b;
      if (a.power != b.power) return std::nullopt;
      Monomial r{a.coeff + b.coeff, a.power};
      if (r.coeff == 0) r.power = 0;
      return r;
    }
    case Op::mul: {
      if (!get(0) || !get(1)) return std::nullopt;
      Monomial r{get(0)->coeff * get(1)->coeff, get(0)->power + get(1)->power};
      if (r.coeff == 0) r.power = 0;
      return r;
    }
    case Op::div: {
      if (!get(0) || !get(1) || get(1)->coeff == 0) return std::nullopt;
      Monomial r{get(0)->coeff / get(1)->coeff, get(0)->power - get(1)->power};
      if (r.coeff == 0) r.power = 0;
      return r;
    }
    case Op::neg:
      if (!get(0)) return std::nullopt;
      return Monomial{-get(0)->coeff, get(0)->power};
    case Op::pow_int:
      if (!get(0)) return std::nullopt;
      if (get(0)->coeff == 0) {
        if (n > 0) return Monomial{0, 0};
        if (n == 0) return Monomial{1, 0};
        return std::nullopt;
      }
      return Monomial{pow(get(0)->coeff, n), get(0)->power * n};
    case Op::root: {
      if (!get(0) || get(0)->coeff < 0) return std::nullopt;
      Rational r;
      if (!exact_root(get(0)->coeff, static_cast<unsigned long>(n), r)) return std::nullopt;
      return Monomial{r, get(0)->power / n};
    }
    case Op::pow_real: {
      if (!get(0) || !get(1) || get(1)->power != 0) return std::nullopt;
      const Rational& y = get(1)->coeff;
      const Monomial& b = *get(0);
      if (b.coeff == 0) {
        if (y > 0) return Monomial{0, 0};
        return std::nullopt;
      }
      if (b.coeff < 0) return std::nullopt;
      BigInt s = boost::multiprecision::numerator(y), t = boost::multiprecision::denominator(y);
      if (abs(s) > 4096 || t > 4096) return std::nullopt;
      Rational c = pow(b.coeff, s.convert_to<long>());
      Rational r;
      if (!exact_root(c, t.convert_to<unsigned long>(), r)) return std::nullopt;
      return Monomial{r, b.power * y};
    }
    default:
      return std::nullopt;
  }
}

NodePtr make(Op op, std::vector<NodePtr> args, long n = 0) {
  auto node = std::make_shared<Real::Node>();
  node->op = op;
  node->n = n;
  node->args = std::move(args);
  node->mono = combine(op, node->args, n);
  return node;
}

Interval eval_mono(const Monomial& m, int bits) {
  Interval c = Interval::of(m.coeff, bits);
  if (m.power == 0 || m.coeff == 0) return c;
  return c * Interval::of(m.power, bits).exp();
}

// Bisection over dyadic points m / 2^s in integer arithmetic: with D clearing
// all denominators, compare sum_j C_j m^j 2^{s(d-j)} against T 2^{sd}.
Interval solve_poly(const std::vector<Rational>& coeffs, const Rational& target, int bits) {
  auto f = [&](const Rational& x) {
    Rational acc = 0;
    for (size_t j = coeffs.size(); j-- > 0;) acc = acc * x + coeffs[j];
    return acc;
  };
  Rational f0 = f(0), f1 = f(1);
  if (target < f0 || target > f1) fail(ErrorCode::no_root, "polynomial has no root of the target in [0,1]");
  if (f0 == target) return Interval::of(0, bits);
  if (f1 == target) return Interval::of(1, bits);

  BigInt D = boost::multiprecision::denominator(target);
  for (const auto& c : coeffs) D = boost::multiprecision::lcm(D, BigInt(boost::multiprecision::denominator(c)));
  std::vector<BigInt> C;
  C.reserve(coeffs.size());
  for (const auto& c : coeffs) C.push_back(BigInt(boost::multiprecision::numerator(c)) * (D / boost::multiprecision::denominator(c)));
  BigInt T = BigInt(boost::multiprecision::numerator(target)) * (D / boost::multiprecision::denominator(target));
  const size_t d = coeffs.empty() ? 0 : coeffs.size() - 1;

  BigInt lo = 0, hi = 1;  // endpoints are lo/2^s, hi/2^s
  unsigned s = 0;
  const unsigned steps = static_cast<unsigned>(bits) + 2;
  for (unsigned it = 0; it < steps; ++it) {
    ++s;
    lo <<= 1;
    hi <<= 1;
    BigInt m = lo + 1;
    BigInt acc = C[d];
    for (size_t j = d; j-- > 0;) acc = acc * m + (C[j] << static_cast<unsigned>(s * (d - j)));
    BigInt rhs = T << static_cast<unsigned>(s * d);
    if (acc == rhs) {
      Rational x(m, BigInt(1) << s);
      return Interval::of(x, bits);
    }
    if (acc < rhs)
      lo = m;
    else
      hi = m;
  }
  BigInt den = BigInt(1) << s;
  return Interval::between(Rational(lo, den), Rational(hi, den), bits);
}

Interval eval_node(const Real::Node& node, int bits);

Interval eval_arg(const Real::Node& node, size_t i, int bits) { return eval_node(*node.args[i], bits); }

Interval eval_node(const Real::Node& node, int bits) {
  if (node.mono) return eval_mono(*node.mono, bits);
  switch (node.op) {
    case Op::rat: return Interval::of(node.q, bits);
    case Op::e: return Interval::e(bits);
    case Op::enclosed: return Interval::between(node.q, node.q2, bits);
    case Op::add: return eval_arg(node, 0, bits) + eval_arg(node, 1, bits);
    case Op::sub: return eval_arg(node, 0, bits) - eval_arg(node, 1, bits);
    case Op::mul: return eval_arg(node, 0, bits) * eval_arg(node, 1, bits);
    case Op::div: return eval_arg(node, 0, bits) / eval_arg(node, 1, bits);
    case Op::neg: return -eval_arg(node, 0, bits);
    case Op::pow_int: return eval_arg(node, 0, bits).pow(node.n);
    case Op::root: return eval_arg(node, 0, bits).root(static_cast<unsigned long>(node.n));
    case Op::pow_real: {
      Interval x = eval_arg(node, 0, bits), y = eval_arg(node, 1, bits);
      if (mpfr_sgn(x.lo()) > 0) return x.pow(y);
      if (mpfr_sgn(x.lo()) == 0 && mpfr_sgn(y.lo()) > 0) {
        if (mpfr_sgn(x.hi()) == 0) return Interval::of(0, bits);
        Interval top = Interval::between(x.upper_rational(), x.upper_rational(), bits);
        Interval a = top.pow(Interval::between(y.lower_rational(), y.lower_rational(), bits));
        Interval b = top.pow(Interval::between(y.upper_rational(), y.upper_rational(), bits));
        Interval zero = Interval::of(0, bits);
        return zero.hull(a).hull(b);
      }
      fail(ErrorCode::invalid_argument, "real power of a non-positive base");
    }
    case Op::poly_root: {
      std::lock_guard<std::mutex> lock(node.cache->mu);
      auto it = node.cache->by_bits.lower_bound(bits);
      if (it != node.cache->by_bits.end()) {
        Interval r(bits);
        r = it->second;
        return r;
      }
      Interval r = solve_poly(node.coeffs, node.q, bits);
      node.cache->by_bits.emplace(bits, r);
      return r;
    }
  }
  fail(ErrorCode::invalid_argument, "bad expression node");
}

int precedence(const Real::Node& node) {
  if (!node.label.empty()) return 9;
  switch (node.op) {
    case Op::rat:
      if (node.q < 0) return 3;
      return boost::multiprecision::denominator(node.q) == 1 ? 9 : 2;
    case Op::e:
    case Op::enclosed:
    case Op::poly_root: return 9;
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    default: return 4;
  }
}

std::string render(const Real::Node& node, int parent);

std::string wrap(const Real::Node& node, int parent) {
  std::string s = render(node, parent);
  return precedence(node) < parent ? "(" + s + ")" : s;
}

std::string render(const Real::Node& node, int /*parent*/) {
  if (!node.label.empty()) return node.label;
  const auto& a = node.args;
  switch (node.op) {
    case Op::rat: return to_string(node.q);
    case Op::e: return "e";
    case Op::enclosed: return "[" + to_string(node.q) + ", " + to_string(node.q2) + "]";
    case Op::add: return wrap(*a[0], 1) + " + " + wrap(*a[1], 1);
    case Op::sub: return wrap(*a[0], 1) + " - " + wrap(*a[1], 2);
    case Op::mul: return wrap(*a[0], 2) + "*" + wrap(*a[1], 2);
    case Op::div: return wrap(*a[0], 2) + "/" + wrap(*a[1], 3);
    case Op::neg: return "-" + wrap(*a[0], 3);
    case Op::pow_int: return wrap(*a[0], 5) + "^" + (node.n < 0 ? "(" + std::to_string(node.n) + ")" : std::to_string(node.n));
    case Op::root: return wrap(*a[0], 5) + "^(1/" + std::to_string(node.n) + ")";
    case Op::pow_real: return wrap(*a[0], 5) + "^(" + render(*a[1], 0) + ")";
    case Op::poly_root: {
      std::string s = "root[";
      for (size_t i = 0; i < node.coeffs.size(); ++i) s += (i ? "," : "") + to_string(node.coeffs[i]);
      return s + "=" + to_string(node.q) + "]";
    }
  }
  return "?";
}

const char* op_name(Op op) {
  switch (op) {
    case Op::rat: return "rat";
    case Op::e: return "e";
    case Op::enclosed: return "enclosed";
    case Op::add: return "add";
    case Op::sub: return "sub";
    case Op::mul: return "mul";
    case Op::div: return "div";
    case Op::neg: return "neg";
    case Op::pow_int: return "pow";
    case Op::pow_real: return "rpow";
    case Op::root: return "root";
    case Op::poly_root: return "poly_root";
  }
  return "?";
}

nlohmann::json node_json(const Real::Node& node) {
  nlohmann::json j;
  j["op"] = op_name(node.op);
  switch (node.op) {
    case Op::rat: j["v"] = to_string(node.q); break;
    case Op::e: break;
    case Op::enclosed:
      j["lo"] = to_string(node.q);
      j["hi"] = to_string(node.q2);
      break;
    case Op::pow_int:
    case Op::root:
      j["n"] = node.n;
      [[fallthrough]];
    default: {
      nlohmann::json args = nlohmann::json::array();
      for (const auto& a : node.args) args.push_back(node_json(*a));
      if (!node.args.empty()) j["args"] = args;
      break;
    }
    case Op::poly_root: {
      nlohmann::json cs = nlohmann::json::array();
      for (const auto& c : node.coeffs) cs.push_back(to_string(c));
      j["coeffs"] = cs;
      j["target"] = to_string(node.q);
      break;
    }
  }
  if (!node.label.empty()) j["label"] = node.label;
  return j;
}

}  // namespace

Real::Real() : Real(Rational(0)) {}
Real::Real(long v) : Real(Rational(v)) {}

Real::Real(const Rational& q) {
  auto node = std::make_shared<Node>();
  node->op = Op::rat;
  node->q = q;
  node->mono = Monomial{q, 0};
  node_ = node;
}

Real Real::e() {
  auto node = std::make_shared<Node>();
  node->op = Op::e;
  node->mono = Monomial{1, 1};
  return Real(NodePtr(node));
}

Real Real::enclosed(const Rational& lo, const Rational& hi) {
  require(lo <= hi, ErrorCode::invalid_argument, "enclosure endpoints out of order");
  if (lo == hi) return Real(lo);
  auto node = std::make_shared<Node>();
  node->op = Op::enclosed;
  node->q = lo;
  node->q2 = hi;
  return Real(NodePtr(node));
}

Real Real::poly_root(std::vector<Rational> coeffs, Rational target) {
  require(!coeffs.empty(), ErrorCode::invalid_argument, "empty polynomial");
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  auto node = std::make_shared<Node>();
  node->op = Op::poly_root;
  node->coeffs = std::move(coeffs);
  node->q = std::move(target);
  node->cache = std::make_shared<Node::Cache>();
  // linear polynomials have a rational root
  if (node->coeffs.size() == 2 && node->coeffs[1] != 0) {
    Rational x = (node->q - node->coeffs[0]) / node->coeffs[1];
    if (x >= 0 && x <= 1) return Real(x);
  }
  solve_poly(node->coeffs, node->q, 8);  // validates that a root exists
  return Real(NodePtr(node));
}

Real operator+(const Real& a, const Real& b) { return Real(make(Op::add, {a.node_, b.node_})); }
Real operator-(const Real& a, const Real& b) { return Real(make(Op::sub, {a.node_, b.node_})); }
Real operator*(const Real& a, const Real& b) { return Real(make(Op::mul, {a.node_, b.node_})); }

Real operator/(const Real& a, const Real& b) {
  if (b.node_->mono && b.node_->mono->coeff == 0) fail(ErrorCode::invalid_argument, "division by zero");
  return Real(make(Op::div, {a.node_, b.node_}));
}

Real Real::operator-() const { return Real(make(Op::neg, {node_})); }

Real pow(const Real& x, long n) { return Real(make(Op::pow_int, {x.node_}, n)); }

Real pow(const Real& x, const Real& y) {
  if (y.node_->mono && y.node_->mono->power == 0 && boost::multiprecision::denominator(y.node_->mono->coeff) == 1) {
    BigInt n = boost::multiprecision::numerator(y.node_->mono->coeff);
    if (abs(n) < 1000000) return pow(x, n.convert_to<long>());
  }
  return Real(make(Op::pow_real, {x.node_, y.node_}));
}

Real root(const Real& x, unsigned long k) {
  require(k >= 1, ErrorCode::invalid_argument, "root index must be positive");
  if (k == 1) return x;
  return Real(make(Op::root, {x.node_}, static_cast<long>(k)));
}

Real sqrt(const Real& x) { return root(x, 2); }

Interval Real::eval(int bits) const { return eval_node(*node_, bits); }

std::optional<Monomial> Real::monomial() const { return node_->mono; }

std::optional<Rational> Real::exact() const {
  if (node_->mono && node_->mono->power == 0) return node_->mono->coeff;
  return std::nullopt;
}

Real Real::with_label(std::string label) const {
  auto node = std::make_shared<Node>(*node_);
  node->label = std::move(label);
  return Real(NodePtr(node));
}

std::string Real::str() const { return render(*node_, 0); }

nlohmann::json Real::to_json() const { return node_json(*node_); }

Real Real::from_json(const nlohmann::json& j) {
  try {
    if (j.is_string()) return Real(parse_rational(j.get<std::string>()));
    if (j.is_number_integer()) return Real(Rational(j.get<long>()));
    std::string op = j.at("op").get<std::string>();
    auto arg = [&](size_t i) { return from_json(j.at("args").at(i)); };
    Real r;
    if (op == "rat")
      r = Real(parse_rational(j.at("v").get<std::string>()));
    else if (op == "e")
      r = Real::e();
    else if (op == "enclosed")
      r = Real::enclosed(parse_rational(j.at("lo").get<std::string>()), parse_rational(j.at("hi").get<std::string>()));
    else if (op == "add")
      r = arg(0) + arg(1);
    else if (op == "sub")
      r = arg(0) - arg(1);
    else if (op == "mul")
      r = arg(0) * arg(1);
    else if (op == "div")
      r = arg(0) / arg(1);
    else if (op == "neg")
      r = -arg(0);
    else if (op == "pow")
      r = pow(arg(0), j.at("n").get<long>());
    else if (op == "rpow")
      r = pow(arg(0), arg(1));
    else if (op == "root")
      r = root(arg(0), j.at("n").get<unsigned long>());
    else if (op == "poly_root") {
      std::vector<Rational> cs;
      for (const auto& c : j.at("coeffs")) cs.push_back(parse_rational(c.get<std::string>()));
      r = Real::poly_root(std::move(cs), parse_rational(j.at("target").get<std::string>()));
    } else
      fail(ErrorCode::parse_error, "unknown real expression op '" + op + "'");
    if (j.contains("label")) r = r.with_label(j.at("label").get<std::string>());
    return r;
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorCode::parse_error, std::string("bad real expression: ") + ex.what());
  }
}

namespace {

std::optional<Tri> exact_compare(const Real& a, const Real& b, bool strict) {
  auto ma = a.monomial(), mb = b.monomial();
  if (!ma || !mb) return std::nullopt;
  if (ma->coeff == 0 || mb->coeff == 0 || ma->power == mb->power) {
    // compare a - b against 0 using signs; e^r > 0
    Rational lhs = ma->coeff, rhs = mb->coeff;
    if (ma->power == mb->power || (ma->coeff == 0 && mb->coeff == 0))
      return tri_of(strict ? lhs < rhs : lhs <= rhs);
    if (ma->coeff == 0) return tri_of(strict ? 0 < rhs : 0 <= rhs);
    return tri_of(strict ? lhs < 0 : lhs <= 0);
  }
  return std::nullopt;
}

Tri escalate(const Real& a, const Real& b, int bits, int max_bits, bool strict) {
  if (auto t = exact_compare(a, b, strict)) return *t;
  for (int p = bits;; p *= 2) {
    Interval x = a.eval(p), y = b.eval(p);
    Tri t = strict ? certainly_lt(x, y) : certainly_le(x, y);
    if (t != Tri::unknown || p >= max_bits) return t;
  }
}

}  // namespace

Tri certify_le(const Real& a, const Real& b, int bits, int max_bits) { return escalate(a, b, bits, max_bits, false); }
Tri certify_lt(const Real& a, const Real& b, int bits, int max_bits) { return escalate(a, b, bits, max_bits, true); }

Tri certify_le(const Interval& x, const Real& bound, int max_bits) {
  if (auto m = bound.exact()) return certainly_le(x, Interval::of(*m, std::max(x.bits(), 64)));
  for (int p = std::max(x.bits(), 64);; p *= 2) {
    Tri t = certainly_le(x, bound.eval(p));
    if (t != Tri::unknown || p >= max_bits) return t;
  }
}

BigInt certified_ceil(const Real& x, int bits, int max_bits) {
  if (auto q = x.exact()) return ceil_of(*q);
  for (int p = bits; p <= max_bits; p *= 2) {
    Interval v = x.eval(p);
    BigInt a = ceil_of(v.lower_rational()), b = ceil_of(v.upper_rational());
    if (a == b) return a;
  }
  fail(ErrorCode::indeterminate_at_precision, "cannot certify ceiling of " + x.str());
}

BigInt certified_floor(const Real& x, int bits, int max_bits) {
  if (auto q = x.exact()) return floor_of(*q);
  for (int p = bits; p <= max_bits; p *= 2) {
    Interval v = x.eval(p);
    BigInt a = floor_of(v.lower_rational()), b = floor_of(v.upper_rational());
    if (a == b) return a;
  }
  fail(ErrorCode::indeterminate_at_precision, "cannot certify floor of " + x.str());
}

}  // namespace expthresh
