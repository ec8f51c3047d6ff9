#include "clusterforge/rational_function.hpp"

#include <cctype>
#include <stdexcept>

#include "clusterforge/errors.hpp"

namespace clusterforge {

namespace {
Polynomial exact(const Polynomial& a, const Polynomial& b) {
  auto q = a.divide_exact(b);
  if (!q) {
    auto names = default_names("x", a.nvars());
    throw std::logic_error("inexact division of " + a.to_string(names) + " by " + b.to_string(names));
  }
  return std::move(*q);
}
}  // namespace

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(num_.nvars(), 1)) {}

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num.nvars() != den.nvars()) throw InvalidArgument("rational function ring mismatch");
  const std::size_t n = num.nvars();
  if (num.is_zero()) {
    num_ = Polynomial(n);
    den_ = Polynomial::constant(n, 1);
    return;
  }
  Polynomial g = gcd(num, den);
  if (g.is_one()) {
    num_ = num;
    den_ = den;
  } else {
    num_ = exact(num, g);
    den_ = exact(den, g);
  }
  if (sgn(den_.leading_coeff()) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

RationalFunction RationalFunction::constant(std::size_t nvars, const Integer& c) {
  return RationalFunction(Polynomial::constant(nvars, c));
}

RationalFunction RationalFunction::variable(std::size_t nvars, std::size_t var) {
  return RationalFunction(Polynomial::variable(nvars, var));
}

RationalFunction RationalFunction::laurent_monomial(std::size_t nvars, std::span<const Exponent> e,
                                                    const Integer& c) {
  std::vector<Exponent> pos(nvars, 0), neg(nvars, 0);
  for (std::size_t i = 0; i < nvars; ++i) (e[i] > 0 ? pos[i] : neg[i]) = e[i] > 0 ? e[i] : -e[i];
  RationalFunction r(nvars);
  r.num_ = Polynomial::monomial(nvars, pos, c);
  r.den_ = Polynomial::monomial(nvars, neg, 1);
  if (sgn(c) == 0) r.den_ = Polynomial::constant(nvars, 1);
  return r;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r(*this);
  r.num_ = -r.num_;
  return r;
}

namespace {

// Monomial-denominator shortcut: lcm of two monomials.
bool both_monomial(const Polynomial& a, const Polynomial& b) { return a.is_monomial() && b.is_monomial(); }

}  // namespace

RationalFunction RationalFunction::operator+(const RationalFunction& rhs) const {
  if (is_zero()) return rhs;
  if (rhs.is_zero()) return *this;
  if (den_ == rhs.den_) return RationalFunction(num_ + rhs.num_, den_);
  if (both_monomial(den_, rhs.den_)) {
    // Laurent case: bring both to the lcm monomial
    const std::size_t n = nvars();
    std::vector<Exponent> l(n), sa(n), sb(n);
    auto ea = den_.exponents(0), eb = rhs.den_.exponents(0);
    for (std::size_t i = 0; i < n; ++i) {
      l[i] = std::max(ea[i], eb[i]);
      sa[i] = l[i] - ea[i];
      sb[i] = l[i] - eb[i];
    }
    Integer ca = den_.coeff(0), cb = rhs.den_.coeff(0), cl = ilcm(ca, cb);
    Polynomial num = num_.shifted(sa) * Integer(cl / ca) + rhs.num_.shifted(sb) * Integer(cl / cb);
    return RationalFunction(num, Polynomial::monomial(n, l, cl));
  }
  // Henrici: with g = gcd(d1, d2), d1 = g e1, d2 = g e2
  Polynomial g = gcd(den_, rhs.den_);
  if (g.is_one()) return RationalFunction(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
  Polynomial e1 = exact(den_, g), e2 = exact(rhs.den_, g);
  Polynomial t = num_ * e2 + rhs.num_ * e1;
  if (t.is_zero()) return RationalFunction(nvars());
  Polynomial h = gcd(t, g);
  Polynomial num = exact(t, h);
  Polynomial den = exact(g, h) * e1 * e2;
  RationalFunction r(nvars());
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  if (sgn(r.den_.leading_coeff()) < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

RationalFunction RationalFunction::operator-(const RationalFunction& rhs) const { return *this + (-rhs); }

RationalFunction RationalFunction::operator*(const RationalFunction& rhs) const {
  if (is_zero() || rhs.is_zero()) return RationalFunction(nvars());
  // cross-cancel: gcd(n1, d2) and gcd(n2, d1)
  Polynomial g1 = gcd(num_, rhs.den_), g2 = gcd(rhs.num_, den_);
  Polynomial n1 = g1.is_one() ? num_ : exact(num_, g1);
  Polynomial d2 = g1.is_one() ? rhs.den_ : exact(rhs.den_, g1);
  Polynomial n2 = g2.is_one() ? rhs.num_ : exact(rhs.num_, g2);
  Polynomial d1 = g2.is_one() ? den_ : exact(den_, g2);
  RationalFunction r(nvars());
  r.num_ = n1 * n2;
  r.den_ = d1 * d2;
  if (sgn(r.den_.leading_coeff()) < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  RationalFunction r(nvars());
  r.num_ = den_;
  r.den_ = num_;
  if (sgn(r.den_.leading_coeff()) < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

RationalFunction RationalFunction::operator/(const RationalFunction& rhs) const { return *this * rhs.inverse(); }

RationalFunction RationalFunction::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  RationalFunction r(nvars());
  r.num_ = num_.pow(static_cast<unsigned>(e));
  r.den_ = den_.pow(static_cast<unsigned>(e));
  return r;
}

RationalFunction RationalFunction::substitute(std::span<const std::optional<Integer>> values) const {
  Polynomial d = den_.substitute(values);
  if (d.is_zero()) throw DivisionByZero("denominator vanishes at the given point");
  return RationalFunction(num_.substitute(values), d);
}

RationalFunction RationalFunction::embed(std::size_t nvars, std::span<const std::size_t> map) const {
  RationalFunction r(nvars);
  r.num_ = num_.embed(nvars, map);
  r.den_ = den_.embed(nvars, map);
  return r;
}

namespace {

bool needs_parens(const Polynomial& p) { return p.size() > 1 || (p.size() == 1 && sgn(p.coeff(0)) < 0 && !p.is_constant()); }

bool is_product(const Polynomial& p) {
  if (p.size() != 1) return false;
  int factors = p.coeff(0) != 1 ? 1 : 0;
  for (auto e : p.exponents(0)) factors += e != 0;
  return factors > 1;
}

}  // namespace

std::string RationalFunction::to_string(std::span<const std::string> names) const {
  std::string n = num_.to_string(names);
  if (den_.is_one()) return n;
  std::string d = den_.to_string(names);
  if (num_.size() > 1) n = "(" + n + ")";
  if (needs_parens(den_) || is_product(den_)) d = "(" + d + ")";
  return n + "/" + d;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(const std::string& s, std::span<const std::string> names) : s_(s), names_(names) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalFunction expr() {
    RationalFunction r = term();
    while (true) {
      if (eat('+')) r = r + term();
      else if (eat('-')) r = r - term();
      else return r;
    }
  }

  RationalFunction term() {
    RationalFunction r = unary();
    while (true) {
      if (eat('*')) r = r * unary();
      else if (eat('/')) {
        RationalFunction d = unary();
        if (d.is_zero()) fail("division by zero");
        r = r / d;
      } else {
        return r;
      }
    }
  }

  RationalFunction unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = atom();
    if (eat('^')) {
      skip();
      bool neg = false;
      if (eat('-')) neg = true;
      else if (eat('(')) {
        bool n2 = eat('-');
        long e = integer();
        if (!eat(')')) fail("expected ')'");
        return raise(base, n2 ? -e : e);
      }
      long e = integer();
      return raise(base, neg ? -e : e);
    }
    return base;
  }

  RationalFunction raise(const RationalFunction& b, long e) {
    if (e < 0 && b.is_zero()) fail("zero to a negative power");
    return b.pow(e);
  }

  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (pos_ - start > 6) fail("exponent too large");
    return std::stol(s_.substr(start, pos_ - start));
  }

  RationalFunction atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RationalFunction::constant(names_.size(), Integer(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == id) return RationalFunction::variable(names_.size(), i);
      pos_ = start;
      fail("unknown variable '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational_function(const std::string& text, std::span<const std::string> names) {
  return Parser(text, names).parse();
}

std::vector<std::string> default_names(const std::string& prefix, std::size_t n, std::size_t first) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(first + i));
  return out;
}

}  // namespace clusterforge
