#pragma once

#include <string>
#include <vector>

#include "clusterforge/polynomial.hpp"

namespace clusterforge {

// Quotient num/den of integer polynomials, kept reduced (gcd 1) with the
// denominator's leading coefficient positive.
class RationalFunction {
 public:
  explicit RationalFunction(std::size_t nvars = 0) : num_(nvars), den_(Polynomial::constant(nvars, 1)) {}
  RationalFunction(Polynomial num);  // NOLINT: polynomials embed implicitly
  // Reduces num/den.
  RationalFunction(const Polynomial& num, const Polynomial& den);

  static RationalFunction constant(std::size_t nvars, const Integer& c);
  static RationalFunction variable(std::size_t nvars, std::size_t var);
  // x^e for an exponent vector with arbitrary signs, times c.
  static RationalFunction laurent_monomial(std::size_t nvars, std::span<const Exponent> e, const Integer& c = 1);

  std::size_t nvars() const { return num_.nvars(); }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  // Denominator is a single monomial.
  bool is_laurent() const { return den_.is_monomial(); }

  RationalFunction operator-() const;
  RationalFunction operator+(const RationalFunction& rhs) const;
  RationalFunction operator-(const RationalFunction& rhs) const;
  RationalFunction operator*(const RationalFunction& rhs) const;
  RationalFunction operator/(const RationalFunction& rhs) const;
  RationalFunction& operator+=(const RationalFunction& rhs) { return *this = *this + rhs; }
  RationalFunction& operator*=(const RationalFunction& rhs) { return *this = *this * rhs; }
  RationalFunction inverse() const;
  RationalFunction pow(long e) const;

  // Substitutes integer values for selected variables.  Throws
  // DivisionByZero when the denominator vanishes.
  RationalFunction substitute(std::span<const std::optional<Integer>> values) const;
  RationalFunction embed(std::size_t nvars, std::span<const std::size_t> map) const;

  bool operator==(const RationalFunction& rhs) const { return num_ == rhs.num_ && den_ == rhs.den_; }
  bool operator!=(const RationalFunction& rhs) const { return !(*this == rhs); }
  std::size_t hash() const { return num_.hash() * 31u + den_.hash(); }

  // "(1+x2)/x1", "x1", "(1+x1+x2)/(x1*x2)".
  std::string to_string(std::span<const std::string> names) const;

 private:
  Polynomial num_, den_;
};

// Parses a rational expression in the given variables: integers,
// identifiers, + - * / ^ (integer exponents, possibly negative) and
// parentheses.
RationalFunction parse_rational_function(const std::string& text, std::span<const std::string> names);

// Default variable names prefix1..prefixN.
std::vector<std::string> default_names(const std::string& prefix, std::size_t n, std::size_t first = 1);

}  // namespace clusterforge

template <>
struct std::hash<clusterforge::RationalFunction> {
  std::size_t operator()(const clusterforge::RationalFunction& f) const { return f.hash(); }
};
