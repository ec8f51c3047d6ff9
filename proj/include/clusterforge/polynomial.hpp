#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clusterforge/integer.hpp"

namespace clusterforge {

using Exponent = std::int32_t;

// Sparse multivariate polynomial over the integers in a fixed number of
// variables.  Terms are kept sorted strictly descending in graded
// lexicographic order (total degree first, then lex with variable 0 most
// significant); zero coefficients are never stored.
class Polynomial {
 public:
  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Integer& c);
  static Polynomial variable(std::size_t nvars, std::size_t var, Exponent power = 1);
  static Polynomial monomial(std::size_t nvars, std::span<const Exponent> exps, const Integer& c);
  // Builds from arbitrary (unsorted, possibly repeated) terms.
  static Polynomial from_terms(std::size_t nvars, std::vector<Exponent> exps, std::vector<Integer> coeffs);

  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  bool is_monomial() const { return coeffs_.size() == 1; }

  std::span<const Exponent> exponents(std::size_t term) const {
    return {exps_.data() + term * nvars_, nvars_};
  }
  const Integer& coeff(std::size_t term) const { return coeffs_[term]; }
  Exponent term_degree(std::size_t term) const { return degs_[term]; }

  const Integer& leading_coeff() const { return coeffs_.front(); }
  Integer constant_term() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator*(const Integer& c) const;
  Polynomial& operator+=(const Polynomial& rhs) { return *this = *this + rhs; }
  Polynomial& operator-=(const Polynomial& rhs) { return *this = *this - rhs; }
  Polynomial& operator*=(const Polynomial& rhs) { return *this = *this * rhs; }
  Polynomial pow(unsigned e) const;

  // Multiplies by the monomial x^shift (shift may be negative as long as
  // every exponent stays non-negative).
  Polynomial shifted(std::span<const Exponent> shift) const;
  Polynomial divexact_integer(const Integer& c) const;

  // Quotient if `divisor` divides this polynomial exactly, nullopt otherwise.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

  Integer content() const;
  Polynomial primitive_part() const;
  // Per-variable minimum exponent over all terms (zero vector for 0).
  std::vector<Exponent> min_exponents() const;
  std::vector<Exponent> max_exponents() const;
  Exponent degree_in(std::size_t var) const;
  Exponent total_degree() const;
  bool uses_variable(std::size_t var) const;

  // Substitutes integer values for selected variables (nullopt keeps).
  Polynomial substitute(std::span<const std::optional<Integer>> values) const;
  // Keeps variables `vars` (in order) as the variables of the result; all
  // other variables must not occur.
  Polynomial project(std::span<const std::size_t> vars) const;
  // Re-embeds into a ring of `nvars` variables, variable i going to map[i].
  Polynomial embed(std::size_t nvars, std::span<const std::size_t> map) const;

  // Univariate view in `var`: coefficient list indexed by degree.
  std::vector<Polynomial> to_univariate(std::size_t var) const;
  static Polynomial from_univariate(std::size_t nvars, std::size_t var, const std::vector<Polynomial>& coeffs);

  bool operator==(const Polynomial& rhs) const;
  bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }
  std::size_t hash() const;

  // Prints terms in ascending graded order, e.g. "1+x2" or "-2*x1^2*x3".
  std::string to_string(std::span<const std::string> names) const;

 private:
  static Polynomial merge(const Polynomial& a, const Polynomial& b, int sign_b);
  void push_term(std::span<const Exponent> e, Integer c);
  void push_term_moved(const Exponent* e, Exponent deg, Integer&& c);

  std::size_t nvars_;
  std::vector<Exponent> exps_;
  std::vector<Exponent> degs_;
  std::vector<Integer> coeffs_;
};

// Graded-lex comparison of two exponent vectors with known total degrees:
// negative, zero or positive.
int compare_exponents(const Exponent* a, Exponent deg_a, const Exponent* b, Exponent deg_b, std::size_t n);

// Greatest common divisor with positive leading coefficient (gcd(0,0)=0).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace clusterforge

template <>
struct std::hash<clusterforge::Polynomial> {
  std::size_t operator()(const clusterforge::Polynomial& p) const { return p.hash(); }
};
