#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clusterforge/matrix.hpp"
#include "clusterforge/rational_function.hpp"

namespace clusterforge {

// Element of Q(v), v = q^{1/2}: a reduced fraction of integer polynomials.
class QCoefficient {
 public:
  QCoefficient() : f_(1) {}
  QCoefficient(long c) : f_(RationalFunction::constant(1, c)) {}  // NOLINT implicit
  explicit QCoefficient(const Integer& c) : f_(RationalFunction::constant(1, c)) {}
  explicit QCoefficient(RationalFunction f);

  // v^e
  static QCoefficient vpow(long e);
  // Parses the v-rational grammar, e.g. "v/(v^2-1)".
  static QCoefficient parse(const std::string& text);

  const RationalFunction& value() const { return f_; }
  bool is_zero() const { return f_.is_zero(); }
  bool is_one() const { return f_.is_one(); }

  QCoefficient operator-() const { return QCoefficient(-f_); }
  QCoefficient operator+(const QCoefficient& r) const { return QCoefficient(f_ + r.f_); }
  QCoefficient operator-(const QCoefficient& r) const { return QCoefficient(f_ - r.f_); }
  QCoefficient operator*(const QCoefficient& r) const { return QCoefficient(f_ * r.f_); }
  QCoefficient operator/(const QCoefficient& r) const { return QCoefficient(f_ / r.f_); }
  QCoefficient& operator+=(const QCoefficient& r) { return *this = *this + r; }
  QCoefficient& operator-=(const QCoefficient& r) { return *this = *this - r; }
  QCoefficient& operator*=(const QCoefficient& r) { return *this = *this * r; }
  // Multiplication by v^e without a gcd.
  QCoefficient shifted(long e) const;

  // Value at v = 1; PoleAtOne if the denominator vanishes there.
  Rational at_one() const;

  bool operator==(const QCoefficient& r) const { return f_ == r.f_; }
  std::string to_string() const;

 private:
  RationalFunction f_;
};

using Exponents = std::vector<long>;

// Element of the quantum torus T_Lambda: x^a x^b = v^{a^T Lambda b} x^{a+b}.
class TorusElement {
 public:
  TorusElement() = default;
  explicit TorusElement(IntMatrix lambda);

  static TorusElement monomial(const IntMatrix& lambda, Exponents a, QCoefficient c = 1);
  static TorusElement constant(const IntMatrix& lambda, QCoefficient c);

  std::size_t rank() const { return lambda_.rows(); }
  const IntMatrix& lambda() const { return lambda_; }
  const std::map<Exponents, QCoefficient>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  TorusElement operator+(const TorusElement& r) const;
  TorusElement operator-(const TorusElement& r) const;
  TorusElement operator*(const TorusElement& r) const;
  TorusElement operator*(const QCoefficient& c) const;
  bool operator==(const TorusElement& r) const { return lambda_ == r.lambda_ && terms_ == r.terms_; }

  // Z with (*this) * Z = r.  Throws NonLaurent if no such torus element.
  TorusElement left_divide(const TorusElement& r) const;

  // v -> 1: a commutative Laurent polynomial in x1..xm.
  RationalFunction specialize() const;

  std::string to_string() const;

  void add_term(const Exponents& a, const QCoefficient& c);

 private:
  IntMatrix lambda_;
  std::map<Exponents, QCoefficient> terms_;
};

// v^{a^T L b}
long twist(const IntMatrix& lambda, const Exponents& a, const Exponents& b);

struct CompatiblePair {
  IntMatrix btilde;  // m x n
  IntMatrix lambda;  // m x m skew-symmetric
  std::vector<Integer> d;

  // Validates B~^T Lambda = [D 0]; throws IncompatibleInput otherwise.
  static CompatiblePair make(IntMatrix btilde, IntMatrix lambda);
  // B_pr = [B; I] with Lambda = [[0, -I], [I, B^T]] (B skew-symmetric).
  static CompatiblePair principal_framing(const IntMatrix& b);

  std::size_t m() const { return btilde.rows(); }
  std::size_t n() const { return btilde.cols(); }
  bool unital() const;
  bool operator==(const CompatiblePair&) const = default;
};

// (E B~ F, E^T Lambda E); both signs are computed and must agree.
CompatiblePair mutate_compatible_pair(const CompatiblePair& p, std::size_t k);

// Current compatible pair and the cluster x_1(t)..x_m(t) expanded in the
// initial torus (frozen entries stay initial).
struct QuantumSeed {
  CompatiblePair initial, current;
  std::vector<TorusElement> x;

  static QuantumSeed make_initial(const CompatiblePair& p);
  QuantumSeed mutate(std::size_t k) const;
  QuantumSeed at(const std::vector<std::size_t>& seq) const;
};

// Truncated series in y_1..y_n with y^a y^b = v^{a^T B b} y^{a+b}; terms of
// total degree > N are dropped.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(IntMatrix b, std::size_t order);

  static TruncatedSeries one(const IntMatrix& b, std::size_t order);

  const IntMatrix& form() const { return b_; }
  std::size_t order() const { return order_; }
  const std::map<Exponents, QCoefficient>& terms() const { return terms_; }
  QCoefficient coeff(const Exponents& a) const;
  void add_term(const Exponents& a, const QCoefficient& c);

  TruncatedSeries operator*(const TruncatedSeries& r) const;
  TruncatedSeries operator+(const TruncatedSeries& r) const;
  TruncatedSeries operator-(const TruncatedSeries& r) const;
  // Needs a nonzero constant term.
  TruncatedSeries inverse() const;
  // y -> q^c y: the term y^a picks up v^{2c|a|}.
  TruncatedSeries scaled_q(long c) const;

  bool operator==(const TruncatedSeries& r) const;
  bool is_one() const;
  std::string to_string() const;

 private:
  IntMatrix b_;
  std::size_t order_ = 0;
  std::map<Exponents, QCoefficient> terms_;
};

// E(y^alpha) = sum_k v^k / ((v^{2k}-1)...(v^2-1)) y^{k alpha}; alpha >= 0.
TruncatedSeries qdilog(const IntMatrix& b, const Exponents& alpha, std::size_t order);

struct DilogStep {
  std::size_t vertex;
  Exponents beta;  // c-vector C(t_{s-1}) e_{i_s}
  int sign;
};

// beta_s and eps_s along the sequence.
std::vector<DilogStep> dilog_steps(const IntMatrix& b, const std::vector<std::size_t>& seq);

// E(eps_N beta_N)^{eps_N} ... E(eps_1 beta_1)^{eps_1}, B skew-symmetric.
TruncatedSeries dilog_product(const IntMatrix& b, const std::vector<std::size_t>& seq, std::size_t order);

struct IdentityReport {
  bool equal = false;
  IntMatrix permutation;  // P with P C(i) = C(i')
  TruncatedSeries lhs, rhs;
};

// Checks E(i) = E(i') given P C(end of i) = C(end of i'); PreconditionFailed otherwise.
IdentityReport verify_identity(const IntMatrix& b, const std::vector<std::size_t>& i,
                               const std::vector<std::size_t>& i2, std::size_t order);

struct DtResult {
  std::vector<std::size_t> sequence;
  TruncatedSeries series;
};

// Iterative deepening for a sequence with -C(t) a permutation matrix.
std::optional<DtResult> combinatorial_dt(const IntMatrix& b, std::size_t order, std::size_t search_depth);

struct AdjointReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// mu_k^# x_j = Ad'(E(y_k)) phi_{k,+}(x_j) for every j, expanded to order N in y_k.
AdjointReport adjoint_check(const CompatiblePair& p, std::size_t k, std::size_t order);

}  // namespace clusterforge
