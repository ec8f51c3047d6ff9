#include "clusterforge/quantum.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "clusterforge/errors.hpp"
#include "clusterforge/quiver.hpp"
#include "clusterforge/tropical.hpp"

namespace clusterforge {

namespace {

const std::vector<std::string>& vname() {
  static const std::vector<std::string> n{"v"};
  return n;
}

Integer value_at_one(const Polynomial& p) {
  Integer s = 0;
  for (std::size_t t = 0; t < p.size(); ++t) s += p.coeff(t);
  return s;
}

long to_l(const Integer& z) {
  if (!z.fits_slong_p()) throw InvalidArgument("integer too large");
  return z.get_si();
}

Exponents column_of(const IntMatrix& m, std::size_t j) {
  Exponents e(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) e[i] = to_l(m(i, j));
  return e;
}

}  // namespace

// ---------------------------------------------------------------- QCoefficient

QCoefficient::QCoefficient(RationalFunction f) : f_(std::move(f)) {
  if (f_.nvars() != 1) throw InvalidArgument("q-coefficient must be a function of v alone");
}

QCoefficient QCoefficient::vpow(long e) {
  Exponent x = static_cast<Exponent>(e);
  return QCoefficient(RationalFunction::laurent_monomial(1, std::span<const Exponent>(&x, 1)));
}

QCoefficient QCoefficient::parse(const std::string& text) { return QCoefficient(parse_rational_function(text, vname())); }

QCoefficient QCoefficient::shifted(long e) const {
  if (e == 0 || is_zero()) return *this;
  return QCoefficient(f_ * vpow(e).f_);
}

Rational QCoefficient::at_one() const {
  Integer d = value_at_one(f_.denominator());
  if (sgn(d) == 0) throw PoleAtOne("coefficient " + to_string() + " has a pole at v = 1");
  Rational r(value_at_one(f_.numerator()), d);
  r.canonicalize();
  return r;
}

std::string QCoefficient::to_string() const { return f_.to_string(vname()); }

// ---------------------------------------------------------------- torus

long twist(const IntMatrix& lambda, const Exponents& a, const Exponents& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j]) s += a[i] * to_l(lambda(i, j)) * b[j];
  }
  return s;
}

TorusElement::TorusElement(IntMatrix lambda) : lambda_(std::move(lambda)) {}

TorusElement TorusElement::monomial(const IntMatrix& lambda, Exponents a, QCoefficient c) {
  TorusElement t(lambda);
  if (a.size() != lambda.rows()) throw InvalidArgument("exponent length differs from the torus rank");
  t.add_term(a, c);
  return t;
}

TorusElement TorusElement::constant(const IntMatrix& lambda, QCoefficient c) {
  return monomial(lambda, Exponents(lambda.rows(), 0), std::move(c));
}

void TorusElement::add_term(const Exponents& a, const QCoefficient& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(a);
  if (it == terms_.end()) {
    terms_.emplace(a, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TorusElement TorusElement::operator+(const TorusElement& r) const {
  TorusElement t = *this;
  for (const auto& [a, c] : r.terms_) t.add_term(a, c);
  return t;
}

TorusElement TorusElement::operator-(const TorusElement& r) const {
  TorusElement t = *this;
  for (const auto& [a, c] : r.terms_) t.add_term(a, -c);
  return t;
}

TorusElement TorusElement::operator*(const TorusElement& r) const {
  TorusElement t(lambda_);
  for (const auto& [a, c] : terms_)
    for (const auto& [b, d] : r.terms_) {
      Exponents s(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      t.add_term(s, (c * d).shifted(twist(lambda_, a, b)));
    }
  return t;
}

TorusElement TorusElement::operator*(const QCoefficient& k) const {
  TorusElement t(lambda_);
  for (const auto& [a, c] : terms_) t.add_term(a, c * k);
  return t;
}

TorusElement TorusElement::left_divide(const TorusElement& r) const {
  if (is_zero()) throw DivisionByZero("division by the zero torus element");
  TorusElement z(lambda_), rem = r;
  if (r.is_zero()) return z;
  const std::size_t m = rank();
  // per-coordinate box the quotient exponents must lie in
  Exponents lo(m), hi(m);
  for (std::size_t i = 0; i < m; ++i) {
    long rmin = LONG_MAX, rmax = LONG_MIN, dmin = LONG_MAX, dmax = LONG_MIN;
    for (const auto& [a, c] : r.terms_) rmin = std::min(rmin, a[i]), rmax = std::max(rmax, a[i]);
    for (const auto& [a, c] : terms_) dmin = std::min(dmin, a[i]), dmax = std::max(dmax, a[i]);
    lo[i] = rmin - dmin;
    hi[i] = rmax - dmax;
  }
  const auto& [dl, dc] = *terms_.rbegin();
  while (!rem.is_zero()) {
    const auto& [a, c] = *rem.terms_.rbegin();
    Exponents g(m);
    for (std::size_t i = 0; i < m; ++i) {
      g[i] = a[i] - dl[i];
      if (g[i] < lo[i] || g[i] > hi[i]) throw NonLaurent("quotient leaves the quantum torus");
    }
    QCoefficient q = (c / dc).shifted(-twist(lambda_, dl, g));
    TorusElement step = monomial(lambda_, g, q);
    z.add_term(g, q);
    rem = rem - (*this) * step;
  }
  return z;
}

RationalFunction TorusElement::specialize() const {
  const std::size_t m = rank();
  if (is_zero()) return RationalFunction(m);
  Exponents low(m, LONG_MAX);
  Integer den = 1;
  std::vector<Rational> vals;
  for (const auto& [a, c] : terms_) {
    for (std::size_t i = 0; i < m; ++i) low[i] = std::min(low[i], a[i]);
    vals.push_back(c.at_one());
    den = lcm(den, Integer(vals.back().get_den()));
  }
  std::vector<Exponent> ex;
  std::vector<Integer> co;
  std::size_t t = 0;
  for (const auto& [a, c] : terms_) {
    for (std::size_t i = 0; i < m; ++i) ex.push_back(static_cast<Exponent>(a[i] - low[i]));
    Rational v = vals[t++] * den;
    co.push_back(v.get_num());
  }
  std::vector<Exponent> sh(m);
  for (std::size_t i = 0; i < m; ++i) sh[i] = static_cast<Exponent>(low[i]);
  Polynomial num = Polynomial::from_terms(m, std::move(ex), std::move(co));
  std::vector<Exponent> z0(m, 0);
  Polynomial dm = Polynomial::monomial(m, z0, den);
  RationalFunction r(num, dm);
  return r * RationalFunction::laurent_monomial(m, sh);
}

std::string TorusElement::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*x^(";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------- compatible pairs

CompatiblePair CompatiblePair::make(IntMatrix btilde, IntMatrix lambda) {
  const std::size_t m = btilde.rows(), n = btilde.cols();
  if (lambda.rows() != m || lambda.cols() != m) throw IncompatibleInput("Lambda must be m x m");
  if (!lambda.is_skew_symmetric()) throw IncompatibleInput("Lambda must be skew-symmetric");
  IntMatrix prod = btilde.transpose() * lambda;
  CompatiblePair p{std::move(btilde), std::move(lambda), {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      bool ok = i == j ? sgn(prod(i, j)) > 0 : sgn(prod(i, j)) == 0;
      if (!ok) throw IncompatibleInput("B~^T Lambda = " + prod.to_string() + " is not of the form [D 0]");
    }
  for (std::size_t i = 0; i < n; ++i) p.d.push_back(prod(i, i));
  return p;
}

CompatiblePair CompatiblePair::principal_framing(const IntMatrix& b) {
  if (!b.is_skew_symmetric()) throw PreconditionFailed("principal framing needs a skew-symmetric B");
  const std::size_t n = b.rows();
  IntMatrix bt = principal_extension(Quiver(b)).matrix();
  IntMatrix l(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    l(i, n + i) = -1;
    l(n + i, i) = 1;
    for (std::size_t j = 0; j < n; ++j) l(n + i, n + j) = b(j, i);
  }
  return make(bt, l);
}

bool CompatiblePair::unital() const {
  return std::all_of(d.begin(), d.end(), [](const Integer& z) { return z == 1; });
}

CompatiblePair mutate_compatible_pair(const CompatiblePair& p, std::size_t k) {
  if (k >= p.n()) throw VertexOutOfRange("vertex " + std::to_string(k + 1) + " outside 1.." + std::to_string(p.n()));
  auto branch = [&](int eps) {
    auto e = elementary_pair(p.btilde, k, eps).e;
    auto f = elementary_pair(p.btilde.top(p.n()), k, eps).f;
    return std::make_pair(e * p.btilde * f, e.transpose() * p.lambda * e);
  };
  auto plus = branch(1), minus = branch(-1);
  if (plus != minus) throw std::logic_error("compatible-pair mutation depends on the sign");
  if (plus.first != mutate_matrix(p.btilde, k)) throw std::logic_error("E B F differs from matrix mutation");
  CompatiblePair r = CompatiblePair::make(plus.first, plus.second);
  if (r.d != p.d) throw std::logic_error("compatible-pair mutation changed D");
  return r;
}

QuantumSeed QuantumSeed::make_initial(const CompatiblePair& p) {
  QuantumSeed s{p, p, {}};
  for (std::size_t i = 0; i < p.m(); ++i) {
    Exponents e(p.m(), 0);
    e[i] = 1;
    s.x.push_back(TorusElement::monomial(p.lambda, e));
  }
  return s;
}

QuantumSeed QuantumSeed::mutate(std::size_t k) const {
  const std::size_t m = current.m();
  if (k >= current.n()) throw VertexOutOfRange("vertex " + std::to_string(k + 1) + " outside 1.." + std::to_string(current.n()));
  const IntMatrix& b = current.btilde;
  const IntMatrix& lt = current.lambda;
  TorusElement r(initial.lambda);
  for (int eps : {1, -1}) {
    // exponent E_eps e_k = gamma - e_k with gamma_k = 0
    Exponents g(m, 0);
    for (std::size_t i = 0; i < m; ++i)
      if (i != k) g[i] = to_l(positive_part(Integer(-eps * b(i, k))));
    long shift = 0;
    for (std::size_t j = 0; j < m; ++j) shift += g[j] * to_l(lt(k, j));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) shift -= g[i] * g[j] * to_l(lt(i, j));
    TorusElement term = TorusElement::constant(initial.lambda, QCoefficient::vpow(shift));
    for (std::size_t i = 0; i < m; ++i)
      for (long p = 0; p < g[i]; ++p) term = term * x[i];
    r = r + term;
  }
  QuantumSeed s = *this;
  s.x[k] = x[k].left_divide(r);
  s.current = mutate_compatible_pair(current, k);
  return s;
}

QuantumSeed QuantumSeed::at(const std::vector<std::size_t>& seq) const {
  QuantumSeed s = *this;
  for (auto k : seq) s = s.mutate(k);
  return s;
}

// ---------------------------------------------------------------- series

TruncatedSeries::TruncatedSeries(IntMatrix b, std::size_t order) : b_(std::move(b)), order_(order) {}

TruncatedSeries TruncatedSeries::one(const IntMatrix& b, std::size_t order) {
  TruncatedSeries s(b, order);
  s.add_term(Exponents(b.rows(), 0), 1);
  return s;
}

namespace {
long total(const Exponents& a) {
  long s = 0;
  for (auto x : a) s += x;
  return s;
}
}  // namespace

QCoefficient TruncatedSeries::coeff(const Exponents& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? QCoefficient() : it->second;
}

void TruncatedSeries::add_term(const Exponents& a, const QCoefficient& c) {
  if (c.is_zero() || total(a) > static_cast<long>(order_)) return;
  auto it = terms_.find(a);
  if (it == terms_.end()) {
    terms_.emplace(a, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& r) const {
  TruncatedSeries t(b_, std::min(order_, r.order_));
  const long cap = static_cast<long>(t.order_);
  for (const auto& [a, c] : terms_) {
    long da = total(a);
    for (const auto& [b, d] : r.terms_) {
      if (da + total(b) > cap) continue;
      Exponents s(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      t.add_term(s, (c * d).shifted(twist(b_, a, b)));
    }
  }
  return t;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& r) const {
  TruncatedSeries t = *this;
  t.order_ = std::min(order_, r.order_);
  for (const auto& [a, c] : r.terms_) t.add_term(a, c);
  return t;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& r) const {
  TruncatedSeries t = *this;
  t.order_ = std::min(order_, r.order_);
  for (const auto& [a, c] : r.terms_) t.add_term(a, -c);
  return t;
}

TruncatedSeries TruncatedSeries::inverse() const {
  Exponents zero(b_.rows(), 0);
  QCoefficient c0 = coeff(zero);
  if (c0.is_zero()) throw DivisionByZero("series without constant term is not invertible");
  // S = c0 (1 + T): S^-1 = (1 - T + T^2 - ...) / c0
  QCoefficient inv = QCoefficient(1) / c0;
  TruncatedSeries t(b_, order_);
  for (const auto& [a, c] : terms_)
    if (a != zero) t.add_term(a, c * inv);
  TruncatedSeries acc = one(b_, order_), power = acc;
  for (std::size_t j = 1; j <= order_; ++j) {
    power = power * t;
    if (power.terms_.empty()) break;
    acc = j % 2 ? acc - power : acc + power;
  }
  TruncatedSeries out(b_, order_);
  for (const auto& [a, c] : acc.terms_) out.add_term(a, c * inv);
  return out;
}

TruncatedSeries TruncatedSeries::scaled_q(long c) const {
  TruncatedSeries t(b_, order_);
  for (const auto& [a, k] : terms_) t.add_term(a, k.shifted(2 * c * total(a)));
  return t;
}

bool TruncatedSeries::operator==(const TruncatedSeries& r) const {
  return order_ == r.order_ && b_ == r.b_ && terms_ == r.terms_;
}

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*y^(";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ")";
  }
  return os.str();
}

bool TruncatedSeries::is_one() const { return *this == one(b_, order_); }

TruncatedSeries qdilog(const IntMatrix& b, const Exponents& alpha, std::size_t order) {
  if (alpha.size() != b.rows()) throw InvalidArgument("exponent length differs from the rank");
  long deg = total(alpha);
  if (deg <= 0 || std::any_of(alpha.begin(), alpha.end(), [](long x) { return x < 0; }))
    throw InvalidArgument("quantum dilogarithm needs a nonzero exponent with nonnegative entries");
  TruncatedSeries s = TruncatedSeries::one(b, order);
  Polynomial den = Polynomial::constant(1, 1);
  for (long k = 1; k * deg <= static_cast<long>(order); ++k) {
    den = den * (Polynomial::variable(1, 0, static_cast<Exponent>(2 * k)) - Polynomial::constant(1, 1));
    QCoefficient c(RationalFunction(Polynomial::variable(1, 0, static_cast<Exponent>(k)), den));
    Exponents a(alpha);
    for (auto& x : a) x *= k;
    s.add_term(a, c);
  }
  return s;
}

std::vector<DilogStep> dilog_steps(const IntMatrix& b, const std::vector<std::size_t>& seq) {
  TropicalPath p = tropical_path(Quiver(b), seq);
  std::vector<DilogStep> out;
  for (std::size_t s = 0; s < seq.size(); ++s) out.push_back({seq[s], column_of(p.c[s], seq[s]), p.signs[s]});
  return out;
}

TruncatedSeries dilog_product(const IntMatrix& b, const std::vector<std::size_t>& seq, std::size_t order) {
  if (!b.is_skew_symmetric()) throw PreconditionFailed("dilogarithm products need a skew-symmetric B");
  TruncatedSeries acc = TruncatedSeries::one(b, order);
  for (const auto& st : dilog_steps(b, seq)) {
    Exponents a = st.beta;
    for (auto& x : a) x *= st.sign;
    TruncatedSeries e = qdilog(b, a, order);
    acc = (st.sign > 0 ? e : e.inverse()) * acc;
  }
  return acc;
}

IdentityReport verify_identity(const IntMatrix& b, const std::vector<std::size_t>& i,
                               const std::vector<std::size_t>& i2, std::size_t order) {
  Quiver q(b);
  IntMatrix c1 = c_matrix(q, i), c2 = c_matrix(q, i2);
  auto inv = c1.inverse();
  if (!inv) throw PreconditionFailed("c-matrix is not invertible");
  IntMatrix perm = c2 * *inv;
  if (!perm.is_permutation())
    throw PreconditionFailed("no permutation P with P C(i) = C(i'): C(i) = " + c1.to_string() + ", C(i') = " + c2.to_string());
  IdentityReport r;
  r.permutation = perm;
  r.lhs = dilog_product(b, i, order);
  r.rhs = dilog_product(b, i2, order);
  r.equal = r.lhs == r.rhs;
  return r;
}

std::optional<DtResult> combinatorial_dt(const IntMatrix& b, std::size_t order, std::size_t search_depth) {
  if (!b.is_skew_symmetric()) throw PreconditionFailed("combinatorial DT invariants need a skew-symmetric B");
  const std::size_t n = b.rows();
  if (n == 0) return std::nullopt;
  std::vector<std::size_t> path;
  std::function<bool(const IntMatrix&, std::size_t)> dfs = [&](const IntMatrix& bpr, std::size_t left) {
    if (left == 0) return (-bpr.bottom_from(n)).is_permutation();
    for (std::size_t k = 0; k < n; ++k) {
      if (!path.empty() && path.back() == k) continue;
      path.push_back(k);
      if (dfs(mutate_matrix(bpr, k), left - 1)) return true;
      path.pop_back();
    }
    return false;
  };
  IntMatrix start = principal_extension(Quiver(b)).matrix();
  for (std::size_t d = 1; d <= search_depth; ++d) {
    path.clear();
    if (dfs(start, d)) return DtResult{path, dilog_product(b, path, order)};
  }
  return std::nullopt;
}

AdjointReport adjoint_check(const CompatiblePair& p, std::size_t k, std::size_t order) {
  if (!p.unital()) throw PreconditionFailed("adjoint check needs a unitally compatible pair");
  if (k >= p.n()) throw VertexOutOfRange("vertex " + std::to_string(k + 1) + " outside 1.." + std::to_string(p.n()));
  AdjointReport rep;
  const std::size_t m = p.m();
  QuantumSeed mutated = QuantumSeed::make_initial(p).mutate(k);
  IntMatrix e = elementary_pair(p.btilde, k, 1).e;
  Exponents bk = column_of(p.btilde, k);
  IntMatrix one(1, 1);
  TruncatedSeries ey = qdilog(one, {1}, order);
  TruncatedSeries eyinv = ey.inverse();
  for (std::size_t j = 0; j < m; ++j) {
    Exponents g = column_of(e, j);
    // x^g y = q^c y x^g, so E(y)^-1 x^g E(y) = E(y)^-1 E(q^c y) x^g
    long c = twist(p.lambda, g, bk);
    TruncatedSeries s = eyinv * ey.scaled_q(c);
    TorusElement rhs(p.lambda);
    for (const auto& [a, coef] : s.terms()) {
      Exponents yr(m);
      for (std::size_t i = 0; i < m; ++i) yr[i] = a[0] * bk[i];
      TorusElement mono = TorusElement::monomial(p.lambda, yr) * TorusElement::monomial(p.lambda, g);
      rhs = rhs + mono * coef;
    }
    if (!(rhs == mutated.x[j])) {
      rep.ok = false;
      rep.failures.push_back("x" + std::to_string(j + 1) + ": mutation gives " + mutated.x[j].to_string() +
                             ", separation gives " + rhs.to_string());
    }
  }
  return rep;
}

}  // namespace clusterforge
