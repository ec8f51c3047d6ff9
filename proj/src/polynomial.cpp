#include "clusterforge/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "clusterforge/errors.hpp"

namespace clusterforge {

int compare_exponents(const Exponent* a, Exponent deg_a, const Exponent* b, Exponent deg_b, std::size_t n) {
  if (deg_a != deg_b) return deg_a < deg_b ? -1 : 1;
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

namespace {

Exponent sum_of(const Exponent* e, std::size_t n) {
  Exponent s = 0;
  for (std::size_t i = 0; i < n; ++i) s += e[i];
  return s;
}

}  // namespace

void Polynomial::push_term(std::span<const Exponent> e, Integer c) {
  exps_.insert(exps_.end(), e.begin(), e.end());
  degs_.push_back(sum_of(e.data(), nvars_));
  coeffs_.push_back(std::move(c));
}

void Polynomial::push_term_moved(const Exponent* e, Exponent deg, Integer&& c) {
  exps_.insert(exps_.end(), e, e + nvars_);
  degs_.push_back(deg);
  coeffs_.push_back(std::move(c));
}

Polynomial Polynomial::constant(std::size_t nvars, const Integer& c) {
  Polynomial p(nvars);
  if (sgn(c) != 0) {
    std::vector<Exponent> z(nvars, 0);
    p.push_term(z, c);
  }
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t var, Exponent power) {
  if (var >= nvars) throw InvalidArgument("variable index out of range");
  std::vector<Exponent> e(nvars, 0);
  e[var] = power;
  Polynomial p(nvars);
  p.push_term(e, Integer(1));
  return p;
}

Polynomial Polynomial::monomial(std::size_t nvars, std::span<const Exponent> exps, const Integer& c) {
  if (exps.size() != nvars) throw InvalidArgument("monomial exponent length mismatch");
  Polynomial p(nvars);
  if (sgn(c) != 0) p.push_term(exps, c);
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Exponent> exps, std::vector<Integer> coeffs) {
  const std::size_t nt = coeffs.size();
  std::vector<Exponent> degs(nt);
  for (std::size_t t = 0; t < nt; ++t) degs[t] = sum_of(exps.data() + t * nvars, nvars);
  std::vector<std::size_t> idx(nt);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return compare_exponents(exps.data() + a * nvars, degs[a], exps.data() + b * nvars, degs[b], nvars) > 0;
  });
  Polynomial p(nvars);
  for (std::size_t k = 0; k < nt;) {
    std::size_t t = idx[k];
    Integer c = coeffs[t];
    std::size_t l = k + 1;
    while (l < nt && compare_exponents(exps.data() + t * nvars, degs[t], exps.data() + idx[l] * nvars,
                                       degs[idx[l]], nvars) == 0)
      c += coeffs[idx[l++]];
    if (sgn(c) != 0) p.push_term_moved(exps.data() + t * nvars, degs[t], std::move(c));
    k = l;
  }
  return p;
}

bool Polynomial::is_constant() const { return coeffs_.empty() || (coeffs_.size() == 1 && degs_[0] == 0); }

bool Polynomial::is_one() const { return coeffs_.size() == 1 && degs_[0] == 0 && coeffs_[0] == 1; }

Integer Polynomial::constant_term() const {
  if (!coeffs_.empty() && degs_.back() == 0) return coeffs_.back();
  return 0;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const { return merge(*this, rhs, 1); }

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return merge(*this, rhs, -1); }

Polynomial Polynomial::merge(const Polynomial& a, const Polynomial& b, int sign_b) {
  if (a.nvars_ != b.nvars_) throw InvalidArgument("polynomial ring mismatch");
  const std::size_t n = a.nvars_;
  Polynomial r(n);
  r.exps_.reserve((a.size() + b.size()) * n);
  r.coeffs_.reserve(a.size() + b.size());
  r.degs_.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int cmp;
    if (i == a.size()) cmp = -1;
    else if (j == b.size()) cmp = 1;
    else cmp = compare_exponents(a.exponents(i).data(), a.degs_[i], b.exponents(j).data(), b.degs_[j], n);
    if (cmp > 0) {
      r.push_term_moved(a.exponents(i).data(), a.degs_[i], Integer(a.coeffs_[i]));
      ++i;
    } else if (cmp < 0) {
      r.push_term_moved(b.exponents(j).data(), b.degs_[j], sign_b > 0 ? Integer(b.coeffs_[j]) : Integer(-b.coeffs_[j]));
      ++j;
    } else {
      Integer c = sign_b > 0 ? Integer(a.coeffs_[i] + b.coeffs_[j]) : Integer(a.coeffs_[i] - b.coeffs_[j]);
      if (sgn(c) != 0) r.push_term_moved(a.exponents(i).data(), a.degs_[i], std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator*(const Integer& c) const {
  if (sgn(c) == 0) return Polynomial(nvars_);
  Polynomial r(*this);
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

Polynomial Polynomial::shifted(std::span<const Exponent> shift) const {
  if (shift.size() != nvars_) throw InvalidArgument("shift length mismatch");
  Polynomial r(*this);
  Exponent ds = sum_of(shift.data(), nvars_);
  for (std::size_t t = 0; t < size(); ++t) {
    for (std::size_t v = 0; v < nvars_; ++v) {
      Exponent& e = r.exps_[t * nvars_ + v];
      e += shift[v];
      if (e < 0) throw InvalidArgument("negative exponent in polynomial shift");
    }
    r.degs_[t] += ds;
  }
  return r;
}

Polynomial Polynomial::divexact_integer(const Integer& c) const {
  Polynomial r(*this);
  for (auto& x : r.coeffs_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return r;
}

namespace {

// Heap entry for products a[i] * b[j]; the exponent is kept inline to make
// comparisons cheap.
struct ProductNode {
  std::size_t i, j;
  Exponent deg;
  std::size_t slot;  // offset into the exponent scratch pool
};

class ProductHeap {
 public:
  explicit ProductHeap(std::size_t n) : n_(n) {}

  bool empty() const { return heap_.empty(); }
  const ProductNode& top() const { return heap_.front(); }
  const Exponent* exps(const ProductNode& p) const { return pool_.data() + p.slot; }

  void push(std::size_t i, std::size_t j, const Exponent* ea, const Exponent* eb, Exponent deg) {
    std::size_t slot;
    if (!free_.empty()) {
      slot = free_.back();
      free_.pop_back();
    } else {
      slot = pool_.size();
      pool_.resize(pool_.size() + n_);
    }
    for (std::size_t v = 0; v < n_; ++v) pool_[slot + v] = ea[v] + eb[v];
    heap_.push_back({i, j, deg, slot});
    std::push_heap(heap_.begin(), heap_.end(), cmp());
  }

  ProductNode pop() {
    std::pop_heap(heap_.begin(), heap_.end(), cmp());
    ProductNode p = heap_.back();
    heap_.pop_back();
    free_.push_back(p.slot);
    return p;
  }

 private:
  struct Less {
    const ProductHeap* h;
    bool operator()(const ProductNode& x, const ProductNode& y) const {
      return compare_exponents(h->pool_.data() + x.slot, x.deg, h->pool_.data() + y.slot, y.deg, h->n_) < 0;
    }
  };
  Less cmp() const { return Less{this}; }

  std::size_t n_;
  std::vector<ProductNode> heap_;
  std::vector<Exponent> pool_;
  std::vector<std::size_t> free_;
};

}  // namespace

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (nvars_ != rhs.nvars_) throw InvalidArgument("polynomial ring mismatch");
  if (is_zero() || rhs.is_zero()) return Polynomial(nvars_);
  const Polynomial& a = size() <= rhs.size() ? *this : rhs;
  const Polynomial& b = size() <= rhs.size() ? rhs : *this;
  if (a.is_monomial()) {
    Polynomial r = b.shifted(a.exponents(0));
    if (a.coeff(0) != 1)
      for (auto& c : r.coeffs_) c *= a.coeff(0);
    return r;
  }
  // Johnson's heap multiplication: one stream per term of a.
  const std::size_t n = nvars_;
  ProductHeap heap(n);
  for (std::size_t i = 0; i < a.size(); ++i)
    heap.push(i, 0, a.exponents(i).data(), b.exponents(0).data(), a.degs_[i] + b.degs_[0]);
  Polynomial r(n);
  std::vector<Exponent> cur(n);
  Integer acc;
  while (!heap.empty()) {
    const ProductNode& t = heap.top();
    std::copy(heap.exps(t), heap.exps(t) + n, cur.begin());
    Exponent deg = t.deg;
    acc = 0;
    while (!heap.empty() && compare_exponents(heap.exps(heap.top()), heap.top().deg, cur.data(), deg, n) == 0) {
      ProductNode p = heap.pop();
      mpz_addmul(acc.get_mpz_t(), a.coeffs_[p.i].get_mpz_t(), b.coeffs_[p.j].get_mpz_t());
      if (p.j + 1 < b.size())
        heap.push(p.i, p.j + 1, a.exponents(p.i).data(), b.exponents(p.j + 1).data(), a.degs_[p.i] + b.degs_[p.j + 1]);
    }
    if (sgn(acc) != 0) r.push_term_moved(cur.data(), deg, std::move(acc));
    acc = Integer();
  }
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(nvars_, 1);
  if (e == 0) return result;
  if (is_monomial()) {
    std::vector<Exponent> ex(exponents(0).begin(), exponents(0).end());
    for (auto& x : ex) x *= static_cast<Exponent>(e);
    return monomial(nvars_, ex, ipow(coeff(0), e));
  }
  Polynomial base = *this;
  while (true) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (!e) break;
    base = base * base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  if (nvars_ != divisor.nvars_) throw InvalidArgument("polynomial ring mismatch");
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (is_zero()) return Polynomial(nvars_);
  const Polynomial& b = divisor;
  const std::size_t n = nvars_;
  if (b.is_monomial()) {
    Polynomial r(*this);
    const Exponent* be = b.exponents(0).data();
    for (std::size_t t = 0; t < size(); ++t) {
      for (std::size_t v = 0; v < n; ++v) {
        Exponent& e = r.exps_[t * n + v];
        e -= be[v];
        if (e < 0) return std::nullopt;
      }
      r.degs_[t] -= b.degs_[0];
      if (!mpz_divisible_p(r.coeffs_[t].get_mpz_t(), b.coeffs_[0].get_mpz_t())) return std::nullopt;
      mpz_divexact(r.coeffs_[t].get_mpz_t(), r.coeffs_[t].get_mpz_t(), b.coeffs_[0].get_mpz_t());
    }
    return r;
  }
  // Degree windows: every quotient exponent must sit inside them.
  std::vector<Exponent> amin = min_exponents(), amax = max_exponents();
  std::vector<Exponent> bmin = b.min_exponents(), bmax = b.max_exponents();
  std::vector<Exponent> qlo(n), qhi(n);
  for (std::size_t v = 0; v < n; ++v) {
    qlo[v] = amin[v] - bmin[v];
    qhi[v] = amax[v] - bmax[v];
    if (qhi[v] < qlo[v] || qhi[v] < 0) return std::nullopt;
  }
  if (total_degree() < b.total_degree()) return std::nullopt;
  // Heap division (Monagan-Pearce) with early abort on a nonzero remainder term.
  Polynomial q(n);
  ProductHeap heap(n);
  std::size_t k = 0;  // next term of *this
  std::vector<Exponent> cur(n);
  Integer acc;
  const Exponent* lb = b.exponents(0).data();
  const Integer& lc = b.coeffs_[0];
  while (k < size() || !heap.empty()) {
    // pick largest pending exponent
    const Exponent* best;
    Exponent best_deg;
    if (k < size() && (heap.empty() || compare_exponents(exponents(k).data(), degs_[k], heap.exps(heap.top()),
                                                           heap.top().deg, n) >= 0)) {
      best = exponents(k).data();
      best_deg = degs_[k];
    } else {
      best = heap.exps(heap.top());
      best_deg = heap.top().deg;
    }
    std::copy(best, best + n, cur.begin());
    acc = 0;
    if (k < size() && compare_exponents(exponents(k).data(), degs_[k], cur.data(), best_deg, n) == 0) {
      acc = coeffs_[k];
      ++k;
    }
    while (!heap.empty() && compare_exponents(heap.exps(heap.top()), heap.top().deg, cur.data(), best_deg, n) == 0) {
      ProductNode p = heap.pop();
      mpz_submul(acc.get_mpz_t(), q.coeffs_[p.i].get_mpz_t(), b.coeffs_[p.j].get_mpz_t());
      if (p.j + 1 < b.size())
        heap.push(p.i, p.j + 1, q.exponents(p.i).data(), b.exponents(p.j + 1).data(), q.degs_[p.i] + b.degs_[p.j + 1]);
    }
    if (sgn(acc) == 0) continue;
    // leading term of the running remainder must be divisible by lt(b)
    if (best_deg < b.degs_[0]) return std::nullopt;
    for (std::size_t v = 0; v < n; ++v) {
      Exponent e = cur[v] - lb[v];
      if (e < qlo[v] || e > qhi[v]) return std::nullopt;
      cur[v] = e;
    }
    if (!mpz_divisible_p(acc.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), lc.get_mpz_t());
    std::size_t qi = q.size();
    q.push_term_moved(cur.data(), best_deg - b.degs_[0], std::move(acc));
    acc = Integer();
    if (b.size() > 1)
      heap.push(qi, 1, q.exponents(qi).data(), b.exponents(1).data(), q.degs_[qi] + b.degs_[1]);
  }
  return q;
}

Integer Polynomial::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (!coeffs_.empty() && sgn(coeffs_[0]) < 0) g = -g;
  return g;
}

Polynomial Polynomial::primitive_part() const {
  if (is_zero()) return *this;
  Integer c = content();
  if (c == 1) return *this;
  return divexact_integer(c);
}

std::vector<Exponent> Polynomial::min_exponents() const {
  std::vector<Exponent> m(nvars_, 0);
  if (is_zero()) return m;
  std::copy(exps_.begin(), exps_.begin() + nvars_, m.begin());
  for (std::size_t t = 1; t < size(); ++t)
    for (std::size_t v = 0; v < nvars_; ++v) m[v] = std::min(m[v], exps_[t * nvars_ + v]);
  return m;
}

std::vector<Exponent> Polynomial::max_exponents() const {
  std::vector<Exponent> m(nvars_, 0);
  for (std::size_t t = 0; t < size(); ++t)
    for (std::size_t v = 0; v < nvars_; ++v) m[v] = std::max(m[v], exps_[t * nvars_ + v]);
  return m;
}

Exponent Polynomial::degree_in(std::size_t var) const {
  Exponent d = 0;
  for (std::size_t t = 0; t < size(); ++t) d = std::max(d, exps_[t * nvars_ + var]);
  return d;
}

Exponent Polynomial::total_degree() const { return is_zero() ? 0 : degs_[0]; }

bool Polynomial::uses_variable(std::size_t var) const { return degree_in(var) > 0; }

Polynomial Polynomial::substitute(std::span<const std::optional<Integer>> values) const {
  if (values.size() != nvars_) throw InvalidArgument("substitution length mismatch");
  std::vector<Exponent> exps;
  std::vector<Integer> coeffs;
  exps.reserve(exps_.size());
  coeffs.reserve(size());
  for (std::size_t t = 0; t < size(); ++t) {
    Integer c = coeffs_[t];
    for (std::size_t v = 0; v < nvars_; ++v) {
      Exponent e = exps_[t * nvars_ + v];
      if (values[v] && e > 0) {
        c *= ipow(*values[v], static_cast<unsigned long>(e));
        exps.push_back(0);
      } else {
        exps.push_back(values[v] ? 0 : e);
      }
    }
    coeffs.push_back(std::move(c));
  }
  return from_terms(nvars_, std::move(exps), std::move(coeffs));
}

Polynomial Polynomial::project(std::span<const std::size_t> vars) const {
  const std::size_t m = vars.size();
  std::vector<bool> kept(nvars_, false);
  for (auto v : vars) kept.at(v) = true;
  std::vector<Exponent> exps;
  exps.reserve(size() * m);
  for (std::size_t t = 0; t < size(); ++t) {
    for (std::size_t v = 0; v < nvars_; ++v)
      if (!kept[v] && exps_[t * nvars_ + v] != 0) throw InvalidArgument("projection drops a used variable");
    for (auto v : vars) exps.push_back(exps_[t * nvars_ + v]);
  }
  return from_terms(m, std::move(exps), coeffs_);
}

Polynomial Polynomial::embed(std::size_t nvars, std::span<const std::size_t> map) const {
  if (map.size() != nvars_) throw InvalidArgument("embedding map length mismatch");
  std::vector<Exponent> exps(size() * nvars, 0);
  for (std::size_t t = 0; t < size(); ++t)
    for (std::size_t v = 0; v < nvars_; ++v) exps[t * nvars + map[v]] += exps_[t * nvars_ + v];
  return from_terms(nvars, std::move(exps), coeffs_);
}

std::vector<Polynomial> Polynomial::to_univariate(std::size_t var) const {
  std::vector<std::vector<Exponent>> exps(degree_in(var) + 1);
  std::vector<std::vector<Integer>> coeffs(exps.size());
  for (std::size_t t = 0; t < size(); ++t) {
    Exponent d = exps_[t * nvars_ + var];
    auto& e = exps[d];
    e.insert(e.end(), exps_.begin() + t * nvars_, exps_.begin() + (t + 1) * nvars_);
    e[e.size() - nvars_ + var] = 0;
    coeffs[d].push_back(coeffs_[t]);
  }
  std::vector<Polynomial> out;
  out.reserve(exps.size());
  for (std::size_t d = 0; d < exps.size(); ++d)
    out.push_back(from_terms(nvars_, std::move(exps[d]), std::move(coeffs[d])));
  return out;
}

Polynomial Polynomial::from_univariate(std::size_t nvars, std::size_t var, const std::vector<Polynomial>& coeffs) {
  std::vector<Exponent> exps;
  std::vector<Integer> cs;
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    const Polynomial& c = coeffs[d];
    for (std::size_t t = 0; t < c.size(); ++t) {
      auto e = c.exponents(t);
      exps.insert(exps.end(), e.begin(), e.end());
      exps[exps.size() - nvars + var] += static_cast<Exponent>(d);
      cs.push_back(c.coeff(t));
    }
  }
  return from_terms(nvars, std::move(exps), std::move(cs));
}

bool Polynomial::operator==(const Polynomial& rhs) const {
  return nvars_ == rhs.nvars_ && exps_ == rhs.exps_ && coeffs_ == rhs.coeffs_;
}

std::size_t Polynomial::hash() const {
  std::size_t h = 1469598103934665603ull ^ nvars_;
  auto mix = [&h](std::size_t x) { h = (h ^ x) * 1099511628211ull; };
  for (Exponent e : exps_) mix(static_cast<std::size_t>(e));
  for (const auto& c : coeffs_) {
    // low limb and sign are enough for a hash
    mix(mpz_size(c.get_mpz_t()) ? mpz_getlimbn(c.get_mpz_t(), 0) : 0);
    mix(static_cast<std::size_t>(sgn(c) + 1));
  }
  return h;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (is_zero()) return "0";
  // ascending degree; inside one degree keep x1 before x2
  std::vector<std::size_t> order;
  order.reserve(size());
  for (std::size_t end = size(); end > 0;) {
    std::size_t begin = end;
    while (begin > 0 && degs_[begin - 1] == degs_[end - 1]) --begin;
    for (std::size_t k = begin; k < end; ++k) order.push_back(k);
    end = begin;
  }
  std::string s;
  for (std::size_t k : order) {
    const Integer& c = coeffs_[k];
    bool first = s.empty();
    bool is_const = degs_[k] == 0;
    Integer mag = abs(c);
    if (sgn(c) < 0) s += '-';
    else if (!first) s += '+';
    bool need_star = false;
    if (is_const || mag != 1) {
      s += mag.get_str();
      need_star = true;
    }
    for (std::size_t v = 0; v < nvars_; ++v) {
      Exponent e = exps_[k * nvars_ + v];
      if (e == 0) continue;
      if (need_star) s += '*';
      s += v < names.size() ? names[v] : "x" + std::to_string(v + 1);
      if (e != 1) s += "^" + std::to_string(e);
      need_star = true;
    }
  }
  return s;
}

// ---------------------------------------------------------------- gcd

namespace {

Polynomial must_divide(const Polynomial& a, const Polynomial& b) {
  auto q = a.divide_exact(b);
  if (!q) throw PreconditionFailed("internal: expected exact polynomial division");
  return std::move(*q);
}

Polynomial normalize_sign(Polynomial p) {
  if (!p.is_zero() && sgn(p.leading_coeff()) < 0) return -p;
  return p;
}

Polynomial gcd_nonzero(const Polynomial& a, const Polynomial& b);

// gcd of a list of polynomials
Polynomial gcd_list(const std::vector<Polynomial>& ps, std::size_t nvars) {
  Polynomial g(nvars);
  for (const auto& p : ps) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? normalize_sign(p) : gcd_nonzero(g, p);
    if (g.is_one()) break;
  }
  return g;
}

struct Univariate {
  std::vector<Polynomial> c;  // c[d] coefficient of v^d, trailing entry nonzero
  std::size_t deg() const { return c.size() - 1; }
  bool zero() const { return c.empty(); }
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
};

// Pseudo-remainder of a by b in the main variable.
Univariate prem(Univariate a, const Univariate& b) {
  const std::size_t db = b.deg();
  const Polynomial& lb = b.c.back();
  long e = static_cast<long>(a.deg()) - static_cast<long>(db) + 1;
  while (!a.zero() && a.deg() >= db) {
    Polynomial lr = a.c.back();
    std::size_t shift = a.deg() - db;
    for (auto& x : a.c) x = x * lb;
    for (std::size_t d = 0; d <= db; ++d) a.c[d + shift] -= lr * b.c[d];
    a.trim();
    --e;
  }
  if (e > 0) {
    Polynomial f = lb.pow(static_cast<unsigned>(e));
    for (auto& x : a.c) x = x * f;
  }
  return a;
}

Polynomial subresultant_gcd(const Polynomial& pa, const Polynomial& pb, std::size_t var) {
  const std::size_t n = pa.nvars();
  Univariate A{pa.to_univariate(var)}, B{pb.to_univariate(var)};
  if (A.deg() < B.deg()) std::swap(A, B);
  Polynomial g = Polynomial::constant(n, 1), h = Polynomial::constant(n, 1);
  while (true) {
    std::size_t d = A.deg() - B.deg();
    Univariate R = prem(A, B);
    if (R.zero()) break;
    if (R.deg() == 0) return Polynomial::constant(n, 1);
    A = std::move(B);
    Polynomial div = g * h.pow(static_cast<unsigned>(d));
    for (auto& x : R.c) x = must_divide(x, div);
    B = std::move(R);
    g = A.c.back();
    if (d == 1) h = g;
    else if (d > 1) h = must_divide(g.pow(static_cast<unsigned>(d)), h.pow(static_cast<unsigned>(d - 1)));
  }
  Polynomial res = Polynomial::from_univariate(n, var, B.c);
  Polynomial cont = gcd_list(B.c, n);
  return must_divide(res, cont);
}

// a, b nonzero, primitive over Z, no monomial factor.
Polynomial gcd_core(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = a.nvars();
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(n, 1);
  if (a == b) return a;
  if (a.size() <= b.size()) {
    if (b.divide_exact(a)) return a;
  } else if (a.divide_exact(b)) {
    return b;
  }
  auto amax = a.max_exponents(), bmax = b.max_exponents();
  // variable present in only one operand: gcd lives in its content
  for (std::size_t v = 0; v < n; ++v) {
    if (amax[v] > 0 && bmax[v] == 0) return gcd_nonzero(gcd_list(a.to_univariate(v), n), b);
    if (bmax[v] > 0 && amax[v] == 0) return gcd_nonzero(a, gcd_list(b.to_univariate(v), n));
  }
  // main variable: smallest positive degree
  std::size_t var = n;
  for (std::size_t v = 0; v < n; ++v)
    if (amax[v] > 0 && (var == n || std::max(amax[v], bmax[v]) < std::max(amax[var], bmax[var]))) var = v;
  Polynomial ca = gcd_list(a.to_univariate(var), n);
  Polynomial cb = gcd_list(b.to_univariate(var), n);
  Polynomial cg = gcd_nonzero(ca, cb);
  Polynomial g = subresultant_gcd(must_divide(a, ca), must_divide(b, cb), var);
  return normalize_sign(cg * g);
}

Polynomial gcd_nonzero(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = a.nvars();
  Integer cg = igcd(a.content(), b.content());
  std::vector<Exponent> ma = a.min_exponents(), mb = b.min_exponents(), mg(n);
  bool any_a = false, any_b = false;
  for (std::size_t v = 0; v < n; ++v) {
    mg[v] = std::min(ma[v], mb[v]);
    any_a |= ma[v] != 0;
    any_b |= mb[v] != 0;
    ma[v] = -ma[v];
    mb[v] = -mb[v];
  }
  if (a.is_monomial() || b.is_monomial()) return Polynomial::monomial(n, mg, cg);
  Polynomial pa = a.primitive_part(), pb = b.primitive_part();
  if (any_a) pa = pa.shifted(ma);
  if (any_b) pb = pb.shifted(mb);
  pa = normalize_sign(std::move(pa));
  pb = normalize_sign(std::move(pb));
  Polynomial g = gcd_core(pa, pb);
  return normalize_sign(g.shifted(mg) * cg);
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars()) throw InvalidArgument("polynomial ring mismatch");
  if (a.is_zero()) return normalize_sign(b);
  if (b.is_zero()) return normalize_sign(a);
  return gcd_nonzero(a, b);
}

}  // namespace clusterforge
