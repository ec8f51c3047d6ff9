#include "clusterforge/tropical.hpp"

#include <algorithm>
#include <stdexcept>

#include "clusterforge/errors.hpp"

namespace clusterforge {

ElementaryPair elementary_pair(const IntMatrix& b, std::size_t k, int eps) {
  const std::size_t m = b.rows(), n = b.cols();
  if (k >= n) throw VertexOutOfRange("vertex " + std::to_string(k + 1) + " outside 1.." + std::to_string(n));
  if (eps != 1 && eps != -1) throw InvalidArgument("sign must be +1 or -1");
  ElementaryPair p{IntMatrix::identity(m), IntMatrix::identity(n)};
  p.e(k, k) = -1;
  p.f(k, k) = -1;
  for (std::size_t i = 0; i < m; ++i)
    if (i != k) p.e(i, k) = positive_part(Integer(-eps * b(i, k)));
  for (std::size_t j = 0; j < n; ++j)
    if (j != k) p.f(k, j) = positive_part(Integer(eps * b(k, j)));
  return p;
}

int sign_of_vector(const std::vector<Integer>& v) {
  bool pos = false, neg = false;
  for (const auto& z : v) {
    pos = pos || sgn(z) > 0;
    neg = neg || sgn(z) < 0;
  }
  if (pos == neg) return 0;
  return pos ? 1 : -1;
}

namespace {

Quiver principal_quiver(const Quiver& q) { return Quiver(q.principal(), q.symmetrizer()); }

void check_coherent(const IntMatrix& c, std::size_t step) {
  for (std::size_t j = 0; j < c.cols(); ++j)
    if (sign_of_vector(c.column_vector(j)) == 0)
      throw SignIncoherence("c-vector " + std::to_string(j + 1) + " after " + std::to_string(step) +
                            " mutations is not sign-coherent: " + c.column(j).transpose().to_string());
}

}  // namespace

TropicalPath tropical_path(const Quiver& q0, const std::vector<std::size_t>& seq) {
  Quiver q = principal_quiver(q0);
  const std::size_t n = q.n();
  TropicalPath p;
  IntMatrix c = IntMatrix::identity(n), g = IntMatrix::identity(n), cprod = c;
  IntMatrix bpr = principal_extension(q).matrix();
  p.c.push_back(c);
  p.g.push_back(g);
  p.quivers.push_back(q);
  for (std::size_t s = 0; s < seq.size(); ++s) {
    std::size_t k = seq[s];
    if (k >= n) throw VertexOutOfRange("vertex " + std::to_string(k + 1) + " outside 1.." + std::to_string(n));
    int eps = sign_of_vector(c.column_vector(k));
    if (eps == 0) check_coherent(c, s);
    IntMatrix next = c;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        next(i, j) = j == k ? Integer(-c(i, k)) : Integer(c(i, j) + c(i, k) * positive_part(Integer(eps * q(k, j))));
    auto [e, f] = elementary_pair(q.matrix(), k, eps);
    g = g * e;
    cprod = cprod * f;
    bpr = mutate_matrix(bpr, k);
    if (bpr.bottom_from(n) != next || cprod != next)
      throw std::logic_error("c-matrix paths disagree at step " + std::to_string(s + 1));
    check_coherent(next, s + 1);
    c = next;
    q = q.mutate(k);
    p.c.push_back(c);
    p.g.push_back(g);
    p.signs.push_back(eps);
    p.quivers.push_back(q);
  }
  return p;
}

IntMatrix c_matrix(const Quiver& q, const std::vector<std::size_t>& seq) { return tropical_path(q, seq).c.back(); }
IntMatrix g_matrix(const Quiver& q, const std::vector<std::size_t>& seq) { return tropical_path(q, seq).g.back(); }

namespace {

Seed principal_seed(const Quiver& q) {
  const std::size_t n = q.n();
  std::vector<std::vector<Integer>> y(n, std::vector<Integer>(n, 0));
  for (std::size_t j = 0; j < n; ++j) y[j][j] = 1;
  return Seed::initial_tropical(principal_quiver(q), y);
}

}  // namespace

IntMatrix g_matrix_from_grading(const Quiver& q, const std::vector<std::size_t>& seq) {
  const std::size_t n = q.n();
  const IntMatrix b = q.principal();
  Seed s = principal_seed(q).at(seq);
  IntMatrix g(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const RationalFunction& x = s.cluster()[j];
    if (!x.denominator().is_monomial()) throw NonLaurent("principal-coefficient variable is not Laurent");
    auto num = x.numerator().exponents(0);
    auto den = x.denominator().exponents(0);
    for (std::size_t i = 0; i < n; ++i) {
      Integer d = num[i] - den[i];
      for (std::size_t l = 0; l < n; ++l) d -= b(i, l) * (num[n + l] - den[n + l]);
      g(i, j) = d;
    }
  }
  return g;
}

std::vector<Polynomial> f_polynomials(const Quiver& q, const std::vector<std::size_t>& seq) {
  const std::size_t n = q.n();
  Seed s = principal_seed(q).at(seq);
  std::vector<std::optional<Integer>> ones(2 * n);
  for (std::size_t i = 0; i < n; ++i) ones[i] = Integer(1);
  std::vector<std::size_t> ys(n);
  for (std::size_t l = 0; l < n; ++l) ys[l] = n + l;
  std::vector<Polynomial> out;
  for (const auto& x : s.cluster()) {
    RationalFunction f = x.substitute(ones);
    if (!f.is_polynomial()) throw NonLaurent("F-polynomial is not a polynomial");
    out.push_back(f.numerator().project(ys));
  }
  return out;
}

DualityReport check_tropical_duality(const Quiver& q, const std::vector<std::size_t>& seq) {
  DualityReport r;
  auto fail = [&](std::string s) {
    r.ok = false;
    r.failures.push_back(std::move(s));
  };
  TropicalPath p = tropical_path(q, seq);
  const IntMatrix& c = p.c.back();
  const IntMatrix& g = p.g.back();
  IntMatrix d = diagonal_matrix(q.symmetrizer());
  IntMatrix lhs = g.transpose() * d * c;
  if (lhs != d) fail("G^T D C = " + lhs.to_string() + " but D = " + d.to_string());
  std::vector<std::size_t> rev(seq.rbegin(), seq.rend());
  Quiver op = p.quivers.back().opposite();
  try {
    TropicalPath back = tropical_path(op, rev);
    auto ci = c.inverse();
    auto gi = g.inverse();
    if (!ci || *ci != back.c.back())
      fail("C(t)^-1 differs from C(Q(t)^op, t, t0) = " + back.c.back().to_string());
    if (!gi || *gi != back.g.back())
      fail("G(t)^-1 differs from G(Q(t)^op, t, t0) = " + back.g.back().to_string());
  } catch (const SignIncoherence& e) {
    fail(std::string("reverse path: ") + e.what());
  }
  return r;
}

DualityReport check_langlands_duality(const Quiver& q, const std::vector<std::size_t>& seq) {
  DualityReport r;
  IntMatrix g = g_matrix(q, seq);
  try {
    IntMatrix c = c_matrix(principal_quiver(q).langlands_dual(), seq);
    auto ci = c.inverse();
    if (!ci || *ci != g.transpose()) {
      r.ok = false;
      r.failures.push_back("G^T = " + g.transpose().to_string() + " but C(Q^vee) = " + c.to_string());
    }
  } catch (const SignIncoherence& e) {
    r.ok = false;
    r.failures.push_back(std::string("dual quiver: ") + e.what());
  }
  return r;
}

BraidReport braid_check(const IntMatrix& b0, std::size_t i, std::size_t j) {
  IntMatrix b = b0.top(b0.cols());
  const std::size_t n = b.cols();
  if (i >= n || j >= n) throw VertexOutOfRange("braid vertices outside 1.." + std::to_string(n));
  if (i == j) throw InvalidArgument("braid check needs two distinct vertices");
  Integer prod = abs(b(i, j) * b(j, i));
  BraidReport r;
  if (prod == 0) r.factors = 2;
  else if (prod == 1) r.factors = 3;
  else if (prod == 2) r.factors = 4;
  else if (prod == 3) r.factors = 6;
  else throw NotApplicable("|b_ij b_ji| = " + prod.get_str() + " has no braid relation");
  for (int eps : {1, -1}) {
    auto t = [&](std::size_t k) {
      return elementary_pair(mutate_matrix(b, k), k, eps).e * elementary_pair(b, k, eps).e;
    };
    IntMatrix ti = t(i), tj = t(j);
    IntMatrix lhs = IntMatrix::identity(n), rhs = lhs;
    for (std::size_t s = 0; s < r.factors; ++s) {
      lhs = lhs * (s % 2 == 0 ? ti : tj);
      rhs = rhs * (s % 2 == 0 ? tj : ti);
    }
    (eps == 1 ? r.holds_plus : r.holds_minus) = lhs == rhs;
  }
  return r;
}

// ---------------------------------------------------------------- separation

namespace {

RationalFunction eval_at(const Polynomial& f, const std::vector<RationalFunction>& vals, std::size_t nvars) {
  RationalFunction acc(nvars);
  for (std::size_t t = 0; t < f.size(); ++t) {
    RationalFunction term = RationalFunction::constant(nvars, f.coeff(t));
    auto e = f.exponents(t);
    for (std::size_t l = 0; l < e.size(); ++l)
      if (e[l]) term = term * vals[l].pow(e[l]);
    acc = acc + term;
  }
  return acc;
}

// F evaluated in Trop: componentwise minimum over the terms
std::vector<Integer> eval_tropical(const Polynomial& f, const std::vector<std::vector<Integer>>& a) {
  const std::size_t p = a.empty() ? 0 : a.front().size();
  std::vector<Integer> best;
  for (std::size_t t = 0; t < f.size(); ++t) {
    std::vector<Integer> v(p, 0);
    auto e = f.exponents(t);
    for (std::size_t l = 0; l < e.size(); ++l)
      for (std::size_t u = 0; u < p; ++u) v[u] += e[l] * a[l][u];
    if (best.empty()) best = v;
    else
      for (std::size_t u = 0; u < p; ++u) best[u] = std::min(best[u], v[u]);
  }
  if (best.empty()) best.assign(p, 0);
  return best;
}

RationalFunction monomial_at(std::size_t nvars, std::size_t offset, const std::vector<Integer>& e) {
  std::vector<Exponent> ex(nvars, 0);
  for (std::size_t l = 0; l < e.size(); ++l) ex[offset + l] = static_cast<Exponent>(e[l].get_si());
  return RationalFunction::laurent_monomial(nvars, ex);
}

}  // namespace

Seed separation_evaluate(const Seed& initial, const std::vector<std::size_t>& seq) {
  const std::size_t n = initial.n(), m = initial.m(), nv = initial.nvars();
  const IntMatrix& bt = initial.quiver().matrix();
  const CoefficientKind kind = initial.coefficients().kind;
  Quiver pq(bt.top(n), initial.quiver().symmetrizer());
  TropicalPath path = tropical_path(pq, seq);
  const IntMatrix& c = path.c.back();
  const IntMatrix& g = path.g.back();
  const IntMatrix bnew = path.quivers.back().matrix();
  std::vector<Polynomial> f = f_polynomials(pq, seq);

  // y in the ambient field, and in its own semifield
  const bool tropical = kind != CoefficientKind::Universal;
  std::vector<std::vector<Integer>> a(n);
  std::vector<RationalFunction> y;
  for (std::size_t l = 0; l < n; ++l) {
    if (kind == CoefficientKind::None) {
      for (std::size_t i = n; i < m; ++i) a[l].push_back(bt(i, l));
    } else if (kind == CoefficientKind::Tropical) {
      a[l] = initial.coefficients().tropical[l];
    }
    y.push_back(tropical ? monomial_at(nv, n, a[l]) : initial.coefficients().universal[l]);
  }

  std::vector<RationalFunction> yhat;
  for (std::size_t l = 0; l < n; ++l) {
    RationalFunction v = y[l];
    for (std::size_t i = 0; i < n; ++i) {
      long e = bt(i, l).get_si();
      if (e) v = v * initial.cluster()[i].pow(e);
    }
    yhat.push_back(v);
  }

  std::vector<std::vector<Integer>> ftrop(n);
  std::vector<RationalFunction> fy;
  for (std::size_t i = 0; i < n; ++i) {
    if (tropical) {
      ftrop[i] = eval_tropical(f[i], a);
      fy.push_back(monomial_at(nv, n, ftrop[i]));
    } else {
      fy.push_back(eval_at(f[i], y, nv));
    }
  }

  std::vector<RationalFunction> x;
  for (std::size_t j = 0; j < n; ++j) {
    RationalFunction v = eval_at(f[j], yhat, nv) / fy[j];
    for (std::size_t i = 0; i < n; ++i) {
      long e = g(i, j).get_si();
      if (e) v = v * initial.cluster()[i].pow(e);
    }
    x.push_back(v);
  }

  Coefficients coef;
  coef.kind = kind;
  IntMatrix full(m, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) full(i, j) = bnew(i, j);
  for (std::size_t j = 0; j < n; ++j) {
    if (tropical) {
      std::vector<Integer> v(a.empty() ? 0 : a.front().size(), 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t u = 0; u < v.size(); ++u) v[u] += c(i, j) * a[i][u] + bnew(i, j) * ftrop[i][u];
      if (kind == CoefficientKind::Tropical) coef.tropical.push_back(v);
      else
        for (std::size_t u = 0; u < v.size(); ++u) full(n + u, j) = v[u];
    } else {
      RationalFunction v = RationalFunction::constant(nv, 1);
      for (std::size_t i = 0; i < n; ++i) {
        if (sgn(c(i, j))) v = v * y[i].pow(c(i, j).get_si());
        if (sgn(bnew(i, j))) v = v * fy[i].pow(bnew(i, j).get_si());
      }
      coef.universal.push_back(v);
    }
  }
  return Seed(Quiver(full, initial.quiver().symmetrizer()), std::move(x), std::move(coef), initial.names());
}

}  // namespace clusterforge
