#include "clusterforge/seed.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "clusterforge/errors.hpp"

namespace clusterforge {

namespace {

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw InvalidArgument("exponent too large");
  return z.get_si();
}

RationalFunction generator_monomial(std::size_t nvars, std::size_t offset, const std::vector<Integer>& e) {
  std::vector<Exponent> ex(nvars, 0);
  for (std::size_t l = 0; l < e.size(); ++l) ex[offset + l] = static_cast<Exponent>(to_long(e[l]));
  return RationalFunction::laurent_monomial(nvars, ex);
}

}  // namespace

Coefficients mutate_coefficients(const Coefficients& y, const IntMatrix& b, std::size_t k) {
  const std::size_t n = b.cols();
  if (k >= n) throw VertexOutOfRange("mutation at vertex " + std::to_string(k + 1));
  Coefficients r = y;
  switch (y.kind) {
    case CoefficientKind::None:
      break;
    case CoefficientKind::Tropical: {
      const auto& ak = y.tropical[k];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) {
          for (auto& v : r.tropical[j]) v = -v;
          continue;
        }
        const Integer& bkj = b(k, j);
        if (sgn(bkj) == 0) continue;
        for (std::size_t l = 0; l < ak.size(); ++l) {
          Integer mn = sgn(ak[l]) < 0 ? ak[l] : Integer(0);
          r.tropical[j][l] += positive_part(bkj) * ak[l] - bkj * mn;
        }
      }
      break;
    }
    case CoefficientKind::Universal: {
      const RationalFunction& yk = y.universal[k];
      RationalFunction one_plus = RationalFunction::constant(yk.nvars(), 1) + yk;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) {
          r.universal[j] = yk.inverse();
          continue;
        }
        long bkj = to_long(b(k, j));
        if (bkj == 0) continue;
        RationalFunction v = y.universal[j];
        if (bkj > 0) v = v * yk.pow(bkj);
        v = v * one_plus.pow(-bkj);
        r.universal[j] = v;
      }
      break;
    }
  }
  return r;
}

Seed::Seed(Quiver q, std::vector<RationalFunction> cluster, Coefficients y, std::vector<std::string> names)
    : q_(std::move(q)), x_(std::move(cluster)), y_(std::move(y)), names_(std::move(names)) {
  const std::size_t n = q_.n();
  if (x_.size() != n) throw InvalidArgument("cluster must have n entries");
  for (const auto& v : x_)
    if (v.nvars() != names_.size()) throw InvalidArgument("cluster variable in the wrong ring");
  if (names_.size() < q_.m()) throw InvalidArgument("ring needs at least m variables");
  switch (y_.kind) {
    case CoefficientKind::None:
      break;
    case CoefficientKind::Tropical:
      if (q_.m() != n) throw InvalidArgument("semifield coefficients need a quiver without frozen vertices");
      if (y_.tropical.size() != n) throw InvalidArgument("need n tropical coefficients");
      for (const auto& v : y_.tropical)
        if (v.size() != y_.generators()) throw InvalidArgument("tropical coefficients of unequal length");
      if (names_.size() != n + y_.generators()) throw InvalidArgument("ring must be x1..xn plus the generators");
      break;
    case CoefficientKind::Universal:
      if (q_.m() != n) throw InvalidArgument("semifield coefficients need a quiver without frozen vertices");
      if (y_.universal.size() != n) throw InvalidArgument("need n universal coefficients");
      for (const auto& v : y_.universal)
        if (v.nvars() != names_.size()) throw InvalidArgument("coefficient in the wrong ring");
      break;
  }
}

Seed Seed::initial(const Quiver& q, std::vector<std::string> names) {
  if (names.empty()) names = default_names("x", q.m());
  if (names.size() != q.m()) throw InvalidArgument("need one name per vertex");
  std::vector<RationalFunction> x;
  for (std::size_t i = 0; i < q.n(); ++i) x.push_back(RationalFunction::variable(q.m(), i));
  return Seed(q, std::move(x), Coefficients{}, std::move(names));
}

Seed Seed::initial_tropical(const Quiver& q, std::vector<std::vector<Integer>> y,
                            std::vector<std::string> generator_names) {
  const std::size_t n = q.n();
  std::size_t p = y.empty() ? 0 : y.front().size();
  if (generator_names.empty()) generator_names = default_names("y", p);
  if (generator_names.size() != p) throw InvalidArgument("need one name per generator");
  std::vector<std::string> names = default_names("x", n);
  names.insert(names.end(), generator_names.begin(), generator_names.end());
  std::vector<RationalFunction> x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(RationalFunction::variable(names.size(), i));
  Coefficients c;
  c.kind = CoefficientKind::Tropical;
  c.tropical = std::move(y);
  return Seed(q, std::move(x), std::move(c), std::move(names));
}

Seed Seed::initial_universal(const Quiver& q) {
  const std::size_t n = q.n();
  std::vector<std::string> names = default_names("x", n);
  auto ys = default_names("y", n);
  names.insert(names.end(), ys.begin(), ys.end());
  std::vector<RationalFunction> x;
  Coefficients c;
  c.kind = CoefficientKind::Universal;
  for (std::size_t i = 0; i < n; ++i) {
    x.push_back(RationalFunction::variable(2 * n, i));
    c.universal.push_back(RationalFunction::variable(2 * n, n + i));
  }
  return Seed(q, std::move(x), std::move(c), std::move(names));
}

RationalFunction Seed::frozen_variable(std::size_t i) const { return RationalFunction::variable(nvars(), i); }

Seed Seed::mutate(std::size_t k) const {
  const std::size_t n = q_.n();
  if (k >= n) throw VertexOutOfRange("mutation at vertex " + std::to_string(k + 1) + " outside 1.." + std::to_string(n));
  const IntMatrix& b = q_.matrix();
  const std::size_t nv = nvars();
  RationalFunction pp = RationalFunction::constant(nv, 1), pm = pp;
  for (std::size_t i = 0; i < q_.m(); ++i) {
    long e = to_long(b(i, k));
    if (e == 0) continue;
    RationalFunction base = i < n ? x_[i] : frozen_variable(i);
    if (e > 0) pp = pp * base.pow(e);
    else pm = pm * base.pow(-e);
  }
  RationalFunction num(nv);
  switch (y_.kind) {
    case CoefficientKind::None:
      num = pp + pm;
      break;
    case CoefficientKind::Tropical: {
      std::vector<Integer> pos, neg;
      for (const auto& a : y_.tropical[k]) {
        pos.push_back(positive_part(a));
        neg.push_back(positive_part(Integer(-a)));
      }
      num = generator_monomial(nv, n, pos) * pp + generator_monomial(nv, n, neg) * pm;
      break;
    }
    case CoefficientKind::Universal: {
      const RationalFunction& yk = y_.universal[k];
      num = (yk * pp + pm) / (RationalFunction::constant(nv, 1) + yk);
      break;
    }
  }
  Seed s;
  s.q_ = q_.mutate(k);
  s.x_ = x_;
  s.x_[k] = num / x_[k];
  s.y_ = mutate_coefficients(y_, b, k);
  s.names_ = names_;
  return s;
}

Seed Seed::at(const std::vector<std::size_t>& seq) const {
  Seed s = *this;
  for (auto k : seq) s = s.mutate(k);
  return s;
}

std::vector<std::string> Seed::cluster_strings() const {
  std::vector<std::string> out;
  for (const auto& v : x_) out.push_back(v.to_string(names_));
  return out;
}

std::vector<std::string> Seed::coefficient_strings() const {
  std::vector<std::string> out;
  if (y_.kind == CoefficientKind::Tropical)
    for (const auto& a : y_.tropical) out.push_back(generator_monomial(nvars(), n(), a).to_string(names_));
  else if (y_.kind == CoefficientKind::Universal)
    for (const auto& v : y_.universal) out.push_back(v.to_string(names_));
  return out;
}

// ---------------------------------------------------------------- isomorphism

namespace {

bool transported_equal(const Seed& a, const Seed& b, const std::vector<std::size_t>& sigma) {
  const std::size_t n = a.n();
  if (a.m() != b.m() || a.coefficients().kind != b.coefficients().kind) return false;
  for (std::size_t i = 0; i < a.m(); ++i) {
    std::size_t si = i < n ? sigma[i] : i;
    for (std::size_t j = 0; j < n; ++j)
      if (a.quiver()(i, j) != b.quiver()(si, sigma[j])) return false;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (a.cluster()[i] != b.cluster()[sigma[i]]) return false;
  const auto& ya = a.coefficients();
  const auto& yb = b.coefficients();
  for (std::size_t j = 0; j < n; ++j) {
    if (ya.kind == CoefficientKind::Tropical && ya.tropical[j] != yb.tropical[sigma[j]]) return false;
    if (ya.kind == CoefficientKind::Universal && ya.universal[j] != yb.universal[sigma[j]]) return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<std::size_t>> seed_isomorphism(const Seed& a, const Seed& b) {
  if (a.n() != b.n() || a.m() != b.m() || a.nvars() != b.nvars()) return std::nullopt;
  const std::size_t n = a.n();
  // equal variables force the permutation
  std::vector<std::size_t> sigma(n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < n && !found; ++j)
      if (!used[j] && a.cluster()[i] == b.cluster()[j]) {
        sigma[i] = j;
        used[j] = true;
        found = true;
      }
    if (!found) return std::nullopt;
  }
  if (!transported_equal(a, b, sigma)) return std::nullopt;
  return sigma;
}

std::optional<std::vector<std::size_t>> seed_isomorphism_bruteforce(const Seed& a, const Seed& b) {
  if (a.n() != b.n() || a.m() != b.m() || a.nvars() != b.nvars()) return std::nullopt;
  std::vector<std::size_t> sigma(a.n());
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    if (transported_equal(a, b, sigma)) return sigma;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

// ---------------------------------------------------------------- fingerprints

namespace {

constexpr std::uint64_t kPrime = (1ull << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(r & kPrime), hi = static_cast<std::uint64_t>(r >> 61);
  std::uint64_t s = lo + hi;
  return s >= kPrime ? s - kPrime : s;
}
std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}
std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}
// a^z for an arbitrary integer z (a != 0)
std::uint64_t powmod_z(std::uint64_t a, const Integer& z) {
  unsigned long e = mpz_fdiv_ui(z.get_mpz_t(), kPrime - 1);
  return powmod(a, e);
}

struct PoleHit {};

std::uint64_t invmod(std::uint64_t a) {
  if (a == 0) throw PoleHit{};
  return powmod(a, kPrime - 2);
}

std::uint64_t eval_poly(const Polynomial& p, const std::vector<std::uint64_t>& pt) {
  std::uint64_t acc = 0;
  for (std::size_t t = 0; t < p.size(); ++t) {
    Integer c = p.coeff(t);
    std::uint64_t v = mpz_fdiv_ui(c.get_mpz_t(), kPrime);
    auto e = p.exponents(t);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) v = mulmod(v, powmod(pt[i], static_cast<std::uint64_t>(e[i])));
    acc = addmod(acc, v);
  }
  return acc;
}

std::uint64_t eval_rf(const RationalFunction& f, const std::vector<std::uint64_t>& pt) {
  return mulmod(eval_poly(f.numerator(), pt), invmod(eval_poly(f.denominator(), pt)));
}

// Seed reduced to values at a point; the quiver and tropical data stay exact.
struct Print {
  IntMatrix b;
  std::vector<std::uint64_t> x;  // cluster values
  std::vector<std::uint64_t> yu;  // universal coefficient values
  std::vector<std::vector<Integer>> yt;  // tropical exponents
};

class Evaluator {
 public:
  Evaluator(const Seed& s, std::uint64_t rng_seed) : kind_(s.coefficients().kind), n_(s.n()), m_(s.m()) {
    std::mt19937_64 rng(rng_seed);
    std::uniform_int_distribution<std::uint64_t> d(2, kPrime - 2);
    point_.resize(s.nvars());
    for (auto& v : point_) v = d(rng);
  }

  Print initial(const Seed& s) const {
    Print p;
    p.b = s.quiver().matrix();
    for (const auto& v : s.cluster()) p.x.push_back(eval_rf(v, point_));
    if (kind_ == CoefficientKind::Universal)
      for (const auto& v : s.coefficients().universal) p.yu.push_back(eval_rf(v, point_));
    if (kind_ == CoefficientKind::Tropical) p.yt = s.coefficients().tropical;
    return p;
  }

  Print mutate(const Print& s, std::size_t k) const {
    const IntMatrix& b = s.b;
    std::uint64_t pp = 1, pm = 1;
    for (std::size_t i = 0; i < m_; ++i) {
      int sg = sgn(b(i, k));
      if (sg == 0) continue;
      std::uint64_t base = i < n_ ? s.x[i] : point_[i];
      std::uint64_t v = powmod_z(base, abs(b(i, k)));
      if (sg > 0) pp = mulmod(pp, v);
      else pm = mulmod(pm, v);
    }
    Print r;
    r.b = mutate_matrix(b, k);
    r.x = s.x;
    std::uint64_t num = 0;
    if (kind_ == CoefficientKind::None) {
      num = addmod(pp, pm);
    } else if (kind_ == CoefficientKind::Tropical) {
      std::uint64_t up = 1, un = 1;
      const auto& a = s.yt[k];
      for (std::size_t l = 0; l < a.size(); ++l) {
        if (sgn(a[l]) > 0) up = mulmod(up, powmod_z(point_[n_ + l], a[l]));
        if (sgn(a[l]) < 0) un = mulmod(un, powmod_z(point_[n_ + l], Integer(-a[l])));
      }
      num = addmod(mulmod(up, pp), mulmod(un, pm));
    } else {
      std::uint64_t yk = s.yu[k];
      num = mulmod(addmod(mulmod(yk, pp), pm), invmod(addmod(1, yk)));
    }
    r.x[k] = mulmod(num, invmod(s.x[k]));
    if (kind_ == CoefficientKind::Tropical) {
      Coefficients c;
      c.kind = CoefficientKind::Tropical;
      c.tropical = s.yt;
      r.yt = mutate_coefficients(c, b, k).tropical;
    } else if (kind_ == CoefficientKind::Universal) {
      std::uint64_t yk = s.yu[k], op = addmod(1, yk);
      r.yu = s.yu;
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == k) {
          r.yu[j] = invmod(yk);
          continue;
        }
        const Integer& bkj = b(k, j);
        if (sgn(bkj) == 0) continue;
        std::uint64_t v = s.yu[j];
        if (sgn(bkj) > 0) v = mulmod(mulmod(v, powmod_z(yk, bkj)), invmod(powmod_z(op, bkj)));
        else v = mulmod(v, powmod_z(op, Integer(-bkj)));
        r.yu[j] = v;
      }
    }
    return r;
  }

 private:
  CoefficientKind kind_;
  std::size_t n_, m_;
  std::vector<std::uint64_t> point_;
};

std::optional<std::vector<std::size_t>> print_match(const Print& a, const Print& b, std::size_t n, bool* ambiguous) {
  std::vector<std::size_t> sigma(n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    int hits = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (a.x[i] == b.x[j]) {
        if (!used[j] && hits == 0) {
          sigma[i] = j;
          used[j] = true;
        }
        ++hits;
      }
    if (hits == 0) return std::nullopt;
    if (hits > 1) *ambiguous = true;
  }
  // repeated values: the greedy sigma may be wrong, leave it to the exact check
  if (*ambiguous) return sigma;
  const std::size_t m = a.b.rows();
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t si = i < n ? sigma[i] : i;
    for (std::size_t j = 0; j < n; ++j)
      if (a.b(i, j) != b.b(si, sigma[j])) return std::nullopt;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!a.yu.empty() && a.yu[j] != b.yu[sigma[j]]) return std::nullopt;
    if (!a.yt.empty() && a.yt[j] != b.yt[sigma[j]]) return std::nullopt;
  }
  return sigma;
}

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

struct VecHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::size_t h = 0;
    for (auto x : v) h = h * 1000003u ^ std::hash<std::uint64_t>()(x);
    return h;
  }
};

ExchangeGraph explore(const Seed& initial, std::size_t limit, std::size_t max_depth, bool materialize,
                      std::uint64_t rng_seed) {
  if (limit < 1) throw InvalidArgument("exchange-graph limit must be at least 1");
  const std::size_t n = initial.n();
  Evaluator ev(initial, rng_seed);
  ExchangeGraph g;
  std::vector<Print> prints;
  std::vector<std::optional<Seed>> exact;
  std::vector<std::size_t> depth;
  std::unordered_map<std::vector<std::uint64_t>, std::vector<std::size_t>, VecHash> index;

  auto exact_seed = [&](std::size_t v) -> const Seed& {
    std::vector<std::size_t> chain;
    std::size_t u = v;
    while (!exact[u]) {
      chain.push_back(u);
      u = g.parent[u];
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      exact[*it] = exact[g.parent[*it]]->mutate(static_cast<std::size_t>(g.parent_vertex[*it]));
    return *exact[v];
  };

  auto key_of = [](const Print& p) {
    std::vector<std::uint64_t> k = p.x;
    std::sort(k.begin(), k.end());
    return k;
  };

  auto add_node = [&](Print p, std::size_t parent, long via, std::size_t d) {
    std::size_t id = prints.size();
    index[key_of(p)].push_back(id);
    prints.push_back(std::move(p));
    exact.emplace_back();
    g.parent.push_back(parent);
    g.parent_vertex.push_back(via);
    g.adjacency.emplace_back(n, -1);
    // mutating back along the tree edge gives the parent on the nose
    if (via >= 0) g.adjacency[id][static_cast<std::size_t>(via)] = static_cast<long>(parent);
    depth.push_back(d);
    return id;
  };

  add_node(ev.initial(initial), 0, -1, 0);
  exact[0] = initial;

  for (std::size_t cur = 0; cur < prints.size(); ++cur) {
    bool frontier = depth[cur] >= max_depth;
    for (std::size_t k = 0; k < n; ++k) {
      if (g.adjacency[cur][k] >= 0) continue;
      Print p = ev.mutate(prints[cur], k);
      long found = -1;
      auto it = index.find(key_of(p));
      if (it != index.end()) {
        for (std::size_t cand : it->second) {
          bool ambiguous = false;
          auto sigma = print_match(prints[cand], p, n, &ambiguous);
          if (!sigma) continue;
          // confirm with exact arithmetic
          Seed mutated = exact_seed(cur).mutate(k);
          if (seed_isomorphism(exact_seed(cand), mutated)) {
            found = static_cast<long>(cand);
            break;
          }
        }
      }
      if (found < 0 && !frontier) {
        if (prints.size() >= limit) {
          g.truncated = true;
        } else {
          found = static_cast<long>(add_node(std::move(p), cur, static_cast<long>(k), depth[cur] + 1));
        }
      }
      g.adjacency[cur][k] = found;
    }
  }

  if (!g.truncated || materialize) {
    g.seeds.reserve(prints.size());
    for (std::size_t v = 0; v < prints.size(); ++v) g.seeds.push_back(exact_seed(v));
    for (const auto& s : g.seeds) {
      auto cs = s.cluster_strings();
      auto ys = s.coefficient_strings();
      std::vector<std::size_t> order(cs.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cs[a] < cs[b]; });
      std::string key;
      for (auto i : order) key += cs[i] + (ys.empty() ? "" : "@" + ys[i]) + ";";
      g.digests.push_back(fnv_hex(key));
    }
  } else {
    for (const auto& p : prints) {
      std::string key;
      for (auto v : key_of(p)) key += std::to_string(v) + ";";
      g.digests.push_back(fnv_hex(key));
    }
  }
  return g;
}

ExchangeGraph explore_retrying(const Seed& initial, std::size_t limit, std::size_t max_depth, bool materialize) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    try {
      return explore(initial, limit, max_depth, materialize, 0x5eed0000u + attempt);
    } catch (const PoleHit&) {
      // unlucky evaluation point; pick another
    }
  }
}

}  // namespace

std::size_t ExchangeGraph::edge_count() const {
  std::size_t half = 0;
  for (const auto& row : adjacency)
    for (long v : row) half += v >= 0;
  return half / 2;
}

std::vector<std::size_t> ExchangeGraph::path_to(std::size_t v) const {
  std::vector<std::size_t> path;
  while (parent_vertex[v] >= 0) {
    path.push_back(static_cast<std::size_t>(parent_vertex[v]));
    v = parent[v];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

ExchangeGraph exchange_graph(const Seed& initial, std::size_t limit, bool materialize_truncated) {
  return explore_retrying(initial, limit, static_cast<std::size_t>(-1), materialize_truncated);
}

ExchangeGraph exchange_neighborhood(const Seed& initial, std::size_t depth) {
  return explore_retrying(initial, static_cast<std::size_t>(-1), depth, true);
}

ClusterVariables cluster_variables(const Seed& initial, std::size_t limit) {
  ClusterVariables out;
  // count distinct variables through fingerprints, exact list when complete
  ExchangeGraph g = exchange_graph(initial, limit);
  out.truncated = g.truncated;
  if (!g.truncated) {
    std::unordered_set<RationalFunction> seen;
    for (const auto& s : g.seeds)
      for (const auto& v : s.cluster())
        if (seen.insert(v).second) out.variables.push_back(v);
    out.count = out.variables.size();
    if (initial.coefficients().kind != CoefficientKind::Universal)
      for (const auto& v : out.variables) denominator_vector(v, initial.n());
    return out;
  }
  // truncated: count distinct values over the explored seeds
  Evaluator ev(initial, 0x5eed0000u);
  std::vector<Print> prints{ev.initial(initial)};
  for (std::size_t v = 1; v < g.vertex_count(); ++v) prints.push_back(ev.mutate(prints[g.parent[v]], g.parent_vertex[v]));
  std::unordered_set<std::uint64_t> vals;
  for (const auto& p : prints) vals.insert(p.x.begin(), p.x.end());
  out.count = vals.size();
  return out;
}

std::vector<Integer> denominator_vector(const RationalFunction& v, std::size_t n) {
  const Polynomial& den = v.denominator();
  if (!den.is_monomial() || den.coeff(0) != 1) throw NonLaurent("denominator is not a monomial");
  auto de = den.exponents(0);
  for (std::size_t i = n; i < de.size(); ++i)
    if (de[i] != 0) throw NonLaurent("frozen or coefficient variable in the denominator");
  auto mn = v.numerator().min_exponents();
  std::vector<Integer> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = de[i] - mn[i];
  return d;
}

}  // namespace clusterforge
