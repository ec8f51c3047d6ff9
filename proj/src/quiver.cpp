#include "clusterforge/quiver.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "clusterforge/errors.hpp"

namespace clusterforge {

std::optional<std::vector<Integer>> find_symmetrizer(const IntMatrix& b) {
  if (!b.is_square()) throw InvalidArgument("symmetrizer of a non-square matrix");
  const std::size_t n = b.rows();
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(b(i, i)) != 0) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      int si = sgn(b(i, j)), sj = sgn(b(j, i));
      if ((si == 0) != (sj == 0) || (si != 0 && si == sj)) return std::nullopt;
    }
  // d_i b_ij = -d_j b_ji, propagated over components
  std::vector<Rational> d(n);
  std::vector<bool> seen(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    d[s] = 1;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      std::size_t i = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || sgn(b(i, j)) == 0) continue;
        Rational dj = -d[i] * Rational(b(i, j)) / Rational(b(j, i));
        if (!seen[j]) {
          seen[j] = true;
          d[j] = dj;
          queue.push_back(j);
        } else if (d[j] != dj) {
          return std::nullopt;
        }
      }
    }
  }
  // scale each component to minimal positive integers
  std::vector<Integer> out(n);
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> members;
    std::deque<std::size_t> queue{s};
    comp[s] = nc;
    while (!queue.empty()) {
      std::size_t i = queue.front();
      queue.pop_front();
      members.push_back(i);
      for (std::size_t j = 0; j < n; ++j)
        if (comp[j] < 0 && sgn(b(i, j)) != 0) {
          comp[j] = nc;
          queue.push_back(j);
        }
    }
    Integer l = 1;
    for (auto i : members) l = ilcm(l, d[i].get_den());
    Integer g = 0;
    for (auto i : members) {
      Rational v = d[i] * Rational(l);
      out[i] = v.get_num();
      g = igcd(g, out[i]);
    }
    for (auto i : members) out[i] = divexact(out[i], g);
    ++nc;
  }
  return out;
}

Quiver::Quiver(IntMatrix btilde, std::vector<Integer> symmetrizer) : b_(std::move(btilde)) {
  const std::size_t n = b_.cols();
  if (b_.rows() < n) throw InvalidQuiver("ice matrix needs at least as many rows as columns");
  IntMatrix p = b_.top(n);
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(p(i, i)) != 0) throw InvalidQuiver("nonzero diagonal entry at vertex " + std::to_string(i + 1));
  if (symmetrizer.empty()) {
    auto d = find_symmetrizer(p);
    if (!d) throw NotSkewSymmetrizable("principal part is not skew-symmetrizable");
    d_ = std::move(*d);
  } else {
    if (symmetrizer.size() != n) throw InvalidArgument("symmetrizer length must equal n");
    for (const auto& x : symmetrizer)
      if (sgn(x) <= 0) throw InvalidArgument("symmetrizer entries must be positive");
    if (!diagonal_times(symmetrizer, p).is_skew_symmetric())
      throw NotSkewSymmetrizable("diag(d)*B is not skew-symmetric for the given d");
    d_ = std::move(symmetrizer);
  }
}

IntMatrix mutate_matrix(const IntMatrix& b, std::size_t k) {
  if (k >= b.cols()) throw VertexOutOfRange("mutation at vertex " + std::to_string(k + 1) + " outside 1.." +
                                            std::to_string(b.cols()));
  IntMatrix r(b);
  for (std::size_t i = 0; i < b.rows(); ++i) {
    int sik = sgn(b(i, k));
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (i == k || j == k) {
        r(i, j) = -b(i, j);
      } else if (sik != 0 && sik == sgn(b(k, j))) {
        // sgn(b_ik) max(0, b_ik b_kj) = b_ik |b_kj| when signs agree
        if (sik > 0) r(i, j) += b(i, k) * b(k, j);
        else r(i, j) -= b(i, k) * b(k, j);
      }
    }
  }
  return r;
}

Quiver Quiver::mutate(std::size_t k) const {
  Quiver q;
  q.b_ = mutate_matrix(b_, k);
  q.d_ = d_;
  return q;
}

Quiver Quiver::mutate_sequence(const std::vector<std::size_t>& ks) const {
  Quiver q = *this;
  for (auto k : ks) q = q.mutate(k);
  return q;
}

Quiver Quiver::opposite() const {
  Quiver q;
  q.b_ = -b_;
  q.d_ = d_;
  return q;
}

Quiver Quiver::langlands_dual() const {
  if (frozen() != 0) throw InvalidArgument("Langlands dual needs a quiver without frozen vertices");
  return Quiver(-b_.transpose());
}

Quiver principal_extension(const Quiver& q) {
  if (q.frozen() != 0) throw InvalidArgument("principal extension of an ice quiver");
  return Quiver(q.matrix().stack_below(IntMatrix::identity(q.n())), q.symmetrizer());
}

IntMatrix cartan_companion(const IntMatrix& b) {
  const std::size_t n = b.cols();
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = i == j ? Integer(2) : Integer(-abs(b(i, j)));
  return c;
}

Quiver quiver_from_presentation(const QuiverPresentation& p) {
  const std::size_t m = p.vertices, n = p.mutable_vertices;
  if (n > m) throw InvalidQuiver("more mutable vertices than vertices");
  IntMatrix b(m, n);
  std::vector<std::vector<bool>> used(m, std::vector<bool>(m, false));
  for (const auto& a : p.arrows) {
    if (a.source >= m || a.target >= m) throw VertexOutOfRange("arrow endpoint out of range");
    if (a.source == a.target) throw InvalidQuiver("loop at vertex " + std::to_string(a.source + 1));
    if (sgn(a.v1) <= 0 || sgn(a.v2) <= 0) throw InvalidQuiver("valuations must be positive");
    if (used[a.source][a.target]) throw InvalidQuiver("two arrows between the same ordered pair");
    if (used[a.target][a.source]) throw InvalidQuiver("2-cycle between vertices " + std::to_string(a.source + 1) +
                                                      " and " + std::to_string(a.target + 1));
    used[a.source][a.target] = true;
    if (a.target < n) b(a.source, a.target) = a.v1;
    if (a.source < n) b(a.target, a.source) = -a.v2;
  }
  return Quiver(std::move(b));
}

QuiverPresentation presentation_of(const Quiver& q) {
  QuiverPresentation p;
  p.vertices = q.m();
  p.mutable_vertices = q.n();
  const std::size_t n = q.n();
  for (std::size_t i = 0; i < q.m(); ++i)
    for (std::size_t j = 0; j < q.m(); ++j) {
      if (i == j || (i >= n && j >= n)) continue;
      if (i < n && j < n) {
        if (sgn(q(i, j)) > 0) p.arrows.push_back({i, j, q(i, j), Integer(-q(j, i))});
      } else if (i >= n && sgn(q(i, j)) > 0) {
        p.arrows.push_back({i, j, q(i, j), q(i, j)});  // frozen -> mutable
      } else if (j >= n && sgn(q(j, i)) < 0) {
        p.arrows.push_back({i, j, Integer(-q(j, i)), Integer(-q(j, i))});  // mutable -> frozen
      }
    }
  return p;
}

// ------------------------------------------------------------ canonical form

IntMatrix relabel(const IntMatrix& b, const std::vector<std::size_t>& perm) {
  const std::size_t n = b.cols();
  IntMatrix r(b.rows(), n);
  for (std::size_t i = 0; i < b.rows(); ++i) {
    std::size_t si = i < n ? perm[i] : i;
    for (std::size_t j = 0; j < n; ++j) r(i, j) = b(si, perm[j]);
  }
  return r;
}

namespace {

std::string matrix_key(const IntMatrix& b) {
  std::string s = std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ":";
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      s += b(i, j).get_str();
      s += ',';
    }
  return s;
}

std::string fnv_digest(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

// Search state for canonical labeling over integer codes.
class Canonizer {
 public:
  Canonizer(const IntMatrix& b) : m_(b.rows()), n_(b.cols()) {
    std::vector<Integer> vals;
    vals.reserve(m_ * n_);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) vals.push_back(b(i, j));
    std::vector<Integer> uniq = vals;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    code_.resize(m_ * n_);
    for (std::size_t t = 0; t < vals.size(); ++t)
      code_[t] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), vals[t]) - uniq.begin());
    zero_ = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), Integer(0)) - uniq.begin());
    find_twins();
  }

  std::vector<std::size_t> run() {
    std::vector<int> colors = initial_colors();
    refine(colors);
    std::vector<std::size_t> path;
    search(colors, path);
    return best_perm_;
  }

 private:
  int at(std::size_t i, std::size_t j) const { return code_[i * n_ + j]; }

  void find_twins() {
    twin_.resize(n_);
    std::iota(twin_.begin(), twin_.end(), 0);
    for (std::size_t u = 0; u < n_; ++u) {
      if (twin_[u] != u) continue;
      for (std::size_t v = u + 1; v < n_; ++v) {
        if (twin_[v] != v) continue;
        bool ok = at(u, v) == zero_ && at(v, u) == zero_;
        for (std::size_t w = 0; ok && w < m_; ++w) {
          if (w == u || w == v) continue;
          if (at(w, u) != at(w, v)) ok = false;
          if (ok && w < n_ && at(u, w) != at(v, w)) ok = false;
        }
        if (ok) twin_[v] = u;
      }
    }
  }

  std::vector<int> initial_colors() const {
    std::vector<std::vector<int>> sig(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      for (std::size_t f = n_; f < m_; ++f) sig[v].push_back(at(f, v));
      std::vector<std::pair<int, int>> nb;
      for (std::size_t u = 0; u < n_; ++u)
        if (u != v) nb.emplace_back(at(v, u), at(u, v));
      std::sort(nb.begin(), nb.end());
      for (auto& [x, y] : nb) {
        sig[v].push_back(x);
        sig[v].push_back(y);
      }
    }
    return colors_from(sig);
  }

  static std::vector<int> colors_from(const std::vector<std::vector<int>>& sig) {
    std::vector<std::vector<int>> uniq = sig;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<int> c(sig.size());
    for (std::size_t v = 0; v < sig.size(); ++v)
      c[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
    return c;
  }

  static int count_colors(const std::vector<int>& c) {
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
  }

  void refine(std::vector<int>& colors) const {
    int k = count_colors(colors);
    while (true) {
      std::vector<std::vector<int>> sig(n_);
      for (std::size_t v = 0; v < n_; ++v) {
        std::vector<std::array<int, 3>> nb;
        for (std::size_t u = 0; u < n_; ++u)
          if (u != v && (at(v, u) != zero_ || at(u, v) != zero_)) nb.push_back({colors[u], at(v, u), at(u, v)});
        std::sort(nb.begin(), nb.end());
        sig[v].push_back(colors[v]);
        for (auto& t : nb) sig[v].insert(sig[v].end(), t.begin(), t.end());
      }
      std::vector<int> next = colors_from(sig);
      int k2 = count_colors(next);
      colors = std::move(next);
      if (k2 == k) return;
      k = k2;
    }
  }

  std::vector<int> leaf_matrix(const std::vector<std::size_t>& perm) const {
    std::vector<int> out(m_ * n_);
    for (std::size_t i = 0; i < m_; ++i) {
      std::size_t si = i < n_ ? perm[i] : i;
      for (std::size_t j = 0; j < n_; ++j) out[i * n_ + j] = at(si, perm[j]);
    }
    return out;
  }

  // orbits of automorphisms fixing `path` pointwise
  std::vector<std::size_t> stabilizer_orbits(const std::vector<std::size_t>& path) const {
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : autos_) {
      bool fixes = std::all_of(path.begin(), path.end(), [&](std::size_t p) { return g[p] == p; });
      if (!fixes) continue;
      for (std::size_t v = 0; v < n_; ++v) parent[find(v)] = find(g[v]);
    }
    for (std::size_t v = 0; v < n_; ++v) parent[v] = find(v);
    return parent;
  }

  void search(const std::vector<int>& colors, std::vector<std::size_t>& path) {
    const int k = count_colors(colors);
    if (static_cast<std::size_t>(k) == n_) {
      std::vector<std::size_t> perm(n_);
      for (std::size_t v = 0; v < n_; ++v) perm[colors[v]] = v;
      std::vector<int> mat = leaf_matrix(perm);
      if (best_perm_.empty() || mat < best_) {
        best_ = std::move(mat);
        best_perm_ = std::move(perm);
      } else if (mat == best_) {
        // automorphism: best_perm_[i] -> perm[i]
        std::vector<std::size_t> g(n_);
        for (std::size_t i = 0; i < n_; ++i) g[best_perm_[i]] = perm[i];
        autos_.push_back(std::move(g));
      }
      return;
    }
    // first smallest non-singleton cell
    std::vector<int> size(k, 0);
    for (int c : colors) ++size[c];
    int cell = -1;
    for (int c = 0; c < k; ++c)
      if (size[c] > 1 && (cell < 0 || size[c] < size[cell])) cell = c;
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < n_; ++v)
      if (colors[v] == cell) members.push_back(v);
    std::vector<std::size_t> tried;
    for (std::size_t v : members) {
      // twin of an already tried vertex gives the same subtree
      bool skip = false;
      for (std::size_t t : tried)
        if (twin_[t] == twin_[v]) skip = true;
      if (!skip && !tried.empty() && !autos_.empty()) {
        auto orb = stabilizer_orbits(path);
        for (std::size_t t : tried)
          if (orb[t] == orb[v]) skip = true;
      }
      if (skip) continue;
      tried.push_back(v);
      std::vector<int> c2(colors);
      for (auto& c : c2)
        if (c > cell) ++c;
      for (std::size_t u : members)
        if (u != v) c2[u] = cell + 1;
      refine(c2);
      path.push_back(v);
      search(c2, path);
      path.pop_back();
    }
  }

  std::size_t m_, n_;
  std::vector<int> code_;
  int zero_ = 0;
  std::vector<std::size_t> twin_;
  std::vector<int> best_;
  std::vector<std::size_t> best_perm_;
  std::vector<std::vector<std::size_t>> autos_;
};

}  // namespace

CanonicalForm canonical_form(const IntMatrix& btilde) {
  CanonicalForm cf;
  if (btilde.cols() == 0) {
    cf.matrix = btilde;
  } else {
    cf.perm = Canonizer(btilde).run();
    cf.matrix = relabel(btilde, cf.perm);
  }
  cf.key = matrix_key(cf.matrix);
  cf.digest = fnv_digest(cf.key);
  return cf;
}

IntMatrix canonical_matrix_bruteforce(const IntMatrix& btilde) {
  const std::size_t n = btilde.cols();
  if (n > 9) throw InvalidArgument("brute-force canonical form limited to n <= 9");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<IntMatrix> best;
  auto less = [](const IntMatrix& a, const IntMatrix& b) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
    return false;
  };
  do {
    IntMatrix r = relabel(btilde, perm);
    if (!best || less(r, *best)) best = std::move(r);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best ? *best : btilde;
}

// ------------------------------------------------------------ mutation class

namespace {

// BFS over the class; visit returns true to stop early.
MutationClass explore_class(const Quiver& q, std::size_t limit, const std::function<bool(const Quiver&)>& visit,
                            bool* stopped) {
  if (limit < 1) throw InvalidArgument("class limit must be at least 1");
  MutationClass mc;
  std::unordered_map<std::string, std::size_t> index;
  auto add = [&](const IntMatrix& b) -> long {
    CanonicalForm cf = canonical_form(b);
    auto it = index.find(cf.key);
    if (it != index.end()) return static_cast<long>(it->second);
    if (mc.members.size() >= limit) {
      mc.truncated = true;
      return -1;
    }
    index.emplace(cf.key, mc.members.size());
    mc.members.push_back(Quiver(cf.matrix, {}));
    mc.keys.push_back(std::move(cf.key));
    mc.adjacency.emplace_back();
    return static_cast<long>(mc.members.size() - 1);
  };
  add(q.matrix());
  if (stopped) *stopped = false;
  for (std::size_t cur = 0; cur < mc.members.size(); ++cur) {
    if (visit && visit(mc.members[cur])) {
      if (stopped) *stopped = true;
      return mc;
    }
    const IntMatrix b = mc.members[cur].matrix();
    std::vector<long> adj(q.n());
    for (std::size_t k = 0; k < q.n(); ++k) adj[k] = add(mutate_matrix(b, k));
    mc.adjacency[cur] = std::move(adj);
  }
  return mc;
}

}  // namespace

MutationClass mutation_class(const Quiver& q, std::size_t limit) { return explore_class(q, limit, nullptr, nullptr); }

namespace {

std::optional<std::string> component_label(const IntMatrix& b, const std::vector<std::size_t>& vs) {
  const std::size_t k = vs.size();
  if (k == 1) return "A1";
  // edges with weights |b_ij b_ji|
  std::vector<std::vector<std::size_t>> adj(k);
  std::vector<std::vector<long>> w(k, std::vector<long>(k, 0));
  std::size_t edges = 0;
  int doubles = 0, triples = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t c = a + 1; c < k; ++c) {
      Integer p = abs(b(vs[a], vs[c]) * b(vs[c], vs[a]));
      if (sgn(p) == 0) continue;
      if (p > 3) return std::nullopt;
      long pw = p.get_si();
      w[a][c] = w[c][a] = pw;
      adj[a].push_back(c);
      adj[c].push_back(a);
      ++edges;
      doubles += pw == 2;
      triples += pw == 3;
    }
  if (edges != k - 1) return std::nullopt;  // connected, so tree iff k-1 edges
  if (triples) return k == 2 ? std::optional<std::string>("G2") : std::nullopt;
  std::size_t maxdeg = 0;
  for (auto& a : adj) maxdeg = std::max(maxdeg, a.size());
  if (doubles) {
    if (doubles > 1 || maxdeg > 2) return std::nullopt;
    if (k == 2) return "B2";
    // path: locate the double edge
    std::size_t e = 0, f = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t c = 0; c < k; ++c)
        if (w[a][c] == 2) e = a, f = c;
    if (adj[e].size() == 1 || adj[f].size() == 1) {
      if (adj[e].size() != 1) std::swap(e, f);  // e is the end vertex
      // |C_ef| = |b_ef|
      return (abs(b(vs[e], vs[f])) == 2 ? "B" : "C") + std::to_string(k);
    }
    if (k == 4) return "F4";
    return std::nullopt;
  }
  if (maxdeg <= 2) return "A" + std::to_string(k);
  if (maxdeg > 3) return std::nullopt;
  std::size_t center = 0;
  int branch = 0;
  for (std::size_t a = 0; a < k; ++a)
    if (adj[a].size() == 3) center = a, ++branch;
  if (branch != 1) return std::nullopt;
  std::vector<std::size_t> arms;
  for (std::size_t start : adj[center]) {
    std::size_t len = 1, prev = center, cur = start;
    while (adj[cur].size() == 2) {
      std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(k);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) return "E" + std::to_string(k);
  return std::nullopt;
}

}  // namespace

std::optional<std::string> finite_type_label(const IntMatrix& b) {
  const std::size_t n = b.cols();
  if (n == 0) return std::nullopt;
  std::vector<int> comp(n, -1);
  std::vector<std::string> labels;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> vs;
    std::deque<std::size_t> queue{s};
    comp[s] = 1;
    while (!queue.empty()) {
      std::size_t i = queue.front();
      queue.pop_front();
      vs.push_back(i);
      for (std::size_t j = 0; j < n; ++j)
        if (comp[j] < 0 && sgn(b(i, j)) != 0) {
          comp[j] = 1;
          queue.push_back(j);
        }
    }
    std::sort(vs.begin(), vs.end());
    auto l = component_label(b, vs);
    if (!l) return std::nullopt;
    labels.push_back(*l);
  }
  std::sort(labels.begin(), labels.end());
  std::string out;
  for (auto& l : labels) out += (out.empty() ? "" : "x") + l;
  return out;
}

ClusterTypeResult cluster_type(const Quiver& q, std::size_t limit) {
  ClusterTypeResult r;
  std::optional<std::string> found;
  bool stopped = false;
  MutationClass mc = explore_class(
      Quiver(q.principal(), q.symmetrizer()), limit,
      [&](const Quiver& member) {
        found = finite_type_label(member.principal());
        return found.has_value();
      },
      &stopped);
  r.label = found;
  r.explored = mc.members.size();
  r.exhausted = !stopped && !mc.truncated;
  return r;
}

}  // namespace clusterforge
