#include "clusterforge/qp.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "clusterforge/errors.hpp"

namespace clusterforge {

namespace {

using Terms = std::map<Word, Rational>;

void accumulate(Terms& t, const Word& w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto it = t.find(w);
  if (it == t.end()) {
    t.emplace(w, c);
    return;
  }
  it->second += c;
  if (sgn(it->second) == 0) t.erase(it);
}

std::string star(const std::string& name) {
  if (!name.empty() && name.back() == '*') return name.substr(0, name.size() - 1);
  return name + "*";
}

// Simultaneous substitution of arrows by parallel path combinations, applied
// to every cycle of w; words longer than n are dropped.
Terms substitute(const Terms& w, const std::map<std::size_t, Terms>& images, std::size_t n) {
  Terms out;
  for (const auto& [cycle, c] : w) {
    Terms acc{{Word{}, c}};
    for (std::size_t letter : cycle) {
      Terms next;
      auto img = images.find(letter);
      for (const auto& [pre, pc] : acc) {
        if (img == images.end()) {
          if (pre.size() + 1 > n) continue;
          Word x = pre;
          x.push_back(letter);
          accumulate(next, x, pc);
          continue;
        }
        for (const auto& [piece, qc] : img->second) {
          if (pre.size() + piece.size() > n) continue;
          Word x = pre;
          x.insert(x.end(), piece.begin(), piece.end());
          accumulate(next, x, pc * qc);
        }
      }
      acc = std::move(next);
    }
    for (const auto& [word, wc] : acc) accumulate(out, canonical_rotation(word), wc);
  }
  return out;
}

class Eliminator {
 public:
  void add(std::map<std::size_t, Rational> row) {
    while (!row.empty()) {
      auto [col, lead] = *row.begin();
      auto p = pivots_.find(col);
      if (p == pivots_.end()) {
        Rational inv = 1 / lead;
        for (auto& [c, v] : row) v *= inv;
        pivots_.emplace(col, std::move(row));
        return;
      }
      for (const auto& [c, v] : p->second) {
        Rational& slot = row[c];
        slot -= lead * v;
        if (sgn(slot) == 0) row.erase(c);
      }
    }
  }
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<std::size_t, std::map<std::size_t, Rational>> pivots_;
};

}  // namespace

void PathElement::add(const Word& w, const Rational& c) {
  if (w.size() > truncation) return;
  accumulate(terms, w, c);
}

Word canonical_rotation(const Word& cycle) {
  Word best = cycle;
  for (std::size_t r = 1; r < cycle.size(); ++r) {
    Word rot(cycle.begin() + r, cycle.end());
    rot.insert(rot.end(), cycle.begin(), cycle.begin() + r);
    if (rot < best) best = std::move(rot);
  }
  return best;
}

QuiverWithPotential::QuiverWithPotential(std::size_t vertices, std::vector<QpArrow> arrows, std::size_t truncation)
    : n_(vertices), arrows_(std::move(arrows)), truncation_(truncation) {
  std::set<std::string> names;
  for (const auto& a : arrows_) {
    if (a.source >= n_ || a.target >= n_)
      throw VertexOutOfRange("arrow " + a.name + " leaves the vertex range 1.." + std::to_string(n_));
    if (a.source == a.target) throw LoopPresent("arrow " + a.name + " is a loop");
    if (a.name.empty()) throw InvalidArgument("arrow without a name");
    if (!names.insert(a.name).second) throw InvalidArgument("duplicate arrow name " + a.name);
  }
}

void QuiverWithPotential::set_truncation(std::size_t n) {
  truncation_ = n;
  for (auto it = w_.begin(); it != w_.end();) it = it->first.size() > n ? w_.erase(it) : std::next(it);
}

std::optional<std::size_t> QuiverWithPotential::arrow_index(const std::string& name) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].name == name) return i;
  return std::nullopt;
}

void QuiverWithPotential::add_cycle(const std::vector<std::string>& names, const Rational& c) {
  Word w;
  for (const auto& s : names) {
    auto i = arrow_index(s);
    if (!i) throw UnknownArrow("no arrow named " + s);
    w.push_back(*i);
  }
  add_word(w, c);
}

void QuiverWithPotential::add_word(const Word& cycle, const Rational& c) {
  if (cycle.size() < 2) throw InvalidArgument("potential terms must be cycles of length >= 2");
  for (auto i : cycle)
    if (i >= arrows_.size()) throw UnknownArrow("arrow index " + std::to_string(i) + " out of range");
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i)
    if (arrows_[cycle[i]].source != arrows_[cycle[i + 1]].target)
      throw InvalidArgument("arrows " + arrows_[cycle[i]].name + ", " + arrows_[cycle[i + 1]].name + " do not compose");
  if (arrows_[cycle.front()].target != arrows_[cycle.back()].source)
    throw InvalidArgument("potential term is not a cycle");
  if (cycle.size() > truncation_) return;
  accumulate(w_, canonical_rotation(cycle), c);
}

IntMatrix QuiverWithPotential::exchange_matrix() const {
  IntMatrix b(n_, n_);
  for (const auto& a : arrows_) {
    b(a.source, a.target) += 1;
    b(a.target, a.source) -= 1;
  }
  return b;
}

bool QuiverWithPotential::on_two_cycle(std::size_t k) const {
  for (const auto& a : arrows_) {
    if (a.source != k) continue;
    for (const auto& b : arrows_)
      if (b.source == a.target && b.target == k) return true;
  }
  return false;
}

std::vector<std::string> QuiverWithPotential::cycle_names(const Word& cycle) const {
  std::vector<std::string> out;
  for (auto i : cycle) out.push_back(arrows_[i].name);
  return out;
}

std::string QuiverWithPotential::potential_string() const {
  if (w_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [cycle, c] : w_) {
    Rational a = abs(c);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    if (a != 1) os << a.get_str() << " ";
    for (std::size_t i = 0; i < cycle.size(); ++i) os << (i ? " " : "") << arrows_[cycle[i]].name;
  }
  return os.str();
}

PathElement cyclic_derivative(const QuiverWithPotential& qp, std::size_t arrow) {
  if (arrow >= qp.arrows().size()) throw UnknownArrow("arrow index " + std::to_string(arrow) + " out of range");
  PathElement out;
  out.truncation = qp.truncation();
  for (const auto& [cycle, c] : qp.potential()) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (cycle[i] != arrow) continue;
      // p = u a v  ->  v u
      Word vu(cycle.begin() + i + 1, cycle.end());
      vu.insert(vu.end(), cycle.begin(), cycle.begin() + i);
      out.add(vu, c);
    }
  }
  return out;
}

PathElement cyclic_derivative(const QuiverWithPotential& qp, const std::string& arrow) {
  auto i = qp.arrow_index(arrow);
  if (!i) throw UnknownArrow("no arrow named " + arrow);
  return cyclic_derivative(qp, *i);
}

std::size_t jacobian_dimension_at(const QuiverWithPotential& qp, std::size_t n) {
  if (n == 0) return 0;
  const auto& arrows = qp.arrows();
  struct P {
    Word w;
    std::size_t s, t;
  };
  // all paths of length < n; lazy paths have an empty word
  std::vector<P> paths;
  std::map<std::pair<std::size_t, Word>, std::size_t> index;
  for (std::size_t v = 0; v < qp.vertices(); ++v) paths.push_back({{}, v, v});
  std::size_t begin = 0, end = paths.size();
  for (std::size_t len = 1; len < n; ++len) {
    for (std::size_t p = begin; p < end; ++p)
      for (std::size_t a = 0; a < arrows.size(); ++a) {
        if (arrows[a].source != paths[p].t) continue;
        Word w{a};
        w.insert(w.end(), paths[p].w.begin(), paths[p].w.end());
        paths.push_back({std::move(w), paths[p].s, arrows[a].target});
      }
    begin = end;
    end = paths.size();
    if (begin == end) break;
  }
  for (std::size_t i = 0; i < paths.size(); ++i)
    index.emplace(std::make_pair(paths[i].w.empty() ? paths[i].s : SIZE_MAX, paths[i].w), i);

  Eliminator elim;
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    PathElement r = cyclic_derivative(qp, a);
    std::size_t low = SIZE_MAX;
    for (const auto& [w, c] : r.terms) low = std::min(low, w.size());
    if (r.is_zero() || low >= n) continue;
    for (const auto& u : paths) {
      if (u.s != arrows[a].source) continue;
      for (const auto& v : paths) {
        if (v.t != arrows[a].target || u.w.size() + v.w.size() + low >= n) continue;
        std::map<std::size_t, Rational> row;
        for (const auto& [w, c] : r.terms) {
          if (u.w.size() + w.size() + v.w.size() >= n) continue;
          Word x = u.w;
          x.insert(x.end(), w.begin(), w.end());
          x.insert(x.end(), v.w.begin(), v.w.end());
          std::pair<std::size_t, Word> key{x.empty() ? u.s : SIZE_MAX, x};
          row[index.at(key)] += c;
        }
        std::erase_if(row, [](const auto& kv) { return sgn(kv.second) == 0; });
        elim.add(std::move(row));
      }
    }
  }
  return paths.size() - elim.rank();
}

JacobianDimension jacobian_dimension(const QuiverWithPotential& qp, std::size_t n) {
  if (n == 0) throw InvalidArgument("truncation must be at least 1");
  std::size_t a = jacobian_dimension_at(qp, n), b = jacobian_dimension_at(qp, n + 1);
  return {a, a == b};
}

QuiverWithPotential premutation(const QuiverWithPotential& qp, std::size_t k) {
  const std::size_t n = qp.vertices();
  if (k >= n) throw VertexOutOfRange("vertex " + std::to_string(k + 1) + " outside 1.." + std::to_string(n));
  const auto& old = qp.arrows();
  if (qp.on_two_cycle(k)) throw VertexOnTwoCycle("vertex " + std::to_string(k + 1) + " lies on a 2-cycle");

  std::vector<QpArrow> arrows;
  std::set<std::string> used;
  for (const auto& a : old) {
    bool touches = a.source == k || a.target == k;
    arrows.push_back(touches ? QpArrow{star(a.name), a.target, a.source} : a);
    used.insert(arrows.back().name);
  }
  // composite [alpha beta] for alpha: k -> j, beta: i -> k
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp;
  for (std::size_t al = 0; al < old.size(); ++al) {
    if (old[al].source != k) continue;
    for (std::size_t be = 0; be < old.size(); ++be) {
      if (old[be].target != k) continue;
      std::string name = "[" + old[al].name + old[be].name + "]";
      while (used.count(name)) name += "'";
      used.insert(name);
      comp[{al, be}] = arrows.size();
      arrows.push_back({name, old[be].source, old[al].target});
    }
  }
  QuiverWithPotential out(n, arrows, qp.truncation());

  for (const auto& [cycle, c] : qp.potential()) {
    // rotate so the cycle does not start (and end) at k
    std::size_t r = 0;
    while (r < cycle.size() && old[cycle[r]].target == k) ++r;
    if (r == cycle.size()) throw InvalidArgument("every rotation of a potential term passes through k");
    Word rot(cycle.begin() + r, cycle.end());
    rot.insert(rot.end(), cycle.begin(), cycle.begin() + r);
    Word w;
    for (std::size_t i = 0; i < rot.size(); ++i) {
      if (old[rot[i]].source == k) {
        w.push_back(comp.at({rot[i], rot[i + 1]}));
        ++i;
      } else {
        w.push_back(rot[i]);
      }
    }
    out.add_word(w, c);
  }
  // Delta = sum [alpha beta] beta* alpha*
  for (const auto& [ab, idx] : comp) out.add_word(Word{idx, ab.second, ab.first}, 1);
  return out;
}

Reduction reduce(const QuiverWithPotential& qp, std::size_t n) {
  const auto& arrows = qp.arrows();
  Terms w;
  for (const auto& [c, v] : qp.potential())
    if (c.size() <= n) w.emplace(c, v);
  auto parallel = [&](std::size_t x, std::size_t y) {
    return arrows[x].source == arrows[y].source && arrows[x].target == arrows[y].target;
  };
  auto coeff = [&](std::size_t x, std::size_t y) {
    auto it = w.find(canonical_rotation(Word{x, y}));
    return it == w.end() ? Rational(0) : it->second;
  };

  bool quadratic = std::any_of(qp.potential().begin(), qp.potential().end(), [](const auto& t) { return t.first.size() == 2; });
  if (quadratic && n < 2) throw DegenerateQuadraticPart("truncation below 2 cannot see the quadratic part");

  // quadratic part: pivot pairs u w with coefficient 1, nothing else pairs with them
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::vector<bool> used(arrows.size(), false);
  while (true) {
    std::optional<std::pair<std::size_t, std::size_t>> pick;
    for (const auto& [c, v] : w)
      if (c.size() == 2 && !used[c[0]] && !used[c[1]]) {
        pick = std::make_pair(c[0], c[1]);
        break;
      }
    if (!pick) break;
    auto [u, v] = *pick;
    Rational lead = coeff(u, v);
    Terms img{{Word{v}, 1 / lead}};
    for (std::size_t y = 0; y < arrows.size(); ++y)
      if (y != v && !used[y] && parallel(y, v)) accumulate(img, Word{y}, -coeff(u, y) / lead);
    w = substitute(w, {{v, img}}, n);
    Terms img2{{Word{u}, 1}};
    for (std::size_t x = 0; x < arrows.size(); ++x)
      if (x != u && !used[x] && parallel(x, u)) accumulate(img2, Word{x}, -coeff(x, v));
    w = substitute(w, {{u, img2}}, n);
    if (coeff(u, v) != 1) throw DegenerateQuadraticPart("pivot normalization failed");
    used[u] = used[v] = true;
    pivots.emplace_back(u, v);
  }
  std::vector<std::size_t> partner(arrows.size(), SIZE_MAX);
  for (auto [u, v] : pivots) partner[u] = v, partner[v] = u;

  // higher terms through pivot arrows, one degree at a time
  for (std::size_t d = 3; d <= n; ++d) {
    while (true) {
      std::optional<std::pair<Word, Rational>> target;
      for (const auto& [c, v] : w)
        if (c.size() == d && std::any_of(c.begin(), c.end(), [&](std::size_t a) { return used[a]; })) {
          target = std::make_pair(c, v);
          break;
        }
      if (!target) break;
      auto& [cycle, c] = *target;
      std::size_t r = 0;
      while (!used[cycle[r]]) ++r;
      Word p(cycle.begin() + r + 1, cycle.end());
      p.insert(p.end(), cycle.begin(), cycle.begin() + r);
      std::size_t y = partner[cycle[r]];
      // x p + x y (or y x)  with  y -> y - c p
      Terms img{{Word{y}, 1}};
      accumulate(img, p, -c);
      w = substitute(w, {{y, img}}, n);
      if (w.count(cycle)) throw std::logic_error("reduction failed to cancel a term");
    }
  }

  // split
  std::vector<std::size_t> triv_map(arrows.size(), SIZE_MAX), red_map(arrows.size(), SIZE_MAX);
  std::vector<QpArrow> ta, ra;
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    if (used[a]) {
      triv_map[a] = ta.size();
      ta.push_back(arrows[a]);
    } else {
      red_map[a] = ra.size();
      ra.push_back(arrows[a]);
    }
  }
  Reduction out{QuiverWithPotential(qp.vertices(), ta, n), QuiverWithPotential(qp.vertices(), ra, n)};
  for (const auto& [c, v] : w) {
    bool triv = used[c[0]];
    Word x;
    for (auto a : c) {
      if (used[a] != triv) throw std::logic_error("reduced potential still involves a trivial arrow");
      x.push_back(triv ? triv_map[a] : red_map[a]);
    }
    (triv ? out.trivial : out.reduced).add_word(x, v);
  }
  return out;
}

QuiverWithPotential mutate_qp(const QuiverWithPotential& qp, std::size_t k, std::size_t n) {
  if (k >= qp.vertices())
    throw VertexOutOfRange("vertex " + std::to_string(k + 1) + " outside 1.." + std::to_string(qp.vertices()));
  if (qp.on_two_cycle(k)) throw TwoCycleAtVertex("cannot mutate at vertex " + std::to_string(k + 1) + ": it lies on a 2-cycle");
  return reduce(premutation(qp, k), n).reduced;
}

}  // namespace clusterforge
