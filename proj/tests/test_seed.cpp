#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <set>

#include "clusterforge/errors.hpp"
#include "clusterforge/seed.hpp"
#include "fixtures.hpp"

using namespace clusterforge;
using namespace cf_fixtures;

namespace {

std::vector<std::string> strs(const Seed& s) { return s.cluster_strings(); }

RationalFunction rf(const std::string& text, const Seed& s) { return parse_rational_function(text, s.names()); }

// relabel mutable vertices: new vertex i carries old vertex perm[i]
Seed permuted(const Seed& s, const std::vector<std::size_t>& perm) {
  Quiver q(relabel(s.quiver().matrix(), perm));
  std::vector<RationalFunction> x;
  Coefficients y = s.coefficients();
  for (std::size_t i = 0; i < s.n(); ++i) {
    x.push_back(s.cluster()[perm[i]]);
    if (y.kind == CoefficientKind::Tropical) y.tropical[i] = s.coefficients().tropical[perm[i]];
    if (y.kind == CoefficientKind::Universal) y.universal[i] = s.coefficients().universal[perm[i]];
  }
  return Seed(q, x, y, s.names());
}

Quiver b2() { return Quiver(IntMatrix{{0, 1}, {-2, 0}}); }
Quiver g2() { return Quiver(IntMatrix{{0, 1}, {-3, 0}}); }
Quiver kronecker() { return Quiver(IntMatrix{{0, 2}, {-2, 0}}); }

}  // namespace

TEST(SeedMutation, A3Examples) {
  Seed s = Seed::initial(a3());
  Seed s1 = s.mutate(0);
  EXPECT_EQ(strs(s1), (std::vector<std::string>{"(1+x2)/x1", "x2", "x3"}));
  EXPECT_EQ(s1.quiver(), from_arrows(3, {{2, 1}, {2, 3}}));
  Seed s2 = s.mutate(1);
  EXPECT_EQ(strs(s2), (std::vector<std::string>{"x1", "(x1+x3)/x2", "x3"}));
  EXPECT_EQ(s2.quiver(), from_arrows(3, {{1, 3}, {2, 1}, {3, 2}}));
  EXPECT_EQ(s1.mutate(0), s);
  EXPECT_EQ(s2.mutate(1), s);
  EXPECT_THROW(s.mutate(3), VertexOutOfRange);
}

TEST(SeedMutation, UniversalCoefficients) {
  Seed s = Seed::initial_universal(a2());
  Seed t = s.mutate(0);
  EXPECT_EQ(t.cluster()[0], rf("(y1+x2)/(x1*(1+y1))", s));
  EXPECT_EQ(t.coefficients().universal[0], rf("1/y1", s));
  EXPECT_EQ(t.coefficients().universal[1], rf("y1*y2/(1+y1)", s));
  EXPECT_EQ(t.mutate(0), s);
}

TEST(SeedMutation, SquareQuiverYSeed) {
  Quiver q = from_arrows(4, {{1, 2}, {2, 3}, {3, 1}, {3, 4}, {4, 2}});
  Seed s = Seed::initial_universal(q);
  Coefficients y = mutate_coefficients(s.coefficients(), q.matrix(), 0);
  EXPECT_EQ(y.universal[0], rf("1/y1", s));
  EXPECT_EQ(y.universal[1], rf("y2/(1+1/y1)", s));
  EXPECT_EQ(y.universal[2], rf("y3*(1+y1)", s));
  EXPECT_EQ(y.universal[3], rf("y4", s));
  EXPECT_EQ(mutate_coefficients(y, q.mutate(0).matrix(), 0), s.coefficients());
}

TEST(SeedMutation, AllOnesInUniversalSemifield) {
  std::mt19937 rng(3);
  for (int it = 0; it < 30; ++it) {
    Quiver q = random_skew_symmetrizable(rng, 1 + it % 4, false);
    const std::size_t n = q.n();
    Coefficients y;
    y.kind = CoefficientKind::Universal;
    for (std::size_t j = 0; j < n; ++j) y.universal.push_back(RationalFunction::constant(1, 1));
    for (std::size_t k = 0; k < n; ++k) {
      Coefficients r = mutate_coefficients(y, q.matrix(), k);
      for (std::size_t j = 0; j < n; ++j) {
        RationalFunction want = j == k ? RationalFunction::constant(1, 1)
                                       : RationalFunction::constant(1, 2).pow(-q(k, j).get_si());
        EXPECT_EQ(r.universal[j], want);
      }
    }
  }
}

TEST(SeedMutation, TropicalMatchesRule) {
  // principal coefficients on A2: mutation at 1 flips the first c-vector
  Seed s = Seed::initial_tropical(a2(), {{1, 0}, {0, 1}});
  Seed t = s.mutate(0);
  EXPECT_EQ(t.coefficients().tropical, (std::vector<std::vector<Integer>>{{-1, 0}, {1, 1}}));
  EXPECT_EQ(t.cluster()[0], rf("(y1+x2)/x1", s));
  EXPECT_EQ(t.mutate(0), s);
}

TEST(SeedAt, PentagonPeriodicityAndChain) {
  Seed s = Seed::initial(a2());
  EXPECT_EQ(s.at({}), s);
  Seed t = s.at(seq({1, 2, 1, 2, 1}));
  EXPECT_EQ(strs(t), (std::vector<std::string>{"x2", "x1"}));
  EXPECT_EQ(strs(s.at(seq({1}))), (std::vector<std::string>{"(1+x2)/x1", "x2"}));
  EXPECT_EQ(strs(s.at(seq({1, 2}))), (std::vector<std::string>{"(1+x2)/x1", "(1+x1+x2)/(x1*x2)"}));
  EXPECT_EQ(strs(s.at(seq({1, 2, 1}))), (std::vector<std::string>{"(1+x1)/x2", "(1+x1+x2)/(x1*x2)"}));
  auto sigma = seed_isomorphism(s, t);
  ASSERT_TRUE(sigma);
  EXPECT_EQ(*sigma, (std::vector<std::size_t>{1, 0}));
}

TEST(SeedAt, GeometricEqualsTropicalEncoding) {
  std::mt19937 rng(5);
  for (int it = 0; it < 25; ++it) {
    std::size_t n = 1 + it % 3, f = 1 + it % 2;
    Quiver p = random_skew_symmetrizable(rng, n, true, 2);
    IntMatrix bt(n + f, n);
    std::uniform_int_distribution<long> d(-2, 2);
    for (std::size_t i = 0; i < n + f; ++i)
      for (std::size_t j = 0; j < n; ++j) bt(i, j) = i < n ? p(i, j) : Integer(d(rng));
    Quiver ice(bt);
    Seed geo = Seed::initial(ice);
    std::vector<std::vector<Integer>> y(n, std::vector<Integer>(f));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < f; ++i) y[j][i] = bt(n + i, j);
    Seed trop = Seed::initial_tropical(p, y, default_names("x", f, n + 1));
    ASSERT_EQ(geo.names(), trop.names());
    auto s = random_sequence(rng, n, 6);
    Seed g = geo, t = trop;
    for (auto k : s) {
      g = g.mutate(k);
      t = t.mutate(k);
      ASSERT_EQ(g.cluster(), t.cluster());
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < f; ++i) ASSERT_EQ(g.quiver()(n + i, j), t.coefficients().tropical[j][i]);
    }
  }
}

TEST(SeedIsomorphism, AgreesWithBruteForce) {
  std::mt19937 rng(17);
  int iso = 0, non = 0;
  for (int it = 0; it < 120; ++it) {
    std::size_t n = 1 + it % 4;
    Quiver q = random_skew_symmetrizable(rng, n, it % 2 == 0, 1);
    Seed s = it % 3 == 0 ? Seed::initial_universal(q) : Seed::initial(q);
    Seed a = s.at(random_sequence(rng, n, 3));
    Seed b = s.at(random_sequence(rng, n, 3));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (const Seed* c : {&b, &a}) {
      Seed bp = permuted(*c, perm);
      auto fast = seed_isomorphism(a, bp);
      auto slow = seed_isomorphism_bruteforce(a, bp);
      ASSERT_EQ(fast.has_value(), slow.has_value());
      if (fast) {
        ++iso;
        EXPECT_EQ(*fast, *slow);
      } else {
        ++non;
      }
    }
  }
  EXPECT_GT(iso, 100);
  EXPECT_GT(non, 20);
}

TEST(ExchangeGraph, FiniteTypeCounts) {
  auto a2g = exchange_graph(Seed::initial(a2()));
  EXPECT_FALSE(a2g.truncated);
  EXPECT_EQ(a2g.vertex_count(), 5u);
  EXPECT_EQ(a2g.edge_count(), 5u);
  auto a3g = exchange_graph(Seed::initial(a3()));
  EXPECT_EQ(a3g.vertex_count(), 14u);
  EXPECT_EQ(a3g.edge_count(), 21u);
  auto b3g = exchange_graph(Seed::initial(b3()));
  EXPECT_EQ(b3g.vertex_count(), 20u);
  EXPECT_EQ(b3g.edge_count(), 30u);
  EXPECT_EQ(exchange_graph(Seed::initial(b2())).vertex_count(), 6u);
  EXPECT_EQ(exchange_graph(Seed::initial(g2())).vertex_count(), 8u);
  // type D4 through the Gr(3,6) quiver: 50 clusters
  EXPECT_EQ(exchange_graph(Seed::initial(gr36())).vertex_count(), 50u);
}

TEST(ExchangeGraph, StructureAndPaths) {
  auto g = exchange_graph(Seed::initial(a3()));
  std::set<std::string> digests(g.digests.begin(), g.digests.end());
  EXPECT_EQ(digests.size(), g.vertex_count());
  ASSERT_EQ(g.seeds.size(), g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (long u : g.adjacency[v]) ASSERT_GE(u, 0);
    EXPECT_TRUE(seed_isomorphism(g.seeds[v], g.seeds[0].at(g.path_to(v))));
  }
}

TEST(ExchangeGraph, NeighborhoodClosesPentagon) {
  auto g = exchange_neighborhood(Seed::initial(a2()), 2);
  EXPECT_EQ(g.vertex_count(), 5u);
  EXPECT_EQ(g.edge_count(), 5u);
  auto h = exchange_neighborhood(Seed::initial(a3()), 1);
  EXPECT_EQ(h.vertex_count(), 4u);
  EXPECT_EQ(h.edge_count(), 3u);
}

TEST(ExchangeGraph, TruncatesInfiniteTypeQuickly) {
  auto t0 = std::chrono::steady_clock::now();
  auto g = exchange_graph(Seed::initial(kronecker()), 1000);
  EXPECT_TRUE(g.truncated);
  EXPECT_EQ(g.vertex_count(), 1000u);
  auto cv = cluster_variables(Seed::initial(kronecker()), 1000);
  EXPECT_TRUE(cv.truncated);
  EXPECT_GE(cv.count, 1000u);
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(secs, 10.0);
  auto m = exchange_graph(Seed::initial(markov()), 200);
  EXPECT_TRUE(m.truncated);
}

TEST(ExchangeGraph, PrincipalCoefficientsSpecialize) {
  Seed prin = Seed::initial_tropical(a2(), {{1, 0}, {0, 1}});
  Seed plain = Seed::initial(a2());
  auto g = exchange_graph(prin);
  auto h = exchange_graph(plain);
  ASSERT_EQ(g.vertex_count(), 5u);
  std::set<std::set<std::string>> gs, hs;
  std::vector<std::optional<Integer>> ones{std::nullopt, std::nullopt, Integer(1), Integer(1)};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::set<std::string> c;
    for (const auto& x : g.seeds[v].cluster()) c.insert(x.substitute(ones).to_string(prin.names()));
    // same path in the coefficient-free graph gives the specialized cluster
    auto p = plain.at(g.path_to(v)).cluster_strings();
    EXPECT_EQ(c, std::set<std::string>(p.begin(), p.end()));
    gs.insert(c);
  }
  for (const auto& s : h.seeds) {
    auto c = s.cluster_strings();
    hs.insert(std::set<std::string>(c.begin(), c.end()));
  }
  EXPECT_EQ(gs, hs);
}

TEST(ClusterVariables, Counts) {
  auto a2v = cluster_variables(Seed::initial(a2()));
  EXPECT_EQ(a2v.count, 5u);
  std::set<std::string> got;
  for (const auto& v : a2v.variables) got.insert(v.to_string(std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(got, (std::set<std::string>{"x1", "x2", "(1+x2)/x1", "(1+x1+x2)/(x1*x2)", "(1+x1)/x2"}));
  EXPECT_EQ(cluster_variables(Seed::initial(a3())).count, 9u);
  EXPECT_EQ(cluster_variables(Seed::initial(b2())).count, 6u);
  EXPECT_EQ(cluster_variables(Seed::initial(g2())).count, 8u);
}

TEST(ClusterVariables, DenominatorVectors) {
  Seed s = Seed::initial(a2());
  EXPECT_EQ(denominator_vector(rf("(x1+1+x2)/(x1*x2)", s), 2), (std::vector<Integer>{1, 1}));
  EXPECT_EQ(denominator_vector(rf("x1", s), 2), (std::vector<Integer>{-1, 0}));
  EXPECT_THROW(denominator_vector(rf("1/(1+x1)", s), 2), NonLaurent);
  EXPECT_THROW(denominator_vector(rf("1/(2*x1)", s), 2), NonLaurent);

  auto cv = cluster_variables(Seed::initial(a3()));
  std::set<std::vector<Integer>> roots;
  for (const auto& v : cv.variables) {
    auto d = denominator_vector(v, 3);
    if (std::any_of(d.begin(), d.end(), [](const Integer& z) { return z < 0; })) continue;
    roots.insert(d);
  }
  std::set<std::vector<Integer>> want{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 1, 1}};
  EXPECT_EQ(roots, want);
}

TEST(ClusterVariables, FrozenVariablesMayOnlyAppearInNumerators) {
  Seed s = Seed::initial(Quiver(IntMatrix{{0, 1}, {-1, 0}, {1, 0}}));
  auto cv = cluster_variables(s);
  EXPECT_EQ(cv.count, 5u);
  EXPECT_THROW(denominator_vector(rf("1/(x1*x3)", s), 2), NonLaurent);
}

TEST(Properties, LaurentPhenomenon) {
  // wild quivers blow up quickly; a walk stops early once entries or
  // numerators get large, every seed reached is still checked
  std::mt19937 rng(23);
  std::size_t steps = 0;
  for (int it = 0; it < 150; ++it) {
    std::size_t n = 2 + it % 3;
    Quiver q = random_skew_symmetrizable(rng, n, false, 2);
    Seed s = Seed::initial(q);
    for (auto k : random_sequence(rng, n, 8)) {
      std::size_t terms = 0;
      for (const auto& v : s.cluster()) terms = std::max(terms, v.numerator().size());
      bool big = terms > 2000;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) big = big || abs(s.quiver()(i, j)) > 6;
      if (big) break;
      s = s.mutate(k);
      ++steps;
      for (const auto& v : s.cluster()) ASSERT_NO_THROW(denominator_vector(v, n));
    }
  }
  EXPECT_GT(steps, 900u);
}

TEST(Properties, FactorialityWitness) {
  Seed s = Seed::initial(a3());
  RationalFunction x1 = s.cluster()[0], x3 = s.cluster()[2];
  RationalFunction y1 = s.mutate(0).cluster()[0], y3 = s.mutate(2).cluster()[2];
  EXPECT_EQ(y1 * x1, y3 * x3);
  std::vector<RationalFunction> f{x1, x3, y1, y3};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) EXPECT_NE(f[i], f[j]);
}
