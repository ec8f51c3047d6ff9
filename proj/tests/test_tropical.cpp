#include <gtest/gtest.h>

#include "clusterforge/errors.hpp"
#include "clusterforge/tropical.hpp"
#include "fixtures.hpp"

using namespace clusterforge;
using namespace cf_fixtures;

namespace {

Quiver b2() { return Quiver(IntMatrix{{0, 1}, {-2, 0}}); }
Quiver g2() { return Quiver(IntMatrix{{0, 1}, {-3, 0}}); }

std::string poly(const Polynomial& p) { return p.to_string(default_names("y", p.nvars())); }

}  // namespace

TEST(Tropical, PrincipalExtension) {
  EXPECT_EQ(principal_extension(a2()).matrix(), (IntMatrix{{0, 1}, {-1, 0}, {1, 0}, {0, 1}}));
  EXPECT_EQ(principal_extension(Quiver(IntMatrix(2, 2))).matrix(), (IntMatrix{{0, 0}, {0, 0}, {1, 0}, {0, 1}}));
  Quiver p = principal_extension(b3());
  EXPECT_EQ(p.m(), 6u);
  EXPECT_EQ(p.n(), 3u);
  EXPECT_EQ(p.symmetrizer(), (std::vector<Integer>{2, 2, 1}));
}

TEST(Tropical, A2Sequences) {
  TropicalPath p = tropical_path(a2(), seq({1, 2, 1, 2, 1}));
  std::vector<IntMatrix> c{{{1, 0}, {0, 1}},  {{-1, 1}, {0, 1}}, {{0, -1}, {1, -1}},
                           {{0, -1}, {-1, 0}}, {{0, 1}, {-1, 0}}, {{0, 1}, {1, 0}}};
  std::vector<IntMatrix> g{{{1, 0}, {0, 1}},  {{-1, 0}, {1, 1}}, {{-1, -1}, {1, 0}},
                           {{0, -1}, {-1, 0}}, {{0, 1}, {-1, 0}}, {{0, 1}, {1, 0}}};
  EXPECT_EQ(p.c, c);
  EXPECT_EQ(p.g, g);
  EXPECT_EQ(c_matrix(a2(), {}), IntMatrix::identity(2));
  EXPECT_EQ(g_matrix(a2(), {}), IntMatrix::identity(2));
  auto path = seq({1, 2, 1, 2, 1});
  for (std::size_t s = 0; s <= 5; ++s) {
    std::vector<std::size_t> pre(path.begin(), path.begin() + s);
    EXPECT_EQ(g_matrix_from_grading(a2(), pre), g[s]);
    // G^T C = I along the whole path
    EXPECT_TRUE((g[s].transpose() * c[s]).is_identity());
  }
}

TEST(Tropical, ValuedExamples) {
  auto s = seq({1, 2, 3, 1, 2, 3});
  EXPECT_EQ(c_matrix(c3(), s), (IntMatrix{{1, -1, 0}, {1, 0, -2}, {1, 0, -1}}));
  IntMatrix g = g_matrix(b3(), s);
  EXPECT_EQ(g, (IntMatrix{{0, -1, 0}, {-1, -1, -1}, {2, 2, 1}}));
  EXPECT_EQ(g_matrix_from_grading(b3(), s), g);
  // G(B3)^T = C(C3)^-1
  EXPECT_EQ(*c_matrix(c3(), s).inverse(), g.transpose());
  EXPECT_TRUE(check_langlands_duality(b3(), s).ok);
}

TEST(Tropical, FPolynomials) {
  auto path = seq({1, 2, 1, 2, 1});
  auto f1 = f_polynomials(a2(), {path.begin(), path.begin() + 1});
  EXPECT_EQ(poly(f1[0]), "1+y1");
  auto f2 = f_polynomials(a2(), {path.begin(), path.begin() + 2});
  EXPECT_EQ(poly(f2[1]), "1+y1+y1*y2");
  auto f3 = f_polynomials(a2(), {path.begin(), path.begin() + 3});
  EXPECT_EQ(poly(f3[0]), "1+y2");
  auto f4 = f_polynomials(a2(), {path.begin(), path.begin() + 4});
  EXPECT_EQ(poly(f4[1]), "1");
  auto f5 = f_polynomials(a2(), path);
  EXPECT_EQ(poly(f5[0]), "1");
  for (const auto& f : f_polynomials(a3(), {})) EXPECT_EQ(poly(f), "1");
  EXPECT_EQ(poly(f_polynomials(three_cycle(), seq({1}))[0]), "1+y1");
}

TEST(Tropical, ElementaryPair) {
  auto p = elementary_pair(a2().matrix(), 0, 1);
  EXPECT_EQ(p.e, (IntMatrix{{-1, 0}, {1, 1}}));
  EXPECT_EQ(p.f, (IntMatrix{{-1, 1}, {0, 1}}));
  EXPECT_THROW(elementary_pair(a2().matrix(), 2, 1), VertexOutOfRange);
  std::mt19937 rng(41);
  for (int it = 0; it < 300; ++it) {
    Quiver q = random_skew_symmetrizable(rng, 1 + it % 5, false);
    IntMatrix d = diagonal_matrix(q.symmetrizer());
    for (std::size_t k = 0; k < q.n(); ++k)
      for (int eps : {1, -1}) {
        auto [e, f] = elementary_pair(q.matrix(), k, eps);
        ASSERT_TRUE((e * e).is_identity());
        ASSERT_TRUE((f * f).is_identity());
        ASSERT_EQ(e * q.mutate(k).matrix(), q.matrix() * f);
        ASSERT_EQ(e.transpose() * d * f, d);
        // inverse under mutation, opposite and Langlands dual
        ASSERT_EQ(elementary_pair(q.mutate(k).matrix(), k, -eps).e, e);
        ASSERT_EQ(elementary_pair(q.opposite().matrix(), k, eps).e, elementary_pair(q.matrix(), k, -eps).e);
        ASSERT_EQ(elementary_pair(q.langlands_dual().matrix(), k, eps).e.transpose(), f);
      }
  }
}

TEST(Tropical, DualitiesOnRandomQuivers) {
  std::mt19937 rng(43);
  for (int it = 0; it < 200; ++it) {
    std::size_t n = 1 + it % 4;
    Quiver q = random_skew_symmetrizable(rng, n, false, 2);
    std::uniform_int_distribution<std::size_t> len(0, 10);
    auto s = random_sequence(rng, n, len(rng));
    auto t = check_tropical_duality(q, s);
    ASSERT_TRUE(t.ok) << q.matrix() << " " << (t.failures.empty() ? "" : t.failures.front());
    auto l = check_langlands_duality(q, {s.begin(), s.begin() + std::min<std::size_t>(s.size(), 8)});
    ASSERT_TRUE(l.ok) << q.matrix() << " " << (l.failures.empty() ? "" : l.failures.front());
    ASSERT_EQ(abs(g_matrix(q, s).determinant()), 1);
  }
  EXPECT_TRUE(check_tropical_duality(a2(), {}).ok);
  // skew-symmetric: Q^vee = Q, so G^T = C^-1
  auto s = seq({1, 2, 3, 2, 1});
  EXPECT_EQ(*c_matrix(three_cycle(), s).inverse(), g_matrix(three_cycle(), s).transpose());
}

TEST(Tropical, SignCoherenceSkewSymmetric) {
  std::mt19937 rng(47);
  for (int it = 0; it < 200; ++it) {
    std::size_t n = 1 + it % 5;
    Quiver q = random_skew_symmetrizable(rng, n, true, 2);
    ASSERT_NO_THROW(tropical_path(q, random_sequence(rng, n, 15))) << q.matrix();
  }
}

TEST(Tropical, GradingAgreesWithProductFormula) {
  std::mt19937 rng(53);
  for (int it = 0; it < 60; ++it) {
    std::size_t n = 2 + it % 3;
    Quiver q = random_skew_symmetrizable(rng, n, it % 2 == 0, 1);
    auto s = random_sequence(rng, n, 5);
    ASSERT_EQ(g_matrix_from_grading(q, s), g_matrix(q, s)) << q.matrix();
    for (const auto& f : f_polynomials(q, s)) ASSERT_EQ(f.constant_term(), 1);
  }
}

TEST(Tropical, BraidRelations) {
  auto r0 = braid_check(IntMatrix(2, 2), 0, 1);
  EXPECT_EQ(r0.factors, 2u);
  EXPECT_TRUE(r0.holds_plus && r0.holds_minus);
  auto r1 = braid_check(a2().matrix(), 0, 1);
  EXPECT_EQ(r1.factors, 3u);
  EXPECT_TRUE(r1.holds_plus && r1.holds_minus);
  auto r2 = braid_check(b2().matrix(), 0, 1);
  EXPECT_EQ(r2.factors, 4u);
  EXPECT_TRUE(r2.holds_plus && r2.holds_minus);
  auto r3 = braid_check(g2().matrix(), 1, 0);
  EXPECT_EQ(r3.factors, 6u);
  EXPECT_TRUE(r3.holds_plus && r3.holds_minus);
  EXPECT_THROW(braid_check(IntMatrix{{0, 2}, {-2, 0}}, 0, 1), NotApplicable);
  EXPECT_TRUE(braid_check(b3().matrix(), 0, 2).holds_plus);
}

TEST(Tropical, SeparationFormulas) {
  // principal coefficients as a geometric seed
  Seed prin = Seed::initial(principal_extension(a2()));
  auto path = seq({1, 2, 1, 2, 1});
  for (std::size_t s = 0; s <= path.size(); ++s) {
    std::vector<std::size_t> pre(path.begin(), path.begin() + s);
    EXPECT_EQ(separation_evaluate(prin, pre), prin.at(pre)) << s;
  }
  EXPECT_EQ(separation_evaluate(prin, seq({1})).cluster_strings()[0], "(x2+x3)/x1");
  Seed uni = Seed::initial_universal(a2());
  EXPECT_EQ(separation_evaluate(uni, {}), uni);
  EXPECT_EQ(separation_evaluate(uni, seq({1, 2})), uni.at(seq({1, 2})));

  std::mt19937 rng(59);
  for (int it = 0; it < 40; ++it) {
    std::size_t n = 1 + it % 3;
    Quiver q = random_skew_symmetrizable(rng, n, false, 2);
    auto s = random_sequence(rng, n, 4);
    Seed a = it % 3 == 0 ? Seed::initial_universal(q)
           : it % 3 == 1 ? Seed::initial(principal_extension(q))
                         : Seed::initial_tropical(q, std::vector<std::vector<Integer>>(n, {Integer(1), Integer(-1)}));
    ASSERT_EQ(separation_evaluate(a, s), a.at(s)) << q.matrix();
  }
}
