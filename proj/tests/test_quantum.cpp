#include <gtest/gtest.h>

#include "clusterforge/errors.hpp"
#include "clusterforge/quantum.hpp"
#include "clusterforge/tropical.hpp"
#include "fixtures.hpp"

using namespace clusterforge;
using namespace cf_fixtures;

namespace clusterforge {
void PrintTo(const TruncatedSeries& s, std::ostream* os) { *os << s.to_string(); }
void PrintTo(const TorusElement& t, std::ostream* os) { *os << t.to_string(); }
}  // namespace clusterforge

namespace {

IntMatrix b_a2() { return a2().matrix(); }

QCoefficient qc(const char* s) { return QCoefficient::parse(s); }

TruncatedSeries e(const IntMatrix& b, Exponents a, std::size_t n) { return qdilog(b, a, n); }

// E(Y) for an arbitrary series Y without constant term
TruncatedSeries dilog_of(const TruncatedSeries& y) {
  IntMatrix one(1, 1);
  TruncatedSeries coeffs = qdilog(one, {1}, y.order());
  TruncatedSeries acc = TruncatedSeries::one(y.form(), y.order()), pw = acc;
  for (std::size_t k = 1; k <= y.order(); ++k) {
    pw = pw * y;
    TruncatedSeries term(y.form(), y.order());
    for (const auto& [a, c] : pw.terms()) term.add_term(a, c * coeffs.coeff({static_cast<long>(k)}));
    acc = acc + term;
  }
  return acc;
}

std::vector<std::string> specialized(const QuantumSeed& s, std::size_t upto) {
  std::vector<std::string> out;
  auto names = default_names("x", s.initial.m());
  for (std::size_t i = 0; i < upto; ++i) out.push_back(s.x[i].specialize().to_string(names));
  return out;
}

}  // namespace

TEST(Quantum, Coefficients) {
  EXPECT_EQ(qc("v^2").at_one(), 1);
  EXPECT_EQ(QCoefficient::vpow(-3) * QCoefficient::vpow(3), QCoefficient(1));
  EXPECT_EQ(qc("(v^2+1)/2").at_one(), 1);
  EXPECT_EQ(qc("v/(v^2-1)").to_string(), "v/(-1+v^2)");
  EXPECT_THROW(qc("v/(v^2-1)").at_one(), PoleAtOne);
  EXPECT_EQ(qc("1/v").shifted(1), QCoefficient(1));
}

TEST(Quantum, DilogCoefficients) {
  IntMatrix one(1, 1);
  auto s = qdilog(one, {1}, 4);
  EXPECT_EQ(s.coeff({0}), QCoefficient(1));
  EXPECT_EQ(s.coeff({1}), qc("v/(v^2-1)"));
  EXPECT_EQ(s.coeff({2}), qc("v^2/((v^4-1)*(v^2-1))"));
  EXPECT_TRUE(qdilog(one, {1}, 0).is_one());
  EXPECT_THROW(qdilog(one, {0}, 3), InvalidArgument);
  // alpha = (1,1): only multiples of the diagonal appear
  auto d = qdilog(b_a2(), {1, 1}, 5);
  EXPECT_EQ(d.terms().size(), 3u);
  EXPECT_EQ(d.coeff({2, 2}), qc("v^2/((v^4-1)*(v^2-1))"));
}

TEST(Quantum, FunctionalEquation) {
  IntMatrix one(1, 1);
  for (std::size_t n : {0u, 3u, 10u}) {
    auto ey = qdilog(one, {1}, n);
    TruncatedSeries lhs = TruncatedSeries::one(one, n);
    lhs.add_term({1}, QCoefficient::vpow(1));
    EXPECT_EQ(lhs * ey, ey.scaled_q(1)) << n;
  }
}

TEST(Quantum, Pentagon) {
  const std::size_t n = 10;
  IntMatrix b = b_a2();
  auto e1 = e(b, {1, 0}, n), e2 = e(b, {0, 1}, n), e12 = e(b, {1, 1}, n);
  EXPECT_TRUE((e2.inverse() * e1.inverse() * e2 * e12 * e1).is_one());
  EXPECT_EQ(e1 * e2, e2 * e12 * e1);
  EXPECT_NE(e1 * e2, e2 * e1);
}

TEST(Quantum, QExponentialLaw) {
  const std::size_t n = 8;
  IntMatrix b = b_a2();
  // e1^T B e2 = 1
  TruncatedSeries y(b, n);
  y.add_term({1, 0}, 1);
  y.add_term({0, 1}, 1);
  EXPECT_EQ(dilog_of(y), e(b, {0, 1}, n) * e(b, {1, 0}, n));
  EXPECT_NE(dilog_of(y), e(b, {1, 0}, n) * e(b, {0, 1}, n));
  // commuting variables: E(y1 + y2) = E(y1) E(y2)
  IntMatrix z(2, 2);
  TruncatedSeries w(z, n);
  w.add_term({1, 0}, 1);
  w.add_term({0, 1}, 1);
  EXPECT_NE(dilog_of(w), e(z, {1, 0}, n) * e(z, {0, 1}, n));  // not a plain exponential
}

TEST(Quantum, SeriesInverse) {
  IntMatrix b = b_a2();
  auto s = e(b, {1, 0}, 7) * e(b, {1, 1}, 7);
  EXPECT_TRUE((s * s.inverse()).is_one());
  EXPECT_TRUE((s.inverse() * s).is_one());
  EXPECT_THROW(TruncatedSeries(b, 3).inverse(), DivisionByZero);
}

TEST(Quantum, DilogProducts) {
  IntMatrix b = b_a2();
  const std::size_t n = 10;
  auto steps = dilog_steps(b, seq({1, 2, 1, 2, 1}));
  std::vector<Exponents> betas;
  std::vector<int> signs;
  for (const auto& s : steps) betas.push_back(s.beta), signs.push_back(s.sign);
  EXPECT_EQ(betas, (std::vector<Exponents>{{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {0, -1}}));
  EXPECT_EQ(signs, (std::vector<int>{1, 1, 1, -1, -1}));
  EXPECT_TRUE(dilog_product(b, seq({1, 2, 1, 2, 1}), n).is_one());
  EXPECT_TRUE(dilog_product(b, {}, n).is_one());
  auto dt = e(b, {0, 1}, n) * e(b, {1, 1}, n) * e(b, {1, 0}, n);
  EXPECT_EQ(dilog_product(b, seq({1, 2, 1}), n), dt);
  EXPECT_EQ(dilog_product(b, seq({2, 1}), n), e(b, {1, 0}, n) * e(b, {0, 1}, n));
  EXPECT_THROW(dilog_product(b3().matrix(), seq({1}), 3), PreconditionFailed);
}

TEST(Quantum, VerifyIdentity) {
  IntMatrix b = b_a2();
  auto r = verify_identity(b, seq({1, 2, 1, 2, 1}), {}, 10);
  EXPECT_TRUE(r.equal);
  EXPECT_TRUE(r.lhs.is_one());
  EXPECT_EQ(r.permutation, (IntMatrix{{0, 1}, {1, 0}}));
  auto r2 = verify_identity(b, seq({1, 2, 1}), seq({2, 1}), 10);
  EXPECT_TRUE(r2.equal);
  EXPECT_TRUE(verify_identity(b, seq({1, 2}), seq({1, 2}), 6).equal);
  EXPECT_THROW(verify_identity(b, seq({1}), {}, 4), PreconditionFailed);
}

TEST(Quantum, CombinatorialDt) {
  IntMatrix b = b_a2();
  auto dt = combinatorial_dt(b, 10, 4);
  ASSERT_TRUE(dt.has_value());
  EXPECT_EQ(dt->series, e(b, {0, 1}, 10) * e(b, {1, 1}, 10) * e(b, {1, 0}, 10));
  // one vertex: E(e1)
  IntMatrix one(1, 1);
  auto d1 = combinatorial_dt(one, 6, 2);
  ASSERT_TRUE(d1.has_value());
  EXPECT_EQ(d1->sequence, seq({1}));
  EXPECT_EQ(d1->series, qdilog(one, {1}, 6));
  // alternating A3, 2 a sink: the sink-source sequence is shortest, the
  // six-step one runs through all positive roots
  IntMatrix alt = from_arrows(3, {{1, 2}, {3, 2}}).matrix();
  auto da = combinatorial_dt(alt, 6, 6);
  ASSERT_TRUE(da.has_value());
  EXPECT_EQ(da->sequence.size(), 3u);
  auto v = verify_identity(alt, seq({1, 3, 2, 1, 3, 2}), da->sequence, 6);
  EXPECT_TRUE(v.equal);
  EXPECT_EQ(v.lhs, da->series);
  EXPECT_EQ(v.permutation, (IntMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
  // acyclic Kronecker: the sink sequence works; the 3-cycle with doubled arrows never does
  auto dk = combinatorial_dt(IntMatrix{{0, 2}, {-2, 0}}, 4, 4);
  ASSERT_TRUE(dk.has_value());
  EXPECT_EQ(dk->sequence, seq({2, 1}));
  EXPECT_FALSE(combinatorial_dt(markov().matrix(), 2, 5).has_value());
}

TEST(Quantum, TorusArithmetic) {
  IntMatrix l{{0, 1, -2}, {-1, 0, 3}, {2, -3, 0}};
  auto x = [&](Exponents a, long c = 1) { return TorusElement::monomial(l, a, QCoefficient(c)); };
  EXPECT_EQ(x({1, 0, 0}) * x({0, 1, 0}), x({1, 1, 0}) * QCoefficient::vpow(1));
  EXPECT_EQ(x({0, 1, 0}) * x({1, 0, 0}), x({1, 1, 0}) * QCoefficient::vpow(-1));
  std::mt19937 rng(61);
  std::uniform_int_distribution<long> ex(-2, 2), co(-3, 3);
  auto rnd = [&] {
    TorusElement t(l);
    for (int i = 0; i < 3; ++i) t.add_term({ex(rng), ex(rng), ex(rng)}, QCoefficient(co(rng)) * QCoefficient::vpow(ex(rng)));
    return t;
  };
  for (int it = 0; it < 40; ++it) {
    auto a = rnd(), b = rnd(), c = rnd();
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ((a + b) * c, a * c + b * c);
    ASSERT_EQ((a * b).specialize(), a.specialize() * b.specialize());
    ASSERT_EQ((a + b).specialize(), a.specialize() + b.specialize());
    if (!a.is_zero()) ASSERT_EQ(a.left_divide(a * b), b);
  }
  EXPECT_EQ(x({1, 1, 0}).specialize().to_string(default_names("x", 3)), "x1*x2");
  EXPECT_THROW(TorusElement::monomial(l, {0, 0, 0}, qc("1/(v-1)")).specialize(), PoleAtOne);
  // (1 + x1) does not divide x2
  auto p = x({0, 0, 0}) + x({1, 0, 0});
  EXPECT_THROW(p.left_divide(x({0, 1, 0})), NonLaurent);
}

TEST(Quantum, CompatiblePairs) {
  auto p = CompatiblePair::principal_framing(b_a2());
  EXPECT_TRUE(p.unital());
  EXPECT_EQ(p.lambda, (IntMatrix{{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, -1}, {0, 1, 1, 0}}));
  EXPECT_THROW(CompatiblePair::make(b_a2(), IntMatrix{{0, 1}, {1, 0}}), IncompatibleInput);
  EXPECT_THROW(CompatiblePair::make(b_a2(), IntMatrix{{0, -1}, {1, 0}}), IncompatibleInput);
  auto coeff_free = CompatiblePair::make(b_a2(), IntMatrix{{0, 1}, {-1, 0}});
  EXPECT_EQ(coeff_free.d, (std::vector<Integer>{1, 1}));
  auto twice = CompatiblePair::make(b_a2(), IntMatrix{{0, 2}, {-2, 0}});
  EXPECT_FALSE(twice.unital());
  std::mt19937 rng(67);
  for (int it = 0; it < 60; ++it) {
    std::size_t n = 1 + it % 4;
    Quiver q = random_skew_symmetrizable(rng, n, true, 2);
    auto pr = CompatiblePair::principal_framing(q.matrix());
    auto cur = pr;
    for (auto k : random_sequence(rng, n, 6)) {
      auto next = mutate_compatible_pair(cur, k);
      ASSERT_EQ(mutate_compatible_pair(next, k), cur);
      ASSERT_EQ(next.btilde, mutate_matrix(cur.btilde, k));
      cur = next;
    }
  }
  EXPECT_THROW(mutate_compatible_pair(p, 2), VertexOutOfRange);
  EXPECT_THROW(CompatiblePair::principal_framing(b3().matrix()), PreconditionFailed);
}

TEST(Quantum, ExchangeRelation) {
  auto p = CompatiblePair::principal_framing(b_a2());
  auto s = QuantumSeed::make_initial(p).mutate(0);
  EXPECT_EQ(s.x[0].specialize().to_string(default_names("x", 4)), "(x2+x3)/x1");
  EXPECT_EQ(s.x[0].terms().size(), 2u);
  for (std::size_t j = 1; j < 4; ++j) EXPECT_EQ(s.x[j], QuantumSeed::make_initial(p).x[j]);
  auto back = s.mutate(0);
  EXPECT_EQ(back.x, QuantumSeed::make_initial(p).x);
  EXPECT_EQ(back.current, p);
}

TEST(Quantum, FivePeriodicCoefficientFree) {
  auto p = CompatiblePair::make(b_a2(), IntMatrix{{0, 1}, {-1, 0}});
  auto s0 = QuantumSeed::make_initial(p);
  auto s = s0.at(seq({1, 2, 1, 2, 1}));
  EXPECT_EQ(s.x[0], s0.x[1]);
  EXPECT_EQ(s.x[1], s0.x[0]);
}

TEST(Quantum, SpecializationMatchesClassical) {
  for (const Quiver& q : {a2(), a3(), three_cycle()}) {
    auto p = CompatiblePair::principal_framing(q.matrix());
    Seed classical = Seed::initial(principal_extension(q));
    std::mt19937 rng(71 + q.n());
    for (int it = 0; it < 12; ++it) {
      auto path = random_sequence(rng, q.n(), 1 + it % 6);
      auto qs = QuantumSeed::make_initial(p).at(path);
      ASSERT_EQ(specialized(qs, q.n()), classical.at(path).cluster_strings()) << q.matrix();
      ASSERT_EQ(qs.current.btilde, classical.at(path).quiver().matrix());
    }
  }
}

TEST(Quantum, QuantumSeedInvolution) {
  std::mt19937 rng(73);
  for (int it = 0; it < 20; ++it) {
    std::size_t n = 2 + it % 2;
    Quiver q = random_skew_symmetrizable(rng, n, true, 1);
    auto s = QuantumSeed::make_initial(CompatiblePair::principal_framing(q.matrix())).at(random_sequence(rng, n, 3));
    for (std::size_t k = 0; k < n; ++k) {
      auto back = s.mutate(k).mutate(k);
      ASSERT_EQ(back.x, s.x);
      ASSERT_EQ(back.current, s.current);
    }
  }
}

TEST(Quantum, AdjointCheck) {
  auto p = CompatiblePair::principal_framing(b_a2());
  auto r = adjoint_check(p, 0, 6);
  EXPECT_TRUE(r.ok) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_TRUE(adjoint_check(p, 1, 6).ok);
  auto p3 = CompatiblePair::principal_framing(a3().matrix());
  for (std::size_t k = 0; k < 3; ++k) EXPECT_TRUE(adjoint_check(p3, k, 6).ok) << k;
  EXPECT_THROW(adjoint_check(CompatiblePair::make(b_a2(), IntMatrix{{0, 2}, {-2, 0}}), 0, 4), PreconditionFailed);
}
