#include <gtest/gtest.h>

#include "clusterforge/errors.hpp"
#include "clusterforge/qp.hpp"
#include "clusterforge/quiver.hpp"
#include "fixtures.hpp"

using namespace clusterforge;
using namespace cf_fixtures;

namespace {

// b: 1 -> 2, a: 2 -> 3, c: 3 -> 1
QuiverWithPotential three_cycle_qp(int power = 1, std::size_t n = 12) {
  QuiverWithPotential qp(3, {{"b", 0, 1}, {"a", 1, 2}, {"c", 2, 0}}, n);
  std::vector<std::string> w;
  for (int i = 0; i < power; ++i) w.insert(w.end(), {"a", "b", "c"});
  if (power > 0) qp.add_cycle(w, 1);
  return qp;
}

QuiverWithPotential a3_qp() { return QuiverWithPotential(3, {{"a", 0, 1}, {"b", 1, 2}}); }

std::vector<std::string> names(const PathElement& p, const QuiverWithPotential& qp) {
  std::vector<std::string> out;
  for (const auto& [w, c] : p.terms) {
    std::string s = c == 1 ? "" : c.get_str() + " ";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + qp.arrows()[w[i]].name;
    out.push_back(s);
  }
  return out;
}

// potential as {cycle names -> coeff}, with rotation freedom removed
std::map<std::vector<std::string>, Rational> named(const QuiverWithPotential& qp) {
  std::map<std::vector<std::string>, Rational> out;
  for (const auto& [w, c] : qp.potential()) {
    auto n = qp.cycle_names(w);
    std::vector<std::string> best = n;
    for (std::size_t r = 1; r < n.size(); ++r) {
      std::vector<std::string> rot(n.begin() + r, n.end());
      rot.insert(rot.end(), n.begin(), n.begin() + r);
      best = std::min(best, rot);
    }
    out[best] = c;
  }
  return out;
}

}  // namespace

TEST(Qp, CyclicDerivatives) {
  auto qp = three_cycle_qp();
  EXPECT_EQ(names(cyclic_derivative(qp, "a"), qp), (std::vector<std::string>{"b c"}));
  EXPECT_EQ(names(cyclic_derivative(qp, "b"), qp), (std::vector<std::string>{"c a"}));
  EXPECT_EQ(names(cyclic_derivative(qp, "c"), qp), (std::vector<std::string>{"a b"}));
  EXPECT_THROW(cyclic_derivative(qp, "z"), UnknownArrow);
  auto sq = three_cycle_qp(2);
  EXPECT_EQ(names(cyclic_derivative(sq, "a"), sq), (std::vector<std::string>{"2 b c a b c"}));
  // a cycle without the arrow contributes nothing
  QuiverWithPotential two(3, {{"b", 0, 1}, {"a", 1, 2}, {"c", 2, 0}, {"d", 1, 0}});
  two.add_cycle({"d", "b"}, 1);
  EXPECT_TRUE(cyclic_derivative(two, "a").is_zero());
  EXPECT_EQ(names(cyclic_derivative(two, "d"), two), (std::vector<std::string>{"b"}));
}

TEST(Qp, RotationInvariance) {
  auto p = three_cycle_qp(0);
  auto q = p;
  p.add_cycle({"a", "b", "c"}, 3);
  q.add_cycle({"b", "c", "a"}, 3);
  EXPECT_EQ(p, q);
  for (const std::string& x : {"a", "b", "c"}) EXPECT_EQ(cyclic_derivative(p, x), cyclic_derivative(q, x));
  EXPECT_EQ(canonical_rotation({2, 0, 1}), (Word{0, 1, 2}));
}

TEST(Qp, Validation) {
  EXPECT_THROW(QuiverWithPotential(2, {{"l", 0, 0}}), LoopPresent);
  EXPECT_THROW(QuiverWithPotential(2, {{"a", 0, 2}}), VertexOutOfRange);
  EXPECT_THROW(QuiverWithPotential(2, {{"a", 0, 1}, {"a", 1, 0}}), InvalidArgument);
  auto qp = three_cycle_qp(0);
  EXPECT_THROW(qp.add_cycle({"a", "c", "b"}, 1), InvalidArgument);
  EXPECT_THROW(qp.add_cycle({"a"}, 1), InvalidArgument);
  EXPECT_THROW(qp.add_cycle({"a", "q"}, 1), UnknownArrow);
}

TEST(Qp, JacobianDimensions) {
  auto j = jacobian_dimension(three_cycle_qp(), 3);
  EXPECT_EQ(j.dimension, 6u);
  EXPECT_TRUE(j.saturated);
  for (std::size_t n : {3u, 4u, 8u}) EXPECT_EQ(jacobian_dimension_at(three_cycle_qp(), n), 6u);
  EXPECT_EQ(jacobian_dimension(a3_qp(), 4).dimension, 6u);
  EXPECT_EQ(jacobian_dimension(QuiverWithPotential(4, {}), 3).dimension, 4u);
  // zero potential on the 3-cycle: infinite, never saturates
  auto free = jacobian_dimension(three_cycle_qp(0), 5);
  EXPECT_FALSE(free.saturated);
  EXPECT_EQ(free.dimension, 3u * 5u);
  // (abc)^2: every path of length < 5 survives, ideal starts in degree 5
  EXPECT_EQ(jacobian_dimension_at(three_cycle_qp(2), 5), 15u);
}

TEST(Qp, PremutationOfThreeCycle) {
  auto pre = premutation(three_cycle_qp(), 1);
  std::vector<std::string> arrows;
  for (const auto& a : pre.arrows()) arrows.push_back(a.name + ":" + std::to_string(a.source + 1) + std::to_string(a.target + 1));
  EXPECT_EQ(arrows, (std::vector<std::string>{"b*:21", "a*:32", "c:31", "[ab]:13"}));
  EXPECT_EQ(named(pre), (std::map<std::vector<std::string>, Rational>{{{"[ab]", "c"}, 1}, {{"[ab]", "b*", "a*"}, 1}}));
  // sink with zero potential: plain reversal
  auto sink = premutation(a3_qp(), 2);
  EXPECT_EQ(sink.arrows().size(), 2u);
  EXPECT_EQ(sink.arrows()[1].name, "b*");
  EXPECT_TRUE(sink.potential().empty());
  EXPECT_EQ(sink.exchange_matrix(), mutate_matrix(a3_qp().exchange_matrix(), 2));
  QuiverWithPotential twoc(2, {{"x", 0, 1}, {"y", 1, 0}});
  EXPECT_THROW(premutation(twoc, 0), VertexOnTwoCycle);
  EXPECT_THROW(mutate_qp(twoc, 0, 6), TwoCycleAtVertex);
}

TEST(Qp, MutationOfAbc) {
  auto red = reduce(premutation(three_cycle_qp(), 1), 12);
  EXPECT_EQ(red.trivial.arrows().size(), 2u);
  EXPECT_EQ(red.trivial.potential_string(), "c [ab]");
  auto mu = mutate_qp(three_cycle_qp(), 1, 12);
  std::vector<std::string> arrows;
  for (const auto& a : mu.arrows()) arrows.push_back(a.name + ":" + std::to_string(a.source + 1) + std::to_string(a.target + 1));
  EXPECT_EQ(arrows, (std::vector<std::string>{"b*:21", "a*:32"}));
  EXPECT_TRUE(mu.potential().empty());
  EXPECT_EQ(mu.potential_string(), "0");
  EXPECT_EQ(jacobian_dimension(mu, 6).dimension, 6u);
}

TEST(Qp, MutationOfAbcSquared) {
  auto mu = mutate_qp(three_cycle_qp(2), 1, 12);
  std::vector<std::string> arrows;
  for (const auto& a : mu.arrows()) arrows.push_back(a.name + ":" + std::to_string(a.source + 1) + std::to_string(a.target + 1));
  // e = [ab]
  EXPECT_EQ(arrows, (std::vector<std::string>{"b*:21", "a*:32", "c:31", "[ab]:13"}));
  EXPECT_EQ(named(mu), (std::map<std::vector<std::string>, Rational>{{{"[ab]", "c", "[ab]", "c"}, 1},
                                                                      {{"[ab]", "b*", "a*"}, 1}}));
  EXPECT_EQ(mu.potential_string(), "b* a* [ab] + c [ab] c [ab]");
  EXPECT_TRUE(mu.on_two_cycle(0));
  EXPECT_THROW(mutate_qp(mu, 0, 12), TwoCycleAtVertex);
}

TEST(Qp, DoubleMutation) {
  for (int power : {1, 2}) {
    auto qp = three_cycle_qp(power);
    auto once = mutate_qp(qp, 1, 12);
    auto twice = mutate_qp(once, 1, 12);
    EXPECT_EQ(twice.exchange_matrix(), qp.exchange_matrix()) << power;
    EXPECT_EQ(jacobian_dimension_at(twice, 8), jacobian_dimension_at(qp, 8)) << power;
  }
  auto back = mutate_qp(mutate_qp(three_cycle_qp(), 1, 12), 1, 12);
  std::vector<std::string> arrows;
  for (const auto& a : back.arrows()) arrows.push_back(a.name);
  EXPECT_EQ(arrows, (std::vector<std::string>{"b", "a", "[b*a*]"}));
  EXPECT_EQ(back.potential_string(), "b [b*a*] a");
  EXPECT_EQ(jacobian_dimension(back, 4).dimension, 6u);
  auto back2 = mutate_qp(mutate_qp(three_cycle_qp(2), 1, 12), 1, 12);
  EXPECT_EQ(back2.potential_string(), "b c a b c a");
}

TEST(Qp, ReduceKeepsReducedInput) {
  auto qp = three_cycle_qp();
  auto r = reduce(qp, 12);
  EXPECT_TRUE(r.trivial.arrows().empty());
  EXPECT_EQ(r.reduced, qp);
}

TEST(Qp, ReduceGeneralQuadraticPart) {
  // two parallel pairs 1 <-> 2 with an invertible non-diagonal pairing plus a cubic term
  QuiverWithPotential qp(3, {{"x1", 0, 1}, {"x2", 0, 1}, {"y1", 1, 0}, {"y2", 1, 0}, {"p", 1, 2}, {"q", 2, 0}});
  qp.add_cycle({"y1", "x1"}, 1);
  qp.add_cycle({"y2", "x1"}, 2);
  qp.add_cycle({"y1", "x2"}, 3);
  qp.add_cycle({"y2", "x2"}, 4);
  qp.add_cycle({"q", "p", "x1"}, 1);
  auto r = reduce(qp, 10);
  EXPECT_EQ(r.trivial.arrows().size(), 4u);
  EXPECT_EQ(r.reduced.arrows().size(), 2u);
  for (const auto& [w, c] : r.reduced.potential()) EXPECT_GE(w.size(), 3u);
  for (std::size_t n : {2u, 3u, 5u}) EXPECT_EQ(jacobian_dimension_at(r.reduced, n), jacobian_dimension_at(qp, n)) << n;
  // rank-one pairing: one pair stays
  QuiverWithPotential deg(2, {{"x1", 0, 1}, {"x2", 0, 1}, {"y1", 1, 0}, {"y2", 1, 0}});
  deg.add_cycle({"y1", "x1"}, 1);
  deg.add_cycle({"y2", "x1"}, 2);
  deg.add_cycle({"y1", "x2"}, 2);
  deg.add_cycle({"y2", "x2"}, 4);
  auto rd = reduce(deg, 6);
  EXPECT_EQ(rd.trivial.arrows().size(), 2u);
  EXPECT_EQ(rd.reduced.arrows().size(), 2u);
  EXPECT_TRUE(rd.reduced.potential().empty());
  EXPECT_THROW(reduce(deg, 1), DegenerateQuadraticPart);
}

TEST(Qp, QuiverComponentFollowsMatrixMutation) {
  // A3 linear with zero potential and the 3-cycle with abc: no 2-cycles appear
  std::vector<std::size_t> path{0, 1, 2, 1, 0, 2, 1};
  for (auto qp : {a3_qp(), three_cycle_qp()}) {
    IntMatrix b = qp.exchange_matrix();
    for (auto k : path) {
      qp = mutate_qp(qp, k, 10);
      b = mutate_matrix(b, k);
      ASSERT_EQ(qp.exchange_matrix(), b);
    }
  }
}

TEST(Qp, TruncationMonotonicity) {
  auto hi = reduce(premutation(three_cycle_qp(2), 1), 12).reduced;
  auto lo = reduce(premutation(three_cycle_qp(2), 1), 4).reduced;
  hi.set_truncation(4);
  EXPECT_EQ(hi.potential(), lo.potential());
  EXPECT_EQ(hi.arrows(), lo.arrows());
}
