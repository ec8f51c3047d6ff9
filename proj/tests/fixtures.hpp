// Shared quivers and helpers for the test suites.
#pragma once

#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "clusterforge/quiver.hpp"

namespace cf_fixtures {

using namespace clusterforge;

// 1-based arrow list, all mutable, unit valuations.
inline Quiver from_arrows(std::size_t n, const std::vector<std::pair<int, int>>& arrows) {
  IntMatrix b(n, n);
  for (auto [s, t] : arrows) {
    b(s - 1, t - 1) += 1;
    b(t - 1, s - 1) -= 1;
  }
  return Quiver(b);
}

inline Quiver a2() { return from_arrows(2, {{1, 2}}); }
inline Quiver a3() { return from_arrows(3, {{1, 2}, {2, 3}}); }
// b:1->2, a:2->3, c:3->1
inline Quiver three_cycle() { return from_arrows(3, {{1, 2}, {2, 3}, {3, 1}}); }
inline Quiver markov() { return from_arrows(3, {{1, 2}, {1, 2}, {2, 3}, {2, 3}, {3, 1}, {3, 1}}); }
inline Quiver b3() { return Quiver(IntMatrix{{0, 1, 0}, {-1, 0, 1}, {0, -2, 0}}); }
inline Quiver c3() { return Quiver(IntMatrix{{0, 1, 0}, {-1, 0, 2}, {0, -1, 0}}); }
// mutable part of the Gr(3,6) ice quiver: 124, 125, 134, 145
inline Quiver gr36() { return from_arrows(4, {{1, 2}, {1, 3}, {4, 1}, {2, 4}, {3, 4}}); }

inline Quiver quiver3a() {
  return from_arrows(10, {{2, 1}, {1, 3}, {3, 2}, {4, 2}, {2, 5}, {5, 3}, {3, 6}, {5, 4}, {7, 4},
                          {4, 8}, {6, 5}, {8, 5}, {5, 9}, {9, 6}, {6, 10}, {8, 7}, {9, 8}, {10, 9}});
}
inline Quiver quiver3b() {
  return from_arrows(10, {{10, 1}, {9, 2}, {3, 4}, {4, 6}, {9, 4}, {5, 7}, {10, 5}, {6, 7}, {7, 8}, {8, 9}});
}
inline Quiver quiver3c() {
  return from_arrows(10, {{10, 1}, {2, 3}, {10, 2}, {3, 5}, {4, 6}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 10}});
}

// Random skew-symmetrizable matrix: b_ij = r * lcm(d_i, d_j) / d_i.
inline Quiver random_skew_symmetrizable(std::mt19937& rng, std::size_t n, bool skew_only, int max_entry = 3) {
  std::uniform_int_distribution<int> dd(1, skew_only ? 1 : 2);
  while (true) {
    std::vector<long> d(n);
    for (auto& x : d) x = dd(rng);
    IntMatrix b(n, n);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j) {
        long l = std::lcm(d[i], d[j]);
        long cap = std::max(1L, max_entry * std::min(d[i], d[j]) / l);
        std::uniform_int_distribution<long> rd(-cap, cap);
        long r = rd(rng);
        b(i, j) = r * l / d[i];
        b(j, i) = -r * l / d[j];
      }
    if (ok) return Quiver(b);
  }
}

inline std::vector<std::size_t> random_sequence(std::mt19937& rng, std::size_t n, std::size_t len) {
  std::uniform_int_distribution<std::size_t> kd(0, n - 1);
  std::vector<std::size_t> s;
  while (s.size() < len) {
    std::size_t k = kd(rng);
    if (!s.empty() && s.back() == k && n > 1) continue;
    s.push_back(k);
  }
  return s;
}

inline std::vector<std::size_t> seq(std::initializer_list<int> one_based) {
  std::vector<std::size_t> s;
  for (int k : one_based) s.push_back(static_cast<std::size_t>(k - 1));
  return s;
}

}  // namespace cf_fixtures
