#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clusterforge/quiver.hpp"
#include "clusterforge/rational_function.hpp"

namespace clusterforge {

enum class CoefficientKind { None, Tropical, Universal };

// Semifield coefficient tuple y_1..y_n.  Tropical elements are exponent
// vectors over generators u_1..u_p (which are also ring variables of the
// seed); universal elements are rational functions in the seed's ring.
struct Coefficients {
  CoefficientKind kind = CoefficientKind::None;
  std::vector<std::vector<Integer>> tropical;  // n vectors of length p
  std::vector<RationalFunction> universal;     // n entries
  std::size_t generators() const { return tropical.empty() ? 0 : tropical.front().size(); }
  bool operator==(const Coefficients& rhs) const = default;
};

// Y-seed mutation: y'_k = 1/y_k, y'_j = y_j y_k^[b_kj]_+ (1 (+) y_k)^(-b_kj).
Coefficients mutate_coefficients(const Coefficients& y, const IntMatrix& b, std::size_t k);

// Exact seed: ice quiver, cluster x_1(t)..x_n(t) and coefficients.  The
// ambient ring has variables x1..xm (frozen ones included) followed by the
// coefficient generators.
class Seed {
 public:
  Seed() = default;
  Seed(Quiver q, std::vector<RationalFunction> cluster, Coefficients y, std::vector<std::string> names);

  // x_i(t0) = x_i; frozen rows give geometric coefficients.
  static Seed initial(const Quiver& q, std::vector<std::string> names = {});
  // Needs m == n; generator names default to y1..yp.
  static Seed initial_tropical(const Quiver& q, std::vector<std::vector<Integer>> y,
                               std::vector<std::string> generator_names = {});
  // y_j(t0) = y_j as free generators of the universal semifield.
  static Seed initial_universal(const Quiver& q);

  const Quiver& quiver() const { return q_; }
  std::size_t n() const { return q_.n(); }
  std::size_t m() const { return q_.m(); }
  const std::vector<RationalFunction>& cluster() const { return x_; }
  const Coefficients& coefficients() const { return y_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t nvars() const { return names_.size(); }

  // Value of the frozen variable at row i (i >= n).
  RationalFunction frozen_variable(std::size_t i) const;

  Seed mutate(std::size_t k) const;
  Seed at(const std::vector<std::size_t>& seq) const;

  std::vector<std::string> cluster_strings() const;
  // Tropical: "[a,b]" exponent lists; universal: rational strings.
  std::vector<std::string> coefficient_strings() const;

  bool operator==(const Seed& rhs) const {
    return q_ == rhs.q_ && x_ == rhs.x_ && y_ == rhs.y_ && names_ == rhs.names_;
  }

 private:
  Quiver q_;
  std::vector<RationalFunction> x_;
  Coefficients y_;
  std::vector<std::string> names_;
};

// sigma with b.cluster[sigma[i]] == a.cluster[i], quiver and coefficients
// transported; nullopt when the seeds are not isomorphic.
std::optional<std::vector<std::size_t>> seed_isomorphism(const Seed& a, const Seed& b);
// Same question answered by trying every permutation.
std::optional<std::vector<std::size_t>> seed_isomorphism_bruteforce(const Seed& a, const Seed& b);

struct ExchangeGraph {
  // Exact seeds; only filled when the graph was fully explored (or when
  // materialization was forced).
  std::vector<Seed> seeds;
  std::vector<std::vector<long>> adjacency;  // adjacency[v][k], -1 when beyond the limit
  std::vector<std::size_t> parent;           // BFS tree
  std::vector<long> parent_vertex;           // mutated vertex leading here, -1 at the root
  std::vector<std::string> digests;
  bool truncated = false;

  std::size_t vertex_count() const { return adjacency.size(); }
  std::size_t edge_count() const;
  // Mutation sequence from the root to v.
  std::vector<std::size_t> path_to(std::size_t v) const;
};

constexpr std::size_t kDefaultExchangeLimit = 50000;

// BFS over seeds modulo isomorphism.  Cluster variables are fingerprinted by
// their values at a random point modulo a prime; equal fingerprints are
// confirmed with exact arithmetic before two seeds are identified.
ExchangeGraph exchange_graph(const Seed& initial, std::size_t limit = kDefaultExchangeLimit,
                             bool materialize_truncated = false);

// Exchange graph restricted to seeds within `depth` mutations of the root.
ExchangeGraph exchange_neighborhood(const Seed& initial, std::size_t depth);

struct ClusterVariables {
  std::vector<RationalFunction> variables;  // exact; empty when truncated
  std::size_t count = 0;                    // distinct variables seen
  bool truncated = false;
};

ClusterVariables cluster_variables(const Seed& initial, std::size_t limit = kDefaultExchangeLimit);

// d with v = N / x^d, N a polynomial not divisible by x_1..x_n; frozen and
// coefficient variables may only occur in N.  Throws NonLaurent otherwise.
std::vector<Integer> denominator_vector(const RationalFunction& v, std::size_t n);

}  // namespace clusterforge
