#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "clusterforge/polynomial.hpp"
#include "clusterforge/quiver.hpp"
#include "clusterforge/seed.hpp"

namespace clusterforge {

// E_{k,eps}(B) and F_{k,eps}(B).  For an m x n ice matrix E is m x m (it
// differs from the identity in column k) and F is n x n (row k).
struct ElementaryPair {
  IntMatrix e, f;
};

ElementaryPair elementary_pair(const IntMatrix& b, std::size_t k, int eps);

// +1 / -1 when the vector is nonzero with entries of one sign, else 0.
int sign_of_vector(const std::vector<Integer>& v);

// C- and G-matrices along a path, with the signs eps_s used by the product
// formulas.  matrices[s] belongs to t_s (index 0 is the root).
struct TropicalPath {
  std::vector<IntMatrix> c, g;
  std::vector<int> signs;
  std::vector<Quiver> quivers;  // Q(t_s), principal part only
};

// Runs the c-vector recursion and the principal-extension mutation side by
// side (they must agree) and builds G by the product formula.  Throws
// SignIncoherence when some c-vector has mixed signs.
TropicalPath tropical_path(const Quiver& q, const std::vector<std::size_t>& seq);

IntMatrix c_matrix(const Quiver& q, const std::vector<std::size_t>& seq);
IntMatrix g_matrix(const Quiver& q, const std::vector<std::size_t>& seq);

// G read off the Z^n-grading deg x_j = e_j, deg y_j = -B e_j of the
// principal-coefficient cluster variables (exact; slow for long paths).
IntMatrix g_matrix_from_grading(const Quiver& q, const std::vector<std::size_t>& seq);

// F_j(t) in y_1..y_n: principal-coefficient cluster variables at x = 1.
std::vector<Polynomial> f_polynomials(const Quiver& q, const std::vector<std::size_t>& seq);

struct DualityReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// G^T D C = D and C(t)^-1 = C(Q(t)^op, t, t0), G(t)^-1 = G(Q(t)^op, t, t0).
DualityReport check_tropical_duality(const Quiver& q, const std::vector<std::size_t>& seq);
// G(Q, t0, t)^T = C(Q^vee, t0, t)^-1.
DualityReport check_langlands_duality(const Quiver& q, const std::vector<std::size_t>& seq);

struct BraidReport {
  std::size_t factors = 0;  // m in {2,3,4,6}
  bool holds_plus = false, holds_minus = false;  // for eps = +1 and -1
};

// T_k = E_{k,eps}(mu_k Q) E_{k,eps}(Q); checks the braid relation of
// length m for T_i, T_j.  |b_ij b_ji| >= 4 raises NotApplicable.
BraidReport braid_check(const IntMatrix& b, std::size_t i, std::size_t j);

// Cluster and coefficients at the end of `seq` computed from (C, G, F)
// through the separation formulas instead of step-by-step mutation.  The
// semifield is the one of the initial seed: geometric (frozen rows),
// tropical or universal.
Seed separation_evaluate(const Seed& initial, const std::vector<std::size_t>& seq);

}  // namespace clusterforge
