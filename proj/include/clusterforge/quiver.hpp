#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "clusterforge/matrix.hpp"

namespace clusterforge {

// Minimal positive d with diag(d)*b skew-symmetric (b square), if any.
std::optional<std::vector<Integer>> find_symmetrizer(const IntMatrix& b);

// Ice matrix: m x n integer matrix whose top n x n block is skew-symmetrizable.
// Rows n..m-1 belong to frozen vertices.  Vertex indices are 0-based here;
// the CLI and JSON layers speak 1-based.
class Quiver {
 public:
  Quiver() = default;
  // Validates; if `symmetrizer` is empty the minimal one is found.
  explicit Quiver(IntMatrix btilde, std::vector<Integer> symmetrizer = {});

  std::size_t m() const { return b_.rows(); }
  std::size_t n() const { return b_.cols(); }
  std::size_t frozen() const { return m() - n(); }
  const IntMatrix& matrix() const { return b_; }
  IntMatrix principal() const { return b_.top(n()); }
  const std::vector<Integer>& symmetrizer() const { return d_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return b_(i, j); }
  bool is_skew_symmetric() const { return principal().is_skew_symmetric(); }

  Quiver mutate(std::size_t k) const;
  Quiver mutate_sequence(const std::vector<std::size_t>& ks) const;

  // -B~ (opposite quiver).
  Quiver opposite() const;
  // -B^T; only defined without frozen vertices.
  Quiver langlands_dual() const;

  bool operator==(const Quiver& rhs) const { return b_ == rhs.b_; }

 private:
  IntMatrix b_;
  std::vector<Integer> d_;
};

// b'_ij = -b_ij if k in {i,j}, else b_ij + sgn(b_ik) max(0, b_ik b_kj).
IntMatrix mutate_matrix(const IntMatrix& b, std::size_t k);

// Principal extension [B; I].
Quiver principal_extension(const Quiver& q);

// C_ii = 2, C_ij = -|b_ij| on the principal part.
IntMatrix cartan_companion(const IntMatrix& b);

struct Arrow {
  std::size_t source = 0, target = 0;
  Integer v1 = 1, v2 = 1;  // valuation; b_st = v1, b_ts = -v2
  bool operator==(const Arrow&) const = default;
};

struct QuiverPresentation {
  std::size_t vertices = 0;
  std::size_t mutable_vertices = 0;  // first `mutable_vertices` are mutable
  std::vector<Arrow> arrows;
};

Quiver quiver_from_presentation(const QuiverPresentation& p);
// Arrows sorted by (source, target); arrows between frozen vertices never appear.
QuiverPresentation presentation_of(const Quiver& q);

// Canonical representative under relabelings of mutable vertices.
struct CanonicalForm {
  IntMatrix matrix;
  // perm[i] = original vertex placed at position i.
  std::vector<std::size_t> perm;
  std::string digest;
  // Key for hashing/equality: the serialized canonical matrix.
  std::string key;
};

CanonicalForm canonical_form(const IntMatrix& btilde);
inline CanonicalForm canonical_form(const Quiver& q) { return canonical_form(q.matrix()); }
// Brute force over all permutations (small n only); used as an oracle.
IntMatrix canonical_matrix_bruteforce(const IntMatrix& btilde);
// Permutation-relabeled copy: result(i,j) = b(perm[i], perm[j]), frozen rows fixed.
IntMatrix relabel(const IntMatrix& btilde, const std::vector<std::size_t>& perm);

struct MutationClass {
  std::vector<Quiver> members;            // canonical representatives, BFS order
  std::vector<std::string> keys;          // canonical keys, parallel to members
  std::vector<std::vector<long>> adjacency;  // adjacency[i][k] = member index or -1 (beyond limit)
  bool truncated = false;
};

constexpr std::size_t kDefaultClassLimit = 100000;

MutationClass mutation_class(const Quiver& q, std::size_t limit = kDefaultClassLimit);

// Dynkin label of a finite-type Cartan companion ("A3", "D4", "B3", "A1xA2"),
// or nullopt.
std::optional<std::string> finite_type_label(const IntMatrix& principal);

struct ClusterTypeResult {
  std::optional<std::string> label;
  bool exhausted = false;  // whole class explored without hitting the limit
  std::size_t explored = 0;
};

ClusterTypeResult cluster_type(const Quiver& q, std::size_t limit = kDefaultClassLimit);

}  // namespace clusterforge
