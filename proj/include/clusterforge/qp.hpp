#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clusterforge/integer.hpp"
#include "clusterforge/matrix.hpp"

namespace clusterforge {

// Arrow indices read as a composition of morphisms: {a, b, c} is a∘b∘c,
// so c is traversed first.
using Word = std::vector<std::size_t>;

struct QpArrow {
  std::string name;
  std::size_t source, target;  // 0-based
  bool operator==(const QpArrow&) const = default;
};

// Linear combination of parallel-or-not paths; words longer than the
// truncation are dropped.
struct PathElement {
  std::map<Word, Rational> terms;
  std::size_t truncation = 12;

  void add(const Word& w, const Rational& c);
  bool is_zero() const { return terms.empty(); }
  bool operator==(const PathElement&) const = default;
};

// Smallest rotation of a cycle under the arrow-index order.
Word canonical_rotation(const Word& cycle);

class QuiverWithPotential {
 public:
  QuiverWithPotential() = default;
  // Validates arrows (no loops), cycle composability and cycle length >= 2.
  QuiverWithPotential(std::size_t vertices, std::vector<QpArrow> arrows, std::size_t truncation = 12);

  // Cycle given by arrow names; throws UnknownArrow / InvalidArgument.
  void add_cycle(const std::vector<std::string>& names, const Rational& c);
  void add_word(const Word& cycle, const Rational& c);

  std::size_t vertices() const { return n_; }
  const std::vector<QpArrow>& arrows() const { return arrows_; }
  const std::map<Word, Rational>& potential() const { return w_; }
  std::size_t truncation() const { return truncation_; }
  void set_truncation(std::size_t n);

  std::optional<std::size_t> arrow_index(const std::string& name) const;
  // b_ij = #(i -> j) - #(j -> i)
  IntMatrix exchange_matrix() const;
  bool on_two_cycle(std::size_t k) const;
  std::vector<std::string> cycle_names(const Word& cycle) const;
  // e.g. "c [ab] c [ab] + b* a* [ab]"
  std::string potential_string() const;

  bool operator==(const QuiverWithPotential&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<QpArrow> arrows_;
  std::map<Word, Rational> w_;
  std::size_t truncation_ = 12;
};

// sum over p = u a v of v u
PathElement cyclic_derivative(const QuiverWithPotential& qp, std::size_t arrow);
PathElement cyclic_derivative(const QuiverWithPotential& qp, const std::string& arrow);

struct JacobianDimension {
  std::size_t dimension = 0;
  bool saturated = false;  // same value at N and N+1
};

// Dimension of (paths of length < N) modulo the truncated Jacobian ideal.
std::size_t jacobian_dimension_at(const QuiverWithPotential& qp, std::size_t n);
JacobianDimension jacobian_dimension(const QuiverWithPotential& qp, std::size_t n);

// Steps (a), (b) of the mutation: composites [ab], reversed arrows a*, W' = [W] + Delta.
QuiverWithPotential premutation(const QuiverWithPotential& qp, std::size_t k);

struct Reduction {
  QuiverWithPotential trivial, reduced;
};

// Splits off the trivial part, degree by degree up to N.
Reduction reduce(const QuiverWithPotential& qp, std::size_t n);

// Reduced part of the premutation.
QuiverWithPotential mutate_qp(const QuiverWithPotential& qp, std::size_t k, std::size_t n);

}  // namespace clusterforge
