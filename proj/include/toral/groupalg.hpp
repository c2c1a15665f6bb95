#pragma once

#include "toral/exactlinalg.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace toral {

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class NotAHomomorphism : public GroupError {
 public:
  using GroupError::GroupError;
};
class NotUnimodular : public GroupError {
 public:
  using GroupError::GroupError;
};

constexpr int kMaxGroupOrder = 12;
constexpr int kMaxRank = 6;

// Finite group on elements 0..n-1, 0 the identity; mult(a, b) = a*b.
class FiniteGroup {
 public:
  static FiniteGroup from_table(const std::vector<std::vector<int>>& table);
  // Permutations act on {0..d-1}; product (a*b)(i) = a(b(i)). Elements are listed
  // in breadth-first order of words in the generators.
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens);
  static FiniteGroup cyclic(int n);
  static FiniteGroup trivial() { return cyclic(1); }
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

  int order() const { return static_cast<int>(table_.size()); }
  int mult(int a, int b) const { return table_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  int inverse(int a) const { return inverse_[static_cast<size_t>(a)]; }
  const std::vector<int>& generators() const { return generators_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  // Word in generator indices producing each element (empty for the identity).
  const std::vector<int>& word(int a) const { return words_[static_cast<size_t>(a)]; }
  int element_order(int a) const;
  bool is_abelian() const;
  std::vector<std::vector<int>> conjugacy_classes() const;
  // Sorted element list of the subgroup generated by gens.
  std::vector<int> generated_subgroup(const std::vector<int>& gens) const;
  bool is_subgroup(const std::vector<int>& elems) const;
  // Subgroup as a group in its own right; embedding[i] = element of this group.
  FiniteGroup restrict_to(const std::vector<int>& elems, std::vector<int>& embedding) const;

  bool operator==(const FiniteGroup&) const = default;

 private:
  void finish();  // validates the table, fills inverses and words
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
  std::vector<std::vector<int>> words_;
};

// Integral representation with matrices stored for every element.
struct IntegralRep {
  std::shared_ptr<const FiniteGroup> group;
  int rank = 0;
  std::vector<IntMatrix> matrices;

  // Builds matrices for all elements from generator images and validates.
  static IntegralRep from_generators(std::shared_ptr<const FiniteGroup> group, int rank,
                                     const std::vector<IntMatrix>& generator_images);
  static IntegralRep trivial(std::shared_ptr<const FiniteGroup> group, int rank);
  const IntMatrix& operator()(int w) const { return matrices[static_cast<size_t>(w)]; }
  bool operator==(const IntegralRep& o) const;
};

void validate_rep(const IntegralRep& rep);
Lattice fixed_sublattice(const IntegralRep& rep);
IntegralRep dual_rep(const IntegralRep& rep);
IntegralRep direct_sum(const IntegralRep& a, const IntegralRep& b);
// Regular permutation module Z[W]^copies.
IntegralRep regular_rep(std::shared_ptr<const FiniteGroup> group, int copies = 1);
IntegralRep restrict_rep(const IntegralRep& rep, const std::vector<int>& elems);
bool is_invariant(const IntegralRep& rep, const Lattice& l);

// Cochain values on W^k stored as an r x n^k matrix; column = flattened tuple.
struct CocycleTable {
  int degree = 0;
  int order = 0;
  IntMatrix values;

  static CocycleTable zero(int degree, int order, int rank);
  static int tuple_index(const std::vector<int>& args, int order);
  IntVector at(const std::vector<int>& args) const;
  void set(const std::vector<int>& args, const IntVector& v);
  bool is_normalized() const;
};

// Bar coboundary of a full (not necessarily normalized) cochain table.
CocycleTable coboundary(const IntegralRep& module, const CocycleTable& f);
bool is_cocycle(const IntegralRep& module, const CocycleTable& f);

}  // namespace toral
