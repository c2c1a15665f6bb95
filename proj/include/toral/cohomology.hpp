#pragma once

#include "toral/groupalg.hpp"
#include "toral/torusmodel.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace toral {

class CohomologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr int kMaxModuleRank = 12;

// Normalized bar cochains C^n = maps (W \ {e})^n -> Z^k, flattened as
// index = tuple_index * k + coordinate, tuple digits a_i - 1 in base |W| - 1.
struct CochainSpace {
  int order = 1;
  int degree = 0;
  int rank = 0;
  long long tuples() const;
  long long size() const { return tuples() * rank; }
  long long tuple_index(const std::vector<int>& args) const;  // -1 if an argument is the identity
  std::vector<int> tuple_at(long long index) const;
};

IntVector to_normalized(const CocycleTable& table);
CocycleTable from_normalized(const IntVector& v, int degree, int order, int rank);
// d_n : C^n -> C^{n+1} applied to a normalized cochain.
IntVector apply_coboundary(const IntegralRep& module, int degree, const IntVector& f);

class CoboundaryElimination;

// H^n(W; M) with explicit generators and projection data.
class CohomGroup {
 public:
  int degree() const { return degree_; }
  const IntegralRep& module() const { return module_; }
  const FiniteAbelianGroup& group() const { return group_; }
  // Normalized cocycles; projection(generators()[i]) = e_i.
  const std::vector<IntVector>& generators() const { return generators_; }
  CochainSpace space() const { return {module_.group->order(), degree_, module_.rank}; }

  // Coordinates of a cocycle, reduced modulo the invariant factors.
  std::vector<BigInt> coordinates(const IntVector& cocycle) const;
  bool is_zero_class(const IntVector& cocycle) const;
  // Integral h in C^{n-1} with d h = target, if target is a coboundary.
  std::optional<IntVector> coboundary_preimage(const IntVector& target) const;
  IntVector cocycle_for(const std::vector<BigInt>& coords) const;
  // Enumerates every class as coordinate vectors in canonical (lexicographic) order.
  std::vector<std::vector<BigInt>> all_coordinates() const;

  friend std::shared_ptr<const CohomGroup> cohomology(const IntegralRep& module, int degree);

 private:
  int degree_ = 0;
  IntegralRep module_;
  FiniteAbelianGroup group_;
  std::vector<IntVector> generators_;
  std::shared_ptr<const CoboundaryElimination> elim_;  // elimination of d_{n-1}
  std::vector<Eigen::Index> torsion_slots_;            // SNF slots carrying the factors
};

using CohomPtr = std::shared_ptr<const CohomGroup>;

// H^n(W; M) for n = 0..3; cached per (module, degree).
CohomPtr cohomology(const IntegralRep& module, int degree);

// Equivariance check for a lattice map f: M -> N (rows = rank N).
bool is_equivariant(const IntMatrix& f, const IntegralRep& source, const IntegralRep& target);
// Cochain pushforward f_*.
IntVector push_cochain(const IntMatrix& f, const IntVector& cochain, int source_rank, int target_rank);
// Matrix of f_* : H^n(M) -> H^n(N) in generator coordinates (column j = image of generator j).
IntMatrix induced_map(const IntMatrix& f, const CohomGroup& source, const CohomGroup& target);

size_t cohomology_cache_size();

// A class with its stored representative cocycle.
struct CohomClass {
  CohomPtr parent;
  std::vector<BigInt> coordinates;
  IntVector representative;

  static CohomClass from_coordinates(CohomPtr parent, const std::vector<BigInt>& coords);
  static CohomClass from_cocycle(CohomPtr parent, const IntVector& cocycle);
  bool is_zero() const;
};

// H^k(W; T/S) computed as H^{k+1}(W; Λ_S) with Λ_S = H₁(T/S).
struct TorusCohomology {
  QuotientLattice quotient;
  CohomPtr group;
};
TorusCohomology torus_cohomology(const TorusSubgroup& s, int k);

// ε (a 3-cocycle on Λ₀) lifts over S iff its image in H³(W; Λ_S) vanishes.
bool supports_epsilon(const TorusSubgroup& s, const IntVector& epsilon_cocycle);
bool supports_epsilon(const TorusSubgroup& s, const CohomClass& epsilon);
// H¹(W; T/S) ≅ H²(W; Λ_S): conjugacy classes of lifts over S.
CohomPtr lift_fibre(const TorusSubgroup& s, const IntVector& epsilon_cocycle);
// Exponent of H³(W; Λ₀) (1 when it vanishes).
BigInt exponent_H2T(const IntegralRep& rep);

}  // namespace toral
