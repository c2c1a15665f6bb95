#pragma once

#include "toral/normal_forms.hpp"
#include "toral/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toral {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Finite abelian group Z/d1 + ... + Z/dk + Z^f with d1 | d2 | ... and every di >= 2.
struct FiniteAbelianGroup {
  std::vector<BigInt> invariant_factors;
  int free_rank = 0;

  static FiniteAbelianGroup from_diagonal(const std::vector<BigInt>& diag, int free_rank = 0);
  bool is_trivial() const { return invariant_factors.empty() && free_rank == 0; }
  bool is_finite() const { return free_rank == 0; }
  BigInt order() const;     // torsion order
  BigInt exponent() const;  // 1 for trivial torsion
  std::string describe() const;
  bool operator==(const FiniteAbelianGroup&) const = default;
};

// Sublattice of Z^r, stored as its canonical column Hermite basis (r x k):
// basis = transpose of the nonzero rows of hnf(generators^T).
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(int ambient_rank);  // zero lattice
  static Lattice from_generators(const IntMatrix& gens);  // columns generate
  static Lattice full(int r);
  static Lattice zero(int r) { return Lattice(r); }
  static Lattice scaled_full(int r, const BigInt& n);

  int ambient_rank() const { return ambient_; }
  int rank() const { return static_cast<int>(basis_.cols()); }
  const IntMatrix& basis() const { return basis_; }
  bool is_full_rank() const { return rank() == ambient_; }
  BigInt index() const;  // [Z^r : L] for full-rank L
  bool contains_vector(const IntVector& v) const;
  bool contains(const Lattice& other) const;  // other ⊆ this
  std::optional<IntVector> coordinates(const IntVector& v) const;

  bool operator==(const Lattice& o) const;
  bool operator<(const Lattice& o) const;
  std::string describe() const;

 private:
  int ambient_ = 0;
  IntMatrix basis_;
};

IntMatrix canonical_column_basis(const IntMatrix& gens);

Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersect(const Lattice& a, const Lattice& b);
Lattice saturate(const Lattice& l);
bool is_saturated(const Lattice& l);
Lattice preimage(const IntMatrix& m, const Lattice& l);
Lattice image(const IntMatrix& m, const Lattice& l);
FiniteAbelianGroup quotient_invariants(const Lattice& sub, const Lattice& super);
Lattice scale(const Lattice& l, const BigInt& n);
// Coefficient matrix of sub's basis in super's basis (requires sub ⊆ super).
IntMatrix relative_coordinates(const Lattice& sub, const Lattice& super);

// Exact rational linear algebra (reduced row echelon form based).
struct Rref {
  RatMatrix R;
  std::vector<Eigen::Index> pivot_cols;
};
Rref rref(const RatMatrix& m);
int rational_rank(const RatMatrix& m);
RatMatrix rational_nullspace(const RatMatrix& m);  // columns
RatMatrix rational_inverse(const RatMatrix& m);
RatMatrix column_space_basis(const RatMatrix& m);  // independent columns spanning the column space
// Primitive integer basis of Q-span of columns intersected with Z^r.
Lattice lattice_from_rational_span(const RatMatrix& span, int ambient_rank);
IntVector clear_denominators(const RatVector& v);
BigInt determinant(const IntMatrix& m);

std::vector<BigInt> divisors(const BigInt& n);

// All lattices M with lower ⊆ M ⊆ upper (lower of finite index in upper), in
// canonical order. Throws DimensionError when the search exceeds max_candidates.
std::vector<Lattice> intermediate_lattices(const Lattice& lower, const Lattice& upper,
                                           long long max_candidates = 2000000);

}  // namespace toral
