#pragma once

#include "toral/groupalg.hpp"
#include "toral/polyfactor.hpp"

#include <string>
#include <vector>

namespace toral {

struct IsotypicPiece {
  Lattice lattice;          // Λ_i = Λ₀ ∩ V_i (saturated)
  RatPoly central_factor;   // irreducible factor of the central minimal polynomial
  int dim = 0;              // dim V_i
  int multiplicity = 0;     // m_i with V_i ≅ S_i^{m_i}
  int simple_dim = 0;       // dim S_i
  int division_dim = 0;     // dim_Q End(S_i)
  int center_dim = 0;       // dim_Q of the center of End(S_i)
  bool is_trivial_type = false;
};

struct IsotypicDecomposition {
  int rank = 0;
  std::vector<IsotypicPiece> pieces;  // trivial-type piece first, then canonical order
  FiniteAbelianGroup L;               // Λ₀ / ⊕Λ_i
  FiniteAbelianGroup L_f;             // Λ₀ / (Λ₁ ⊕ Λ_f)
  const IsotypicPiece* trivial_piece() const;
  Lattice lambda_f() const;           // Λ₀ ∩ (V₂ ⊕ ... ⊕ V_s)
};

// Basis of the commutant {X : ρ(w)X = Xρ(w) for all w} over Q.
std::vector<RatMatrix> endo_algebra(const IntegralRep& rep);
std::vector<RatMatrix> endo_algebra(const std::vector<RatMatrix>& generator_matrices, Eigen::Index dim);

IsotypicDecomposition decompose(const IntegralRep& rep);

struct BlockShape {
  int poset_rank = 0;              // dim V₁
  std::vector<int> stone_ranks;    // m_i for each nontrivial piece
  int total() const;
  std::string describe() const;
};

BlockShape predicted_block_shape(const IsotypicDecomposition& d);

}  // namespace toral
