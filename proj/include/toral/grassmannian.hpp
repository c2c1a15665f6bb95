#pragma once

#include "toral/groupalg.hpp"
#include "toral/isotypic.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace toral {

constexpr long long kMaxCensusIndex = 10000;
constexpr long long kMaxCensusCandidates = 3000000;
constexpr int kMaxCensusRank = 4;

struct CensusEntry {
  Lattice lattice;
  int rank = 0;
  BigInt index;
  bool invariant = false;
  int span = 0;                    // rational span id; full-rank entries share span 0
  int component = -1;              // set by classify_components
  std::vector<BigInt> parameters;  // [Λ_i : L ∩ Λ_i] for each isotypic piece
};

struct SublatticeCensus {
  IntegralRep rep;
  BigInt bound;
  bool invariant_only = false;
  std::vector<CensusEntry> entries;  // ordered by index, then canonical basis
  std::vector<size_t> counts;        // counts[n] = number of entries of index n, n ≤ bound
};

// Number of full-rank sublattices of Z^r with index ≤ bound (the HNF candidate count).
BigInt sublattice_count(int r, const BigInt& bound);

// Full-rank sublattices of index ≤ bound, optionally only the ρ-invariant ones.
// Throws DimensionError past kMaxCensusIndex, kMaxCensusRank or kMaxCensusCandidates.
SublatticeCensus enumerate_sublattices(const IntegralRep& rep, const BigInt& bound, bool invariant_only);

// Matrix of ρ(w) in the basis of an invariant full-rank lattice.
IntMatrix restricted_action(const IntegralRep& rep, const Lattice& l, int w);

// Invariants of the ZW-module L that are preserved by isomorphism.
struct ModuleInvariants {
  std::vector<std::vector<BigInt>> elementary;  // SNF diagonal of ρ_L(w) - I per element
  FiniteAbelianGroup isotypic_gap;              // L / ⊕(L ∩ V_i)
  bool operator==(const ModuleInvariants&) const = default;
  bool operator<(const ModuleInvariants& o) const;
};
ModuleInvariants module_invariants(const IntegralRep& rep, const IsotypicDecomposition& d, const Lattice& l);

// Z-basis (columns, vec(U) column-major) of {U : U ρ_a(w) = ρ_b(w) U for all w}.
IntMatrix equivariant_maps(const IntegralRep& rep, const Lattice& a, const Lattice& b);

enum class IsoResult { Isomorphic, NotIsomorphic, Undecided };
// Searches equivariant integral maps a → b with entries bounded by entry_bound (0 selects twice the
// larger index) for one of determinant ±1; Undecided when the bound or max_tries is exhausted.
IsoResult zw_isomorphic(const IntegralRep& rep, const IsotypicDecomposition& d, const Lattice& a, const Lattice& b,
                        long long entry_bound = 0, long long max_tries = 2000000);

// p_i ≡ sign·p_j (mod modulus) on every member of a component.
struct ParameterCongruence {
  int i = 0, j = 0, sign = 1;
  BigInt modulus;
  bool operator==(const ParameterCongruence&) const = default;
};

struct Component {
  size_t representative = 0;  // census entry index
  std::vector<size_t> members;
  int parameter_count = 0;    // rank of Hom_W(L, Λ)
  std::vector<ParameterCongruence> congruences;
};

struct ComponentReport {
  std::vector<Component> components;
  std::vector<std::pair<size_t, size_t>> undecided;  // entry pairs the search could not decide
};

// Partitions the invariant entries into ZW-isomorphism classes; writes component ids into the census.
ComponentReport classify_components(SublatticeCensus& census, long long entry_bound = 0);

// δ(Γ) = (Λ₁ ∩ Γ, Λ₂ ∩ Γ).
std::pair<Lattice, Lattice> delta_split(const Lattice& gamma, const Lattice& l1, const Lattice& l2);

struct ProductMapReport {
  bool lands_in_product = true;  // every δ-component is invariant of finite index in its piece
  bool finite_index = true;      // ⊕(Γ ∩ Λ_i) ⊆ Γ with finite index
  bool surjective = true;        // every in-bound tuple of invariant sublattices is hit
  size_t tuples_checked = 0;
  size_t max_fibre = 0;
  BigInt fibre_bound;            // |L| = [Λ₀ : ⊕Λ_i]
  bool fibres_bounded() const { return BigInt(max_fibre) <= fibre_bound; }
};

// δ over the invariant entries of a census: Γ ↦ (Γ ∩ Λ_i)_i.
ProductMapReport isotypic_product_map(const SublatticeCensus& census, const IsotypicDecomposition& d);

}  // namespace toral
