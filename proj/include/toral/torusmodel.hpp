#pragma once

#include "toral/groupalg.hpp"
#include "toral/isotypic.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace toral {

class TorusError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// W acting on Λ₀ together with the dual action on Λ₀* and the annihilators of
// the distinguished subtori.
struct TorusContext {
  IntegralRep rep;   // ρ on Λ₀
  IntegralRep dual;  // ρ*(w) = ρ(w⁻¹)ᵀ on Λ₀*
  Lattice xi_T1;     // annihilator of T₁, the identity component of the fixed points
  Lattice xi_Tf;     // annihilator of T_f, the subtorus spanned by the moving pieces
  IsotypicDecomposition isotypic;
  std::vector<Lattice> xi_pieces;  // annihilator of the subtorus of each isotypic piece

  static std::shared_ptr<const TorusContext> make(const IntegralRep& rep);
  int rank() const { return rep.rank; }
};
using ContextPtr = std::shared_ptr<const TorusContext>;

// Closed subgroup S ⊆ T encoded by its annihilator Ξ ⊆ Λ₀*.
class TorusSubgroup {
 public:
  TorusSubgroup(ContextPtr ctx, Lattice ann);

  static TorusSubgroup full_torus(ContextPtr ctx);
  static TorusSubgroup trivial_subgroup(ContextPtr ctx);
  static TorusSubgroup torsion_subgroup(ContextPtr ctx, const BigInt& n);
  static TorusSubgroup central_torus_T1(ContextPtr ctx);
  static TorusSubgroup moving_torus_Tf(ContextPtr ctx);

  const ContextPtr& context() const { return ctx_; }
  const Lattice& ann() const { return ann_; }
  int dim() const { return ctx_->rank() - ann_.rank(); }
  FiniteAbelianGroup pi0() const;
  bool is_connected() const;
  bool is_finite() const { return dim() == 0; }
  // other ⊆ this
  bool contains(const TorusSubgroup& other) const;
  bool is_invariant() const;
  TorusSubgroup identity_component() const;
  std::string describe() const;

  bool operator==(const TorusSubgroup& o) const { return ann_ == o.ann_; }
  bool operator<(const TorusSubgroup& o) const;

 private:
  ContextPtr ctx_;
  Lattice ann_;
};

TorusSubgroup sum(const TorusSubgroup& a, const TorusSubgroup& b);
TorusSubgroup intersect(const TorusSubgroup& a, const TorusSubgroup& b);
bool contains(const TorusSubgroup& big, const TorusSubgroup& small);
FiniteAbelianGroup pi0(const TorusSubgroup& s);
bool is_invariant(const TorusSubgroup& s);
// S⁺ = {t : w·t − t ∈ S for all w}.
TorusSubgroup plus_operator(const TorusSubgroup& s);

// H₁(T/S) = Hom(Ξ_S, Z) with the induced action, and the restriction Λ₀ → Hom(Ξ_S, Z).
struct QuotientLattice {
  IntegralRep module;
  IntMatrix restriction;  // k x r
};
QuotientLattice quotient_lattice(const TorusSubgroup& s);
// Map Hom(Ξ_small-subgroup) → Hom(Ξ_big-subgroup) for S ⊆ S' (restriction of functionals).
IntMatrix quotient_map(const TorusSubgroup& s, const TorusSubgroup& s_big);

struct SubgroupConstraints {
  std::optional<BigInt> max_exponent;           // exponent of π₀(S) bounded by this
  std::vector<TorusSubgroup> must_contain;      // S ⊇ X
  std::vector<TorusSubgroup> must_be_inside;    // S ⊆ Y
  std::optional<int> min_dim, max_dim;
};

// Complete, canonically ordered list of invariant closed subgroups meeting the constraints.
std::vector<TorusSubgroup> enumerate_invariant_subgroups(const ContextPtr& ctx, const SubgroupConstraints& c);

// Invariant saturated sublattices of Λ₀* (annihilators of invariant subtori).
std::vector<Lattice> invariant_saturated_annihilators(const TorusContext& ctx);

}  // namespace toral
