#pragma once

#include "toral/cohomology.hpp"
#include "toral/torusmodel.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toral {

class AtlasError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Data attached to a subgroup W' ⊆ W: the torus context for W' and ε restricted to W'.
struct ImageData {
  std::vector<int> elements;  // sorted elements of W', local index i ↔ elements[i]
  ContextPtr ctx;
  IntVector epsilon;          // normalized 3-cocycle on W' with values in Λ₀
  bool is_full = false;
  // Local index of a global element (-1 if absent).
  int local(int global) const;
};
using ImagePtr = std::shared_ptr<const ImageData>;

// Toral group given by W acting on Λ₀ and a global 3-cocycle representing ε.
class ToralGroupSpec {
 public:
  static ToralGroupSpec make(std::string name, const IntegralRep& rep, const IntVector& epsilon);
  static ToralGroupSpec split(std::string name, const IntegralRep& rep);

  const std::string& name() const { return name_; }
  const IntegralRep& rep() const { return full_->ctx->rep; }
  const ContextPtr& context() const { return full_->ctx; }
  const FiniteGroup& group() const { return *full_->ctx->rep.group; }
  int rank() const { return full_->ctx->rank(); }
  const IntVector& epsilon() const { return full_->epsilon; }
  CohomClass epsilon_class() const;
  const ImagePtr& full_image() const { return full_; }
  // Cached data for a subgroup of W given by its elements.
  ImagePtr image(const std::vector<int>& elements) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::vector<int>, ImagePtr> images;
  };
  std::string name_;
  ImagePtr full_;
  std::shared_ptr<Cache> cache_;
};

// Conjugacy class of a closed subgroup K ⊆ H with image W', K ∩ T = S and lift data.
// The lift is a normalized 2-cochain h on W' with values in Λ_S = Hom(Ξ_S, Z) and
// d h = R_S ε; classes over S form a torsor under H²(W'; Λ_S), recorded through the
// coordinates of h − h₀ for the canonical base lift h₀.
struct SubgroupClass {
  ImagePtr image;
  TorusSubgroup S;
  IntVector lift;
  std::vector<BigInt> coordinates;
  std::string label;

  bool same_class(const SubgroupClass& o) const;
  bool operator==(const SubgroupClass& o) const { return same_class(o); }
  bool operator<(const SubgroupClass& o) const;
  std::string describe() const;
};

// Base lift h₀ over S (nullopt if ε does not lift over S).
std::optional<IntVector> base_lift(const ImageData& image, const TorusSubgroup& s);
// Builds a class from an explicit lift; checks d h = R_S ε.
SubgroupClass make_class(const ImagePtr& image, const TorusSubgroup& s, const IntVector& lift, std::string label = {});
SubgroupClass class_from_coordinates(const ImagePtr& image, const TorusSubgroup& s, const std::vector<BigInt>& coords,
                                     std::string label = {});

// Classes with image W over every enumerated invariant S supporting ε, one per lift class.
std::vector<SubgroupClass> classify(const ToralGroupSpec& spec, const SubgroupConstraints& bounds);

// Transport of the lift along Λ_S → Λ_{S'} for S ⊆ S'.
SubgroupClass beta(const SubgroupClass& k, const TorusSubgroup& s_big);

TorusSubgroup tau(const SubgroupClass& k);
SubgroupClass omega(const SubgroupClass& k);
std::pair<TorusSubgroup, SubgroupClass> lambda(const SubgroupClass& k);
bool has_finite_weyl(const SubgroupClass& k);
bool cotoral_le(const SubgroupClass& k, const SubgroupClass& k_big);
TorusSubgroup sigma_merge(const SubgroupClass& khat, const TorusSubgroup& r);

// A_m = {z ∈ T₁ : m z ∈ T₁ ∩ T_f}; m = 0 stands for ∞ (A = T₁).
TorusSubgroup central_label(const ContextPtr& ctx, const BigInt& m);
// K̂_n: class over T₁ + T_f[2n] with zero lift coordinates; n = 0 stands for ∞ (the full group).
SubgroupClass moving_label(const ToralGroupSpec& spec, const BigInt& n);

struct LambdaFibre {
  std::vector<SubgroupClass> classes;
  BigInt threshold;  // every A ⊇ T₁[threshold] is hit
};
LambdaFibre lambda_fibre(const ToralGroupSpec& spec, const TorusSubgroup& a, const SubgroupClass& khat);
// lcm of exp(L) and the exponent of H³(W; Λ₀).
BigInt hit_threshold(const ToralGroupSpec& spec);

// Thresholds for the nontrivial isotypic pieces in order; nullopt stands for ∞.
bool in_neighbourhood(const SubgroupClass& k, const std::vector<std::optional<BigInt>>& thresholds);
// e_i: largest a with T_i[a] ⊆ S for each nontrivial piece (0 when T_i ⊆ S).
std::vector<BigInt> piece_exponents(const SubgroupClass& k);

struct ConvergenceReport {
  bool converges = false;
  std::string reason;
};
// Decides convergence of an (eventually monotone) chain to limit from a finite truncation.
ConvergenceReport converges(const std::vector<SubgroupClass>& chain, const SubgroupClass& limit);

// (c + Σ a_i p_i) / denominator in the family parameters; evaluation must be exact.
struct AffineForm {
  BigInt constant = 0;
  std::vector<BigInt> coeffs;
  BigInt denominator = 1;
  BigInt eval(const std::vector<BigInt>& p) const;
  bool operator==(const AffineForm&) const = default;
};

// Σ a_i p_i + c ≡ 0 (mod modulus).
struct Congruence {
  AffineForm form;
  BigInt modulus = 1;
  bool holds(const std::vector<BigInt>& p) const { return mod_floor(form.eval(p), modulus) == 0; }
  bool operator==(const Congruence&) const = default;
};

// Value of the lift h(a, b) on each annihilator generator.
struct LiftValue {
  int a = 0, b = 0;  // elements of W
  std::vector<AffineForm> values;
  bool operator==(const LiftValue&) const = default;
};

struct Family {
  std::string name;
  std::vector<std::string> params;
  std::vector<int> image;                            // elements of W; empty means all of W
  std::vector<std::vector<AffineForm>> generators;   // annihilator generators, r forms each
  std::vector<Congruence> constraints;
  std::vector<LiftValue> lift;

  bool admits(const std::vector<BigInt>& p) const;
  SubgroupClass instantiate(const ToralGroupSpec& spec, const std::vector<BigInt>& p) const;
  std::string label(const std::vector<BigInt>& p) const;
  bool operator==(const Family&) const = default;
};

// Members of source with parameter `param` → ∞ converge to the target member whose
// parameters are the remaining source parameters in order.
struct LimitRule {
  std::string source;
  int param = 0;
  std::string target;
  bool operator==(const LimitRule&) const = default;
};

// Declared G-fusion: the listed members (Family or Family(p,...)) may be identified in G.
struct Fusion {
  std::vector<std::string> families;
  int fibre_bound = 1;
  bool operator==(const Fusion&) const = default;
};

struct Catalog {
  std::string name;
  std::vector<Family> families;
  std::vector<LimitRule> limits;
  std::vector<Fusion> fusions;
  BigInt threshold = 0;   // neighbourhood threshold; 0 selects the default
  BigInt truncation = 0;  // parameter bound for finite checks; 0 selects the default

  int family_index(const std::string& name) const;  // -1 if absent
  bool operator==(const Catalog&) const = default;
};

struct CatalogEntry {
  int family = 0;
  std::vector<BigInt> params;
  SubgroupClass cls;
};

// Every admitted parameter tuple with entries ≤ bound.
std::vector<CatalogEntry> truncate(const ToralGroupSpec& spec, const Catalog& catalog, const BigInt& bound);

// Chain of family members with parameter `param` running through v₁ | v₂ | ... (v_{i+1} = v_i c
// with c ≥ i + 1 minimal subject to the constraints and monotonicity).
std::vector<std::vector<BigInt>> saturating_sequence(const ToralGroupSpec& spec, const Family& f,
                                                     const std::vector<BigInt>& base, int param, int length);

// Checks every limit rule on sample chains; throws AtlasError if the structure is not closed.
void validate_limits(const ToralGroupSpec& spec, const Catalog& catalog);

// Cantor-Bendixson rank of each family's points (isolated points have rank 0).
std::vector<int> point_ranks(const Catalog& catalog);
int cb_rank(const Catalog& catalog);

struct Block {
  size_t dominant = 0;                 // entry index of the dominating class
  BigInt threshold;                    // threshold used for its neighbourhood
  int round = 0;
  std::vector<size_t> neighbourhood;   // cotorally maximal members
  std::vector<size_t> members;
};

struct Partition {
  std::vector<CatalogEntry> entries;
  std::vector<std::vector<size_t>> cotoral_up;  // cotoral_up[i] = j ≠ i with entry i ≤ entry j
  std::vector<Block> blocks;
  int rounds = 0;
  BigInt threshold;
  BigInt truncation;
};

Partition partition(const ToralGroupSpec& spec, const Catalog& catalog);

struct PartitionCheck {
  bool disjoint = true, covering = true, closed = true, dominated = true, clopen = true, rounds_ok = true;
  bool ok() const { return disjoint && covering && closed && dominated && clopen && rounds_ok; }
  std::string failure;
};
PartitionCheck check_partition(const ToralGroupSpec& spec, const Catalog& catalog, const Partition& p);

}  // namespace toral
