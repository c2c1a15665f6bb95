#include "toral/torusmodel.hpp"

#include <algorithm>
#include <sstream>

namespace toral {

namespace {

Lattice lattice_or_zero(const IntMatrix& gens, int r) {
  if (gens.cols() == 0) return Lattice(r);
  return Lattice::from_generators(gens);
}

void require_same_context(const TorusSubgroup& a, const TorusSubgroup& b) {
  if (a.context() != b.context() && !(a.context()->rep == b.context()->rep))
    throw TorusError("subgroups belong to different tori");
}

}  // namespace

std::shared_ptr<const TorusContext> TorusContext::make(const IntegralRep& rep) {
  auto ctx = std::make_shared<TorusContext>();
  const int r = rep.rank;
  ctx->rep = rep;
  ctx->dual = dual_rep(rep);
  const int n = rep.group->order();
  IntMatrix moved(r, static_cast<Eigen::Index>(r) * n);
  for (int w = 0; w < n; ++w) moved.middleCols(static_cast<Eigen::Index>(w) * r, r) = ctx->dual(w) - identity_matrix(r);
  ctx->xi_T1 = r ? saturate(lattice_or_zero(moved, r)) : Lattice(0);
  ctx->xi_Tf = fixed_sublattice(ctx->dual);
  ctx->isotypic = decompose(rep);
  for (const auto& p : ctx->isotypic.pieces) {
    IntMatrix bt = p.lattice.basis().transpose();
    ctx->xi_pieces.push_back(lattice_or_zero(integer_kernel(bt), r));
  }
  return ctx;
}

TorusSubgroup::TorusSubgroup(ContextPtr ctx, Lattice ann) : ctx_(std::move(ctx)), ann_(std::move(ann)) {
  if (ann_.ambient_rank() != ctx_->rank()) throw TorusError("annihilator has the wrong ambient rank");
}

TorusSubgroup TorusSubgroup::full_torus(ContextPtr ctx) {
  const int r = ctx->rank();
  return {std::move(ctx), Lattice(r)};
}

TorusSubgroup TorusSubgroup::trivial_subgroup(ContextPtr ctx) {
  const int r = ctx->rank();
  return {std::move(ctx), Lattice::full(r)};
}

TorusSubgroup TorusSubgroup::torsion_subgroup(ContextPtr ctx, const BigInt& n) {
  if (n <= 0) throw TorusError("torsion order must be positive");
  const int r = ctx->rank();
  return {std::move(ctx), Lattice::scaled_full(r, n)};
}

TorusSubgroup TorusSubgroup::central_torus_T1(ContextPtr ctx) {
  Lattice a = ctx->xi_T1;
  return {std::move(ctx), a};
}

TorusSubgroup TorusSubgroup::moving_torus_Tf(ContextPtr ctx) {
  Lattice a = ctx->xi_Tf;
  return {std::move(ctx), a};
}

FiniteAbelianGroup TorusSubgroup::pi0() const {
  FiniteAbelianGroup g = quotient_invariants(ann_, saturate(ann_));
  g.free_rank = 0;
  return g;
}

bool TorusSubgroup::is_connected() const { return is_saturated(ann_); }

bool TorusSubgroup::contains(const TorusSubgroup& other) const {
  require_same_context(*this, other);
  return other.ann_.contains(ann_);
}

bool TorusSubgroup::is_invariant() const { return toral::is_invariant(ctx_->dual, ann_); }

TorusSubgroup TorusSubgroup::identity_component() const { return {ctx_, saturate(ann_)}; }

std::string TorusSubgroup::describe() const {
  std::ostringstream os;
  os << "dim " << dim() << ", pi0 " << pi0().describe() << ", ann " << ann_.describe();
  return os.str();
}

bool TorusSubgroup::operator<(const TorusSubgroup& o) const {
  if (dim() != o.dim()) return dim() < o.dim();
  BigInt a = pi0().order(), b = o.pi0().order();
  if (a != b) return a < b;
  return ann_ < o.ann_;
}

TorusSubgroup sum(const TorusSubgroup& a, const TorusSubgroup& b) {
  require_same_context(a, b);
  return {a.context(), lattice_intersect(a.ann(), b.ann())};
}

TorusSubgroup intersect(const TorusSubgroup& a, const TorusSubgroup& b) {
  require_same_context(a, b);
  return {a.context(), lattice_sum(a.ann(), b.ann())};
}

bool contains(const TorusSubgroup& big, const TorusSubgroup& small) { return big.contains(small); }
FiniteAbelianGroup pi0(const TorusSubgroup& s) { return s.pi0(); }
bool is_invariant(const TorusSubgroup& s) { return s.is_invariant(); }

TorusSubgroup plus_operator(const TorusSubgroup& s) {
  if (!s.is_invariant()) throw TorusError("plus operator needs an invariant subgroup");
  const auto& ctx = s.context();
  const int r = ctx->rank();
  const int n = ctx->rep.group->order();
  const IntMatrix& b = s.ann().basis();
  IntMatrix gens(r, b.cols() * n);
  for (int w = 0; w < n; ++w)
    gens.middleCols(b.cols() * w, b.cols()) = (ctx->rep(w).transpose() - identity_matrix(r)) * b;
  return {ctx, lattice_or_zero(gens, r)};
}

QuotientLattice quotient_lattice(const TorusSubgroup& s) {
  if (!s.is_invariant()) throw TorusError("quotient lattice needs an invariant subgroup");
  const auto& ctx = s.context();
  const Lattice& xi = s.ann();
  const IntMatrix& b = xi.basis();
  const int k = xi.rank();
  QuotientLattice q;
  q.module.group = ctx->rep.group;
  q.module.rank = k;
  for (int w = 0; w < ctx->rep.group->order(); ++w) {
    IntMatrix moved = ctx->rep(w).transpose() * b;
    IntMatrix a(k, k);
    for (int j = 0; j < k; ++j) a.col(j) = *xi.coordinates(moved.col(j));
    q.module.matrices.push_back(a.transpose());
  }
  q.restriction = b.transpose();
  return q;
}

IntMatrix quotient_map(const TorusSubgroup& s, const TorusSubgroup& s_big) {
  if (!s_big.contains(s)) throw TorusError("quotient map needs S ⊆ S'");
  return relative_coordinates(s_big.ann(), s.ann()).transpose();
}

std::vector<Lattice> invariant_saturated_annihilators(const TorusContext& ctx) {
  const int r = ctx.rank();
  const auto& pieces = ctx.isotypic.pieces;
  for (const auto& p : pieces)
    if (p.multiplicity > 1)
      throw TorusError("infinitely many invariant subtori: an isotypic piece has multiplicity > 1");
  // Invariant subspaces are sums of pieces; the annihilator of a sum is the
  // intersection of the piece annihilators.
  std::vector<Lattice> out;
  const size_t s = pieces.size();
  for (size_t mask = 0; mask < (size_t{1} << s); ++mask) {
    Lattice xi = Lattice::full(r);
    for (size_t i = 0; i < s; ++i)
      if (mask & (size_t{1} << i)) xi = lattice_intersect(xi, ctx.xi_pieces[i]);
    out.push_back(xi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TorusSubgroup> enumerate_invariant_subgroups(const ContextPtr& ctx, const SubgroupConstraints& c) {
  const int r = ctx->rank();
  const int min_dim = c.min_dim.value_or(0), max_dim = c.max_dim.value_or(r);
  std::vector<Lattice> bases;
  bool dims_extreme = true;
  for (int d = min_dim; d <= max_dim; ++d)
    if (d != 0 && d != r) dims_extreme = false;
  try {
    bases = invariant_saturated_annihilators(*ctx);
  } catch (const TorusError&) {
    if (!dims_extreme) throw;
    if (min_dim == 0) bases.push_back(Lattice::full(r));
    if (max_dim == r && r > 0) bases.push_back(Lattice(r));
  }

  Lattice upper_all = Lattice::full(r), lower_all(r);
  for (const auto& x : c.must_contain) upper_all = lattice_intersect(upper_all, x.ann());
  for (const auto& y : c.must_be_inside) lower_all = lattice_sum(lower_all, y.ann());

  std::vector<TorusSubgroup> out;
  auto accept = [&](const Lattice& xi) {
    TorusSubgroup s(ctx, xi);
    if (s.dim() < min_dim || s.dim() > max_dim) return;
    if (!s.is_invariant()) return;
    if (c.max_exponent && s.pi0().exponent() > *c.max_exponent) return;
    for (const auto& x : c.must_contain)
      if (!s.contains(x)) return;
    for (const auto& y : c.must_be_inside)
      if (!y.contains(s)) return;
    out.push_back(s);
  };

  for (const auto& xi_e : bases) {
    const int k = xi_e.rank();
    const int d = r - k;
    if (d < min_dim || d > max_dim) continue;
    if (!xi_e.contains(lower_all)) continue;
    Lattice upper = lattice_intersect(xi_e, upper_all);
    if (upper.rank() < k) continue;
    if (k == 0) {
      accept(xi_e);
      continue;
    }
    Lattice lower_fixed = lattice_intersect(xi_e, lower_all);
    if (!c.max_exponent) {
      if (lower_fixed.rank() < k)
        throw TorusError("unbounded enumeration: give an exponent bound for finite components");
      if (upper.contains(lower_fixed))
        for (const auto& xi : intermediate_lattices(lower_fixed, upper)) accept(xi);
      continue;
    }
    for (BigInt ell = 1; ell <= *c.max_exponent; ++ell) {
      Lattice lower = lattice_sum(scale(xi_e, ell), lower_fixed);
      if (!upper.contains(lower)) continue;
      for (const auto& xi : intermediate_lattices(lower, upper))
        if (quotient_invariants(xi, xi_e).exponent() == ell) accept(xi);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace toral
