#include "toral/blockatlas.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace toral {

namespace {

std::vector<int> all_elements(int n) {
  std::vector<int> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i;
  return v;
}

IntVector restrict_cochain(const IntVector& global, int global_order, const std::vector<int>& elements, int degree,
                           int rank) {
  CochainSpace gs{global_order, degree, rank};
  CochainSpace ls{static_cast<int>(elements.size()), degree, rank};
  IntVector out = IntVector::Zero(static_cast<Eigen::Index>(ls.size()));
  for (long long t = 0; t < ls.tuples(); ++t) {
    std::vector<int> args = ls.tuple_at(t);
    for (int& a : args) a = elements[static_cast<size_t>(a)];
    const long long g = gs.tuple_index(args);
    for (int c = 0; c < rank; ++c) out(static_cast<Eigen::Index>(t * rank + c)) = global(static_cast<Eigen::Index>(g * rank + c));
  }
  return out;
}

TorusSubgroup in_context(const ContextPtr& ctx, const TorusSubgroup& s) { return {ctx, s.ann()}; }

TorusSubgroup tau_of(const TorusSubgroup& s) {
  const auto& ctx = s.context();
  return intersect(sum(s, TorusSubgroup::moving_torus_Tf(ctx)), TorusSubgroup::central_torus_T1(ctx));
}

TorusSubgroup omega_subgroup(const TorusSubgroup& s) { return sum(s, plus_operator(s).identity_component()); }

IntVector epsilon_image(const ImageData& image, const QuotientLattice& q) {
  return push_cochain(q.restriction, image.epsilon, image.ctx->rank(), q.module.rank);
}

std::string key_of(const SubgroupClass& k) {
  std::ostringstream os;
  for (int e : k.image->elements) os << e << ',';
  os << '|' << k.S.ann().describe() << '|';
  for (const auto& c : k.coordinates) os << c << ',';
  return os.str();
}

BigInt content(const IntMatrix& m) {
  BigInt g = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) g = gcd_value(g, m(i, j));
  return g;
}

}  // namespace

int ImageData::local(int global) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), global);
  if (it == elements.end() || *it != global) return -1;
  return static_cast<int>(it - elements.begin());
}

ToralGroupSpec ToralGroupSpec::make(std::string name, const IntegralRep& rep, const IntVector& epsilon) {
  validate_rep(rep);
  const int n = rep.group->order();
  CochainSpace sp{n, 3, rep.rank};
  if (epsilon.size() != sp.size()) throw AtlasError("extension cocycle has the wrong length");
  if (!apply_coboundary(rep, 3, epsilon).isZero()) throw AtlasError("extension cochain is not a cocycle");
  ToralGroupSpec s;
  s.name_ = std::move(name);
  auto full = std::make_shared<ImageData>();
  full->elements = all_elements(n);
  full->ctx = TorusContext::make(rep);
  full->epsilon = epsilon;
  full->is_full = true;
  s.full_ = full;
  s.cache_ = std::make_shared<Cache>();
  return s;
}

ToralGroupSpec ToralGroupSpec::split(std::string name, const IntegralRep& rep) {
  CochainSpace sp{rep.group->order(), 3, rep.rank};
  return make(std::move(name), rep, IntVector::Zero(static_cast<Eigen::Index>(sp.size())));
}

CohomClass ToralGroupSpec::epsilon_class() const {
  return CohomClass::from_cocycle(cohomology(rep(), 3), epsilon());
}

ImagePtr ToralGroupSpec::image(const std::vector<int>& elements) const {
  std::vector<int> sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty() || sorted == full_->elements) return full_;
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->images.find(sorted);
  if (it != cache_->images.end()) return it->second;
  if (!group().is_subgroup(sorted)) throw AtlasError("image elements do not form a subgroup of W");
  auto d = std::make_shared<ImageData>();
  d->elements = sorted;
  d->ctx = TorusContext::make(restrict_rep(rep(), sorted));
  d->epsilon = restrict_cochain(epsilon(), group().order(), sorted, 3, rank());
  cache_->images.emplace(sorted, d);
  return d;
}

bool SubgroupClass::same_class(const SubgroupClass& o) const {
  return image->elements == o.image->elements && S.ann() == o.S.ann() && coordinates == o.coordinates;
}

bool SubgroupClass::operator<(const SubgroupClass& o) const {
  if (image->elements.size() != o.image->elements.size()) return image->elements.size() > o.image->elements.size();
  if (image->elements != o.image->elements) return image->elements < o.image->elements;
  if (!(S == o.S)) return S < o.S;
  return coordinates < o.coordinates;
}

std::string SubgroupClass::describe() const {
  std::ostringstream os;
  if (!label.empty()) os << label << ": ";
  os << "image order " << image->elements.size() << ", S " << S.describe() << ", x (";
  for (size_t i = 0; i < coordinates.size(); ++i) os << (i ? "," : "") << coordinates[i];
  os << ")";
  return os.str();
}

std::optional<IntVector> base_lift(const ImageData& image, const TorusSubgroup& s) {
  TorusCohomology t = torus_cohomology(in_context(image.ctx, s), 2);
  return t.group->coboundary_preimage(epsilon_image(image, t.quotient));
}

SubgroupClass make_class(const ImagePtr& image, const TorusSubgroup& s0, const IntVector& lift, std::string label) {
  TorusSubgroup s = in_context(image->ctx, s0);
  if (!s.is_invariant()) throw AtlasError("subgroup is not invariant under the image");
  QuotientLattice q = quotient_lattice(s);
  const int k = q.module.rank;
  CochainSpace sp{static_cast<int>(image->elements.size()), 2, k};
  if (lift.size() != sp.size()) throw AtlasError("lift cochain has the wrong length");
  if (apply_coboundary(q.module, 2, lift) != epsilon_image(*image, q))
    throw AtlasError("lift cochain does not bound the extension class");
  auto h0 = base_lift(*image, s);
  IntVector diff = lift - *h0;
  SubgroupClass c{image, s, lift, cohomology(q.module, 2)->coordinates(diff), std::move(label)};
  return c;
}

SubgroupClass class_from_coordinates(const ImagePtr& image, const TorusSubgroup& s0, const std::vector<BigInt>& coords,
                                     std::string label) {
  TorusSubgroup s = in_context(image->ctx, s0);
  auto h0 = base_lift(*image, s);
  if (!h0) throw AtlasError("extension class does not lift over this subgroup");
  QuotientLattice q = quotient_lattice(s);
  auto h2 = cohomology(q.module, 2);
  IntVector h = *h0 + h2->cocycle_for(coords);
  return {image, s, h, h2->coordinates(h - *h0), std::move(label)};
}

std::vector<SubgroupClass> classify(const ToralGroupSpec& spec, const SubgroupConstraints& bounds) {
  std::vector<SubgroupClass> out;
  const ImagePtr& img = spec.full_image();
  for (const auto& s : enumerate_invariant_subgroups(spec.context(), bounds)) {
    auto h0 = base_lift(*img, s);
    if (!h0) continue;
    QuotientLattice q = quotient_lattice(s);
    auto h2 = cohomology(q.module, 2);
    for (const auto& coords : h2->all_coordinates()) {
      IntVector h = *h0 + h2->cocycle_for(coords);
      out.push_back({img, s, h, coords, {}});
    }
  }
  return out;
}

SubgroupClass beta(const SubgroupClass& k, const TorusSubgroup& s_big0) {
  TorusSubgroup s_big = in_context(k.image->ctx, s_big0);
  IntMatrix p = quotient_map(k.S, s_big);
  IntVector h = push_cochain(p, k.lift, k.S.context()->rank() - k.S.dim(), s_big.context()->rank() - s_big.dim());
  return make_class(k.image, s_big, h);
}

TorusSubgroup tau(const SubgroupClass& k) { return tau_of(k.S); }

SubgroupClass omega(const SubgroupClass& k) {
  SubgroupClass w = beta(k, omega_subgroup(k.S));
  if (w.S == k.S) w.label = k.label;
  return w;
}

std::pair<TorusSubgroup, SubgroupClass> lambda(const SubgroupClass& k) { return {tau(k), omega(k)}; }

bool has_finite_weyl(const SubgroupClass& k) { return plus_operator(k.S).dim() == k.S.dim(); }

bool cotoral_le(const SubgroupClass& k, const SubgroupClass& k_big) {
  if (k.image->elements != k_big.image->elements) return false;
  if (k.S == k_big.S) return k.coordinates == k_big.coordinates;
  TorusSubgroup big = in_context(k.image->ctx, k_big.S);
  if (big.dim() <= k.S.dim()) return false;
  if (!big.contains(k.S)) return false;
  if (!quotient_invariants(big.ann(), k.S.ann()).invariant_factors.empty()) return false;
  if (!plus_operator(k.S).contains(big)) return false;
  return beta(k, big).coordinates == k_big.coordinates;
}

TorusSubgroup sigma_merge(const SubgroupClass& khat, const TorusSubgroup& r) {
  const auto& ctx = khat.image->ctx;
  return sum(intersect(khat.S, TorusSubgroup::moving_torus_Tf(ctx)), in_context(ctx, r));
}

TorusSubgroup central_label(const ContextPtr& ctx, const BigInt& m) {
  if (m < 0) throw AtlasError("central label must be positive or 0 for infinity");
  if (m == 0) return TorusSubgroup::central_torus_T1(ctx);
  Lattice xi_l = lattice_sum(ctx->xi_T1, ctx->xi_Tf);
  return {ctx, lattice_sum(scale(xi_l, m), ctx->xi_T1)};
}

SubgroupClass moving_label(const ToralGroupSpec& spec, const BigInt& n) {
  if (n < 0) throw AtlasError("moving label must be positive or 0 for infinity");
  const auto& ctx = spec.context();
  if (n == 0) return class_from_coordinates(spec.full_image(), TorusSubgroup::full_torus(ctx), {}, "full");
  TorusSubgroup tf_n(ctx, lattice_sum(ctx->xi_Tf, Lattice::scaled_full(ctx->rank(), 2 * n)));
  TorusSubgroup s = sum(TorusSubgroup::central_torus_T1(ctx), tf_n);
  QuotientLattice q = quotient_lattice(s);
  std::vector<BigInt> zero(cohomology(q.module, 2)->group().invariant_factors.size(), BigInt(0));
  std::ostringstream os;
  os << "Khat(" << n << ")";
  return class_from_coordinates(spec.full_image(), s, zero, os.str());
}

BigInt hit_threshold(const ToralGroupSpec& spec) {
  return lcm_value(spec.context()->isotypic.L.exponent(), exponent_H2T(spec.rep()));
}

LambdaFibre lambda_fibre(const ToralGroupSpec& spec, const TorusSubgroup& a0, const SubgroupClass& khat) {
  const auto& ctx = spec.context();
  if (!khat.image->is_full) throw AtlasError("fibres are taken over classes with full image");
  if (!has_finite_weyl(khat)) throw AtlasError("the target class must have finite Weyl group");
  TorusSubgroup a = in_context(ctx, a0);
  TorusSubgroup t1 = TorusSubgroup::central_torus_T1(ctx), tf = TorusSubgroup::moving_torus_Tf(ctx);
  if (!t1.contains(a)) throw AtlasError("the central label must lie in T1");
  // S is squeezed between (Ŝ ∩ T_f)_e + A_e and (Ŝ ∩ T_f) + A.
  TorusSubgroup hat_f = intersect(khat.S, tf);
  TorusSubgroup upper = sum(hat_f, a);
  TorusSubgroup lower = sum(hat_f.identity_component(), a.identity_component());
  LambdaFibre out;
  out.threshold = hit_threshold(spec);
  for (const auto& xi : intermediate_lattices(upper.ann(), lower.ann())) {
    TorusSubgroup s(ctx, xi);
    if (!s.is_invariant()) continue;
    if (!(tau_of(s) == a)) continue;
    if (!(omega_subgroup(s) == khat.S)) continue;
    auto h0 = base_lift(*spec.full_image(), s);
    if (!h0) continue;
    QuotientLattice q = quotient_lattice(s);
    auto h2 = cohomology(q.module, 2);
    for (const auto& coords : h2->all_coordinates()) {
      SubgroupClass k{spec.full_image(), s, IntVector(*h0 + h2->cocycle_for(coords)), coords, {}};
      if (beta(k, khat.S).coordinates == khat.coordinates) out.classes.push_back(k);
    }
  }
  std::sort(out.classes.begin(), out.classes.end());
  return out;
}

std::vector<BigInt> piece_exponents(const SubgroupClass& k) {
  const auto& ctx = k.image->ctx;
  std::vector<BigInt> out;
  const auto& pieces = ctx->isotypic.pieces;
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].is_trivial_type) continue;
    // Λ* / Ξ_{T_i} ≅ Z^{d_i} through the transpose of a basis of the saturated piece.
    IntMatrix proj = pieces[i].lattice.basis().transpose() * k.S.ann().basis();
    out.push_back(content(proj));
  }
  return out;
}

bool in_neighbourhood(const SubgroupClass& k, const std::vector<std::optional<BigInt>>& thresholds) {
  const auto& ctx = k.image->ctx;
  std::vector<BigInt> e = piece_exponents(k);
  if (e.size() != thresholds.size()) throw AtlasError("one threshold is needed per nontrivial isotypic piece");
  if (!k.S.contains(TorusSubgroup::central_torus_T1(ctx))) return false;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!thresholds[i] || e[i] < *thresholds[i]) return false;
  }
  return true;
}

ConvergenceReport converges(const std::vector<SubgroupClass>& chain, const SubgroupClass& limit) {
  if (chain.empty()) throw AtlasError("empty chain");
  for (size_t i = 0; i + 1 < chain.size(); ++i)
    if (!chain[i + 1].S.contains(in_context(chain[i + 1].image->ctx, chain[i].S)) ||
        chain[i].image->elements != chain[i + 1].image->elements)
      throw AtlasError("chain is not monotone");
  ConvergenceReport rep;
  for (const auto& k : chain) {
    if (k.image->elements != limit.image->elements) {
      rep.reason = "images differ";
      return rep;
    }
    TorusSubgroup ls = in_context(k.image->ctx, limit.S);
    if (!ls.contains(k.S)) {
      rep.reason = "chain member not contained in the limit";
      return rep;
    }
    if (beta(k, ls).coordinates != limit.coordinates) {
      rep.reason = "lift data does not transport to the limit";
      return rep;
    }
  }
  const Lattice& xi_star = limit.S.ann();
  const Lattice& xi_last = chain.back().S.ann();
  if (!(lattice_intersect(xi_last, saturate(xi_star)) == xi_star)) {
    rep.reason = "union misses a finite part of the limit";
    return rep;
  }
  // Free part of Λ*/Ξ_*: a projection whose kernel is the saturation of Ξ_*.
  IntMatrix proj = integer_kernel(IntMatrix(xi_star.basis().transpose())).transpose();
  if (xi_star.rank() == 0) proj = identity_matrix(xi_star.ambient_rank());
  std::vector<BigInt> c;
  for (const auto& k : chain) c.push_back(proj.rows() ? content(IntMatrix(proj * k.S.ann().basis())) : BigInt(0));
  if (c.back() == 0) {
    for (size_t i = chain.size() / 2; i < chain.size(); ++i)
      if (!(chain[i].S == in_context(chain[i].image->ctx, limit.S))) {
        rep.reason = "chain is not stationary at the limit";
        return rep;
      }
    rep.converges = true;
    rep.reason = "chain reaches the limit";
    return rep;
  }
  if (chain.size() < 2) {
    rep.reason = "chain too short to decide";
    return rep;
  }
  for (size_t i = chain.size() / 2; i + 1 < chain.size(); ++i)
    if (c[i] == 0 || c[i + 1] <= c[i] || c[i + 1] % c[i] != 0) {
      rep.reason = "free part of the annihilators does not shrink";
      return rep;
    }
  rep.converges = true;
  rep.reason = "annihilators intersect to the limit";
  return rep;
}

BigInt AffineForm::eval(const std::vector<BigInt>& p) const {
  BigInt v = constant;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (i >= p.size()) throw AtlasError("affine form refers to a missing parameter");
    v += coeffs[i] * p[i];
  }
  if (v % denominator != 0) throw AtlasError("affine form does not evaluate to an integer");
  return v / denominator;
}

bool Family::admits(const std::vector<BigInt>& p) const {
  if (p.size() != params.size()) return false;
  for (const auto& x : p)
    if (x < 1) return false;
  for (const auto& c : constraints)
    if (!c.holds(p)) return false;
  return true;
}

std::string Family::label(const std::vector<BigInt>& p) const {
  std::ostringstream os;
  os << name;
  if (!p.empty()) {
    os << '(';
    for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ')';
  }
  return os.str();
}

SubgroupClass Family::instantiate(const ToralGroupSpec& spec, const std::vector<BigInt>& p) const {
  if (!admits(p)) throw AtlasError("parameters not admitted by family " + name);
  ImagePtr img = spec.image(image);
  const int r = spec.rank();
  const auto t = static_cast<Eigen::Index>(generators.size());
  IntMatrix g(r, t);
  for (Eigen::Index j = 0; j < t; ++j) {
    const auto& col = generators[static_cast<size_t>(j)];
    if (static_cast<int>(col.size()) != r) throw AtlasError("annihilator generator of family " + name + " has the wrong length");
    for (int i = 0; i < r; ++i) g(i, j) = col[static_cast<size_t>(i)].eval(p);
  }
  Lattice xi = t ? Lattice::from_generators(g) : Lattice(r);
  TorusSubgroup s(img->ctx, xi);
  if (!s.is_invariant()) throw AtlasError("family " + name + " yields a non-invariant subgroup");
  const int k = xi.rank();
  const int m = static_cast<int>(img->elements.size());
  CochainSpace sp{m, 2, k};
  IntVector h = IntVector::Zero(static_cast<Eigen::Index>(sp.size()));
  if (!lift.empty()) {
    IntMatrix n(k, t);
    for (Eigen::Index j = 0; j < t; ++j) n.col(j) = *xi.coordinates(g.col(j));
    IntMatrix nt = n.transpose();
    for (const auto& lv : lift) {
      const int a = img->local(lv.a), b = img->local(lv.b);
      if (a < 0 || b < 0) throw AtlasError("lift of family " + name + " refers to elements outside its image");
      const long long idx = sp.tuple_index({a, b});
      if (idx < 0) throw AtlasError("lift of family " + name + " is not normalized");
      if (static_cast<Eigen::Index>(lv.values.size()) != t) throw AtlasError("lift of family " + name + " has the wrong length");
      IntVector v(t);
      for (Eigen::Index j = 0; j < t; ++j) v(j) = lv.values[static_cast<size_t>(j)].eval(p);
      IntVector x;
      if (!solve_integer(nt, v, x)) throw AtlasError("lift of family " + name + " is not a functional on the annihilator");
      for (int c = 0; c < k; ++c) h(static_cast<Eigen::Index>(idx * k + c)) = x(c);
    }
  }
  return make_class(img, s, h, label(p));
}

int Catalog::family_index(const std::string& n) const {
  for (size_t i = 0; i < families.size(); ++i)
    if (families[i].name == n) return static_cast<int>(i);
  return -1;
}

std::vector<CatalogEntry> truncate(const ToralGroupSpec& spec, const Catalog& catalog, const BigInt& bound) {
  std::vector<CatalogEntry> out;
  std::set<std::string> seen;
  for (size_t f = 0; f < catalog.families.size(); ++f) {
    const Family& fam = catalog.families[f];
    std::vector<BigInt> p(fam.params.size(), BigInt(1));
    for (;;) {
      if (fam.admits(p)) {
        SubgroupClass c = fam.instantiate(spec, p);
        if (seen.insert(key_of(c)).second) out.push_back({static_cast<int>(f), p, c});
      }
      size_t i = 0;
      while (i < p.size() && p[i] == bound) p[i++] = 1;
      if (i == p.size()) break;
      ++p[i];
    }
  }
  return out;
}

std::vector<std::vector<BigInt>> saturating_sequence(const ToralGroupSpec& spec, const Family& f,
                                                     const std::vector<BigInt>& base, int param, int length) {
  std::vector<std::vector<BigInt>> out;
  std::vector<BigInt> p = base;
  const auto idx = static_cast<size_t>(param);
  bool found = false;
  for (BigInt v = 1; v <= 64 && !found; ++v) {
    p[idx] = v;
    found = f.admits(p);
  }
  if (!found) return out;
  out.push_back(p);
  SubgroupClass prev = f.instantiate(spec, p);
  for (int i = 1; i < length; ++i) {
    bool step = false;
    for (BigInt c = i + 1; c <= 1000 && !step; ++c) {
      std::vector<BigInt> q = p;
      q[idx] = p[idx] * c;
      if (!f.admits(q)) continue;
      SubgroupClass next = f.instantiate(spec, q);
      if (!next.S.contains(prev.S)) continue;
      p = q;
      prev = next;
      step = true;
    }
    if (!step) throw AtlasError("no monotone saturating chain in family " + f.name);
    out.push_back(p);
  }
  return out;
}

void validate_limits(const ToralGroupSpec& spec, const Catalog& catalog) {
  for (const auto& rule : catalog.limits) {
    const int si = catalog.family_index(rule.source), ti = catalog.family_index(rule.target);
    if (si < 0 || ti < 0)
      throw AtlasError("non-closed limit structure: unknown family in rule " + rule.source + " -> " + rule.target);
    const Family& src = catalog.families[static_cast<size_t>(si)];
    const Family& tgt = catalog.families[static_cast<size_t>(ti)];
    if (rule.param < 0 || rule.param >= static_cast<int>(src.params.size()) || tgt.params.size() + 1 != src.params.size())
      throw AtlasError("non-closed limit structure: parameter mismatch in rule " + rule.source + " -> " + rule.target);
    if (spec.image(src.image)->elements != spec.image(tgt.image)->elements)
      throw AtlasError("non-closed limit structure: rule " + rule.source + " -> " + rule.target + " changes the image");
    const size_t rest = tgt.params.size();
    std::vector<BigInt> q(rest, BigInt(1));
    for (;;) {
      std::vector<BigInt> base;
      for (size_t i = 0, j = 0; i < src.params.size(); ++i)
        base.push_back(static_cast<int>(i) == rule.param ? BigInt(1) : q[j++]);
      auto seq = saturating_sequence(spec, src, base, rule.param, 5);
      if (!seq.empty()) {
        if (!tgt.admits(q)) throw AtlasError("non-closed limit structure: limit of " + src.label(seq.front()) + " is not in the catalog");
        std::vector<SubgroupClass> chain;
        for (const auto& p : seq) chain.push_back(src.instantiate(spec, p));
        SubgroupClass lim = tgt.instantiate(spec, q);
        auto rep = converges(chain, lim);
        if (!rep.converges)
          throw AtlasError("non-closed limit structure: " + src.name + " does not converge to " + lim.label + " (" + rep.reason + ")");
      }
      size_t i = 0;
      while (i < q.size() && q[i] == 2) q[i++] = 1;
      if (i == q.size()) break;
      ++q[i];
    }
  }
}

std::vector<int> point_ranks(const Catalog& catalog) {
  const size_t n = catalog.families.size();
  std::vector<std::vector<int>> incoming(n);
  for (const auto& rule : catalog.limits) {
    const int si = catalog.family_index(rule.source), ti = catalog.family_index(rule.target);
    if (si < 0 || ti < 0) throw AtlasError("non-closed limit structure: unknown family in rule " + rule.source + " -> " + rule.target);
    incoming[static_cast<size_t>(ti)].push_back(si);
  }
  std::vector<int> rank(n, -1), state(n, 0);
  std::function<int(size_t)> visit = [&](size_t f) -> int {
    if (state[f] == 2) return rank[f];
    if (state[f] == 1) throw AtlasError("cyclic limit rules");
    state[f] = 1;
    int r = 0;
    for (int s : incoming[f]) r = std::max(r, 1 + visit(static_cast<size_t>(s)));
    state[f] = 2;
    return rank[f] = r;
  };
  for (size_t f = 0; f < n; ++f) visit(f);
  return rank;
}

int cb_rank(const Catalog& catalog) {
  int r = 0;
  for (int x : point_ranks(catalog)) r = std::max(r, x);
  return r;
}

namespace {

struct LimitEdge {
  size_t source, target;
  BigInt level;
};

std::vector<LimitEdge> limit_edges(const Catalog& catalog, const std::vector<CatalogEntry>& entries) {
  std::map<std::pair<int, std::vector<BigInt>>, size_t> where;
  for (size_t i = 0; i < entries.size(); ++i) where.emplace(std::make_pair(entries[i].family, entries[i].params), i);
  std::vector<LimitEdge> out;
  for (const auto& rule : catalog.limits) {
    const int si = catalog.family_index(rule.source), ti = catalog.family_index(rule.target);
    for (size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].family != si) continue;
      std::vector<BigInt> q;
      for (size_t j = 0; j < entries[i].params.size(); ++j)
        if (static_cast<int>(j) != rule.param) q.push_back(entries[i].params[j]);
      auto it = where.find({ti, q});
      if (it != where.end()) out.push_back({i, it->second, entries[i].params[static_cast<size_t>(rule.param)]});
    }
  }
  return out;
}

}  // namespace

Partition partition(const ToralGroupSpec& spec, const Catalog& catalog) {
  validate_limits(spec, catalog);
  Partition out;
  out.truncation = catalog.truncation > 0 ? catalog.truncation : BigInt(12);
  out.threshold = catalog.threshold > 0 ? catalog.threshold : hit_threshold(spec);
  out.entries = truncate(spec, catalog, out.truncation);
  const size_t n = out.entries.size();
  const auto& e = out.entries;

  out.cotoral_up.assign(n, {});
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && e[j].cls.S.dim() > e[i].cls.S.dim() && cotoral_le(e[i].cls, e[j].cls)) out.cotoral_up[i].push_back(j);

  auto edges = limit_edges(catalog, e);
  std::vector<int> ranks = point_ranks(catalog);
  std::vector<bool> remaining(n, true);
  std::vector<int> owner(n, -1);
  size_t left = n;
  const int max_rounds = spec.rank() + 8;

  while (left > 0) {
    if (out.rounds >= max_rounds) throw AtlasError("partition did not terminate");
    std::vector<size_t> maximal;
    std::vector<bool> is_max(n, false);
    for (size_t i = 0; i < n; ++i) {
      if (!remaining[i]) continue;
      bool top = true;
      for (size_t j : out.cotoral_up[i])
        if (remaining[j]) top = false;
      if (top) {
        if (!has_finite_weyl(e[i].cls))
          throw AtlasError("cotorally maximal class without finite Weyl group: " + e[i].cls.label);
        maximal.push_back(i);
        is_max[i] = true;
      }
    }
    std::sort(maximal.begin(), maximal.end(), [&](size_t a, size_t b) {
      const int da = e[a].cls.S.dim(), db = e[b].cls.S.dim();
      if (da != db) return da > db;
      const int ra = ranks[static_cast<size_t>(e[a].family)], rb = ranks[static_cast<size_t>(e[b].family)];
      if (ra != rb) return ra > rb;
      if (e[a].family != e[b].family) return e[a].family < e[b].family;
      return e[a].params < e[b].params;
    });

    for (size_t x : maximal) {
      if (owner[x] >= 0) continue;
      for (BigInt t = out.threshold;; ++t) {
        std::set<size_t> nb{x};
        std::deque<size_t> queue{x};
        while (!queue.empty()) {
          size_t y = queue.front();
          queue.pop_front();
          for (const auto& ed : edges)
            if (ed.target == y && ed.level >= t && remaining[ed.source] && nb.insert(ed.source).second)
              queue.push_back(ed.source);
        }
        std::vector<size_t> hood;
        for (size_t y : nb)
          if (is_max[y]) hood.push_back(y);
        std::vector<size_t> members;
        bool clash = false;
        for (size_t i = 0; i < n && !clash; ++i) {
          if (!remaining[i]) continue;
          bool in = std::binary_search(hood.begin(), hood.end(), i);
          for (size_t j : out.cotoral_up[i])
            if (std::binary_search(hood.begin(), hood.end(), j)) in = true;
          if (!in) continue;
          if (owner[i] >= 0) clash = true;
          members.push_back(i);
        }
        if (clash) {
          if (hood.size() == 1) throw AtlasError("blocks overlap at " + e[x].cls.label);
          continue;
        }
        Block b;
        b.dominant = x;
        b.threshold = t;
        b.round = out.rounds;
        b.neighbourhood = hood;
        b.members = members;
        for (size_t i : members) owner[i] = static_cast<int>(out.blocks.size());
        out.blocks.push_back(std::move(b));
        break;
      }
    }
    for (size_t i = 0; i < n; ++i)
      if (remaining[i] && owner[i] >= 0) {
        remaining[i] = false;
        --left;
      }
    ++out.rounds;
  }
  return out;
}

PartitionCheck check_partition(const ToralGroupSpec& spec, const Catalog& catalog, const Partition& p) {
  PartitionCheck c;
  const size_t n = p.entries.size();
  std::vector<int> owner(n, -1);
  std::ostringstream why;
  for (size_t b = 0; b < p.blocks.size(); ++b)
    for (size_t i : p.blocks[b].members) {
      if (owner[i] >= 0) {
        c.disjoint = false;
        why << "entry " << p.entries[i].cls.label << " in two blocks; ";
      }
      owner[i] = static_cast<int>(b);
    }
  for (size_t i = 0; i < n; ++i)
    if (owner[i] < 0) {
      c.covering = false;
      why << "entry " << p.entries[i].cls.label << " uncovered; ";
    }
  // Recompute the cotoral relation rather than trusting the stored one.
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && owner[i] != owner[j] && cotoral_le(p.entries[i].cls, p.entries[j].cls)) {
        c.closed = false;
        why << p.entries[i].cls.label << " <= " << p.entries[j].cls.label << " across blocks; ";
      }
  for (const auto& b : p.blocks) {
    if (!has_finite_weyl(p.entries[b.dominant].cls)) c.dominated = false;
    for (size_t i : b.members) {
      bool under = false;
      for (size_t h : b.neighbourhood)
        if (h == i || cotoral_le(p.entries[i].cls, p.entries[h].cls)) under = true;
      if (!under) {
        c.dominated = false;
        why << p.entries[i].cls.label << " not dominated; ";
      }
    }
  }
  for (const auto& ed : limit_edges(catalog, p.entries)) {
    const auto& b = p.blocks[static_cast<size_t>(owner[ed.target])];
    if (ed.level >= b.threshold && owner[ed.source] != owner[ed.target]) {
      c.clopen = false;
      why << p.entries[ed.source].cls.label << " converges into another block; ";
    }
  }
  c.rounds_ok = p.rounds <= spec.rank() + 1;
  if (!c.rounds_ok) why << "rounds " << p.rounds << "; ";
  c.failure = why.str();
  return c;
}

}  // namespace toral
