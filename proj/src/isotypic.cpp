#include "toral/isotypic.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace toral {

std::vector<RatMatrix> endo_algebra(const std::vector<RatMatrix>& gens, Eigen::Index d) {
  const Eigen::Index unknowns = d * d;
  std::vector<RatMatrix> basis;
  if (d == 0) return basis;
  RatMatrix system = RatMatrix::Zero(static_cast<Eigen::Index>(gens.size()) * unknowns, unknowns);
  // X is vectorized column-major: X(i, j) -> j * d + i.
  for (size_t g = 0; g < gens.size(); ++g) {
    const RatMatrix& a = gens[g];
    const Eigen::Index base = static_cast<Eigen::Index>(g) * unknowns;
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        const Eigen::Index row = base + j * d + i;
        for (Eigen::Index k = 0; k < d; ++k) {
          system(row, j * d + k) += a(i, k);  // (A X)(i, j)
          system(row, k * d + i) -= a(k, j);  // (X A)(i, j)
        }
      }
  }
  RatMatrix ns = gens.empty() ? RatMatrix(RatMatrix::Identity(unknowns, unknowns)) : rational_nullspace(system);
  for (Eigen::Index c = 0; c < ns.cols(); ++c) {
    RatMatrix x(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i) x(i, j) = ns(j * d + i, c);
    basis.push_back(x);
  }
  return basis;
}

std::vector<RatMatrix> endo_algebra(const IntegralRep& rep) {
  std::vector<RatMatrix> gens;
  for (int g : rep.group->generators()) gens.push_back(to_rational(rep(g)));
  return endo_algebra(gens, rep.rank);
}

const IsotypicPiece* IsotypicDecomposition::trivial_piece() const {
  for (const auto& p : pieces)
    if (p.is_trivial_type) return &p;
  return nullptr;
}

Lattice IsotypicDecomposition::lambda_f() const {
  Lattice acc(rank);
  for (const auto& p : pieces)
    if (!p.is_trivial_type) acc = lattice_sum(acc, p.lattice);
  return saturate(acc);
}

namespace {

// Matrix of the restriction of a to the invariant subspace spanned by the columns of b.
RatMatrix restrict_to(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix bt = b.transpose();
  RatMatrix gram = bt * b;
  return rational_inverse(gram) * bt * a * b;
}

struct Module {
  std::vector<RatMatrix> elements;  // matrix of every group element
  std::vector<int> generators;
  std::vector<int> inverse;
  Eigen::Index dim() const { return elements.empty() ? 0 : elements.front().rows(); }
  std::vector<RatMatrix> generator_matrices() const {
    std::vector<RatMatrix> g;
    for (int s : generators) g.push_back(elements[static_cast<size_t>(s)]);
    return g;
  }
  Module restricted(const RatMatrix& basis) const {
    Module m = *this;
    for (auto& e : m.elements) e = restrict_to(e, basis);
    return m;
  }
};

// Invariant complement of the invariant subspace spanned by a (Maschke averaging).
RatMatrix invariant_complement(const Module& mod, const RatMatrix& a) {
  const Eigen::Index d = mod.dim();
  RatMatrix basis = a;
  for (Eigen::Index i = 0; i < d && basis.cols() < d; ++i) {
    RatMatrix trial(d, basis.cols() + 1);
    trial << basis, RatMatrix::Identity(d, d).col(i);
    if (rational_rank(trial) == trial.cols()) basis = trial;
  }
  RatMatrix keep = RatMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < a.cols(); ++i) keep(i, i) = 1;
  RatMatrix proj = basis * keep * rational_inverse(basis);
  RatMatrix avg = RatMatrix::Zero(d, d);
  for (size_t w = 0; w < mod.elements.size(); ++w)
    avg += mod.elements[w] * proj * mod.elements[static_cast<size_t>(mod.inverse[w])];
  return rational_nullspace(avg);
}

// Proper invariant subspace detected from a commutant element, if any.
std::optional<RatMatrix> splitting_subspace(const RatMatrix& x) {
  const Eigen::Index d = x.rows();
  if (x.isZero()) return std::nullopt;
  RatPoly mu = minimal_polynomial(x);
  if (mu.front() == 0) {
    RatMatrix k = rational_nullspace(x);
    if (k.cols() > 0 && k.cols() < d) return k;
  }
  if (degree(mu) > kMaxFactorDegree) return std::nullopt;
  auto factors = factor_rational(mu);
  if (factors.size() < 2) return std::nullopt;
  RatPoly pk{Rational(1)};
  for (Eigen::Index i = 0; i < d; ++i) pk = poly_mul(pk, factors.front());
  RatMatrix k = rational_nullspace(evaluate(pk, x));
  if (k.cols() > 0 && k.cols() < d) return k;
  return std::nullopt;
}

struct SimpleSummand {
  Eigen::Index dim;
  int endo_dim;
};

void split_module(const Module& mod, int center_dim, std::vector<SimpleSummand>& out) {
  const Eigen::Index d = mod.dim();
  auto e = endo_algebra(mod.generator_matrices(), d);
  const int edim = static_cast<int>(e.size());
  if (edim == center_dim) {  // End is a field: simple
    out.push_back({d, edim});
    return;
  }
  std::vector<RatMatrix> candidates = e;
  for (size_t i = 0; i < e.size(); ++i)
    for (size_t j = i + 1; j < e.size(); ++j) {
      candidates.push_back(e[i] + e[j]);
      candidates.push_back(e[i] - e[j]);
    }
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int t = 0; t < 200; ++t) {
    RatMatrix x = RatMatrix::Zero(d, d);
    for (const auto& b : e) x += Rational(coef(rng)) * b;
    candidates.push_back(x);
  }
  for (const auto& x : candidates) {
    auto sub = splitting_subspace(x);
    if (!sub) continue;
    RatMatrix comp = invariant_complement(mod, *sub);
    split_module(mod.restricted(*sub), center_dim, out);
    split_module(mod.restricted(comp), center_dim, out);
    return;
  }
  // No zero divisor found: End is treated as a division algebra.
  out.push_back({d, edim});
}

}  // namespace

IsotypicDecomposition decompose(const IntegralRep& rep) {
  IsotypicDecomposition out;
  const int r = rep.rank;
  out.rank = r;
  if (r == 0) return out;
  const FiniteGroup& g = *rep.group;

  std::vector<RatMatrix> class_sums;
  for (const auto& cls : g.conjugacy_classes()) {
    RatMatrix s = RatMatrix::Zero(r, r);
    for (int x : cls) s += to_rational(rep(x));
    class_sums.push_back(s);
  }
  RatMatrix flat(static_cast<Eigen::Index>(r) * r, static_cast<Eigen::Index>(class_sums.size()));
  for (size_t j = 0; j < class_sums.size(); ++j) flat.col(static_cast<Eigen::Index>(j)) = class_sums[j].reshaped();
  const int center_dim = rational_rank(flat);

  std::mt19937 rng(101);
  std::uniform_int_distribution<int> coef(-5, 5);
  RatMatrix z;
  RatPoly mu;
  for (int attempt = 0;; ++attempt) {
    if (attempt >= 200) throw FactorizationError("no generic central element found");
    z = RatMatrix::Zero(r, r);
    for (size_t j = 0; j < class_sums.size(); ++j)
      z += Rational(attempt == 0 ? static_cast<int>(j) + 1 : coef(rng)) * class_sums[j];
    mu = minimal_polynomial(z);
    if (degree(mu) == center_dim) break;
  }

  Module full;
  for (int w = 0; w < g.order(); ++w) {
    full.elements.push_back(to_rational(rep(w)));
    full.inverse.push_back(g.inverse(w));
  }
  full.generators = g.generators();

  for (const auto& f : factor_rational(mu)) {
    IsotypicPiece piece;
    RatMatrix v = rational_nullspace(evaluate(f, z));
    piece.lattice = lattice_from_rational_span(v, r);
    piece.central_factor = f;
    piece.dim = piece.lattice.rank();
    piece.center_dim = degree(f);
    piece.is_trivial_type = true;
    for (int s : g.generators())
      if (rep(s) * piece.lattice.basis() != piece.lattice.basis()) piece.is_trivial_type = false;
    std::vector<SimpleSummand> summands;
    split_module(full.restricted(to_rational(piece.lattice.basis())), piece.center_dim, summands);
    piece.multiplicity = static_cast<int>(summands.size());
    piece.simple_dim = static_cast<int>(summands.front().dim);
    piece.division_dim = summands.front().endo_dim;
    for (const auto& s : summands)
      if (s.dim != summands.front().dim || s.endo_dim != summands.front().endo_dim)
        throw FactorizationError("isotypic component with non-isomorphic summands");
    out.pieces.push_back(piece);
  }
  std::sort(out.pieces.begin(), out.pieces.end(), [](const IsotypicPiece& a, const IsotypicPiece& b) {
    if (a.is_trivial_type != b.is_trivial_type) return a.is_trivial_type;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.lattice < b.lattice;
  });

  Lattice sum(r);
  for (const auto& p : out.pieces) sum = lattice_sum(sum, p.lattice);
  out.L = quotient_invariants(sum, Lattice::full(r));
  Lattice l1 = out.trivial_piece() ? out.trivial_piece()->lattice : Lattice(r);
  out.L_f = quotient_invariants(lattice_sum(l1, out.lambda_f()), Lattice::full(r));
  return out;
}

int BlockShape::total() const {
  int t = poset_rank;
  for (int m : stone_ranks) t += m;
  return t;
}

std::string BlockShape::describe() const {
  std::ostringstream os;
  os << "P(rank " << poset_rank << ")";
  for (int m : stone_ranks) os << " x N(CB rank " << m << ")";
  os << ", total " << total();
  return os.str();
}

BlockShape predicted_block_shape(const IsotypicDecomposition& d) {
  BlockShape s;
  for (const auto& p : d.pieces) {
    if (p.is_trivial_type) s.poset_rank = p.dim;
    else s.stone_ranks.push_back(p.multiplicity);
  }
  return s;
}

}  // namespace toral
