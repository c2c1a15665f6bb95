#include "toral/grassmannian.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <tuple>

namespace toral {

namespace {

using Small = long long;
using SmallMatrix = std::vector<std::vector<Small>>;

BigInt count_tuples(int k, const BigInt& m, const BigInt& cap) {
  if (k == 0) return 1;
  BigInt total = 0;
  for (BigInt d = 1; d <= m; ++d) {
    BigInt w = 1;
    for (int e = 1; e < k; ++e) w *= d;
    total += w * count_tuples(k - 1, m / d, cap);
    if (total > cap) return total;
  }
  return total;
}

// v ∈ column span of the upper triangular basis b (positive diagonal).
bool triangular_contains(const SmallMatrix& b, std::vector<Small> v) {
  const int r = static_cast<int>(v.size());
  for (int i = r - 1; i >= 0; --i) {
    if (v[static_cast<size_t>(i)] % b[static_cast<size_t>(i)][static_cast<size_t>(i)] != 0) return false;
    Small x = v[static_cast<size_t>(i)] / b[static_cast<size_t>(i)][static_cast<size_t>(i)];
    for (int j = 0; j <= i; ++j) v[static_cast<size_t>(j)] -= x * b[static_cast<size_t>(j)][static_cast<size_t>(i)];
  }
  return true;
}

bool triangular_invariant(const std::vector<SmallMatrix>& gens, const SmallMatrix& b) {
  const size_t r = b.size();
  for (const auto& g : gens)
    for (size_t c = 0; c < r; ++c) {
      std::vector<Small> v(r, 0);
      for (size_t i = 0; i < r; ++i)
        for (size_t k = 0; k < r; ++k) v[i] += g[i][k] * b[k][c];
      if (!triangular_contains(b, v)) return false;
    }
  return true;
}

SmallMatrix to_small(const IntMatrix& m) {
  SmallMatrix out(static_cast<size_t>(m.rows()), std::vector<Small>(static_cast<size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<size_t>(i)][static_cast<size_t>(j)] = static_cast<Small>(m(i, j));
  return out;
}

IntMatrix to_big(const SmallMatrix& m) {
  const Eigen::Index r = static_cast<Eigen::Index>(m.size());
  IntMatrix out(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) out(i, j) = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return out;
}

std::vector<BigInt> piece_indices(const IsotypicDecomposition& d, const Lattice& l) {
  std::vector<BigInt> out;
  for (const auto& p : d.pieces) out.push_back(quotient_invariants(lattice_intersect(l, p.lattice), p.lattice).order());
  return out;
}

}  // namespace

BigInt sublattice_count(int r, const BigInt& bound) { return count_tuples(r, bound, BigInt(kMaxCensusCandidates)); }

SublatticeCensus enumerate_sublattices(const IntegralRep& rep, const BigInt& bound, bool invariant_only) {
  if (bound < 1) throw DimensionError("index bound must be at least 1");
  if (bound > kMaxCensusIndex) throw DimensionError("index bound exceeds " + std::to_string(kMaxCensusIndex));
  const int r = rep.rank;
  if (r < 1 || r > kMaxCensusRank) throw DimensionError("census rank must lie in 1.." + std::to_string(kMaxCensusRank));
  if (count_tuples(r, bound, BigInt(kMaxCensusCandidates)) > kMaxCensusCandidates)
    throw DimensionError("census exceeds " + std::to_string(kMaxCensusCandidates) + " candidate lattices");

  std::vector<SmallMatrix> gens;
  for (int g : rep.group->generators()) gens.push_back(to_small(rep(g)));
  const Small n_max = static_cast<Small>(bound);

  SublatticeCensus census;
  census.rep = rep;
  census.bound = bound;
  census.invariant_only = invariant_only;
  census.counts.assign(static_cast<size_t>(n_max) + 1, 0);

  SmallMatrix b(static_cast<size_t>(r), std::vector<Small>(static_cast<size_t>(r), 0));
  std::vector<std::pair<Small, Lattice>> found;
  // Columns are filled left to right: column j has diagonal d_j and entries above reduced mod d_i.
  std::function<void(int, Small)> fill_diag;
  std::function<void(int, int, Small)> fill_above = [&](int j, int i, Small index) {
    if (i == j) {
      fill_diag(j + 1, index);
      return;
    }
    const Small d = b[static_cast<size_t>(i)][static_cast<size_t>(i)];
    for (Small x = 0; x < d; ++x) {
      b[static_cast<size_t>(i)][static_cast<size_t>(j)] = x;
      fill_above(j, i + 1, index);
    }
    b[static_cast<size_t>(i)][static_cast<size_t>(j)] = 0;
  };
  fill_diag = [&](int j, Small index) {
    if (j == r) {
      bool inv = triangular_invariant(gens, b);
      if (invariant_only && !inv) return;
      found.emplace_back(index, Lattice::from_generators(to_big(b)));
      CensusEntry e;
      e.lattice = found.back().second;
      e.rank = r;
      e.index = index;
      e.invariant = inv;
      census.entries.push_back(std::move(e));
      ++census.counts[static_cast<size_t>(index)];
      return;
    }
    for (Small d = 1; index * d <= n_max; ++d) {
      b[static_cast<size_t>(j)][static_cast<size_t>(j)] = d;
      fill_above(j, 0, index * d);
    }
    b[static_cast<size_t>(j)][static_cast<size_t>(j)] = 0;
  };
  fill_diag(0, 1);

  std::sort(census.entries.begin(), census.entries.end(), [](const CensusEntry& x, const CensusEntry& y) {
    if (x.index != y.index) return x.index < y.index;
    return x.lattice < y.lattice;
  });
  auto d = decompose(rep);
  for (auto& e : census.entries) e.parameters = piece_indices(d, e.lattice);
  return census;
}

IntMatrix restricted_action(const IntegralRep& rep, const Lattice& l, int w) {
  if (!l.is_full_rank()) throw DimensionError("restricted action needs a full-rank lattice");
  IntMatrix img = rep(w) * l.basis();
  IntMatrix out(l.rank(), l.rank());
  for (Eigen::Index c = 0; c < img.cols(); ++c) {
    auto x = l.coordinates(img.col(c));
    if (!x) throw DimensionError("lattice is not invariant");
    out.col(c) = *x;
  }
  return out;
}

bool ModuleInvariants::operator<(const ModuleInvariants& o) const {
  return std::tie(elementary, isotypic_gap.invariant_factors, isotypic_gap.free_rank) <
         std::tie(o.elementary, o.isotypic_gap.invariant_factors, o.isotypic_gap.free_rank);
}

ModuleInvariants module_invariants(const IntegralRep& rep, const IsotypicDecomposition& d, const Lattice& l) {
  ModuleInvariants inv;
  const int r = l.rank();
  for (int w = 0; w < rep.group->order(); ++w) {
    IntMatrix m = restricted_action(rep, l, w) - IntMatrix::Identity(r, r);
    auto s = snf(m);
    std::vector<BigInt> diag;
    for (int i = 0; i < r; ++i) diag.push_back(abs_value(BigInt(s.D(i, i))));
    inv.elementary.push_back(std::move(diag));
  }
  Lattice inner(l.ambient_rank());
  for (const auto& p : d.pieces) inner = lattice_sum(inner, lattice_intersect(l, p.lattice));
  inv.isotypic_gap = quotient_invariants(inner, l);
  return inv;
}

IntMatrix equivariant_maps(const IntegralRep& rep, const Lattice& a, const Lattice& b) {
  const Eigen::Index r = a.rank();
  const auto& gens = rep.group->generators();
  if (gens.empty()) return IntMatrix::Identity(r * r, r * r);
  IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(gens.size()) * r * r, r * r);
  Eigen::Index row = 0;
  for (int g : gens) {
    IntMatrix A = restricted_action(rep, a, g), B = restricted_action(rep, b, g);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j, ++row)
        for (Eigen::Index k = 0; k < r; ++k) {
          m(row, i + r * k) += A(k, j);
          m(row, k + r * j) -= B(i, k);
        }
  }
  return integer_kernel(m);
}

IsoResult zw_isomorphic(const IntegralRep& rep, const IsotypicDecomposition& d, const Lattice& a, const Lattice& b,
                        long long entry_bound, long long max_tries) {
  if (a == b) return IsoResult::Isomorphic;
  if (!(module_invariants(rep, d, a) == module_invariants(rep, d, b))) return IsoResult::NotIsomorphic;
  bool same_action = true;
  for (int g : rep.group->generators()) same_action = same_action && restricted_action(rep, a, g) == restricted_action(rep, b, g);
  if (same_action) return IsoResult::Isomorphic;

  IntMatrix kernel = equivariant_maps(rep, a, b);
  if (kernel.cols() == 0) return IsoResult::NotIsomorphic;
  // Echelon basis: column t vanishes above its pivot row, and pivot rows increase.
  const SmallMatrix k = [&] {
    IntMatrix e = Lattice::from_generators(kernel).basis();
    SmallMatrix out(static_cast<size_t>(e.cols()), std::vector<Small>(static_cast<size_t>(e.rows())));
    for (Eigen::Index t = 0; t < e.cols(); ++t)
      for (Eigen::Index i = 0; i < e.rows(); ++i) out[static_cast<size_t>(t)][static_cast<size_t>(i)] = static_cast<Small>(e(i, t));
    return out;
  }();
  const size_t n = k.size(), rows = k[0].size();
  std::vector<size_t> pivot(n);
  for (size_t t = 0; t < n; ++t) {
    pivot[t] = 0;
    while (k[t][pivot[t]] == 0) ++pivot[t];
    if (t > 0 && pivot[t] <= pivot[t - 1]) throw DimensionError("kernel basis is not in echelon form");
  }
  const Eigen::Index r = a.rank();
  if (entry_bound <= 0) entry_bound = 2 * static_cast<Small>(std::max(a.index(), b.index()));
  long long tries = 0;
  bool exhausted = false;
  std::vector<Small> v(rows, 0);
  std::function<bool(size_t, Small)> search = [&](size_t t, Small bound) -> bool {
    const size_t first = t == 0 ? 0 : pivot[t - 1] + 1;
    const size_t last = t == n ? rows : pivot[t];
    for (size_t i = first; i < last; ++i)
      if (std::abs(v[i]) > bound) return false;
    if (t == n) {
      if (++tries > max_tries) {
        exhausted = true;
        return false;
      }
      IntMatrix u(r, r);
      for (Eigen::Index j = 0; j < r; ++j)
        for (Eigen::Index i = 0; i < r; ++i) u(i, j) = v[static_cast<size_t>(i + r * j)];
      BigInt det = determinant(u);
      return det == 1 || det == -1;
    }
    const Small p = k[t][pivot[t]], base = v[pivot[t]];
    const Small lo = -floor_div<Small>(bound + base, p), hi = floor_div<Small>(bound - base, p);
    for (Small c = lo; c <= hi && !exhausted; ++c) {
      for (size_t i = 0; i < rows; ++i) v[i] += c * k[t][i];
      bool ok = search(t + 1, bound);
      for (size_t i = 0; i < rows; ++i) v[i] -= c * k[t][i];
      if (ok) return true;
    }
    return false;
  };
  for (Small bound = 1;; bound = std::min(2 * bound, entry_bound)) {
    if (search(0, bound)) return IsoResult::Isomorphic;
    if (exhausted || bound == entry_bound) return IsoResult::Undecided;
  }
}

ComponentReport classify_components(SublatticeCensus& census, long long entry_bound) {
  auto d = decompose(census.rep);
  ComponentReport report;
  std::vector<ModuleInvariants> comp_inv;
  for (size_t e = 0; e < census.entries.size(); ++e) {
    auto& entry = census.entries[e];
    entry.component = -1;
    if (!entry.invariant) continue;
    auto inv = module_invariants(census.rep, d, entry.lattice);
    for (size_t c = 0; c < report.components.size() && entry.component < 0; ++c) {
      if (!(comp_inv[c] == inv)) continue;
      const auto& rep_lattice = census.entries[report.components[c].representative].lattice;
      switch (zw_isomorphic(census.rep, d, rep_lattice, entry.lattice, entry_bound)) {
        case IsoResult::Isomorphic:
          entry.component = static_cast<int>(c);
          report.components[c].members.push_back(e);
          break;
        case IsoResult::Undecided:
          report.undecided.emplace_back(report.components[c].representative, e);
          break;
        case IsoResult::NotIsomorphic:
          break;
      }
    }
    if (entry.component < 0) {
      entry.component = static_cast<int>(report.components.size());
      Component c;
      c.representative = e;
      c.members = {e};
      c.parameter_count =
          static_cast<int>(equivariant_maps(census.rep, entry.lattice, Lattice::full(entry.lattice.ambient_rank())).cols());
      report.components.push_back(std::move(c));
      comp_inv.push_back(std::move(inv));
    }
  }
  for (auto& c : report.components) {
    const size_t np = census.entries[c.representative].parameters.size();
    for (size_t i = 0; i < np; ++i)
      for (size_t j = i + 1; j < np; ++j) {
        BigInt g_plus = 0, g_minus = 0;
        for (size_t m : c.members) {
          const auto& p = census.entries[m].parameters;
          g_plus = gcd_value(g_plus, BigInt(p[i] - p[j]));
          g_minus = gcd_value(g_minus, BigInt(p[i] + p[j]));
        }
        if (g_plus >= 2) c.congruences.push_back({static_cast<int>(i), static_cast<int>(j), 1, g_plus});
        if (g_minus >= 2 && g_minus != g_plus) c.congruences.push_back({static_cast<int>(i), static_cast<int>(j), -1, g_minus});
      }
  }
  return report;
}

std::pair<Lattice, Lattice> delta_split(const Lattice& gamma, const Lattice& l1, const Lattice& l2) {
  return {lattice_intersect(l1, gamma), lattice_intersect(l2, gamma)};
}

ProductMapReport isotypic_product_map(const SublatticeCensus& census, const IsotypicDecomposition& d) {
  ProductMapReport report;
  const IntegralRep& rep = census.rep;
  const int r = rep.rank;
  Lattice direct(r);
  for (const auto& p : d.pieces) direct = lattice_sum(direct, p.lattice);
  report.fibre_bound = quotient_invariants(direct, Lattice::full(r)).order();

  std::set<Lattice> invariant;
  std::map<std::vector<Lattice>, size_t> fibres;
  for (const auto& e : census.entries) {
    if (!e.invariant) continue;
    invariant.insert(e.lattice);
    std::vector<Lattice> image;
    Lattice inner(r);
    for (const auto& p : d.pieces) {
      Lattice c = lattice_intersect(p.lattice, e.lattice);
      if (c.rank() != p.lattice.rank() || !is_invariant(rep, c)) report.lands_in_product = false;
      inner = lattice_sum(inner, c);
      image.push_back(std::move(c));
    }
    if (!e.lattice.contains(inner) || inner.rank() != r) report.finite_index = false;
    report.max_fibre = std::max(report.max_fibre, ++fibres[image]);
  }

  // Invariant sublattices of each piece with index ≤ bound / |L|, mapped back into Λ₀.
  const BigInt budget = census.bound / report.fibre_bound;
  std::vector<std::vector<std::pair<BigInt, Lattice>>> per_piece;
  for (const auto& p : d.pieces) {
    const IntMatrix& basis = p.lattice.basis();
    IntegralRep sub;
    sub.group = rep.group;
    sub.rank = p.lattice.rank();
    for (int w = 0; w < rep.group->order(); ++w) {
      IntMatrix img = rep(w) * basis;
      IntMatrix m(sub.rank, sub.rank);
      for (Eigen::Index c = 0; c < img.cols(); ++c) m.col(c) = *p.lattice.coordinates(img.col(c));
      sub.matrices.push_back(m);
    }
    std::vector<std::pair<BigInt, Lattice>> list;
    if (budget >= 1)
      for (const auto& e : enumerate_sublattices(sub, budget, true).entries)
        list.emplace_back(e.index, Lattice::from_generators(IntMatrix(basis * e.lattice.basis())));
    per_piece.push_back(std::move(list));
  }
  std::vector<Lattice> chosen;
  std::function<void(size_t, BigInt)> walk = [&](size_t i, BigInt index) {
    if (i == per_piece.size()) {
      ++report.tuples_checked;
      Lattice gamma(r);
      for (const auto& c : chosen) gamma = lattice_sum(gamma, c);
      if (!invariant.count(gamma)) {
        report.surjective = false;
        return;
      }
      std::vector<Lattice> image;
      for (const auto& p : d.pieces) image.push_back(lattice_intersect(p.lattice, gamma));
      if (image != chosen) report.surjective = false;
      return;
    }
    for (const auto& [idx, l] : per_piece[i]) {
      if (index * idx > budget) continue;
      chosen.push_back(l);
      walk(i + 1, index * idx);
      chosen.pop_back();
    }
  };
  walk(0, 1);
  return report;
}

}  // namespace toral
