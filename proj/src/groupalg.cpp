#include "toral/groupalg.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace toral {

void FiniteGroup::finish() {
  const int n = order();
  if (n == 0) throw GroupError("group must have at least one element");
  if (n > kMaxGroupOrder) throw GroupError("group order exceeds the cap of 12");
  for (const auto& row : table_)
    if (static_cast<int>(row.size()) != n) throw GroupError("multiplication table is not square");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mult(a, b) < 0 || mult(a, b) >= n) throw GroupError("table entry out of range");
  for (int a = 0; a < n; ++a)
    if (mult(0, a) != a || mult(a, 0) != a) throw GroupError("element 0 is not the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mult(mult(a, b), c) != mult(a, mult(b, c))) throw GroupError("multiplication is not associative");
  inverse_.assign(static_cast<size_t>(n), -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mult(a, b) == 0) inverse_[static_cast<size_t>(a)] = b;
  for (int a = 0; a < n; ++a)
    if (inverse_[static_cast<size_t>(a)] < 0 || mult(inverse_[static_cast<size_t>(a)], a) != 0)
      throw GroupError("element without inverse");
  if (generators_.empty())
    for (int a = 1; a < n; ++a) generators_.push_back(a);
  // Breadth-first words.
  words_.assign(static_cast<size_t>(n), {});
  std::vector<bool> seen(static_cast<size_t>(n), false);
  seen[0] = true;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    for (size_t s = 0; s < generators_.size(); ++s) {
      int b = mult(a, generators_[s]);
      if (seen[static_cast<size_t>(b)]) continue;
      seen[static_cast<size_t>(b)] = true;
      words_[static_cast<size_t>(b)] = words_[static_cast<size_t>(a)];
      words_[static_cast<size_t>(b)].push_back(static_cast<int>(s));
      queue.push_back(b);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw GroupError("generators do not generate the group");
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table) {
  FiniteGroup g;
  g.table_ = table;
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& gens) {
  if (gens.empty()) return trivial();
  const size_t d = gens.front().size();
  for (const auto& p : gens) {
    if (p.size() != d) throw GroupError("permutation generators of different degree");
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < d; ++i)
      if (sorted[i] != static_cast<int>(i)) throw GroupError("generator is not a permutation");
  }
  auto compose = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<size_t>(b[i])];
    return c;
  };
  std::vector<int> id(d);
  for (size_t i = 0; i < d; ++i) id[i] = static_cast<int>(i);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (size_t k = 0; k < elems.size(); ++k) {
    for (const auto& s : gens) {
      auto p = compose(elems[k], s);
      if (index.count(p)) continue;
      if (static_cast<int>(elems.size()) >= kMaxGroupOrder)
        throw GroupError("group order exceeds the cap of 12");
      index[p] = static_cast<int>(elems.size());
      elems.push_back(p);
    }
  }
  const int n = static_cast<int>(elems.size());
  FiniteGroup g;
  g.table_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      g.table_[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          index.at(compose(elems[static_cast<size_t>(a)], elems[static_cast<size_t>(b)]));
  for (const auto& s : gens) g.generators_.push_back(index.at(s));
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw GroupError("cyclic group order must be positive");
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<size_t>(a)][static_cast<size_t>(b)] = (a + b) % n;
  FiniteGroup g;
  g.table_ = t;
  if (n > 1) g.generators_ = {1};
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  std::vector<std::vector<int>> t(static_cast<size_t>(na * nb), std::vector<int>(static_cast<size_t>(na * nb)));
  for (int x = 0; x < na * nb; ++x)
    for (int y = 0; y < na * nb; ++y)
      t[static_cast<size_t>(x)][static_cast<size_t>(y)] = a.mult(x / nb, y / nb) * nb + b.mult(x % nb, y % nb);
  FiniteGroup g;
  g.table_ = t;
  for (int s : a.generators()) g.generators_.push_back(s * nb);
  for (int s : b.generators()) g.generators_.push_back(s);
  g.finish();
  return g;
}

int FiniteGroup::element_order(int a) const {
  int k = 1, x = a;
  while (x != 0) {
    x = mult(x, a);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < order(); ++b)
      if (mult(a, b) != mult(b, a)) return false;
  return true;
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  std::vector<bool> done(static_cast<size_t>(order()), false);
  std::vector<std::vector<int>> out;
  for (int a = 0; a < order(); ++a) {
    if (done[static_cast<size_t>(a)]) continue;
    std::set<int> cls;
    for (int g = 0; g < order(); ++g) cls.insert(mult(mult(g, a), inverse(g)));
    for (int c : cls) done[static_cast<size_t>(c)] = true;
    out.emplace_back(cls.begin(), cls.end());
  }
  return out;
}

std::vector<int> FiniteGroup::generated_subgroup(const std::vector<int>& gens) const {
  std::set<int> s{0};
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int a : frontier)
      for (int g : gens) {
        int b = mult(a, g);
        if (s.insert(b).second) next.push_back(b);
      }
    frontier = next;
  }
  return {s.begin(), s.end()};
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elems) const {
  std::set<int> s(elems.begin(), elems.end());
  if (!s.count(0)) return false;
  for (int a : s)
    for (int b : s)
      if (!s.count(mult(a, b))) return false;
  return true;
}

FiniteGroup FiniteGroup::restrict_to(const std::vector<int>& elems, std::vector<int>& embedding) const {
  std::vector<int> sorted = elems;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (!is_subgroup(sorted)) throw GroupError("element list is not a subgroup");
  embedding = sorted;  // sorted[0] == 0
  std::map<int, int> local;
  for (size_t i = 0; i < sorted.size(); ++i) local[sorted[i]] = static_cast<int>(i);
  FiniteGroup g;
  const size_t n = sorted.size();
  g.table_.assign(n, std::vector<int>(n));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) g.table_[a][b] = local.at(mult(sorted[a], sorted[b]));
  g.finish();
  return g;
}

IntegralRep IntegralRep::from_generators(std::shared_ptr<const FiniteGroup> group, int rank,
                                         const std::vector<IntMatrix>& generator_images) {
  if (generator_images.size() != group->generators().size())
    throw GroupError("number of generator matrices does not match the group generators");
  IntegralRep rep;
  rep.group = group;
  rep.rank = rank;
  if (rep.rank > kMaxRank) throw GroupError("lattice rank exceeds the cap of 6");
  for (const auto& m : generator_images)
    if (m.rows() != rep.rank || m.cols() != rep.rank) throw GroupError("generator matrix has wrong shape");
  rep.matrices.resize(static_cast<size_t>(group->order()));
  for (int a = 0; a < group->order(); ++a) {
    IntMatrix m = identity_matrix(rep.rank);
    for (int s : group->word(a)) m = m * generator_images[static_cast<size_t>(s)];
    rep.matrices[static_cast<size_t>(a)] = m;
  }
  validate_rep(rep);
  return rep;
}

IntegralRep IntegralRep::trivial(std::shared_ptr<const FiniteGroup> group, int rank) {
  IntegralRep rep;
  rep.group = group;
  rep.rank = rank;
  rep.matrices.assign(static_cast<size_t>(group->order()), identity_matrix(rank));
  return rep;
}

bool IntegralRep::operator==(const IntegralRep& o) const {
  if (rank != o.rank || !(*group == *o.group)) return false;
  for (size_t i = 0; i < matrices.size(); ++i)
    if (matrices[i] != o.matrices[i]) return false;
  return true;
}

void validate_rep(const IntegralRep& rep) {
  const FiniteGroup& g = *rep.group;
  if (static_cast<int>(rep.matrices.size()) != g.order()) throw GroupError("representation table incomplete");
  if (rep.matrices[0] != identity_matrix(rep.rank)) throw NotAHomomorphism("identity does not act trivially");
  for (int a = 0; a < g.order(); ++a) {
    const BigInt d = determinant(rep(a));
    if (d != 1 && d != -1) throw NotUnimodular("matrix of element " + std::to_string(a) + " is not unimodular");
  }
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (rep(a) * rep(b) != rep(g.mult(a, b)))
        throw NotAHomomorphism("rho(" + std::to_string(a) + ")rho(" + std::to_string(b) + ") != rho(product)");
}

Lattice fixed_sublattice(const IntegralRep& rep) {
  const int r = rep.rank;
  if (r == 0) return Lattice(0);
  const int n = rep.group->order();
  IntMatrix stacked(static_cast<Eigen::Index>(r) * n, r);
  for (int a = 0; a < n; ++a) stacked.middleRows(static_cast<Eigen::Index>(a) * r, r) = rep(a) - identity_matrix(r);
  IntMatrix k = integer_kernel(stacked);
  if (k.cols() == 0) return Lattice(r);
  return Lattice::from_generators(k);
}

IntegralRep dual_rep(const IntegralRep& rep) {
  IntegralRep d = rep;
  for (int a = 0; a < rep.group->order(); ++a) {
    // rho(a^{-1})^T
    d.matrices[static_cast<size_t>(a)] = rep(rep.group->inverse(a)).transpose();
  }
  return d;
}

IntegralRep direct_sum(const IntegralRep& a, const IntegralRep& b) {
  if (!(*a.group == *b.group)) throw GroupError("direct sum of representations of different groups");
  IntegralRep s;
  s.group = a.group;
  s.rank = a.rank + b.rank;
  for (int w = 0; w < a.group->order(); ++w) {
    IntMatrix m = IntMatrix::Zero(s.rank, s.rank);
    m.topLeftCorner(a.rank, a.rank) = a(w);
    m.bottomRightCorner(b.rank, b.rank) = b(w);
    s.matrices.push_back(m);
  }
  return s;
}

IntegralRep regular_rep(std::shared_ptr<const FiniteGroup> group, int copies) {
  const int n = group->order();
  IntegralRep rep;
  rep.group = group;
  rep.rank = n * copies;
  for (int w = 0; w < n; ++w) {
    IntMatrix m = IntMatrix::Zero(rep.rank, rep.rank);
    for (int c = 0; c < copies; ++c)
      for (int x = 0; x < n; ++x) m(c * n + group->mult(w, x), c * n + x) = 1;
    rep.matrices.push_back(m);
  }
  return rep;
}

IntegralRep restrict_rep(const IntegralRep& rep, const std::vector<int>& elems) {
  std::vector<int> embedding;
  auto sub = std::make_shared<const FiniteGroup>(rep.group->restrict_to(elems, embedding));
  IntegralRep r;
  r.group = sub;
  r.rank = rep.rank;
  for (int e : embedding) r.matrices.push_back(rep(e));
  return r;
}

bool is_invariant(const IntegralRep& rep, const Lattice& l) {
  for (int a = 0; a < rep.group->order(); ++a)
    if (!l.contains(image(rep(a), l))) return false;
  return true;
}

CocycleTable CocycleTable::zero(int degree, int order, int rank) {
  CocycleTable t;
  t.degree = degree;
  t.order = order;
  long long cols = 1;
  for (int i = 0; i < degree; ++i) cols *= order;
  t.values = IntMatrix::Zero(rank, static_cast<Eigen::Index>(cols));
  return t;
}

int CocycleTable::tuple_index(const std::vector<int>& args, int order) {
  int idx = 0;
  for (int a : args) idx = idx * order + a;
  return idx;
}

IntVector CocycleTable::at(const std::vector<int>& args) const { return values.col(tuple_index(args, order)); }

void CocycleTable::set(const std::vector<int>& args, const IntVector& v) { values.col(tuple_index(args, order)) = v; }

bool CocycleTable::is_normalized() const {
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    long long x = c;
    bool has_identity = false;
    for (int i = 0; i < degree; ++i) {
      if (x % order == 0) has_identity = true;
      x /= order;
    }
    if (has_identity && !values.col(c).isZero()) return false;
  }
  return true;
}

CocycleTable coboundary(const IntegralRep& module, const CocycleTable& f) {
  const FiniteGroup& g = *module.group;
  const int n = g.order(), k = f.degree;
  CocycleTable out = CocycleTable::zero(k + 1, n, module.rank);
  std::vector<int> args(static_cast<size_t>(k + 1), 0);
  const Eigen::Index total = out.values.cols();
  for (Eigen::Index c = 0; c < total; ++c) {
    long long x = c;
    for (int i = k; i >= 0; --i) {
      args[static_cast<size_t>(i)] = static_cast<int>(x % n);
      x /= n;
    }
    std::vector<int> tail(args.begin() + 1, args.end());
    IntVector v = module(args[0]) * f.at(tail);
    for (int i = 0; i < k; ++i) {
      std::vector<int> merged;
      for (int j = 0; j <= k; ++j) {
        if (j == i) {
          merged.push_back(g.mult(args[static_cast<size_t>(i)], args[static_cast<size_t>(i + 1)]));
          ++j;
        } else {
          merged.push_back(args[static_cast<size_t>(j)]);
        }
      }
      if ((i + 1) % 2) v -= f.at(merged);
      else v += f.at(merged);
    }
    std::vector<int> head(args.begin(), args.end() - 1);
    if ((k + 1) % 2) v -= f.at(head);
    else v += f.at(head);
    out.values.col(c) = v;
  }
  return out;
}

bool is_cocycle(const IntegralRep& module, const CocycleTable& f) { return coboundary(module, f).values.isZero(); }

}  // namespace toral
