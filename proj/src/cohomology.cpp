#include "toral/cohomology.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <sstream>

namespace toral {

namespace {

constexpr long long kMaxCochainEntries = 200000;

using SparseVec = std::vector<std::pair<long long, BigInt>>;

// out = a + f * b on sorted sparse vectors; on_change(index, was_zero, is_zero) per touched index of b.
template <class Hook>
SparseVec axpy(const SparseVec& a, const BigInt& f, const SparseVec& b, Hook on_change) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, f * b[j].second);
      on_change(b[j].first, true, false);
      ++j;
    } else {
      BigInt v = a[i].second + f * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, v);
      else on_change(a[i].first, false, true);
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec axpy(const SparseVec& a, const BigInt& f, const SparseVec& b) {
  return axpy(a, f, b, [](long long, bool, bool) {});
}

long long ipow(long long base, int e) {
  long long x = 1;
  for (int i = 0; i < e; ++i) x *= base;
  return x;
}

// Terms of (df)(g_1..g_m) for f of degree m-1: each term is (input tuple, sign, acting element or -1).
struct Term {
  std::vector<int> args;
  int sign;
  int act;  // element acting on the value, or -1 for the identity
};

std::vector<Term> coboundary_terms(const FiniteGroup& g, const std::vector<int>& s) {
  const int m = static_cast<int>(s.size());
  std::vector<Term> terms;
  terms.push_back({std::vector<int>(s.begin() + 1, s.end()), 1, s[0]});
  for (int i = 1; i < m; ++i) {
    std::vector<int> merged;
    for (int j = 0; j < m; ++j) {
      if (j == i - 1) {
        merged.push_back(g.mult(s[static_cast<size_t>(j)], s[static_cast<size_t>(j + 1)]));
        ++j;
      } else {
        merged.push_back(s[static_cast<size_t>(j)]);
      }
    }
    terms.push_back({merged, i % 2 ? -1 : 1, -1});
  }
  terms.push_back({std::vector<int>(s.begin(), s.end() - 1), m % 2 ? -1 : 1, -1});
  return terms;
}

void check_caps(const IntegralRep& module, int degree) {
  if (degree < 0 || degree > 3) throw CohomologyError("cohomology degree must be in 0..3");
  if (module.group->order() > kMaxGroupOrder) throw CohomologyError("group order exceeds the cap of 12");
  if (module.rank > kMaxModuleRank) throw CohomologyError("module rank exceeds the cap of 12");
  CochainSpace target{module.group->order(), degree, module.rank};
  if (target.size() > kMaxCochainEntries)
    throw CohomologyError("cochain space exceeds the cap of " + std::to_string(kMaxCochainEntries) + " entries");
}

}  // namespace

long long CochainSpace::tuples() const { return ipow(order - 1, degree); }

long long CochainSpace::tuple_index(const std::vector<int>& args) const {
  long long idx = 0;
  for (int a : args) {
    if (a == 0) return -1;
    idx = idx * (order - 1) + (a - 1);
  }
  return idx;
}

std::vector<int> CochainSpace::tuple_at(long long index) const {
  std::vector<int> args(static_cast<size_t>(degree));
  for (int i = degree - 1; i >= 0; --i) {
    args[static_cast<size_t>(i)] = static_cast<int>(index % (order - 1)) + 1;
    index /= (order - 1);
  }
  return args;
}

IntVector to_normalized(const CocycleTable& table) {
  if (!table.is_normalized()) throw CohomologyError("cochain table is not normalized");
  const int rank = static_cast<int>(table.values.rows());
  CochainSpace sp{table.order, table.degree, rank};
  IntVector v(sp.size());
  for (long long t = 0; t < sp.tuples(); ++t) v.segment(t * rank, rank) = table.at(sp.tuple_at(t));
  return v;
}

CocycleTable from_normalized(const IntVector& v, int degree, int order, int rank) {
  CochainSpace sp{order, degree, rank};
  if (v.size() != sp.size()) throw CohomologyError("cochain vector has the wrong length");
  CocycleTable t = CocycleTable::zero(degree, order, rank);
  for (long long i = 0; i < sp.tuples(); ++i) t.set(sp.tuple_at(i), v.segment(i * rank, rank));
  return t;
}

IntVector apply_coboundary(const IntegralRep& module, int degree, const IntVector& f) {
  const FiniteGroup& g = *module.group;
  const int r = module.rank;
  CochainSpace src{g.order(), degree, r}, dst{g.order(), degree + 1, r};
  if (f.size() != src.size()) throw CohomologyError("cochain vector has the wrong length");
  IntVector out = IntVector::Zero(dst.size());
  for (long long s = 0; s < dst.tuples(); ++s) {
    IntVector acc = IntVector::Zero(r);
    for (const Term& t : coboundary_terms(g, dst.tuple_at(s))) {
      long long u = src.tuple_index(t.args);
      if (u < 0) continue;
      IntVector val = f.segment(u * r, r);
      if (t.act >= 0) val = module(t.act) * val;
      if (t.sign < 0) acc -= val;
      else acc += val;
    }
    out.segment(s * r, r) = acc;
  }
  return out;
}

// Elimination of d: C^{n-1} -> C^n by sparse unit pivots, then a dense Smith form
// on what remains. Rows are indexed by C^n, columns by C^{n-1}.
class CoboundaryElimination {
 public:
  struct Pivot {
    long long row;
    BigInt unit;
    SparseVec column;
    SparseVec preimage;
  };

  CoboundaryElimination(const IntegralRep& module, int target_degree);

  long long rows = 0, cols = 0;
  std::vector<Pivot> pivots;
  std::vector<long long> dense_rows;
  std::vector<SparseVec> dense_preimages;  // one per dense column
  SnfResult<BigInt> dense;

  // Reduces v modulo the pivot columns in place; accumulates the preimage if requested.
  void reduce(IntVector& v, SparseVec* acc) const {
    for (const Pivot& p : pivots) {
      const BigInt& x = v(p.row);
      if (x == 0) continue;
      BigInt c = x * p.unit;
      for (const auto& [i, a] : p.column) v(i) -= c * a;
      if (acc) *acc = axpy(*acc, c, p.preimage);
    }
  }

  // Dense coordinates U * v|dense after reduction; nullopt if v has support outside the dense rows.
  std::optional<IntVector> dense_coordinates(const IntVector& reduced) const {
    std::vector<bool> is_dense(static_cast<size_t>(rows), false);
    for (long long r : dense_rows) is_dense[static_cast<size_t>(r)] = true;
    for (long long i = 0; i < rows; ++i)
      if (!is_dense[static_cast<size_t>(i)] && reduced(i) != 0) return std::nullopt;
    IntVector w(static_cast<Eigen::Index>(dense_rows.size()));
    for (size_t k = 0; k < dense_rows.size(); ++k) w(static_cast<Eigen::Index>(k)) = reduced(dense_rows[k]);
    if (w.size() == 0) return w;
    return IntVector(dense.U * w);
  }
};

CoboundaryElimination::CoboundaryElimination(const IntegralRep& module, int target_degree) {
  const FiniteGroup& g = *module.group;
  const int r = module.rank;
  CochainSpace src{g.order(), target_degree - 1, r}, dst{g.order(), target_degree, r};
  rows = dst.size();
  cols = src.size();

  std::vector<SparseVec> columns(static_cast<size_t>(cols));
  for (long long s = 0; s < dst.tuples(); ++s) {
    for (const Term& t : coboundary_terms(g, dst.tuple_at(s))) {
      long long u = src.tuple_index(t.args);
      if (u < 0) continue;
      for (int b = 0; b < r; ++b)
        for (int a = 0; a < r; ++a) {
          BigInt val = t.act >= 0 ? module(t.act)(a, b) : BigInt(a == b ? 1 : 0);
          if (val == 0) continue;
          if (t.sign < 0) val = -val;
          columns[static_cast<size_t>(u * r + b)].emplace_back(s * r + a, val);
        }
    }
  }
  for (auto& col : columns) {
    std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SparseVec merged;
    for (auto& e : col) {
      if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
      else merged.push_back(e);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& e) { return e.second == 0; }),
                 merged.end());
    col = std::move(merged);
  }

  std::vector<std::set<int>> row_cols(static_cast<size_t>(rows));
  for (long long j = 0; j < cols; ++j)
    for (const auto& e : columns[static_cast<size_t>(j)]) row_cols[static_cast<size_t>(e.first)].insert(static_cast<int>(j));
  std::vector<SparseVec> pre(static_cast<size_t>(cols));
  for (long long j = 0; j < cols; ++j) pre[static_cast<size_t>(j)] = {{j, BigInt(1)}};
  std::vector<bool> active(static_cast<size_t>(cols), true);

  for (;;) {
    long long best_cost = std::numeric_limits<long long>::max();
    long long bi = -1, bj = -1;
    for (long long j = 0; j < cols && best_cost > 0; ++j) {
      const auto& col = columns[static_cast<size_t>(j)];
      if (!active[static_cast<size_t>(j)] || col.empty()) continue;
      const long long csize = static_cast<long long>(col.size()) - 1;
      for (const auto& [i, v] : col) {
        if (v != 1 && v != -1) continue;
        long long cost = csize * (static_cast<long long>(row_cols[static_cast<size_t>(i)].size()) - 1);
        if (cost < best_cost) {
          best_cost = cost;
          bi = i;
          bj = j;
          if (cost == 0) break;
        }
      }
    }
    if (bj < 0) break;
    const SparseVec pcol = columns[static_cast<size_t>(bj)];
    const SparseVec ppre = pre[static_cast<size_t>(bj)];
    BigInt unit;
    for (const auto& e : pcol)
      if (e.first == bi) unit = e.second;
    std::vector<int> others(row_cols[static_cast<size_t>(bi)].begin(), row_cols[static_cast<size_t>(bi)].end());
    for (int k : others) {
      if (k == bj) continue;
      auto& col = columns[static_cast<size_t>(k)];
      BigInt f;
      for (const auto& e : col)
        if (e.first == bi) f = e.second;
      BigInt factor = -(f * unit);
      col = axpy(col, factor, pcol, [&](long long row, bool was_zero, bool is_zero) {
        if (was_zero && !is_zero) row_cols[static_cast<size_t>(row)].insert(k);
        if (!was_zero && is_zero) row_cols[static_cast<size_t>(row)].erase(k);
      });
      pre[static_cast<size_t>(k)] = axpy(pre[static_cast<size_t>(k)], factor, ppre);
    }
    for (const auto& e : pcol) row_cols[static_cast<size_t>(e.first)].erase(static_cast<int>(bj));
    active[static_cast<size_t>(bj)] = false;
    columns[static_cast<size_t>(bj)].clear();
    pivots.push_back({bi, unit, pcol, ppre});
  }

  std::vector<long long> rest;
  std::set<long long> touched;
  for (long long j = 0; j < cols; ++j) {
    if (!active[static_cast<size_t>(j)] || columns[static_cast<size_t>(j)].empty()) continue;
    rest.push_back(j);
    for (const auto& e : columns[static_cast<size_t>(j)]) touched.insert(e.first);
  }
  dense_rows.assign(touched.begin(), touched.end());
  std::map<long long, Eigen::Index> pos;
  for (size_t k = 0; k < dense_rows.size(); ++k) pos[dense_rows[k]] = static_cast<Eigen::Index>(k);
  IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(dense_rows.size()), static_cast<Eigen::Index>(rest.size()));
  for (size_t c = 0; c < rest.size(); ++c) {
    for (const auto& e : columns[static_cast<size_t>(rest[c])]) m(pos.at(e.first), static_cast<Eigen::Index>(c)) = e.second;
    dense_preimages.push_back(pre[static_cast<size_t>(rest[c])]);
  }
  dense = snf(m);
}

std::vector<BigInt> CohomGroup::coordinates(const IntVector& cocycle) const {
  CochainSpace sp = space();
  if (cocycle.size() != sp.size()) throw CohomologyError("cochain vector has the wrong length");
  std::vector<BigInt> out;
  if (degree_ == 0) {
    auto c = fixed_sublattice(module_).coordinates(cocycle);
    if (!c) throw CohomologyError("vector is not invariant");
    for (Eigen::Index i = 0; i < c->size(); ++i) out.push_back((*c)(i));
    return out;
  }
  IntVector v = cocycle;
  elim_->reduce(v, nullptr);
  auto w = elim_->dense_coordinates(v);
  if (!w) throw CohomologyError("cochain is not a cocycle");
  for (Eigen::Index t = elim_->dense.rank; t < w->size(); ++t)
    if ((*w)(t) != 0) throw CohomologyError("cochain is not a cocycle");
  for (size_t i = 0; i < torsion_slots_.size(); ++i)
    out.push_back(mod_floor((*w)(torsion_slots_[i]), group_.invariant_factors[i]));
  return out;
}

bool CohomGroup::is_zero_class(const IntVector& cocycle) const {
  if (degree_ == 0) return cocycle.isZero();
  for (const auto& c : coordinates(cocycle))
    if (c != 0) return false;
  return true;
}

std::optional<IntVector> CohomGroup::coboundary_preimage(const IntVector& target) const {
  CochainSpace sp = space();
  if (target.size() != sp.size()) throw CohomologyError("cochain vector has the wrong length");
  if (degree_ == 0) {
    if (target.isZero()) return IntVector(0);
    return std::nullopt;
  }
  IntVector v = target;
  SparseVec acc;
  elim_->reduce(v, &acc);
  auto w = elim_->dense_coordinates(v);
  if (!w) return std::nullopt;
  const auto& d = elim_->dense;
  IntVector y = IntVector::Zero(d.D.cols());
  for (Eigen::Index t = 0; t < w->size(); ++t) {
    if (t < d.rank) {
      if ((*w)(t) % d.D(t, t) != 0) return std::nullopt;
      y(t) = (*w)(t) / d.D(t, t);
    } else if ((*w)(t) != 0) {
      return std::nullopt;
    }
  }
  if (y.size() > 0) {
    IntVector x = d.V * y;
    for (Eigen::Index c = 0; c < x.size(); ++c)
      if (x(c) != 0) acc = axpy(acc, x(c), elim_->dense_preimages[static_cast<size_t>(c)]);
  }
  CochainSpace below{sp.order, degree_ - 1, sp.rank};
  IntVector h = IntVector::Zero(below.size());
  for (const auto& [i, a] : acc) h(i) = a;
  return h;
}

IntVector CohomGroup::cocycle_for(const std::vector<BigInt>& coords) const {
  if (coords.size() != generators_.size()) throw CohomologyError("coordinate vector has the wrong length");
  IntVector v = IntVector::Zero(space().size());
  for (size_t i = 0; i < coords.size(); ++i) v += coords[i] * generators_[i];
  return v;
}

std::vector<std::vector<BigInt>> CohomGroup::all_coordinates() const {
  if (!group_.is_finite()) throw CohomologyError("cannot enumerate an infinite cohomology group");
  std::vector<std::vector<BigInt>> out{{}};
  for (const auto& d : group_.invariant_factors) {
    std::vector<std::vector<BigInt>> next;
    for (const auto& prefix : out)
      for (BigInt x = 0; x < d; ++x) {
        auto p = prefix;
        p.push_back(x);
        next.push_back(p);
      }
    out = std::move(next);
  }
  return out;
}

namespace {

std::string cache_key(const IntegralRep& module, int degree) {
  std::ostringstream os;
  os << degree << '|' << module.rank << '|';
  for (const auto& row : module.group->table()) {
    for (int x : row) os << x << ',';
    os << ';';
  }
  os << '|';
  for (const auto& m : module.matrices) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) os << m(i, j) << ',';
    os << ';';
  }
  return os.str();
}

std::shared_mutex cache_mutex;
std::map<std::string, CohomPtr>& cache() {
  static std::map<std::string, CohomPtr> c;
  return c;
}

}  // namespace

CohomPtr cohomology(const IntegralRep& module, int degree) {
  check_caps(module, degree);
  const std::string key = cache_key(module, degree);
  {
    std::shared_lock lock(cache_mutex);
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  auto h = std::make_shared<CohomGroup>();
  h->degree_ = degree;
  h->module_ = module;
  if (degree == 0) {
    // H^0 = M^W; rationally acyclic reasoning does not apply here.
    Lattice fixed = fixed_sublattice(module);
    h->group_.free_rank = fixed.rank();
    for (Eigen::Index j = 0; j < fixed.basis().cols(); ++j) h->generators_.push_back(fixed.basis().col(j));
  } else {
    // For n >= 1, H^n(W; M) is finite and Z^n = saturate(B^n), so H^n is the
    // torsion subgroup of coker(d_{n-1}).
    auto elim = std::make_shared<CoboundaryElimination>(module, degree);
    const auto& d = elim->dense;
    CochainSpace sp{module.group->order(), degree, module.rank};
    for (Eigen::Index t = 0; t < d.rank; ++t) {
      if (d.D(t, t) == 1) continue;
      h->group_.invariant_factors.push_back(d.D(t, t));
      h->torsion_slots_.push_back(t);
      IntVector z = IntVector::Zero(sp.size());
      for (size_t k = 0; k < elim->dense_rows.size(); ++k)
        z(elim->dense_rows[k]) = d.U_inv(static_cast<Eigen::Index>(k), t);
      h->generators_.push_back(z);
    }
    h->elim_ = elim;
  }
  std::unique_lock lock(cache_mutex);
  auto [it, inserted] = cache().emplace(key, h);
  return it->second;
}

size_t cohomology_cache_size() {
  std::shared_lock lock(cache_mutex);
  return cache().size();
}

bool is_equivariant(const IntMatrix& f, const IntegralRep& source, const IntegralRep& target) {
  if (!(*source.group == *target.group)) return false;
  if (f.rows() != target.rank || f.cols() != source.rank) return false;
  for (int w = 0; w < source.group->order(); ++w)
    if (f * source(w) != target(w) * f) return false;
  return true;
}

IntVector push_cochain(const IntMatrix& f, const IntVector& cochain, int source_rank, int target_rank) {
  if (f.rows() != target_rank || f.cols() != source_rank) throw CohomologyError("map has the wrong shape");
  if (source_rank == 0) {
    if (cochain.size() != 0) throw CohomologyError("cochain vector has the wrong length");
    return IntVector(0);
  }
  const long long tuples = cochain.size() / source_rank;
  IntVector out(tuples * target_rank);
  for (long long t = 0; t < tuples; ++t)
    out.segment(t * target_rank, target_rank) = f * cochain.segment(t * source_rank, source_rank);
  return out;
}

IntMatrix induced_map(const IntMatrix& f, const CohomGroup& source, const CohomGroup& target) {
  if (source.degree() != target.degree()) throw CohomologyError("induced map between different degrees");
  if (!is_equivariant(f, source.module(), target.module())) throw CohomologyError("lattice map is not equivariant");
  const size_t ns = source.generators().size(), nt = target.generators().size();
  IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(nt), static_cast<Eigen::Index>(ns));
  for (size_t j = 0; j < ns; ++j) {
    IntVector img = push_cochain(f, source.generators()[j], source.module().rank, target.module().rank);
    auto coords = target.coordinates(img);
    for (size_t i = 0; i < nt; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = coords[i];
  }
  return m;
}

CohomClass CohomClass::from_coordinates(CohomPtr parent, const std::vector<BigInt>& coords) {
  CohomClass c;
  c.representative = parent->cocycle_for(coords);
  c.coordinates = parent->coordinates(c.representative);
  c.parent = std::move(parent);
  return c;
}

CohomClass CohomClass::from_cocycle(CohomPtr parent, const IntVector& cocycle) {
  CohomClass c;
  c.coordinates = parent->coordinates(cocycle);
  c.representative = cocycle;
  c.parent = std::move(parent);
  return c;
}

bool CohomClass::is_zero() const {
  for (const auto& x : coordinates)
    if (x != 0) return false;
  return true;
}

TorusCohomology torus_cohomology(const TorusSubgroup& s, int k) {
  if (k < 1 || k > 2) throw CohomologyError("torus cohomology degree must be 1 or 2");
  TorusCohomology t;
  t.quotient = quotient_lattice(s);
  t.group = cohomology(t.quotient.module, k + 1);
  return t;
}

bool supports_epsilon(const TorusSubgroup& s, const IntVector& epsilon_cocycle) {
  auto t = torus_cohomology(s, 2);
  IntVector image = push_cochain(t.quotient.restriction, epsilon_cocycle, s.context()->rank(), t.quotient.module.rank);
  return t.group->is_zero_class(image);
}

bool supports_epsilon(const TorusSubgroup& s, const CohomClass& epsilon) {
  return supports_epsilon(s, epsilon.representative);
}

CohomPtr lift_fibre(const TorusSubgroup& s, const IntVector& epsilon_cocycle) {
  if (!supports_epsilon(s, epsilon_cocycle)) throw CohomologyError("extension class does not lift over this subgroup");
  return torus_cohomology(s, 1).group;
}

BigInt exponent_H2T(const IntegralRep& rep) { return cohomology(rep, 3)->group().exponent(); }

}  // namespace toral
