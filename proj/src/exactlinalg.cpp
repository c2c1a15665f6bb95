#include "toral/exactlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace toral {

std::string format_matrix(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

FiniteAbelianGroup FiniteAbelianGroup::from_diagonal(const std::vector<BigInt>& diag, int free_rank) {
  // Recompute the divisibility chain from arbitrary diagonal entries.
  IntMatrix d = IntMatrix::Zero(static_cast<Eigen::Index>(diag.size()), static_cast<Eigen::Index>(diag.size()));
  for (size_t i = 0; i < diag.size(); ++i) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
  FiniteAbelianGroup g;
  g.free_rank = free_rank;
  auto s = snf(d);
  for (Eigen::Index i = 0; i < s.rank; ++i)
    if (s.D(i, i) > 1) g.invariant_factors.push_back(s.D(i, i));
  g.free_rank += static_cast<int>(diag.size()) - static_cast<int>(s.rank);
  return g;
}

BigInt FiniteAbelianGroup::order() const {
  BigInt o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

BigInt FiniteAbelianGroup::exponent() const {
  return invariant_factors.empty() ? BigInt(1) : invariant_factors.back();
}

std::string FiniteAbelianGroup::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& d : invariant_factors) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  if (free_rank > 0) {
    if (!first) os << " + ";
    os << "Z";
    if (free_rank > 1) os << '^' << free_rank;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

IntMatrix canonical_column_basis(const IntMatrix& gens) {
  IntMatrix t = gens.transpose();
  auto h = hnf(t);
  IntMatrix b(gens.rows(), h.rank());
  for (Eigen::Index i = 0; i < h.rank(); ++i) b.col(i) = h.H.row(i).transpose();
  return b;
}

Lattice::Lattice(int ambient_rank) : ambient_(ambient_rank), basis_(ambient_rank, 0) {}

Lattice Lattice::from_generators(const IntMatrix& gens) {
  Lattice l(static_cast<int>(gens.rows()));
  if (gens.cols() > 0) l.basis_ = canonical_column_basis(gens);
  return l;
}

Lattice Lattice::full(int r) { return from_generators(identity_matrix(r)); }

Lattice Lattice::scaled_full(int r, const BigInt& n) {
  IntMatrix m = identity_matrix(r) * n;
  return from_generators(m);
}

BigInt Lattice::index() const {
  if (!is_full_rank()) throw DimensionError("index of a lattice that is not full rank");
  BigInt d = 1;
  // Column Hermite basis is lower triangular up to pivot placement; pivots are the
  // first nonzero entry of each column.
  for (Eigen::Index j = 0; j < basis_.cols(); ++j)
    for (Eigen::Index i = 0; i < basis_.rows(); ++i)
      if (basis_(i, j) != 0) {
        d *= basis_(i, j);
        break;
      }
  return abs_value(d);
}

std::optional<IntVector> Lattice::coordinates(const IntVector& v) const {
  if (v.size() != ambient_) throw DimensionError("vector length does not match ambient rank");
  // Columns are in echelon form: pivot row of column j is strictly increasing.
  IntVector rest = v;
  IntVector c = IntVector::Zero(basis_.cols());
  for (Eigen::Index j = 0; j < basis_.cols(); ++j) {
    Eigen::Index p = 0;
    while (basis_(p, j) == 0) ++p;
    for (Eigen::Index i = 0; i < p; ++i)
      if (rest(i) != 0) return std::nullopt;
    if (rest(p) % basis_(p, j) != 0) return std::nullopt;
    c(j) = rest(p) / basis_(p, j);
    rest -= c(j) * basis_.col(j);
  }
  for (Eigen::Index i = 0; i < rest.size(); ++i)
    if (rest(i) != 0) return std::nullopt;
  return c;
}

bool Lattice::contains_vector(const IntVector& v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& other) const {
  if (other.ambient_ != ambient_) throw DimensionError("ambient rank mismatch");
  for (Eigen::Index j = 0; j < other.basis_.cols(); ++j)
    if (!contains_vector(other.basis_.col(j))) return false;
  return true;
}

bool Lattice::operator==(const Lattice& o) const {
  return ambient_ == o.ambient_ && basis_.cols() == o.basis_.cols() && basis_ == o.basis_;
}

bool Lattice::operator<(const Lattice& o) const {
  if (ambient_ != o.ambient_) return ambient_ < o.ambient_;
  return compare_matrices(basis_, o.basis_) < 0;
}

std::string Lattice::describe() const {
  std::ostringstream os;
  os << '<';
  for (Eigen::Index j = 0; j < basis_.cols(); ++j) {
    if (j) os << ',';
    os << '(';
    for (Eigen::Index i = 0; i < basis_.rows(); ++i) {
      if (i) os << ',';
      os << basis_(i, j);
    }
    os << ')';
  }
  os << '>';
  return os.str();
}

namespace {
void require_same_ambient(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw DimensionError("ambient rank mismatch");
}
}  // namespace

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  require_same_ambient(a, b);
  IntMatrix g(a.ambient_rank(), a.rank() + b.rank());
  g << a.basis(), b.basis();
  return Lattice::from_generators(g);
}

Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
  require_same_ambient(a, b);
  if (a.rank() == 0 || b.rank() == 0) return Lattice(a.ambient_rank());
  IntMatrix stacked(a.ambient_rank(), a.rank() + b.rank());
  stacked << a.basis(), -b.basis();
  IntMatrix k = integer_kernel(stacked);
  IntMatrix gens = a.basis() * k.topRows(a.rank());
  return Lattice::from_generators(gens);
}

Lattice saturate(const Lattice& l) {
  const int r = l.ambient_rank();
  if (l.rank() == 0) return l;
  IntMatrix bt = l.basis().transpose();
  IntMatrix perp = integer_kernel(bt);  // r x (r - k)
  if (perp.cols() == 0) return Lattice::full(r);
  IntMatrix pt = perp.transpose();
  return Lattice::from_generators(integer_kernel(pt));
}

bool is_saturated(const Lattice& l) { return saturate(l) == l; }

Lattice preimage(const IntMatrix& m, const Lattice& l) {
  if (m.rows() != l.ambient_rank()) throw DimensionError("preimage: map target does not match lattice");
  const Eigen::Index n = m.cols();
  IntMatrix stacked(m.rows(), n + l.rank());
  stacked << m, -l.basis();
  IntMatrix k = integer_kernel(stacked);
  IntMatrix gens = k.topRows(n);
  return Lattice::from_generators(gens);
}

Lattice image(const IntMatrix& m, const Lattice& l) {
  if (m.cols() != l.ambient_rank()) throw DimensionError("image: map source does not match lattice");
  IntMatrix g = m * l.basis();
  Lattice out(static_cast<int>(m.rows()));
  if (g.cols() > 0) out = Lattice::from_generators(g);
  return out;
}

IntMatrix relative_coordinates(const Lattice& sub, const Lattice& super) {
  require_same_ambient(sub, super);
  IntMatrix c(super.rank(), sub.rank());
  for (Eigen::Index j = 0; j < sub.basis().cols(); ++j) {
    auto x = super.coordinates(sub.basis().col(j));
    if (!x) throw DimensionError("relative_coordinates: containment violated");
    c.col(j) = *x;
  }
  return c;
}

FiniteAbelianGroup quotient_invariants(const Lattice& sub, const Lattice& super) {
  IntMatrix c = relative_coordinates(sub, super);
  auto s = snf(c);
  FiniteAbelianGroup g;
  for (Eigen::Index i = 0; i < s.rank; ++i)
    if (s.D(i, i) > 1) g.invariant_factors.push_back(s.D(i, i));
  g.free_rank = super.rank() - static_cast<int>(s.rank);
  return g;
}

Lattice scale(const Lattice& l, const BigInt& n) {
  IntMatrix g = l.basis() * n;
  Lattice out(l.ambient_rank());
  if (g.cols() > 0 && n != 0) out = Lattice::from_generators(g);
  return out;
}

Rref rref(const RatMatrix& m) {
  Rref out;
  out.R = m;
  RatMatrix& a = out.R;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index i = row; i < a.rows(); ++i)
      if (a(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    a.row(row).swap(a.row(p));
    Rational inv = Rational(1) / a(row, col);
    for (Eigen::Index j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (Eigen::Index j = col; j < a.cols(); ++j)
        if (a(row, j) != 0) a(i, j) -= f * a(row, j);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  return out;
}

int rational_rank(const RatMatrix& m) { return static_cast<int>(rref(m).pivot_cols.size()); }

RatMatrix rational_nullspace(const RatMatrix& m) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
  for (auto c : r.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
  RatMatrix ns = RatMatrix::Zero(m.cols(), static_cast<Eigen::Index>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    const Eigen::Index f = free_cols[k];
    ns(f, static_cast<Eigen::Index>(k)) = 1;
    for (size_t i = 0; i < r.pivot_cols.size(); ++i)
      ns(r.pivot_cols[i], static_cast<Eigen::Index>(k)) = -r.R(static_cast<Eigen::Index>(i), f);
  }
  return ns;
}

RatMatrix rational_inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  RatMatrix aug(n, 2 * n);
  aug << m, RatMatrix::Identity(n, n);
  Rref r = rref(aug);
  if (static_cast<Eigen::Index>(r.pivot_cols.size()) < n || r.pivot_cols[static_cast<size_t>(n - 1)] >= n)
    throw DimensionError("matrix is singular");
  return r.R.rightCols(n);
}

RatMatrix column_space_basis(const RatMatrix& m) {
  Rref r = rref(m);
  RatMatrix b(m.rows(), static_cast<Eigen::Index>(r.pivot_cols.size()));
  for (size_t i = 0; i < r.pivot_cols.size(); ++i) b.col(static_cast<Eigen::Index>(i)) = m.col(r.pivot_cols[i]);
  return b;
}

IntVector clear_denominators(const RatVector& v) {
  BigInt l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) l = lcm_value(l, denominator_of(v(i)));
  IntVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = numerator_of(v(i) * Rational(l));
  return out;
}

Lattice lattice_from_rational_span(const RatMatrix& span, int ambient_rank) {
  if (span.cols() == 0) return Lattice(ambient_rank);
  IntMatrix g(ambient_rank, span.cols());
  for (Eigen::Index j = 0; j < span.cols(); ++j) g.col(j) = clear_denominators(span.col(j));
  return saturate(Lattice::from_generators(g));
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  RatMatrix a = m.cast<Rational>();
  const Eigen::Index n = a.rows();
  Rational det = 1;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.row(p).swap(a.row(c));
      det = -det;
    }
    det *= a(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      a.row(i) -= f * a.row(c);
    }
  }
  return numerator_of(det);
}

std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> small, large;
  BigInt a = abs_value(n);
  for (BigInt d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      small.push_back(d);
      if (d * d != a) large.push_back(a / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

namespace {

// Row-space membership for an upper-triangular full-rank H.
bool in_row_space(const IntMatrix& h, IntVector v) {
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    if (v(i) % h(i, i) != 0) return false;
    BigInt x = v(i) / h(i, i);
    if (x != 0)
      for (Eigen::Index j = i; j < h.cols(); ++j) v(j) -= x * h(i, j);
  }
  return true;
}

}  // namespace

std::vector<Lattice> intermediate_lattices(const Lattice& lower, const Lattice& upper, long long max_candidates) {
  require_same_ambient(lower, upper);
  if (lower.rank() != upper.rank()) throw DimensionError("intermediate_lattices: lower has infinite index");
  const Eigen::Index k = upper.rank();
  IntMatrix c = relative_coordinates(lower, upper);
  if (k == 0) return {upper};
  auto s = snf(c);
  const BigInt e = s.D(k - 1, k - 1);
  const std::vector<BigInt> divs = divisors(e);

  // Estimated search size: prod_j sum_{d | e} d^j.
  double estimate = 1;
  for (Eigen::Index j = 0; j < k; ++j) {
    double sum = 0;
    for (const auto& d : divs) sum += std::pow(d.convert_to<double>(), static_cast<double>(j));
    estimate *= sum;
  }
  if (estimate > static_cast<double>(max_candidates))
    throw DimensionError("intermediate lattice search exceeds the cap");

  std::vector<Lattice> out;
  IntMatrix h = IntMatrix::Zero(k, k);
  std::vector<size_t> diag_choice(static_cast<size_t>(k), 0);
  // Odometer over diagonals, then over the entries above each pivot.
  std::function<void(Eigen::Index)> fill_above = [&](Eigen::Index pos) {
    // pos enumerates strictly-upper entries in row-major order
    const Eigen::Index total = k * (k - 1) / 2;
    if (pos == total) {
      for (Eigen::Index j = 0; j < c.cols(); ++j)
        if (!in_row_space(h, c.col(j))) return;
      IntMatrix gens = upper.basis() * h.transpose();
      out.push_back(Lattice::from_generators(gens));
      return;
    }
    Eigen::Index i = 0, rem = pos;
    while (rem >= k - 1 - i) {
      rem -= k - 1 - i;
      ++i;
    }
    const Eigen::Index j = i + 1 + rem;
    for (BigInt v = 0; v < h(j, j); ++v) {
      h(i, j) = v;
      fill_above(pos + 1);
    }
    h(i, j) = 0;
  };
  std::function<void(Eigen::Index)> choose_diag = [&](Eigen::Index i) {
    if (i == k) {
      fill_above(0);
      return;
    }
    for (const auto& d : divs) {
      h(i, i) = d;
      choose_diag(i + 1);
    }
  };
  choose_diag(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace toral
