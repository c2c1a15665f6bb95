#pragma once

// Hermite and Smith normal forms over any exact signed integer scalar.
// Row convention: H = U*M, pivots positive, entries above a pivot reduced
// into [0, pivot). Zero rows sink to the bottom.

#include "toral/scalar.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace toral {

template <class Scalar>
struct HnfResult {
  Matrix<Scalar> H;
  Matrix<Scalar> U;
  std::vector<Eigen::Index> pivot_cols;  // one per nonzero row of H
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_cols.size()); }
};

template <class Scalar>
struct SnfResult {
  Matrix<Scalar> D;
  Matrix<Scalar> U;
  Matrix<Scalar> U_inv;
  Matrix<Scalar> V;
  Eigen::Index rank = 0;
  std::vector<Scalar> diagonal() const {
    std::vector<Scalar> d;
    for (Eigen::Index i = 0; i < rank; ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

// rows p, q <- [[s, t], [u, v]] * (rows p, q)
template <class Scalar>
void combine_rows(Matrix<Scalar>& m, Eigen::Index p, Eigen::Index q, const Scalar& s, const Scalar& t,
                  const Scalar& u, const Scalar& v) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Scalar a = m(p, j), b = m(q, j);
    if (a == 0 && b == 0) continue;
    m(p, j) = s * a + t * b;
    m(q, j) = u * a + v * b;
  }
}

// cols p, q <- (cols p, q) * [[s, u], [t, v]]  i.e. col p = s*p + t*q, col q = u*p + v*q
template <class Scalar>
void combine_cols(Matrix<Scalar>& m, Eigen::Index p, Eigen::Index q, const Scalar& s, const Scalar& t,
                  const Scalar& u, const Scalar& v) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Scalar a = m(i, p), b = m(i, q);
    if (a == 0 && b == 0) continue;
    m(i, p) = s * a + t * b;
    m(i, q) = u * a + v * b;
  }
}

template <class Scalar>
void add_row_multiple(Matrix<Scalar>& m, Eigen::Index dst, Eigen::Index src, const Scalar& f) {
  if (f == 0) return;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) += f * m(src, j);
}

template <class Scalar>
void add_col_multiple(Matrix<Scalar>& m, Eigen::Index dst, Eigen::Index src, const Scalar& f) {
  if (f == 0) return;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (m(i, src) != 0) m(i, dst) += f * m(i, src);
}

template <class Scalar>
Matrix<Scalar> identity(Eigen::Index n) {
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

}  // namespace detail

template <class Derived>
HnfResult<typename Derived::Scalar> hnf(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  HnfResult<Scalar> out;
  Matrix<Scalar>& H = out.H;
  Matrix<Scalar>& U = out.U;
  H = input;
  const Eigen::Index m = H.rows(), n = H.cols();
  U = detail::identity<Scalar>(m);
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < n && row < m; ++col) {
    // Bring the smallest nonzero entry up, then gcd-eliminate below it.
    for (;;) {
      Eigen::Index best = -1;
      for (Eigen::Index i = row; i < m; ++i)
        if (H(i, col) != 0 && (best < 0 || abs_value(H(i, col)) < abs_value(H(best, col)))) best = i;
      if (best < 0) break;
      if (best != row) {
        H.row(row).swap(H.row(best));
        U.row(row).swap(U.row(best));
      }
      bool clean = true;
      for (Eigen::Index i = row + 1; i < m; ++i) {
        if (H(i, col) == 0) continue;
        Scalar q = floor_div(H(i, col), H(row, col));
        detail::add_row_multiple(H, i, row, Scalar(-q));
        detail::add_row_multiple(U, i, row, Scalar(-q));
        if (H(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(row, col) == 0) continue;
    if (H(row, col) < 0) {
      H.row(row) = -H.row(row);
      U.row(row) = -U.row(row);
    }
    for (Eigen::Index i = 0; i < row; ++i) {
      Scalar q = floor_div(H(i, col), H(row, col));
      detail::add_row_multiple(H, i, row, Scalar(-q));
      detail::add_row_multiple(U, i, row, Scalar(-q));
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  return out;
}

template <class Derived>
SnfResult<typename Derived::Scalar> snf(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  SnfResult<Scalar> out;
  Matrix<Scalar>& D = out.D;
  D = input;
  const Eigen::Index m = D.rows(), n = D.cols();
  out.U = detail::identity<Scalar>(m);
  out.U_inv = detail::identity<Scalar>(m);
  out.V = detail::identity<Scalar>(n);

  auto row_add = [&](Eigen::Index dst, Eigen::Index src, const Scalar& f) {
    detail::add_row_multiple(D, dst, src, f);
    detail::add_row_multiple(out.U, dst, src, f);
    detail::add_col_multiple(out.U_inv, src, dst, Scalar(-f));
  };
  auto col_add = [&](Eigen::Index dst, Eigen::Index src, const Scalar& f) {
    detail::add_col_multiple(D, dst, src, f);
    detail::add_col_multiple(out.V, dst, src, f);
  };
  auto row_swap = [&](Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    D.row(a).swap(D.row(b));
    out.U.row(a).swap(out.U.row(b));
    out.U_inv.col(a).swap(out.U_inv.col(b));
  };
  auto col_swap = [&](Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    D.col(a).swap(D.col(b));
    out.V.col(a).swap(out.V.col(b));
  };

  Eigen::Index t = 0;
  for (; t < std::min(m, n); ++t) {
    for (;;) {
      Eigen::Index bi = -1, bj = -1;
      for (Eigen::Index j = t; j < n; ++j)
        for (Eigen::Index i = t; i < m; ++i)
          if (D(i, j) != 0 && (bi < 0 || abs_value(D(i, j)) < abs_value(D(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi < 0) break;
      row_swap(t, bi);
      col_swap(t, bj);
      bool dirty = false;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        row_add(i, t, Scalar(-floor_div(D(i, t), D(t, t))));
        if (D(i, t) != 0) dirty = true;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        col_add(j, t, Scalar(-floor_div(D(t, j), D(t, t))));
        if (D(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      // Pivot isolated; enforce divisibility of the trailing block.
      Eigen::Index fi = -1;
      for (Eigen::Index i = t + 1; i < m && fi < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            fi = i;
            break;
          }
      if (fi < 0) break;
      row_add(t, fi, Scalar(1));
    }
    if (t >= m || t >= n || D(t, t) == 0) break;
    if (D(t, t) < 0) {
      D.row(t) = -D.row(t);
      out.U.row(t) = -out.U.row(t);
      out.U_inv.col(t) = -out.U_inv.col(t);
    }
  }
  out.rank = t;
  return out;
}

// Basis (columns) of the integer kernel {x : M x = 0}; saturated by construction.
template <class Derived>
Matrix<typename Derived::Scalar> integer_kernel(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> mt = m.transpose();
  auto h = hnf(mt);
  const Eigen::Index r = h.rank();
  Matrix<Scalar> k(m.cols(), m.cols() - r);
  for (Eigen::Index i = r; i < m.cols(); ++i) k.col(i - r) = h.U.row(i).transpose();
  return k;
}

// Solve M x = b over the integers; returns false when no integral solution exists.
template <class DerivedM, class DerivedB>
bool solve_integer(const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedB>& b,
                   Vector<typename DerivedM::Scalar>& x) {
  using Scalar = typename DerivedM::Scalar;
  auto s = snf(m);
  Vector<Scalar> w = s.U * b;
  Vector<Scalar> y = Vector<Scalar>::Zero(m.cols());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (i < s.rank) {
      if (w(i) % s.D(i, i) != 0) return false;
      y(i) = w(i) / s.D(i, i);
    } else if (w(i) != 0) {
      return false;
    }
  }
  x = s.V * y;
  return true;
}

}  // namespace toral
