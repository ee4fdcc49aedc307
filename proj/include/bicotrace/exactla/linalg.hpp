#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bicotrace/exactla/matrix.hpp"

namespace bicotrace {

template <class K>
struct RrefResult {
  Mat<K> reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form. Columns are scanned left to right; the pivot row
/// is the first row at or below the current one with a nonzero entry.
template <class K>
RrefResult<K> rref(Mat<K> a) {
  const Field f = a.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t s = r;
    while (s < a.rows() && is_zero(a(s, c))) ++s;
    if (s == a.rows()) continue;
    if (s != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(s, j), a(r, j));
    K inv = ScalarTraits<K>::inverse(a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      K factor = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!is_zero(a(r, j))) a(i, j) -= factor * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  (void)f;
  return {std::move(a), std::move(pivots)};
}

template <class K>
std::size_t rank(const Mat<K>& a) {
  return rref(a).pivots.size();
}

namespace detail {

template <class K>
std::vector<std::size_t> free_columns(std::size_t cols, const std::vector<std::size_t>& pivots) {
  std::vector<std::size_t> out;
  std::size_t p = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (p < pivots.size() && pivots[p] == c) {
      ++p;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

// Kernel basis from an rref of a matrix with `cols` unknowns: one vector per
// free column, that column set to 1 and the other free columns to 0.
template <class K>
Mat<K> kernel_from_rref(const RrefResult<K>& rr, std::size_t cols) {
  const Field f = rr.reduced.field();
  auto fr = free_columns<K>(cols, rr.pivots);
  Mat<K> basis(f, cols, fr.size());
  for (std::size_t k = 0; k < fr.size(); ++k) {
    basis(fr[k], k) = scalar<K>(f, 1);
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) basis(rr.pivots[i], k) = -rr.reduced(i, fr[k]);
  }
  return basis;
}

}  // namespace detail

/// Basis of ker(A) as the columns of a cols(A) x nullity matrix.
template <class K>
Mat<K> kernel(const Mat<K>& a) {
  return detail::kernel_from_rref(rref(a), a.cols());
}

template <class K>
struct Solution {
  Mat<K> particular;
  Mat<K> kernel;
};

/// Solves A x = b. b may have several columns; each is solved independently
/// with free variables set to zero. Returns nullopt if any column is
/// inconsistent.
template <class K>
std::optional<Solution<K>> solve(const Mat<K>& a, const Mat<K>& b) {
  if (a.rows() != b.rows())
    throw Error(ErrorKind::DimensionMismatch, "solve: A is " + a.shape() + ", b is " + b.shape());
  const Field f = a.field();
  Mat<K> aug(f, a.rows(), a.cols() + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, a.cols(), b);
  auto rr = rref(std::move(aug));
  std::vector<std::size_t> apiv;
  for (auto p : rr.pivots) {
    if (p >= a.cols()) return std::nullopt;
    apiv.push_back(p);
  }
  Mat<K> x(f, a.cols(), b.cols());
  for (std::size_t i = 0; i < apiv.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(apiv[i], j) = rr.reduced(i, a.cols() + j);
  RrefResult<K> ar{rr.reduced, apiv};
  return Solution<K>{std::move(x), detail::kernel_from_rref(ar, a.cols())};
}

template <class K>
Mat<K> inverse(const Mat<K>& a) {
  if (!a.square()) throw Error(ErrorKind::NotInvertible, "inverse of non-square " + a.shape());
  auto s = solve(a, Mat<K>::identity(a.field(), a.rows()));
  if (!s || s->kernel.cols() != 0) throw Error(ErrorKind::NotInvertible, "singular " + a.shape() + " matrix");
  return s->particular;
}

template <class K>
bool is_invertible(const Mat<K>& a) {
  return a.square() && rank(a) == a.rows();
}

/// A left inverse of a matrix with full column rank, built from the first
/// independent set of rows (pivots of the transpose).
template <class K>
Mat<K> left_inverse(const Mat<K>& incl) {
  auto rr = rref(incl.transpose());
  if (rr.pivots.size() != incl.cols())
    throw Error(ErrorKind::NotInvertible, "left inverse of rank-deficient " + incl.shape());
  Mat<K> sq = incl.select_rows(rr.pivots);
  Mat<K> sel(incl.field(), incl.cols(), incl.rows());
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) sel(i, rr.pivots[i]) = scalar<K>(incl.field(), 1);
  return inverse(sq) * sel;
}

template <class K>
struct Quotient {
  Mat<K> proj;  // q x ambient
  Mat<K> sect;  // ambient x q
};

/// k^n / span(columns of relations). The surviving coordinates are the
/// non-pivot columns of rref(relations^T).
template <class K>
Quotient<K> quotient_with_section(Field f, std::size_t ambient, const Mat<K>& relations) {
  if (relations.rows() != ambient && relations.cols() != 0)
    throw Error(ErrorKind::DimensionMismatch, "quotient: relations have " + std::to_string(relations.rows()) +
                                                  " rows, ambient is " + std::to_string(ambient));
  if (relations.cols() == 0) return {Mat<K>::identity(f, ambient), Mat<K>::identity(f, ambient)};
  auto rr = rref(relations.transpose());
  auto keep = detail::free_columns<K>(ambient, rr.pivots);
  std::vector<std::size_t> pos(ambient, 0);
  for (std::size_t a = 0; a < keep.size(); ++a) pos[keep[a]] = a;
  Mat<K> proj(f, keep.size(), ambient), sect(f, ambient, keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    proj(a, keep[a]) = scalar<K>(f, 1);
    sect(keep[a], a) = scalar<K>(f, 1);
  }
  for (std::size_t i = 0; i < rr.pivots.size(); ++i)
    for (std::size_t a = 0; a < keep.size(); ++a) proj(a, rr.pivots[i]) = -rr.reduced(i, keep[a]);
  return {std::move(proj), std::move(sect)};
}

/// Inclusion of ker(constraints) into k^ambient.
template <class K>
Mat<K> subspace_with_inclusion(Field f, std::size_t ambient, const Mat<K>& constraints) {
  if (constraints.rows() == 0) return Mat<K>::identity(f, ambient);
  if (constraints.cols() != ambient)
    throw Error(ErrorKind::DimensionMismatch, "subspace: constraints are " + constraints.shape());
  return kernel(constraints);
}

/// True iff every column of x lies in the column span of basis.
template <class K>
bool in_span(const Mat<K>& basis, const Mat<K>& x) {
  if (x.cols() == 0) return true;
  if (basis.cols() == 0) return x.is_zero();
  return solve(basis, x).has_value();
}

}  // namespace bicotrace
