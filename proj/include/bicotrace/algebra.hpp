#pragma once

#include <array>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "bicotrace/exactla/linalg.hpp"

namespace bicotrace {

/// Finite group given by its multiplication table; element 0 is the identity.
class GroupTable {
 public:
  GroupTable() = default;

  explicit GroupTable(std::vector<std::vector<std::size_t>> table) : table_(std::move(table)) {
    const std::size_t n = table_.size();
    if (n == 0) throw Error(ErrorKind::InvalidGroupTable, "empty group");
    for (std::size_t i = 0; i < n; ++i) {
      if (table_[i].size() != n) throw Error(ErrorKind::InvalidGroupTable, "table row has wrong length", {i});
      for (std::size_t j = 0; j < n; ++j)
        if (table_[i][j] >= n) throw Error(ErrorKind::InvalidGroupTable, "entry out of range", {i, j});
    }
    for (std::size_t i = 0; i < n; ++i)
      if (table_[0][i] != i || table_[i][0] != i)
        throw Error(ErrorKind::InvalidGroupTable, "element 0 is not the identity", {i});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l)
          if (table_[table_[i][j]][l] != table_[i][table_[j][l]])
            throw Error(ErrorKind::InvalidGroupTable, "table is not associative", {i, j, l});
    inverse_.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (table_[i][j] == 0 && table_[j][i] == 0) {
          if (inverse_[i] != n) throw Error(ErrorKind::InvalidGroupTable, "inverse not unique", {i});
          inverse_[i] = j;
        }
      if (inverse_[i] == n) throw Error(ErrorKind::InvalidGroupTable, "element has no inverse", {i});
    }
  }

  std::size_t order() const { return table_.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  bool operator==(const GroupTable& o) const { return table_ == o.table_; }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
};

inline GroupTable cyclic_group(std::size_t n) {
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return GroupTable(t);
}

/// S3 with elements ordered e, (12), (13), (23), (123), (132).
inline GroupTable symmetric_group_3() {
  using P = std::array<int, 3>;
  const std::vector<P> elems = {P{0, 1, 2}, P{1, 0, 2}, P{2, 1, 0}, P{0, 2, 1}, P{1, 2, 0}, P{2, 0, 1}};
  std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      P c{};  // (i*j)(x) = i(j(x))
      for (int x = 0; x < 3; ++x) c[x] = elems[i][elems[j][x]];
      for (std::size_t k = 0; k < 6; ++k)
        if (elems[k] == c) t[i][j] = k;
    }
  return GroupTable(t);
}

/// Finite-dimensional unital associative algebra given by structure
/// constants. Stored as left-multiplication matrices: lmul(i) e_j = b_i b_j.
template <class K>
class Algebra {
  struct Data {
    Field field;
    std::size_t dim = 0;
    std::vector<Mat<K>> lmul;
    std::vector<Mat<K>> rmul;
    Mat<K> unit;
    std::vector<std::string> labels;
  };

 public:
  Algebra() = default;

  /// mul[i][j] is the coordinate vector of b_i b_j. Validates associativity
  /// and the unit.
  static Algebra make(Field f, std::size_t dim, const std::vector<std::vector<std::vector<K>>>& mul,
                      const std::vector<K>& unit, std::vector<std::string> labels = {}) {
    if (mul.size() != dim || unit.size() != dim)
      throw Error(ErrorKind::DimensionMismatch, "structure constants do not match dim " + std::to_string(dim));
    std::vector<Mat<K>> lm(dim, Mat<K>(f, dim, dim));
    for (std::size_t i = 0; i < dim; ++i) {
      if (mul[i].size() != dim) throw Error(ErrorKind::DimensionMismatch, "structure constants row", {i});
      for (std::size_t j = 0; j < dim; ++j) {
        if (mul[i][j].size() != dim) throw Error(ErrorKind::DimensionMismatch, "structure constant vector", {i, j});
        for (std::size_t l = 0; l < dim; ++l) lm[i](l, j) = mul[i][j][l];
      }
    }
    Mat<K> u(f, dim, 1);
    for (std::size_t i = 0; i < dim; ++i) u(i, 0) = unit[i];
    return from_lmul(f, std::move(lm), std::move(u), std::move(labels), true);
  }

  static Algebra from_lmul(Field f, std::vector<Mat<K>> lm, Mat<K> unit, std::vector<std::string> labels,
                           bool validate) {
    auto d = std::make_shared<Data>();
    d->field = f;
    d->dim = lm.size();
    d->lmul = std::move(lm);
    d->unit = std::move(unit);
    d->labels = std::move(labels);
    const std::size_t n = d->dim;
    d->rmul.assign(n, Mat<K>(f, n, n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) d->rmul[j](l, i) = d->lmul[i](l, j);
    Algebra a;
    a.d_ = std::move(d);
    if (validate) a.validate();
    return a;
  }

  const Field& field() const { return d_->field; }
  std::size_t dim() const { return d_->dim; }
  /// Matrix of x -> b_i x.
  const Mat<K>& lmul(std::size_t i) const { return d_->lmul[i]; }
  /// Matrix of x -> x b_i.
  const Mat<K>& rmul(std::size_t i) const { return d_->rmul[i]; }
  const Mat<K>& unit() const { return d_->unit; }
  const std::vector<std::string>& labels() const { return d_->labels; }

  /// Coordinates of b_i b_j.
  Mat<K> mul(std::size_t i, std::size_t j) const { return d_->lmul[i].col(j); }

  Mat<K> left_mult(const Mat<K>& x) const {
    Mat<K> r(field(), dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      if (!is_zero(x(i, 0))) r = r + d_->lmul[i].scaled(x(i, 0));
    return r;
  }

  Mat<K> right_mult(const Mat<K>& x) const {
    Mat<K> r(field(), dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      if (!is_zero(x(i, 0))) r = r + d_->rmul[i].scaled(x(i, 0));
    return r;
  }

  Mat<K> product(const Mat<K>& x, const Mat<K>& y) const { return left_mult(x) * y; }

  bool is_commutative() const {
    for (std::size_t i = 0; i < dim(); ++i)
      if (!(d_->lmul[i] == d_->rmul[i])) return false;
    return true;
  }

  bool same_as(const Algebra& o) const { return d_ == o.d_; }
  std::weak_ptr<const void> weak() const { return std::static_pointer_cast<const void>(d_); }

  /// Structural equality; labels are cosmetic and ignored.
  bool operator==(const Algebra& o) const {
    if (d_ == o.d_) return true;
    if (!d_ || !o.d_) return false;
    return d_->field == o.d_->field && d_->dim == o.d_->dim && d_->unit == o.d_->unit && d_->lmul == o.d_->lmul;
  }

 private:
  void validate() const {
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Mat<K> bij = mul(i, j);
        for (std::size_t l = 0; l < n; ++l) {
          // (b_i b_j) b_l versus b_i (b_j b_l)
          if (!(d_->rmul[l] * bij == d_->lmul[i] * mul(j, l)))
            throw Error(ErrorKind::AssociativityViolation,
                        "(b" + std::to_string(i) + " b" + std::to_string(j) + ") b" + std::to_string(l) + " != b" +
                            std::to_string(i) + " (b" + std::to_string(j) + " b" + std::to_string(l) + ")",
                        {i, j, l});
        }
      }
    Mat<K> lu = left_mult(unit()), ru = right_mult(unit());
    for (std::size_t i = 0; i < n; ++i) {
      Mat<K> e = Mat<K>::unit_vector(field(), n, i);
      if (!(lu * e == e) || !(ru * e == e))
        throw Error(ErrorKind::UnitViolation, "unit does not fix b" + std::to_string(i), {i});
    }
  }

  std::shared_ptr<const Data> d_;
};

template <class K>
Algebra<K> ground_algebra(Field f) {
  return Algebra<K>::from_lmul(f, {Mat<K>::identity(f, 1)}, Mat<K>::identity(f, 1), {"1"}, false);
}

template <class K>
Algebra<K> group_algebra(const GroupTable& g, Field f) {
  const std::size_t n = g.order();
  std::vector<Mat<K>> lm(n, Mat<K>(f, n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lm[i](g.mul(i, j), j) = scalar<K>(f, 1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  return Algebra<K>::from_lmul(f, std::move(lm), Mat<K>::unit_vector(f, n, 0), std::move(labels), true);
}

/// M_n(R): basis E_ij (x) r_a at index (i*n + j)*dim R + a.
template <class K>
Algebra<K> matrix_algebra_over(const Algebra<K>& r, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "matrix algebra of size 0");
  const Field f = r.field();
  const std::size_t d = r.dim(), dim = n * n * d;
  std::vector<Mat<K>> lm(dim, Mat<K>(f, dim, dim));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t b = 0; b < d; ++b) {
            // (E_ij r_a)(E_jl r_b) = E_il (r_a r_b)
            const std::size_t src = (j * n + l) * d + b;
            for (std::size_t c = 0; c < d; ++c) {
              const K& coef = r.lmul(a)(c, b);
              if (!is_zero(coef)) lm[(i * n + j) * d + a]((i * n + l) * d + c, src) = coef;
            }
          }
  Mat<K> unit(f, dim, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < d; ++c) unit((i * n + i) * d + c, 0) = r.unit()(c, 0);
  return Algebra<K>::from_lmul(f, std::move(lm), std::move(unit), {}, true);
}

/// M_n(k) with basis E_ij at index i*n + j.
template <class K>
Algebra<K> matrix_algebra(std::size_t n, Field f) {
  return matrix_algebra_over(ground_algebra<K>(f), n);
}

template <class K>
Algebra<K> opposite(const Algebra<K>& a) {
  std::vector<Mat<K>> lm;
  for (std::size_t i = 0; i < a.dim(); ++i) lm.push_back(a.rmul(i));
  return Algebra<K>::from_lmul(a.field(), std::move(lm), a.unit(), a.labels(), false);
}

/// k[x]/(x^n) with basis 1, x, ..., x^{n-1}.
template <class K>
Algebra<K> truncated_polynomial(std::size_t n, Field f) {
  std::vector<Mat<K>> lm(n, Mat<K>(f, n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) lm[i](i + j, j) = scalar<K>(f, 1);
  return Algebra<K>::from_lmul(f, std::move(lm), Mat<K>::unit_vector(f, n, 0), {}, true);
}

/// Upper triangular 2x2 matrices with basis E11, E12, E22.
template <class K>
Algebra<K> upper_triangular_2(Field f) {
  auto one = scalar<K>(f, 1);
  std::vector<Mat<K>> lm(3, Mat<K>(f, 3, 3));
  lm[0](0, 0) = one;  // E11 E11 = E11
  lm[0](1, 1) = one;  // E11 E12 = E12
  lm[1](1, 2) = one;  // E12 E22 = E12
  lm[2](2, 2) = one;  // E22 E22 = E22
  Mat<K> unit(f, 3, 1);
  unit(0, 0) = one;
  unit(2, 0) = one;
  return Algebra<K>::from_lmul(f, std::move(lm), std::move(unit), {"E11", "E12", "E22"}, true);
}

template <class K>
struct AlgebraMorphism {
  Algebra<K> src;
  Algebra<K> dst;
  Mat<K> map;  // dim(dst) x dim(src)

  Mat<K> apply(const Mat<K>& x) const { return map * x; }
};

template <class K>
AlgebraMorphism<K> make_morphism(const Algebra<K>& src, const Algebra<K>& dst, const Mat<K>& map) {
  if (map.rows() != dst.dim() || map.cols() != src.dim())
    throw Error(ErrorKind::DimensionMismatch, "morphism matrix is " + map.shape());
  if (!(map * src.unit() == dst.unit())) throw Error(ErrorKind::UnitNotPreserved, "unit is not sent to unit");
  for (std::size_t i = 0; i < src.dim(); ++i)
    for (std::size_t j = 0; j < src.dim(); ++j)
      if (!(map * src.mul(i, j) == dst.product(map.col(i), map.col(j))))
        throw Error(ErrorKind::NotMultiplicative,
                    "phi(b" + std::to_string(i) + " b" + std::to_string(j) + ") != phi(b" + std::to_string(i) +
                        ") phi(b" + std::to_string(j) + ")",
                    {i, j});
  return {src, dst, map};
}

template <class K>
AlgebraMorphism<K> identity_morphism(const Algebra<K>& a) {
  return {a, a, Mat<K>::identity(a.field(), a.dim())};
}

/// k[H] -> k[G] for a subgroup given by the list of its elements in G; the
/// i-th basis element of k[H] goes to g_{elements[i]}.
template <class K>
AlgebraMorphism<K> subgroup_inclusion(const Algebra<K>& kh, const Algebra<K>& kg,
                                      const std::vector<std::size_t>& elements) {
  Mat<K> m(kg.field(), kg.dim(), kh.dim());
  for (std::size_t i = 0; i < elements.size(); ++i) m(elements[i], i) = scalar<K>(kg.field(), 1);
  return make_morphism(kh, kg, m);
}

/// Subgroup table induced from G on the listed elements (which must include 0
/// first and be closed under multiplication).
inline GroupTable subgroup_table(const GroupTable& g, const std::vector<std::size_t>& elements) {
  std::vector<std::size_t> pos(g.order(), g.order());
  for (std::size_t i = 0; i < elements.size(); ++i) pos[elements[i]] = i;
  std::vector<std::vector<std::size_t>> t(elements.size(), std::vector<std::size_t>(elements.size()));
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j) {
      std::size_t p = pos[g.mul(elements[i], elements[j])];
      if (p == g.order()) throw Error(ErrorKind::InvalidGroupTable, "subset is not closed", {i, j});
      t[i][j] = p;
    }
  return GroupTable(t);
}

}  // namespace bicotrace
