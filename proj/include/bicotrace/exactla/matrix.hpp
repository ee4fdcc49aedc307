#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "bicotrace/error.hpp"
#include "bicotrace/exactla/field.hpp"

namespace bicotrace {

/// Dense matrix over one exact field, row-major. Column vectors are n x 1
/// matrices; a linear map k^a -> k^b is a b x a matrix.
template <class K>
class Mat {
 public:
  using scalar_type = K;

  Mat() = default;
  Mat(Field f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, scalar<K>(f, 0)) {}

  static Mat zero(Field f, std::size_t rows, std::size_t cols) { return Mat(f, rows, cols); }

  static Mat identity(Field f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar<K>(f, 1);
    return m;
  }

  static Mat from_ints(Field f, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::vector<std::vector<std::int64_t>> v;
    for (auto& r : rows) v.emplace_back(r);
    return from_ints(f, v, v.empty() ? 0 : v.front().size());
  }

  static Mat from_ints(Field f, const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols) {
    Mat m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged integer matrix");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = scalar<K>(f, rows[i][j]);
    }
    return m;
  }

  /// Column vector with entry 1 at position i.
  static Mat unit_vector(Field f, std::size_t n, std::size_t i) {
    Mat m(f, n, 1);
    m(i, 0) = scalar<K>(f, 1);
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const K> row_span(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<K>& data() const { return data_; }

  bool operator==(const Mat& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!bicotrace::is_zero(x)) return false;
    return true;
  }

  bool is_identity() const { return square() && *this == identity(field_, rows_); }

  Mat operator+(const Mat& o) const {
    require_same_shape(o, "+");
    Mat r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }

  Mat operator-(const Mat& o) const {
    require_same_shape(o, "-");
    Mat r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }

  Mat operator-() const {
    Mat r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_ || !(field_ == o.field_))
      throw Error(ErrorKind::DimensionMismatch, "product of " + shape() + " by " + o.shape());
    Mat r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const K& a = (*this)(i, k);
        if (bicotrace::is_zero(a)) continue;
        const K* orow = o.data_.data() + k * o.cols_;
        K* rrow = r.data_.data() + i * o.cols_;
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (!bicotrace::is_zero(orow[j])) rrow[j] += a * orow[j];
      }
    }
    return r;
  }

  Mat scaled(const K& c) const {
    Mat r = *this;
    for (auto& x : r.data_) x *= c;
    return r;
  }

  Mat transpose() const {
    Mat r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Mat col(std::size_t j) const { return block(0, j, rows_, 1); }
  Mat row(std::size_t i) const { return block(i, 0, 1, cols_); }

  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorKind::DimensionMismatch, "block out of range");
    Mat r(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }

  Mat select_rows(std::span<const std::size_t> idx) const {
    Mat r(field_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
    return r;
  }

  Mat select_cols(std::span<const std::size_t> idx) const {
    Mat r(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
    return r;
  }

  void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error(ErrorKind::DimensionMismatch, "set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  /// Row-major flattening into a column vector.
  Mat vec() const {
    Mat r(field_, rows_ * cols_, 1);
    r.data_ = data_;
    return r;
  }

  /// Inverse of vec(): reads a (rows*cols) x 1 column as a rows x cols matrix.
  static Mat unvec(const Mat& v, std::size_t rows, std::size_t cols) {
    if (v.cols_ != 1 || v.rows_ != rows * cols) throw Error(ErrorKind::DimensionMismatch, "unvec shape");
    Mat r(v.field_, rows, cols);
    r.data_ = v.data_;
    return r;
  }

  K trace() const {
    if (!square()) throw Error(ErrorKind::DimensionMismatch, "trace of non-square " + shape());
    K t = scalar<K>(field_, 0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const Mat& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_))
      throw Error(ErrorKind::DimensionMismatch, std::string("operator") + op + " on " + shape() + " and " + o.shape());
  }

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> data_;
};

template <class K>
Mat<K> operator*(const K& c, const Mat<K>& m) {
  return m.scaled(c);
}

template <class K>
Mat<K> kron(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const K& x = a(i, j);
      if (is_zero(x)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!is_zero(b(k, l))) r(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return r;
}

template <class K>
Mat<K> hstack(const std::vector<Mat<K>>& parts, Field f, std::size_t rows) {
  std::size_t cols = 0;
  for (auto& p : parts) {
    if (p.rows() != rows) throw Error(ErrorKind::DimensionMismatch, "hstack row mismatch");
    cols += p.cols();
  }
  Mat<K> r(f, rows, cols);
  std::size_t c = 0;
  for (auto& p : parts) {
    r.set_block(0, c, p);
    c += p.cols();
  }
  return r;
}

template <class K>
Mat<K> vstack(const std::vector<Mat<K>>& parts, Field f, std::size_t cols) {
  std::size_t rows = 0;
  for (auto& p : parts) {
    if (p.cols() != cols) throw Error(ErrorKind::DimensionMismatch, "vstack column mismatch");
    rows += p.rows();
  }
  Mat<K> r(f, rows, cols);
  std::size_t c = 0;
  for (auto& p : parts) {
    r.set_block(c, 0, p);
    c += p.rows();
  }
  return r;
}

/// Permutation k^a (x) k^b -> k^b (x) k^a, e_i (x) e_j -> e_j (x) e_i.
template <class K>
Mat<K> flip_matrix(Field f, std::size_t a, std::size_t b) {
  Mat<K> r(f, a * b, a * b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) r(j * a + i, i * b + j) = scalar<K>(f, 1);
  return r;
}

template <class K>
std::ostream& operator<<(std::ostream& os, const Mat<K>& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
  }
  return os << "]";
}

}  // namespace bicotrace
