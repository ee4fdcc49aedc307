#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bicotrace/algebra.hpp"

namespace bicotrace {

template <class K>
class Bimodule;

template <class K>
struct TensorInfo;

enum class HomSide {
  right,  // N |> P = Hom_T(N, P)
  left,   // P <| M = Hom_R(M, P)
};

template <class K>
struct HomInfo;

/// (R,S)-bimodule on k^m. lact(i) is the matrix of m -> r_i m and ract(j) the
/// matrix of m -> m s_j, so ract(c c') = ract(c') ract(c).
template <class K>
class Bimodule {
  struct Data {
    Algebra<K> left, right;
    std::size_t dim = 0;
    std::vector<Mat<K>> lact, ract;
    std::shared_ptr<const TensorInfo<K>> tensor;
    std::shared_ptr<const HomInfo<K>> hom;
  };

 public:
  Bimodule() = default;

  /// Validating constructor.
  static Bimodule make(const Algebra<K>& left, const Algebra<K>& right, std::size_t dim, std::vector<Mat<K>> lact,
                       std::vector<Mat<K>> ract) {
    Bimodule b = trusted(left, right, dim, std::move(lact), std::move(ract));
    b.validate();
    return b;
  }

  static Bimodule trusted(const Algebra<K>& left, const Algebra<K>& right, std::size_t dim, std::vector<Mat<K>> lact,
                          std::vector<Mat<K>> ract, std::shared_ptr<const TensorInfo<K>> tensor = nullptr,
                          std::shared_ptr<const HomInfo<K>> hom = nullptr) {
    auto d = std::make_shared<Data>();
    d->left = left;
    d->right = right;
    d->dim = dim;
    d->lact = std::move(lact);
    d->ract = std::move(ract);
    d->tensor = std::move(tensor);
    d->hom = std::move(hom);
    Bimodule b;
    b.d_ = std::move(d);
    return b;
  }

  const Algebra<K>& left() const { return d_->left; }
  const Algebra<K>& right() const { return d_->right; }
  const Field& field() const { return d_->left.field(); }
  std::size_t dim() const { return d_->dim; }
  const Mat<K>& lact(std::size_t i) const { return d_->lact[i]; }
  const Mat<K>& ract(std::size_t i) const { return d_->ract[i]; }
  const std::vector<Mat<K>>& lacts() const { return d_->lact; }
  const std::vector<Mat<K>>& racts() const { return d_->ract; }

  /// Action of a general element (coordinate column) of the left algebra.
  Mat<K> lact_elem(const Mat<K>& r) const {
    Mat<K> out(field(), dim(), dim());
    for (std::size_t i = 0; i < r.rows(); ++i)
      if (!is_zero(r(i, 0))) out = out + d_->lact[i].scaled(r(i, 0));
    return out;
  }
  Mat<K> ract_elem(const Mat<K>& s) const {
    Mat<K> out(field(), dim(), dim());
    for (std::size_t i = 0; i < s.rows(); ++i)
      if (!is_zero(s(i, 0))) out = out + d_->ract[i].scaled(s(i, 0));
    return out;
  }

  const TensorInfo<K>* tensor() const { return d_->tensor.get(); }
  const HomInfo<K>* hom() const { return d_->hom.get(); }

  const void* identity() const { return d_.get(); }
  std::weak_ptr<const void> weak() const { return std::static_pointer_cast<const void>(d_); }
  bool same_as(const Bimodule& o) const { return d_ == o.d_; }
  bool valid() const { return d_ != nullptr; }

  /// Structural equality: same algebras, dimension and action matrices.
  bool operator==(const Bimodule& o) const {
    if (d_ == o.d_) return true;
    if (!d_ || !o.d_) return false;
    return d_->dim == o.d_->dim && d_->left == o.d_->left && d_->right == o.d_->right && d_->lact == o.d_->lact &&
           d_->ract == o.d_->ract;
  }

  bool parallel_to(const Bimodule& o) const { return left() == o.left() && right() == o.right(); }

  void validate() const {
    const Field f = field();
    const std::size_t m = dim();
    const auto& r = left();
    const auto& s = right();
    if (d_->lact.size() != r.dim() || d_->ract.size() != s.dim())
      throw Error(ErrorKind::InvalidBimodule, "wrong number of action matrices");
    for (std::size_t i = 0; i < r.dim(); ++i)
      if (d_->lact[i].rows() != m || d_->lact[i].cols() != m)
        throw Error(ErrorKind::InvalidBimodule, "left action matrix has wrong shape", {0, i});
    for (std::size_t i = 0; i < s.dim(); ++i)
      if (d_->ract[i].rows() != m || d_->ract[i].cols() != m)
        throw Error(ErrorKind::InvalidBimodule, "right action matrix has wrong shape", {1, i});
    Mat<K> id = Mat<K>::identity(f, m);
    if (!(lact_elem(r.unit()) == id)) throw Error(ErrorKind::InvalidBimodule, "unit of left algebra does not act as 1");
    if (!(ract_elem(s.unit()) == id)) throw Error(ErrorKind::InvalidBimodule, "unit of right algebra does not act as 1");
    for (std::size_t i = 0; i < r.dim(); ++i)
      for (std::size_t j = 0; j < r.dim(); ++j)
        if (!(lact_elem(r.mul(i, j)) == d_->lact[i] * d_->lact[j]))
          throw Error(ErrorKind::InvalidBimodule,
                      "left action not multiplicative at (" + std::to_string(i) + "," + std::to_string(j) + ")",
                      {0, i, j});
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = 0; j < s.dim(); ++j)
        if (!(ract_elem(s.mul(i, j)) == d_->ract[j] * d_->ract[i]))
          throw Error(ErrorKind::InvalidBimodule,
                      "right action not multiplicative at (" + std::to_string(i) + "," + std::to_string(j) + ")",
                      {1, i, j});
    for (std::size_t i = 0; i < r.dim(); ++i)
      for (std::size_t j = 0; j < s.dim(); ++j)
        if (!(d_->lact[i] * d_->ract[j] == d_->ract[j] * d_->lact[i]))
          throw Error(ErrorKind::InvalidBimodule,
                      "actions do not commute at (" + std::to_string(i) + "," + std::to_string(j) + ")", {2, i, j});
  }

 private:
  std::shared_ptr<const Data> d_;
};

template <class K>
struct TensorInfo {
  Bimodule<K> lhs, rhs;
  Mat<K> proj;  // k^{m n} -> lhs (.) rhs, ambient index a*n + b
  Mat<K> sect;
};

template <class K>
struct HomInfo {
  HomSide side;
  Bimodule<K> source;  // maps go source -> target
  Bimodule<K> target;
  Mat<K> incl;  // hom coordinates -> vec(Phi), Phi is target.dim x source.dim, row-major
  Mat<K> linv;  // left inverse of incl
};

/// Bimodule homomorphism src -> dst.
template <class K>
class TwoCell {
 public:
  TwoCell() = default;
  TwoCell(Bimodule<K> src, Bimodule<K> dst, Mat<K> map) : src_(std::move(src)), dst_(std::move(dst)), map_(std::move(map)) {
    if (map_.rows() != dst_.dim() || map_.cols() != src_.dim())
      throw Error(ErrorKind::DimensionMismatch,
                  "2-cell matrix " + map_.shape() + " for " + std::to_string(src_.dim()) + " -> " +
                      std::to_string(dst_.dim()));
  }

  /// Validating constructor.
  static TwoCell make(Bimodule<K> src, Bimodule<K> dst, Mat<K> map) {
    if (!src.parallel_to(dst)) throw Error(ErrorKind::Mismatch, "source and target are not parallel");
    TwoCell c(std::move(src), std::move(dst), std::move(map));
    c.validate();
    return c;
  }

  static TwoCell identity(const Bimodule<K>& b) { return TwoCell(b, b, Mat<K>::identity(b.field(), b.dim())); }
  static TwoCell zero(const Bimodule<K>& s, const Bimodule<K>& d) { return TwoCell(s, d, Mat<K>(s.field(), d.dim(), s.dim())); }

  const Bimodule<K>& src() const { return src_; }
  const Bimodule<K>& dst() const { return dst_; }
  const Mat<K>& map() const { return map_; }

  bool is_bimodule_map() const {
    for (std::size_t i = 0; i < src_.left().dim(); ++i)
      if (!(map_ * src_.lact(i) == dst_.lact(i) * map_)) return false;
    for (std::size_t i = 0; i < src_.right().dim(); ++i)
      if (!(map_ * src_.ract(i) == dst_.ract(i) * map_)) return false;
    return true;
  }

  void validate() const {
    for (std::size_t i = 0; i < src_.left().dim(); ++i)
      if (!(map_ * src_.lact(i) == dst_.lact(i) * map_))
        throw Error(ErrorKind::NotBimoduleMap, "does not commute with left action of b" + std::to_string(i), {0, i});
    for (std::size_t i = 0; i < src_.right().dim(); ++i)
      if (!(map_ * src_.ract(i) == dst_.ract(i) * map_))
        throw Error(ErrorKind::NotBimoduleMap, "does not commute with right action of b" + std::to_string(i), {1, i});
  }

  /// Vertical composition: (*this) after g.
  TwoCell operator*(const TwoCell& g) const {
    if (!(g.dst_ == src_)) throw Error(ErrorKind::Mismatch, "vertical composition of non-composable 2-cells");
    return TwoCell(g.src_, dst_, map_ * g.map_);
  }

  TwoCell operator+(const TwoCell& o) const {
    if (!(src_ == o.src_) || !(dst_ == o.dst_)) throw Error(ErrorKind::Mismatch, "sum of non-parallel 2-cells");
    return TwoCell(src_, dst_, map_ + o.map_);
  }

  TwoCell operator-(const TwoCell& o) const { return *this + o.scaled(scalar<K>(map_.field(), -1)); }

  TwoCell scaled(const K& c) const { return TwoCell(src_, dst_, map_.scaled(c)); }

  TwoCell inverse() const { return TwoCell(dst_, src_, bicotrace::inverse(map_)); }

  /// Same map, reinterpreted between structurally equal endpoints.
  TwoCell retarget(const Bimodule<K>& s, const Bimodule<K>& d) const {
    if (!(s == src_) || !(d == dst_)) throw Error(ErrorKind::Mismatch, "retarget onto different bimodules");
    return TwoCell(s, d, map_);
  }

  bool operator==(const TwoCell& o) const { return src_ == o.src_ && dst_ == o.dst_ && map_ == o.map_; }

 private:
  Bimodule<K> src_, dst_;
  Mat<K> map_;
};

namespace detail {

// Memo of constructions keyed by the identity of their operands. A hit is
// only accepted while both operands are still alive, so address reuse can
// not produce a stale answer.
template <class V>
class IdentityCache {
 public:
  template <class F>
  V get(const std::weak_ptr<const void>& a, const std::weak_ptr<const void>& b, int tag, F&& make) {
    auto pa = a.lock(), pb = b.lock();
    Key key{pa.get(), pb.get(), tag};
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) {
        if (it->second.a.lock() == pa && it->second.b.lock() == pb) return it->second.value;
        map_.erase(it);
      }
    }
    V v = make();
    std::lock_guard<std::mutex> lock(mu_);
    map_.insert_or_assign(key, Entry{a, b, v});
    return v;
  }

 private:
  struct Key {
    const void* a;
    const void* b;
    int tag;
    bool operator<(const Key& o) const { return std::tie(a, b, tag) < std::tie(o.a, o.b, o.tag); }
  };
  struct Entry {
    std::weak_ptr<const void> a, b;
    V value;
  };
  std::mutex mu_;
  std::map<Key, Entry> map_;
};

template <class K>
IdentityCache<Bimodule<K>>& construction_cache() {
  static IdentityCache<Bimodule<K>> cache;
  return cache;
}

inline std::string dims(std::size_t a, std::size_t b) { return std::to_string(a) + "x" + std::to_string(b); }

}  // namespace detail

template <class K>
Bimodule<K> unit_bimodule(const Algebra<K>& r) {
  return detail::construction_cache<K>().get(r.weak(), r.weak(), 3, [&] {
    std::vector<Mat<K>> l, rr;
    for (std::size_t i = 0; i < r.dim(); ++i) {
      l.push_back(r.lmul(i));
      rr.push_back(r.rmul(i));
    }
    return Bimodule<K>::trusted(r, r, r.dim(), std::move(l), std::move(rr));
  });
}

/// Left action restricted along phi: R -> S, i.e. r acts through phi(r).
template <class K>
std::vector<Mat<K>> pull_actions(const AlgebraMorphism<K>& phi, const std::vector<Mat<K>>& acts) {
  std::vector<Mat<K>> out;
  const Field f = phi.dst.field();
  for (std::size_t i = 0; i < phi.src.dim(); ++i) {
    Mat<K> a(f, acts.front().rows(), acts.front().cols());
    for (std::size_t j = 0; j < phi.dst.dim(); ++j)
      if (!is_zero(phi.map(j, i))) a = a + acts[j].scaled(phi.map(j, i));
    out.push_back(std::move(a));
  }
  return out;
}

/// M (.) N = M (x)_S N with its (R,T)-structure.
template <class K>
Bimodule<K> tensor_over(const Bimodule<K>& m, const Bimodule<K>& n) {
  if (!(m.right() == n.left()))
    throw Error(ErrorKind::MismatchedMiddleAlgebra, "tensor over different middle algebras");
  return detail::construction_cache<K>().get(m.weak(), n.weak(), 0, [&] {
    const Field f = m.field();
    const std::size_t a = m.dim(), b = n.dim(), amb = a * b;
    const Algebra<K>& s = m.right();
    Mat<K> idA = Mat<K>::identity(f, a), idB = Mat<K>::identity(f, b);
    std::vector<Mat<K>> rel;
    for (std::size_t i = 0; i < s.dim(); ++i) rel.push_back(kron(m.ract(i), idB) - kron(idA, n.lact(i)));
    Mat<K> relations = amb == 0 ? Mat<K>(f, 0, 0) : hstack(rel, f, amb);
    auto q = quotient_with_section(f, amb, relations);
    std::vector<Mat<K>> l, r;
    for (std::size_t i = 0; i < m.left().dim(); ++i) l.push_back(q.proj * kron(m.lact(i), idB) * q.sect);
    for (std::size_t i = 0; i < n.right().dim(); ++i) r.push_back(q.proj * kron(idA, n.ract(i)) * q.sect);
    const std::size_t d = q.proj.rows();
    auto info = std::make_shared<TensorInfo<K>>(TensorInfo<K>{m, n, std::move(q.proj), std::move(q.sect)});
    return Bimodule<K>::trusted(m.left(), n.right(), d, std::move(l), std::move(r), info);
  });
}

template <class K>
const TensorInfo<K>& tensor_info(const Bimodule<K>& b) {
  if (!b.tensor()) throw Error(ErrorKind::Mismatch, "bimodule is not a constructed tensor product");
  return *b.tensor();
}

template <class K>
const HomInfo<K>& hom_info(const Bimodule<K>& b, HomSide side) {
  if (!b.hom() || b.hom()->side != side)
    throw Error(ErrorKind::Mismatch, side == HomSide::right ? "bimodule is not a constructed right hom"
                                                            : "bimodule is not a constructed left hom");
  return *b.hom();
}

/// N |> P = Hom_T(N, P) as an (R,S)-bimodule, for N: (S,T), P: (R,T).
template <class K>
Bimodule<K> hom_right(const Bimodule<K>& n, const Bimodule<K>& p) {
  if (!(n.right() == p.right())) throw Error(ErrorKind::Mismatch, "right hom needs a common right algebra");
  return detail::construction_cache<K>().get(n.weak(), p.weak(), 1, [&] {
    const Field f = n.field();
    const std::size_t nd = n.dim(), pd = p.dim(), amb = nd * pd;
    Mat<K> idN = Mat<K>::identity(f, nd), idP = Mat<K>::identity(f, pd);
    std::vector<Mat<K>> cons;
    for (std::size_t t = 0; t < n.right().dim(); ++t)
      cons.push_back(kron(idP, n.ract(t).transpose()) - kron(p.ract(t), idN));
    Mat<K> c = amb == 0 ? Mat<K>(f, 0, 0) : vstack(cons, f, amb);
    Mat<K> incl = subspace_with_inclusion(f, amb, c);
    Mat<K> linv = left_inverse(incl);
    std::vector<Mat<K>> l, r;
    for (std::size_t i = 0; i < p.left().dim(); ++i) l.push_back(linv * kron(p.lact(i), idN) * incl);
    for (std::size_t i = 0; i < n.left().dim(); ++i) r.push_back(linv * kron(idP, n.lact(i).transpose()) * incl);
    const std::size_t d = incl.cols();
    auto info = std::make_shared<HomInfo<K>>(HomInfo<K>{HomSide::right, n, p, std::move(incl), std::move(linv)});
    return Bimodule<K>::trusted(p.left(), n.left(), d, std::move(l), std::move(r), nullptr, info);
  });
}

/// P <| M = Hom_R(M, P) as an (S,T)-bimodule, for M: (R,S), P: (R,T).
template <class K>
Bimodule<K> hom_left(const Bimodule<K>& p, const Bimodule<K>& m) {
  if (!(m.left() == p.left())) throw Error(ErrorKind::Mismatch, "left hom needs a common left algebra");
  return detail::construction_cache<K>().get(p.weak(), m.weak(), 2, [&] {
    const Field f = m.field();
    const std::size_t md = m.dim(), pd = p.dim(), amb = md * pd;
    Mat<K> idM = Mat<K>::identity(f, md), idP = Mat<K>::identity(f, pd);
    std::vector<Mat<K>> cons;
    for (std::size_t r = 0; r < m.left().dim(); ++r)
      cons.push_back(kron(idP, m.lact(r).transpose()) - kron(p.lact(r), idM));
    Mat<K> c = amb == 0 ? Mat<K>(f, 0, 0) : vstack(cons, f, amb);
    Mat<K> incl = subspace_with_inclusion(f, amb, c);
    Mat<K> linv = left_inverse(incl);
    std::vector<Mat<K>> l, r;
    for (std::size_t i = 0; i < m.right().dim(); ++i) l.push_back(linv * kron(idP, m.ract(i).transpose()) * incl);
    for (std::size_t i = 0; i < p.right().dim(); ++i) r.push_back(linv * kron(p.ract(i), idM) * incl);
    const std::size_t d = incl.cols();
    auto info = std::make_shared<HomInfo<K>>(HomInfo<K>{HomSide::left, m, p, std::move(incl), std::move(linv)});
    return Bimodule<K>::trusted(m.right(), p.right(), d, std::move(l), std::move(r), nullptr, info);
  });
}

/// The k-linear map (target.dim x source.dim) named by hom coordinate x.
template <class K>
Mat<K> hom_element(const HomInfo<K>& h, const Mat<K>& x) {
  return Mat<K>::unvec(h.incl * x, h.target.dim(), h.source.dim());
}

template <class K>
Mat<K> hom_element(const HomInfo<K>& h, std::size_t i) {
  return Mat<K>::unvec(h.incl.col(i), h.target.dim(), h.source.dim());
}

/// Hom coordinates of a k-linear map lying in the hom space.
template <class K>
Mat<K> hom_coords(const HomInfo<K>& h, const Mat<K>& phi) {
  return h.linv * phi.vec();
}

template <class K>
TwoCell<K> tensor_map(const TwoCell<K>& f, const TwoCell<K>& g) {
  Bimodule<K> s = tensor_over(f.src(), g.src()), d = tensor_over(f.dst(), g.dst());
  return TwoCell<K>(s, d, tensor_info(d).proj * kron(f.map(), g.map()) * tensor_info(s).sect);
}

// ---------------------------------------------------------------------------
// Reassociation of iterated tensor products

namespace detail {

template <class K>
bool leaf_match(const Bimodule<K>& b, const std::vector<Bimodule<K>>& leaves, std::size_t pos) {
  return pos < leaves.size() && b.same_as(leaves[pos]);
}

// Map from b into the flat Kronecker product of the leaves.
template <class K>
Mat<K> lift(const Bimodule<K>& b, const std::vector<Bimodule<K>>& leaves, std::size_t& pos) {
  if (leaf_match(b, leaves, pos)) {
    ++pos;
    return Mat<K>::identity(b.field(), b.dim());
  }
  if (b.tensor()) {
    const auto& t = *b.tensor();
    Mat<K> l = lift(t.lhs, leaves, pos);
    Mat<K> r = lift(t.rhs, leaves, pos);
    return kron(l, r) * t.sect;
  }
  if (pos < leaves.size() && b == leaves[pos]) {
    ++pos;
    return Mat<K>::identity(b.field(), b.dim());
  }
  throw Error(ErrorKind::Mismatch, "tensor tree does not match the leaf sequence");
}

template <class K>
Mat<K> lower(const Bimodule<K>& b, const std::vector<Bimodule<K>>& leaves, std::size_t& pos) {
  if (leaf_match(b, leaves, pos)) {
    ++pos;
    return Mat<K>::identity(b.field(), b.dim());
  }
  if (b.tensor()) {
    const auto& t = *b.tensor();
    Mat<K> l = lower(t.lhs, leaves, pos);
    Mat<K> r = lower(t.rhs, leaves, pos);
    return t.proj * kron(l, r);
  }
  if (pos < leaves.size() && b == leaves[pos]) {
    ++pos;
    return Mat<K>::identity(b.field(), b.dim());
  }
  throw Error(ErrorKind::Mismatch, "tensor tree does not match the leaf sequence");
}

}  // namespace detail

/// Canonical isomorphism between two bracketings x, y of the same sequence
/// of leaves.
template <class K>
TwoCell<K> reassoc(const Bimodule<K>& x, const Bimodule<K>& y, const std::vector<Bimodule<K>>& leaves) {
  std::size_t p1 = 0, p2 = 0;
  Mat<K> up = detail::lift(x, leaves, p1);
  Mat<K> down = detail::lower(y, leaves, p2);
  if (p1 != leaves.size() || p2 != leaves.size())
    throw Error(ErrorKind::Mismatch, "bracketing does not use every leaf");
  return TwoCell<K>(x, y, down * up);
}

/// Left-nested product ((b0 (.) b1) (.) b2) ...
template <class K>
Bimodule<K> tensor_chain(const std::vector<Bimodule<K>>& bs) {
  if (bs.empty()) throw Error(ErrorKind::Mismatch, "empty tensor chain");
  Bimodule<K> acc = bs.front();
  for (std::size_t i = 1; i < bs.size(); ++i) acc = tensor_over(acc, bs[i]);
  return acc;
}

/// f0 (.) f1 (.) ... on left-nested chains.
template <class K>
TwoCell<K> tensor_map_chain(const std::vector<TwoCell<K>>& fs) {
  if (fs.empty()) throw Error(ErrorKind::Mismatch, "empty tensor chain");
  TwoCell<K> acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = tensor_map(acc, fs[i]);
  return acc;
}

/// a: (M (.) N) (.) P -> M (.) (N (.) P)
template <class K>
TwoCell<K> assoc(const Bimodule<K>& m, const Bimodule<K>& n, const Bimodule<K>& p) {
  return reassoc(tensor_over(tensor_over(m, n), p), tensor_over(m, tensor_over(n, p)), {m, n, p});
}

template <class K>
TwoCell<K> assoc_inv(const Bimodule<K>& m, const Bimodule<K>& n, const Bimodule<K>& p) {
  return reassoc(tensor_over(m, tensor_over(n, p)), tensor_over(tensor_over(m, n), p), {m, n, p});
}

/// l: U_R (.) M -> M, r (x) m -> r m
template <class K>
TwoCell<K> unitor_l(const Bimodule<K>& m) {
  Bimodule<K> u = unit_bimodule(m.left());
  Bimodule<K> src = tensor_over(u, m);
  Mat<K> flat = hstack(m.lacts(), m.field(), m.dim());
  return TwoCell<K>(src, m, flat * tensor_info(src).sect);
}

template <class K>
TwoCell<K> unitor_l_inv(const Bimodule<K>& m) {
  Bimodule<K> u = unit_bimodule(m.left());
  Bimodule<K> dst = tensor_over(u, m);
  return TwoCell<K>(m, dst, tensor_info(dst).proj * kron(m.left().unit(), Mat<K>::identity(m.field(), m.dim())));
}

/// r: M (.) U_S -> M, m (x) s -> m s
template <class K>
TwoCell<K> unitor_r(const Bimodule<K>& m) {
  Bimodule<K> u = unit_bimodule(m.right());
  Bimodule<K> src = tensor_over(m, u);
  const std::size_t ds = m.right().dim();
  Mat<K> flat(m.field(), m.dim(), m.dim() * ds);
  for (std::size_t b = 0; b < m.dim(); ++b)
    for (std::size_t a = 0; a < ds; ++a)
      for (std::size_t i = 0; i < m.dim(); ++i) flat(i, b * ds + a) = m.ract(a)(i, b);
  return TwoCell<K>(src, m, flat * tensor_info(src).sect);
}

template <class K>
TwoCell<K> unitor_r_inv(const Bimodule<K>& m) {
  Bimodule<K> u = unit_bimodule(m.right());
  Bimodule<K> dst = tensor_over(m, u);
  return TwoCell<K>(m, dst, tensor_info(dst).proj * kron(Mat<K>::identity(m.field(), m.dim()), m.right().unit()));
}

// ---------------------------------------------------------------------------
// Internal-hom structure

namespace detail {

// Matrix whose k-th column is make(k), for a map out of a space of dim d.
template <class K, class F>
Mat<K> columns(Field f, std::size_t rows, std::size_t d, F&& make) {
  Mat<K> out(f, rows, d);
  for (std::size_t k = 0; k < d; ++k) out.set_block(0, k, make(k));
  return out;
}

}  // namespace detail

/// t: (M (.) N) |> P -> M |> (N |> P), phi -> (m -> (n -> phi[m (x) n]))
template <class K>
TwoCell<K> t_right(const Bimodule<K>& m, const Bimodule<K>& n, const Bimodule<K>& p) {
  Bimodule<K> mn = tensor_over(m, n);
  Bimodule<K> src = hom_right(mn, p);
  Bimodule<K> np = hom_right(n, p);
  Bimodule<K> dst = hom_right(m, np);
  const auto& hs = hom_info(src, HomSide::right);
  const auto& hnp = hom_info(np, HomSide::right);
  const auto& hd = hom_info(dst, HomSide::right);
  const Mat<K>& proj = tensor_info(mn).proj;
  const std::size_t nd = n.dim();
  Mat<K> map = detail::columns<K>(m.field(), dst.dim(), src.dim(), [&](std::size_t k) {
    Mat<K> phiproj = hom_element(hs, k) * proj;
    Mat<K> psi(m.field(), np.dim(), m.dim());
    for (std::size_t a = 0; a < m.dim(); ++a) psi.set_block(0, a, hom_coords(hnp, phiproj.block(0, a * nd, p.dim(), nd)));
    return hom_coords(hd, psi);
  });
  return TwoCell<K>(src, dst, map);
}

template <class K>
TwoCell<K> t_right_inv(const Bimodule<K>& m, const Bimodule<K>& n, const Bimodule<K>& p) {
  return t_right(m, n, p).inverse();
}

/// t: P <| (M (.) N) -> (P <| M) <| N, psi -> (n -> (m -> psi[m (x) n]))
template <class K>
TwoCell<K> t_left(const Bimodule<K>& m, const Bimodule<K>& n, const Bimodule<K>& p) {
  Bimodule<K> mn = tensor_over(m, n);
  Bimodule<K> src = hom_left(p, mn);
  Bimodule<K> pm = hom_left(p, m);
  Bimodule<K> dst = hom_left(pm, n);
  const auto& hs = hom_info(src, HomSide::left);
  const auto& hpm = hom_info(pm, HomSide::left);
  const auto& hd = hom_info(dst, HomSide::left);
  const Mat<K>& proj = tensor_info(mn).proj;
  const std::size_t nd = n.dim(), md = m.dim();
  Mat<K> map = detail::columns<K>(m.field(), dst.dim(), src.dim(), [&](std::size_t k) {
    Mat<K> psiproj = hom_element(hs, k) * proj;
    Mat<K> out(m.field(), pm.dim(), nd);
    for (std::size_t j = 0; j < nd; ++j) {
      Mat<K> phi(m.field(), p.dim(), md);
      for (std::size_t a = 0; a < md; ++a) phi.set_block(0, a, psiproj.col(a * nd + j));
      out.set_block(0, j, hom_coords(hpm, phi));
    }
    return hom_coords(hd, out);
  });
  return TwoCell<K>(src, dst, map);
}

template <class K>
TwoCell<K> t_left_inv(const Bimodule<K>& m, const Bimodule<K>& n, const Bimodule<K>& p) {
  return t_left(m, n, p).inverse();
}

/// a: (N |> P) <| M -> N |> (P <| M), Psi -> (n -> (m -> Psi(m)(n)))
template <class K>
TwoCell<K> hom_assoc(const Bimodule<K>& n, const Bimodule<K>& p, const Bimodule<K>& m) {
  Bimodule<K> np = hom_right(n, p);
  Bimodule<K> src = hom_left(np, m);
  Bimodule<K> pm = hom_left(p, m);
  Bimodule<K> dst = hom_right(n, pm);
  const auto& hs = hom_info(src, HomSide::left);
  const auto& hnp = hom_info(np, HomSide::right);
  const auto& hpm = hom_info(pm, HomSide::left);
  const auto& hd = hom_info(dst, HomSide::right);
  const Field f = m.field();
  Mat<K> map = detail::columns<K>(f, dst.dim(), src.dim(), [&](std::size_t k) {
    Mat<K> big = hom_element(hs, k);  // np.dim x m.dim
    std::vector<Mat<K>> at_m;
    for (std::size_t a = 0; a < m.dim(); ++a) at_m.push_back(hom_element(hnp, big.col(a)));  // p x n
    Mat<K> out(f, pm.dim(), n.dim());
    for (std::size_t j = 0; j < n.dim(); ++j) {
      Mat<K> phi(f, p.dim(), m.dim());
      for (std::size_t a = 0; a < m.dim(); ++a) phi.set_block(0, a, at_m[a].col(j));
      out.set_block(0, j, hom_coords(hpm, phi));
    }
    return hom_coords(hd, out);
  });
  return TwoCell<K>(src, dst, map);
}

template <class K>
TwoCell<K> hom_assoc_inv(const Bimodule<K>& n, const Bimodule<K>& p, const Bimodule<K>& m) {
  return hom_assoc(n, p, m).inverse();
}

/// lbar: M -> M <| U_R, m -> (r -> r m)
template <class K>
TwoCell<K> lbar(const Bimodule<K>& m) {
  Bimodule<K> dst = hom_left(m, unit_bimodule(m.left()));
  const auto& h = hom_info(dst, HomSide::left);
  Mat<K> map = detail::columns<K>(m.field(), dst.dim(), m.dim(), [&](std::size_t k) {
    Mat<K> phi(m.field(), m.dim(), m.left().dim());
    for (std::size_t a = 0; a < m.left().dim(); ++a) phi.set_block(0, a, m.lact(a).col(k));
    return hom_coords(h, phi);
  });
  return TwoCell<K>(m, dst, map);
}

template <class K>
TwoCell<K> lbar_inv(const Bimodule<K>& m) {
  return lbar(m).inverse();
}

/// rbar: M -> U_S |> M, m -> (s -> m s)
template <class K>
TwoCell<K> rbar(const Bimodule<K>& m) {
  Bimodule<K> dst = hom_right(unit_bimodule(m.right()), m);
  const auto& h = hom_info(dst, HomSide::right);
  Mat<K> map = detail::columns<K>(m.field(), dst.dim(), m.dim(), [&](std::size_t k) {
    Mat<K> phi(m.field(), m.dim(), m.right().dim());
    for (std::size_t a = 0; a < m.right().dim(); ++a) phi.set_block(0, a, m.ract(a).col(k));
    return hom_coords(h, phi);
  });
  return TwoCell<K>(m, dst, map);
}

template <class K>
TwoCell<K> rbar_inv(const Bimodule<K>& m) {
  return rbar(m).inverse();
}

/// ev: (N |> P) (.) N -> P, phi (x) n -> phi(n)
template <class K>
TwoCell<K> ev_right(const Bimodule<K>& n, const Bimodule<K>& p) {
  Bimodule<K> np = hom_right(n, p);
  Bimodule<K> src = tensor_over(np, n);
  const auto& h = hom_info(np, HomSide::right);
  Mat<K> flat(n.field(), p.dim(), np.dim() * n.dim());
  for (std::size_t x = 0; x < np.dim(); ++x) flat.set_block(0, x * n.dim(), hom_element(h, x));
  return TwoCell<K>(src, p, flat * tensor_info(src).sect);
}

/// ev: M (.) (P <| M) -> P, m (x) psi -> psi(m)
template <class K>
TwoCell<K> ev_left(const Bimodule<K>& m, const Bimodule<K>& p) {
  Bimodule<K> pm = hom_left(p, m);
  Bimodule<K> src = tensor_over(m, pm);
  const auto& h = hom_info(pm, HomSide::left);
  const std::size_t d = pm.dim();
  Mat<K> flat(m.field(), p.dim(), m.dim() * d);
  for (std::size_t x = 0; x < d; ++x) {
    Mat<K> psi = hom_element(h, x);
    for (std::size_t a = 0; a < m.dim(); ++a) flat.set_block(0, a * d + x, psi.col(a));
  }
  return TwoCell<K>(src, p, flat * tensor_info(src).sect);
}

/// coev: M -> N |> (M (.) N), m -> (n -> [m (x) n])
template <class K>
TwoCell<K> coev_right(const Bimodule<K>& m, const Bimodule<K>& n) {
  Bimodule<K> mn = tensor_over(m, n);
  Bimodule<K> dst = hom_right(n, mn);
  const auto& h = hom_info(dst, HomSide::right);
  const Mat<K>& proj = tensor_info(mn).proj;
  Mat<K> map = detail::columns<K>(m.field(), dst.dim(), m.dim(), [&](std::size_t a) {
    return hom_coords(h, proj.block(0, a * n.dim(), mn.dim(), n.dim()));
  });
  return TwoCell<K>(m, dst, map);
}

/// coev: N -> (M (.) N) <| M, n -> (m -> [m (x) n])
template <class K>
TwoCell<K> coev_left(const Bimodule<K>& m, const Bimodule<K>& n) {
  Bimodule<K> mn = tensor_over(m, n);
  Bimodule<K> dst = hom_left(mn, m);
  const auto& h = hom_info(dst, HomSide::left);
  const Mat<K>& proj = tensor_info(mn).proj;
  Mat<K> map = detail::columns<K>(m.field(), dst.dim(), n.dim(), [&](std::size_t j) {
    Mat<K> phi(m.field(), mn.dim(), m.dim());
    for (std::size_t a = 0; a < m.dim(); ++a) phi.set_block(0, a, proj.col(a * n.dim() + j));
    return hom_coords(h, phi);
  });
  return TwoCell<K>(n, dst, map);
}

/// f_*: N |> P -> N |> P' for f: P -> P'
template <class K>
TwoCell<K> post_right(const Bimodule<K>& n, const TwoCell<K>& f) {
  Bimodule<K> s = hom_right(n, f.src()), d = hom_right(n, f.dst());
  const auto& hs = hom_info(s, HomSide::right);
  const auto& hd = hom_info(d, HomSide::right);
  return TwoCell<K>(s, d, hd.linv * kron(f.map(), Mat<K>::identity(n.field(), n.dim())) * hs.incl);
}

/// g^*: N |> P -> N' |> P for g: N' -> N
template <class K>
TwoCell<K> pre_right(const TwoCell<K>& g, const Bimodule<K>& p) {
  Bimodule<K> s = hom_right(g.dst(), p), d = hom_right(g.src(), p);
  const auto& hs = hom_info(s, HomSide::right);
  const auto& hd = hom_info(d, HomSide::right);
  return TwoCell<K>(s, d, hd.linv * kron(Mat<K>::identity(p.field(), p.dim()), g.map().transpose()) * hs.incl);
}

/// f_*: P <| M -> P' <| M for f: P -> P'
template <class K>
TwoCell<K> post_left(const TwoCell<K>& f, const Bimodule<K>& m) {
  Bimodule<K> s = hom_left(f.src(), m), d = hom_left(f.dst(), m);
  const auto& hs = hom_info(s, HomSide::left);
  const auto& hd = hom_info(d, HomSide::left);
  return TwoCell<K>(s, d, hd.linv * kron(f.map(), Mat<K>::identity(m.field(), m.dim())) * hs.incl);
}

/// g^*: P <| M -> P <| M' for g: M' -> M
template <class K>
TwoCell<K> pre_left(const Bimodule<K>& p, const TwoCell<K>& g) {
  Bimodule<K> s = hom_left(p, g.dst()), d = hom_left(p, g.src());
  const auto& hs = hom_info(s, HomSide::left);
  const auto& hd = hom_info(d, HomSide::left);
  return TwoCell<K>(s, d, hd.linv * kron(Mat<K>::identity(p.field(), p.dim()), g.map().transpose()) * hs.incl);
}

/// mu: M (.) (P |> N) -> P |> (M (.) N), m (x) phi -> (p -> [m (x) phi(p)])
template <class K>
TwoCell<K> mu(const Bimodule<K>& m, const Bimodule<K>& p, const Bimodule<K>& n) {
  Bimodule<K> pn = hom_right(p, n);
  Bimodule<K> src = tensor_over(m, pn);
  Bimodule<K> mn = tensor_over(m, n);
  Bimodule<K> dst = hom_right(p, mn);
  const auto& hpn = hom_info(pn, HomSide::right);
  const auto& hd = hom_info(dst, HomSide::right);
  const Mat<K>& proj = tensor_info(mn).proj;
  const std::size_t d = pn.dim();
  Mat<K> flat(m.field(), dst.dim(), m.dim() * d);
  for (std::size_t a = 0; a < m.dim(); ++a) {
    Mat<K> pa = proj.block(0, a * n.dim(), mn.dim(), n.dim());
    for (std::size_t x = 0; x < d; ++x) flat.set_block(0, a * d + x, hom_coords(hd, pa * hom_element(hpn, x)));
  }
  return TwoCell<K>(src, dst, flat * tensor_info(src).sect);
}

/// nu: (M <| P) (.) N -> (M (.) N) <| P, psi (x) n -> (p -> [psi(p) (x) n])
template <class K>
TwoCell<K> nu(const Bimodule<K>& m, const Bimodule<K>& p, const Bimodule<K>& n) {
  Bimodule<K> mp = hom_left(m, p);
  Bimodule<K> src = tensor_over(mp, n);
  Bimodule<K> mn = tensor_over(m, n);
  Bimodule<K> dst = hom_left(mn, p);
  const auto& hmp = hom_info(mp, HomSide::left);
  const auto& hd = hom_info(dst, HomSide::left);
  const Mat<K>& proj = tensor_info(mn).proj;
  Mat<K> flat(m.field(), dst.dim(), mp.dim() * n.dim());
  for (std::size_t b = 0; b < n.dim(); ++b) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < m.dim(); ++i) cols.push_back(i * n.dim() + b);
    Mat<K> pb = proj.select_cols(cols);
    for (std::size_t x = 0; x < mp.dim(); ++x)
      flat.set_block(0, x * n.dim() + b, hom_coords(hd, pb * hom_element(hmp, x)));
  }
  return TwoCell<K>(src, dst, flat * tensor_info(src).sect);
}

/// Transpose of g: X (.) A -> Y, as X -> A |> Y.
template <class K>
TwoCell<K> transpose_right(const TwoCell<K>& g) {
  const auto& t = tensor_info(g.src());
  const Bimodule<K>& x = t.lhs;
  const Bimodule<K>& a = t.rhs;
  Bimodule<K> dst = hom_right(a, g.dst());
  const auto& h = hom_info(dst, HomSide::right);
  Mat<K> gp = g.map() * t.proj;
  Mat<K> map = detail::columns<K>(x.field(), dst.dim(), x.dim(), [&](std::size_t z) {
    return hom_coords(h, gp.block(0, z * a.dim(), g.dst().dim(), a.dim()));
  });
  return TwoCell<K>(x, dst, map);
}

/// Transpose of g: A (.) X -> Y, as X -> Y <| A.
template <class K>
TwoCell<K> transpose_left(const TwoCell<K>& g) {
  const auto& t = tensor_info(g.src());
  const Bimodule<K>& a = t.lhs;
  const Bimodule<K>& x = t.rhs;
  Bimodule<K> dst = hom_left(g.dst(), a);
  const auto& h = hom_info(dst, HomSide::left);
  Mat<K> gp = g.map() * t.proj;
  Mat<K> map = detail::columns<K>(x.field(), dst.dim(), x.dim(), [&](std::size_t z) {
    Mat<K> phi(x.field(), g.dst().dim(), a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) phi.set_block(0, i, gp.col(i * x.dim() + z));
    return hom_coords(h, phi);
  });
  return TwoCell<K>(x, dst, map);
}

/// Inverse of transpose_right: h: X -> A |> Y gives X (.) A -> Y.
template <class K>
TwoCell<K> untranspose_right(const TwoCell<K>& h, const Bimodule<K>& a) {
  const auto& hi = hom_info(h.dst(), HomSide::right);
  return ev_right(a, hi.target) * tensor_map(h, TwoCell<K>::identity(a));
}

/// Inverse of transpose_left: h: X -> Y <| A gives A (.) X -> Y.
template <class K>
TwoCell<K> untranspose_left(const TwoCell<K>& h, const Bimodule<K>& a) {
  const auto& hi = hom_info(h.dst(), HomSide::left);
  return ev_left(a, hi.target) * tensor_map(TwoCell<K>::identity(a), h);
}

/// Flip A (.) B -> B (.) A, a (x) b -> b (x) a. Only a bimodule map when both
/// are symmetric bimodules over one commutative algebra.
template <class K>
TwoCell<K> flip(const Bimodule<K>& a, const Bimodule<K>& b) {
  Bimodule<K> s = tensor_over(a, b), d = tensor_over(b, a);
  return TwoCell<K>(s, d, tensor_info(d).proj * flip_matrix<K>(a.field(), a.dim(), b.dim()) * tensor_info(s).sect);
}

// ---------------------------------------------------------------------------
// Spaces of 2-cells

/// Basis of all bimodule maps src -> dst, as columns of vec(Phi) (row-major).
template <class K>
Mat<K> two_cell_space(const Bimodule<K>& src, const Bimodule<K>& dst) {
  const Field f = src.field();
  const std::size_t s = src.dim(), d = dst.dim(), amb = s * d;
  Mat<K> idS = Mat<K>::identity(f, s), idD = Mat<K>::identity(f, d);
  std::vector<Mat<K>> cons;
  for (std::size_t i = 0; i < src.left().dim(); ++i)
    cons.push_back(kron(idD, src.lact(i).transpose()) - kron(dst.lact(i), idS));
  for (std::size_t i = 0; i < src.right().dim(); ++i)
    cons.push_back(kron(idD, src.ract(i).transpose()) - kron(dst.ract(i), idS));
  Mat<K> c = amb == 0 ? Mat<K>(f, 0, 0) : vstack(cons, f, amb);
  return subspace_with_inclusion(f, amb, c);
}

/// Seeded pseudo-random bimodule map: entries drawn from {-2..2}, then
/// projected onto the space of bimodule maps.
template <class K>
TwoCell<K> random_two_cell(const Bimodule<K>& src, const Bimodule<K>& dst, std::mt19937_64& rng) {
  if (!src.parallel_to(dst)) throw Error(ErrorKind::Mismatch, "random 2-cell between non-parallel bimodules");
  const Field f = src.field();
  Mat<K> basis = two_cell_space(src, dst);
  std::uniform_int_distribution<int> dist(-2, 2);
  Mat<K> raw(f, src.dim() * dst.dim(), 1);
  for (std::size_t i = 0; i < raw.rows(); ++i) raw(i, 0) = scalar<K>(f, dist(rng));
  Mat<K> v = basis.cols() == 0 ? Mat<K>(f, raw.rows(), 1) : basis * (left_inverse(basis) * raw);
  return TwoCell<K>(src, dst, Mat<K>::unvec(v, dst.dim(), src.dim()));
}

/// Bimodule obtained by restricting the actions of b along phi_l on the left
/// and phi_r on the right.
template <class K>
Bimodule<K> restrict_scalars(const Bimodule<K>& b, const AlgebraMorphism<K>* phi_l, const AlgebraMorphism<K>* phi_r) {
  std::vector<Mat<K>> l = phi_l ? pull_actions(*phi_l, b.lacts()) : b.lacts();
  std::vector<Mat<K>> r = phi_r ? pull_actions(*phi_r, b.racts()) : b.racts();
  return Bimodule<K>::trusted(phi_l ? phi_l->src : b.left(), phi_r ? phi_r->src : b.right(), b.dim(), std::move(l),
                              std::move(r));
}

/// k^n viewed as a (k,k)-bimodule.
template <class K>
Bimodule<K> vector_space(const Algebra<K>& k, std::size_t n) {
  Mat<K> id = Mat<K>::identity(k.field(), n);
  return Bimodule<K>::trusted(k, k, n, {id}, {id});
}

}  // namespace bicotrace
