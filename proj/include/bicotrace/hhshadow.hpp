#pragma once

#include <vector>

#include "bicotrace/bimodule.hpp"

namespace bicotrace {

/// HH_0(R, M) = M / span{r m - m r}.
template <class K>
struct ShadowValue {
  Bimodule<K> source;
  std::size_t dim = 0;
  Mat<K> proj;  // M -> HH_0
  Mat<K> sect;  // HH_0 -> M
};

/// HH^0(R, M) = {m : r m = m r}.
template <class K>
struct CoshadowValue {
  Bimodule<K> source;
  std::size_t dim = 0;
  Mat<K> incl;  // HH^0 -> M
  Mat<K> linv;
};

namespace detail {

template <class K>
void require_endo(const Bimodule<K>& m) {
  if (!(m.left() == m.right()))
    throw Error(ErrorKind::NotEndoBimodule, "needs a bimodule whose left and right algebras agree");
}

template <class K>
IdentityCache<ShadowValue<K>>& shadow_cache() {
  static IdentityCache<ShadowValue<K>> cache;
  return cache;
}

template <class K>
IdentityCache<CoshadowValue<K>>& coshadow_cache() {
  static IdentityCache<CoshadowValue<K>> cache;
  return cache;
}

template <class K>
Mat<K> commutators(const Bimodule<K>& m) {
  std::vector<Mat<K>> parts;
  for (std::size_t i = 0; i < m.left().dim(); ++i) parts.push_back(m.lact(i) - m.ract(i));
  return hstack(parts, m.field(), m.dim());
}

}  // namespace detail

template <class K>
ShadowValue<K> hh0(const Bimodule<K>& m) {
  detail::require_endo(m);
  return detail::shadow_cache<K>().get(m.weak(), m.weak(), 0, [&] {
    auto q = quotient_with_section(m.field(), m.dim(), detail::commutators(m));
    const std::size_t d = q.proj.rows();
    return ShadowValue<K>{m, d, std::move(q.proj), std::move(q.sect)};
  });
}

/// Induced map HH_0(src) -> HH_0(dst).
template <class K>
Mat<K> hh0_map(const TwoCell<K>& f) {
  auto s = hh0(f.src()), d = hh0(f.dst());
  if (!(d.proj * f.map() * detail::commutators(f.src())).is_zero())
    throw Error(ErrorKind::NotBimoduleMap, "map does not descend to HH_0");
  return d.proj * f.map() * s.sect;
}

template <class K>
CoshadowValue<K> cohh0(const Bimodule<K>& m) {
  detail::require_endo(m);
  return detail::coshadow_cache<K>().get(m.weak(), m.weak(), 0, [&] {
    std::vector<Mat<K>> rows;
    for (std::size_t i = 0; i < m.left().dim(); ++i) rows.push_back(m.lact(i) - m.ract(i));
    Mat<K> cons = m.dim() == 0 ? Mat<K>(m.field(), 0, 0) : vstack(rows, m.field(), m.dim());
    Mat<K> incl = subspace_with_inclusion(m.field(), m.dim(), cons);
    Mat<K> linv = left_inverse(incl);
    const std::size_t d = incl.cols();
    return CoshadowValue<K>{m, d, std::move(incl), std::move(linv)};
  });
}

/// Induced map HH^0(src) -> HH^0(dst).
template <class K>
Mat<K> cohh0_map(const TwoCell<K>& f) {
  auto s = cohh0(f.src()), d = cohh0(f.dst());
  Mat<K> img = f.map() * s.incl;
  Mat<K> coords = d.linv * img;
  if (!(d.incl * coords == img)) throw Error(ErrorKind::NotBimoduleMap, "map does not restrict to HH^0");
  return coords;
}

/// theta: HH_0(M (.) N) -> HH_0(N (.) M), induced by m (x) n -> n (x) m.
template <class K>
Mat<K> shadow_theta(const Bimodule<K>& m, const Bimodule<K>& n) {
  Bimodule<K> mn = tensor_over(m, n), nm = tensor_over(n, m);
  return hh0(nm).proj * tensor_info(nm).proj * flip_matrix<K>(m.field(), m.dim(), n.dim()) * tensor_info(mn).sect *
         hh0(mn).sect;
}

namespace detail {

// HH^0 of a hom bimodule, embedded into all k-linear maps source -> target.
template <class K>
Mat<K> coshadow_in_maps(const Bimodule<K>& hom) {
  const HomInfo<K>* h = hom.hom();
  return h->incl * cohh0(hom).incl;
}

}  // namespace detail

/// theta: HH^0(M |> N) -> HH^0(N <| M). Both sides are the bimodule maps
/// M -> N inside Hom_k(M, N).
template <class K>
Mat<K> coshadow_theta(const Bimodule<K>& m, const Bimodule<K>& n) {
  if (!m.parallel_to(n)) throw Error(ErrorKind::Mismatch, "coshadow theta needs parallel bimodules");
  Mat<K> j1 = detail::coshadow_in_maps(hom_right(m, n));
  Mat<K> j2 = detail::coshadow_in_maps(hom_left(n, m));
  if (j1.cols() != j2.cols()) throw Error(ErrorKind::NotInvertible, "coshadow sides have different dimensions");
  if (j2.cols() == 0) return Mat<K>(m.field(), 0, 0);
  Mat<K> out = left_inverse(j2) * j1;
  if (!(j2 * out == j1)) throw Error(ErrorKind::Mismatch, "coshadow sides are different subspaces");
  return out;
}

/// HH^0(N <| M) -> HH^0(M |> N).
template <class K>
Mat<K> coshadow_theta_inv(const Bimodule<K>& m, const Bimodule<K>& n) {
  return inverse(coshadow_theta(m, n));
}

/// The categorical-trace coshadow: all 2-cells U_R -> M.
template <class K>
struct GkValue {
  Bimodule<K> source;
  std::size_t dim = 0;
  Mat<K> basis;  // columns are vec(phi), phi: U_R -> M
  Mat<K> linv;
  Mat<K> comparison;  // to HH^0 coordinates, phi -> phi(1)
};

template <class K>
GkValue<K> gk_coshadow(const Bimodule<K>& m) {
  detail::require_endo(m);
  Bimodule<K> u = unit_bimodule(m.left());
  Mat<K> basis = two_cell_space(u, m);
  auto c = cohh0(m);
  Mat<K> cmp(m.field(), c.dim, basis.cols());
  for (std::size_t k = 0; k < basis.cols(); ++k)
    cmp.set_block(0, k, c.linv * (Mat<K>::unvec(basis.col(k), m.dim(), u.dim()) * m.left().unit()));
  if (!is_invertible(cmp)) throw Error(ErrorKind::NotInvertible, "categorical trace is not comparable to HH^0");
  Mat<K> linv = basis.cols() == 0 ? Mat<K>(m.field(), 0, basis.rows()) : left_inverse(basis);
  return GkValue<K>{m, basis.cols(), basis, std::move(linv), std::move(cmp)};
}

/// Post-composition with f on categorical-trace values.
template <class K>
Mat<K> gk_map(const TwoCell<K>& f) {
  auto s = gk_coshadow(f.src()), d = gk_coshadow(f.dst());
  const std::size_t r = f.src().left().dim();
  Mat<K> out(f.map().field(), d.dim, s.dim);
  for (std::size_t k = 0; k < s.dim; ++k)
    out.set_block(0, k, d.linv * (f.map() * Mat<K>::unvec(s.basis.col(k), f.src().dim(), r)).vec());
  return out;
}

/// rho: HH^0(M) (x) HH_0(N) -> HH_0(M (.) N), m (x) [n] -> [m (x) n]. The
/// domain basis is ordered with the HH^0 factor major.
template <class K>
Mat<K> pairing_rho(const Bimodule<K>& m, const Bimodule<K>& n) {
  if (!(m.right() == n.left())) throw Error(ErrorKind::Mismatch, "pairing needs composable bimodules");
  auto c = cohh0(m);
  auto s = hh0(n);
  Bimodule<K> mn = tensor_over(m, n);
  auto t = hh0(mn);
  Mat<K> out(m.field(), t.dim, c.dim * s.dim);
  Mat<K> pp = t.proj * tensor_info(mn).proj;
  for (std::size_t i = 0; i < c.dim; ++i)
    for (std::size_t j = 0; j < s.dim; ++j) out.set_block(0, i * s.dim + j, pp * kron(c.incl.col(i), s.sect.col(j)));
  return out;
}

}  // namespace bicotrace
