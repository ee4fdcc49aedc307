#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bicotrace/bimodule.hpp"

namespace bicotrace {

/// (M, M*) with eta: U_R -> M (.) M* and eps: M* (.) M -> U_S.
template <class K>
struct DualPair {
  Bimodule<K> M;
  Bimodule<K> Mstar;
  TwoCell<K> eta;
  TwoCell<K> eps;
};

template <class K>
TwoCell<K> id(const Bimodule<K>& b) {
  return TwoCell<K>::identity(b);
}

/// M -> U (.) M -> (M (.) M*) (.) M -> M (.) (M* (.) M) -> M (.) U -> M
template <class K>
TwoCell<K> triangle_one(const DualPair<K>& dp) {
  return unitor_r(dp.M) * tensor_map(id(dp.M), dp.eps) * assoc(dp.M, dp.Mstar, dp.M) * tensor_map(dp.eta, id(dp.M)) *
         unitor_l_inv(dp.M);
}

/// M* -> M* (.) U -> M* (.) (M (.) M*) -> (M* (.) M) (.) M* -> U (.) M* -> M*
template <class K>
TwoCell<K> triangle_two(const DualPair<K>& dp) {
  return unitor_l(dp.Mstar) * tensor_map(dp.eps, id(dp.Mstar)) * assoc_inv(dp.Mstar, dp.M, dp.Mstar) *
         tensor_map(id(dp.Mstar), dp.eta) * unitor_r_inv(dp.Mstar);
}

template <class K>
bool triangles_hold(const DualPair<K>& dp) {
  return triangle_one(dp).map().is_identity() && triangle_two(dp).map().is_identity();
}

template <class K>
void validate_pair(const DualPair<K>& dp) {
  if (!dp.eta.is_bimodule_map()) throw Error(ErrorKind::NotBimoduleMap, "coevaluation is not a bimodule map");
  if (!dp.eps.is_bimodule_map()) throw Error(ErrorKind::NotBimoduleMap, "evaluation is not a bimodule map");
  if (!triangle_one(dp).map().is_identity()) throw Error(ErrorKind::TriangleIdentity, "first triangle identity fails", {1});
  if (!triangle_two(dp).map().is_identity())
    throw Error(ErrorKind::TriangleIdentity, "second triangle identity fails", {2});
}

/// Builds a pair from explicit data and checks it.
template <class K>
DualPair<K> make_pair(Bimodule<K> m, Bimodule<K> mstar, TwoCell<K> eta, TwoCell<K> eps) {
  if (!(eta.src() == unit_bimodule(m.left())) || !(eta.dst() == tensor_over(m, mstar)))
    throw Error(ErrorKind::Mismatch, "coevaluation has the wrong source or target");
  if (!(eps.src() == tensor_over(mstar, m)) || !(eps.dst() == unit_bimodule(m.right())))
    throw Error(ErrorKind::Mismatch, "evaluation has the wrong source or target");
  Bimodule<K> u = unit_bimodule(m.left()), v = unit_bimodule(m.right());
  Bimodule<K> mm = tensor_over(m, mstar), msm = tensor_over(mstar, m);
  DualPair<K> dp{m, mstar, eta.retarget(u, mm), eps.retarget(msm, v)};
  validate_pair(dp);
  return dp;
}

/// M |> U_S, the right dual made from the internal hom.
template <class K>
Bimodule<K> canonical_dual(const Bimodule<K>& m) {
  return hom_right(m, unit_bimodule(m.right()));
}

/// The (R,R)-central elements of a bimodule with equal sides, as columns.
template <class K>
Mat<K> central_elements(const Bimodule<K>& b) {
  const Field f = b.field();
  std::vector<Mat<K>> cons;
  for (std::size_t i = 0; i < b.left().dim(); ++i) cons.push_back(b.lact(i) - b.ract(i));
  Mat<K> c = b.dim() == 0 ? Mat<K>(f, 0, 0) : vstack(cons, f, b.dim());
  return subspace_with_inclusion(f, b.dim(), c);
}

namespace detail {

// The 2-cell U_R -> B with 1 -> x, for x central.
template <class K>
Mat<K> map_from_unit(const Bimodule<K>& b, const Mat<K>& x) {
  Mat<K> out(b.field(), b.dim(), b.left().dim());
  for (std::size_t i = 0; i < b.left().dim(); ++i) out.set_block(0, i, b.lact(i) * x);
  return out;
}

}  // namespace detail

/// Looks for a coevaluation for M against its canonical dual. The first
/// triangle identity is linear in eta; absence of a solution means M is not
/// finitely generated projective on the right.
template <class K>
std::optional<DualPair<K>> solve_dual_pair(const Bimodule<K>& m) {
  const Field f = m.field();
  Bimodule<K> ms = canonical_dual(m);
  Bimodule<K> mm = tensor_over(m, ms);
  Bimodule<K> u = unit_bimodule(m.left());
  TwoCell<K> eps = ev_right(m, unit_bimodule(m.right()));
  Mat<K> centre = central_elements(mm);
  // triangle_one is affine in eta through a linear map; evaluate it on a basis
  DualPair<K> probe{m, ms, TwoCell<K>::zero(u, mm), eps};
  std::vector<Mat<K>> cols;
  for (std::size_t k = 0; k < centre.cols(); ++k) {
    probe.eta = TwoCell<K>(u, mm, detail::map_from_unit(mm, centre.col(k)));
    cols.push_back(triangle_one(probe).map().vec());
  }
  const std::size_t d2 = m.dim() * m.dim();
  Mat<K> system = cols.empty() ? Mat<K>(f, d2, 0) : hstack(cols, f, d2);
  auto sol = solve(system, Mat<K>::identity(f, m.dim()).vec());
  if (!sol) return std::nullopt;
  Mat<K> x = centre.cols() == 0 ? Mat<K>(f, mm.dim(), 1) : centre * sol->particular;
  DualPair<K> dp{m, ms, TwoCell<K>(u, mm, detail::map_from_unit(mm, x)), eps};
  if (!triangle_two(dp).map().is_identity())
    throw Error(ErrorKind::TriangleIdentity, "solved coevaluation fails the second triangle identity", {2});
  return dp;
}

/// (M (.) N, N* (.) M*) from pairs for M and N.
template <class K>
DualPair<K> compose_pairs(const DualPair<K>& d1, const DualPair<K>& d2) {
  const Bimodule<K>&m = d1.M, &ms = d1.Mstar, &n = d2.M, &ns = d2.Mstar;
  if (!(m.right() == n.left())) throw Error(ErrorKind::MismatchedMiddleAlgebra, "pairs are not composable");
  Bimodule<K> mn = tensor_over(m, n), nsms = tensor_over(ns, ms);
  // U -> M M* -> (M U) M* -> (M (N N*)) M* -> (M N)(N* M*)
  TwoCell<K> step = tensor_map(tensor_map(id(m), d2.eta) * unitor_r_inv(m), id(ms)) * d1.eta;
  TwoCell<K> eta = reassoc(step.dst(), tensor_over(mn, nsms), {m, n, ns, ms}) * step;
  // (N* M*)(M N) -> (N* (M* M)) N -> (N* U) N -> N* N -> U
  Bimodule<K> mid = tensor_over(tensor_over(ns, tensor_over(ms, m)), n);
  TwoCell<K> re = reassoc(tensor_over(nsms, mn), mid, {ns, ms, m, n});
  TwoCell<K> eps = d2.eps * tensor_map(unitor_r(ns) * tensor_map(id(ns), d1.eps), id(n)) * re;
  DualPair<K> dp{mn, nsms, eta, eps};
  validate_pair(dp);
  return dp;
}

/// The same M with dual transported along an automorphism alpha of M*.
template <class K>
DualPair<K> twist_pair(const DualPair<K>& dp, const TwoCell<K>& alpha) {
  TwoCell<K> ainv = alpha.inverse();
  DualPair<K> out{dp.M, dp.Mstar, tensor_map(id(dp.M), alpha) * dp.eta, dp.eps * tensor_map(ainv, id(dp.M))};
  validate_pair(out);
  return out;
}

/// A second pair on the same M, twisted by a seeded invertible automorphism
/// of M* other than the identity when one exists.
template <class K>
DualPair<K> random_twist(const DualPair<K>& dp, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    TwoCell<K> a = random_two_cell(dp.Mstar, dp.Mstar, rng);
    if (is_invertible(a.map()) && !a.map().is_identity()) return twist_pair(dp, a);
  }
  return twist_pair(dp, id(dp.Mstar).scaled(scalar<K>(dp.M.field(), dp.M.field().characteristic() == 2 ? 1 : 2)));
}

/// (_phi S, S_phi) for phi: R -> S.
template <class K>
DualPair<K> restriction_pair(const AlgebraMorphism<K>& phi) {
  const Algebra<K>& s = phi.dst;
  const Field f = s.field();
  Bimodule<K> us = unit_bimodule(s);
  Bimodule<K> m = Bimodule<K>::trusted(phi.src, s, s.dim(), pull_actions(phi, us.lacts()), us.racts());
  Bimodule<K> ms = Bimodule<K>::trusted(s, phi.src, s.dim(), us.lacts(), pull_actions(phi, us.racts()));
  Bimodule<K> mm = tensor_over(m, ms), msm = tensor_over(ms, m);
  // eta(r) = phi(r) (x) 1
  Mat<K> eta(f, mm.dim(), phi.src.dim());
  for (std::size_t i = 0; i < phi.src.dim(); ++i)
    eta.set_block(0, i, tensor_info(mm).proj * kron(phi.map.col(i), s.unit()));
  // eps(s (x) s') = s s'
  Mat<K> flat(f, s.dim(), s.dim() * s.dim());
  for (std::size_t a = 0; a < s.dim(); ++a)
    for (std::size_t b = 0; b < s.dim(); ++b) flat.set_block(0, a * s.dim() + b, s.mul(a, b));
  DualPair<K> dp{m, ms, TwoCell<K>(unit_bimodule(phi.src), mm, eta),
                 TwoCell<K>(msm, us, flat * tensor_info(msm).sect)};
  validate_pair(dp);
  return dp;
}

namespace detail {

// Which element of G each basis vector of k[H] is, read off the inclusion.
template <class K>
std::vector<std::size_t> subgroup_elements(const AlgebraMorphism<K>& phi) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < phi.src.dim(); ++i) {
    std::size_t hit = phi.dst.dim(), count = 0;
    for (std::size_t g = 0; g < phi.dst.dim(); ++g)
      if (!is_zero(phi.map(g, i))) {
        hit = g;
        ++count;
      }
    if (count != 1 || !(phi.map(hit, i) == scalar<K>(phi.dst.field(), 1)))
      throw Error(ErrorKind::Mismatch, "morphism is not induced by a subgroup inclusion", {i});
    out.push_back(hit);
  }
  return out;
}

}  // namespace detail

/// (k[G]_phi, _phi k[G]) for a subgroup H of G, with
/// eta(g) = sum_i g g_i (x) g_i^{-1} and eps(g (x) g') = g g' if it lies in H.
template <class K>
DualPair<K> induction_pair(const GroupTable& g, const AlgebraMorphism<K>& phi, const std::vector<std::size_t>& reps) {
  const Algebra<K>&kh = phi.src, &kg = phi.dst;
  const Field f = kg.field();
  const std::size_t n = g.order();
  if (kg.dim() != n) throw Error(ErrorKind::Mismatch, "group table does not match the group algebra");
  auto hel = detail::subgroup_elements(phi);
  std::vector<std::size_t> hpos(n, n);
  for (std::size_t i = 0; i < hel.size(); ++i) hpos[hel[i]] = i;
  std::vector<int> seen(n, 0);
  for (auto r : reps) {
    if (r >= n) throw Error(ErrorKind::BadCosetSystem, "coset representative out of range", {r});
    for (auto h : hel) seen[g.mul(r, h)] += 1;
  }
  for (std::size_t x = 0; x < n; ++x)
    if (seen[x] != 1)
      throw Error(ErrorKind::BadCosetSystem,
                  "representatives do not partition G into left cosets (element " + std::to_string(x) + " covered " +
                      std::to_string(seen[x]) + " times)",
                  {x});
  Bimodule<K> ug = unit_bimodule(kg);
  Bimodule<K> m = Bimodule<K>::trusted(kg, kh, n, ug.lacts(), pull_actions(phi, ug.racts()));
  Bimodule<K> ms = Bimodule<K>::trusted(kh, kg, n, pull_actions(phi, ug.lacts()), ug.racts());
  Bimodule<K> mm = tensor_over(m, ms), msm = tensor_over(ms, m);
  Mat<K> eta(f, mm.dim(), n);
  for (std::size_t x = 0; x < n; ++x) {
    Mat<K> v(f, n * n, 1);
    for (auto r : reps) v(g.mul(x, r) * n + g.inv(r), 0) += scalar<K>(f, 1);
    eta.set_block(0, x, tensor_info(mm).proj * v);
  }
  Mat<K> flat(f, kh.dim(), n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t p = hpos[g.mul(a, b)];
      if (p < n) flat(p, a * n + b) = scalar<K>(f, 1);
    }
  DualPair<K> dp{m, ms, TwoCell<K>(ug, mm, eta), TwoCell<K>(msm, unit_bimodule(kh), flat * tensor_info(msm).sect)};
  validate_pair(dp);
  return dp;
}

/// P, Q, eta: U_R -> P (.) Q, eps: Q (.) P -> U_S with both invertible.
template <class K>
struct MoritaEquivalence {
  DualPair<K> pair;  // M = P, Mstar = Q
  const Bimodule<K>& P() const { return pair.M; }
  const Bimodule<K>& Q() const { return pair.Mstar; }
};

template <class K>
MoritaEquivalence<K> make_morita(DualPair<K> dp) {
  validate_pair(dp);
  if (!is_invertible(dp.eta.map())) throw Error(ErrorKind::NotInvertible, "coevaluation is not invertible");
  if (!is_invertible(dp.eps.map())) throw Error(ErrorKind::NotInvertible, "evaluation is not invertible");
  return {std::move(dp)};
}

/// (Q, P) with eta = eps^{-1} and eps = eta^{-1}.
template <class K>
DualPair<K> reverse_pair(const MoritaEquivalence<K>& me) {
  DualPair<K> dp{me.Q(), me.P(), me.pair.eps.inverse(), me.pair.eta.inverse()};
  validate_pair(dp);
  return dp;
}

/// R ~ M_n(R) through row vectors P = R^{1 x n} and column vectors Q = R^{n x 1}.
template <class K>
MoritaEquivalence<K> morita_matrix(const Algebra<K>& r, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "matrix size must be positive");
  const Field f = r.field();
  const std::size_t d = r.dim(), dim = n * d;
  Algebra<K> s = matrix_algebra_over(r, n);
  auto sidx = [&](std::size_t i, std::size_t j, std::size_t a) { return (i * n + j) * d + a; };
  // P: (R, M_n(R)), basis (j, a) at j*d + a
  std::vector<Mat<K>> pl(d, Mat<K>(f, dim, dim)), pr(s.dim(), Mat<K>(f, dim, dim));
  std::vector<Mat<K>> ql(s.dim(), Mat<K>(f, dim, dim)), qr(d, Mat<K>(f, dim, dim));
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < d; ++a) {
        Mat<K> left = r.mul(b, a), right = r.mul(a, b);
        for (std::size_t c = 0; c < d; ++c) {
          pl[b](j * d + c, j * d + a) = left(c, 0);
          qr[b](j * d + c, j * d + a) = right(c, 0);
        }
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < d; ++a) {
        // row . (E_ij r_a): entry i of the row times r_a lands at j
        // (E_ij r_a) . col: r_a times entry j of the column lands at i
        for (std::size_t b = 0; b < d; ++b) {
          Mat<K> rowprod = r.mul(b, a), colprod = r.mul(a, b);
          for (std::size_t c = 0; c < d; ++c) {
            pr[sidx(i, j, a)](j * d + c, i * d + b) += rowprod(c, 0);
            ql[sidx(i, j, a)](i * d + c, j * d + b) += colprod(c, 0);
          }
        }
      }
  Bimodule<K> p = Bimodule<K>::trusted(r, s, dim, std::move(pl), std::move(pr));
  Bimodule<K> q = Bimodule<K>::trusted(s, r, dim, std::move(ql), std::move(qr));
  Bimodule<K> pq = tensor_over(p, q), qp = tensor_over(q, p);
  // eta(r) = r e_1 (x) e_1
  Mat<K> eta(f, pq.dim(), d);
  for (std::size_t b = 0; b < d; ++b)
    eta.set_block(0, b, tensor_info(pq).proj * kron(Mat<K>::unit_vector(f, dim, b), [&] {
                          Mat<K> e(f, dim, 1);
                          e.set_block(0, 0, r.unit());
                          return e;
                        }()));
  // eps(col (x) row) = col . row
  Mat<K> flat(f, s.dim(), dim * dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t b = 0; b < d; ++b) {
          Mat<K> prod = r.mul(a, b);
          for (std::size_t c = 0; c < d; ++c) flat(sidx(i, j, c), (i * d + a) * dim + j * d + b) = prod(c, 0);
        }
  DualPair<K> dp{p, q, TwoCell<K>(unit_bimodule(r), pq, eta), TwoCell<K>(qp, unit_bimodule(s), flat * tensor_info(qp).sect)};
  return make_morita(std::move(dp));
}

// ---------------------------------------------------------------------------
// Homs out of dualizable bimodules

/// X (.) P* -> P |> X, x (x) p* -> (p -> x eps(p* (x) p)), for a pair (P, P*).
template <class K>
TwoCell<K> hom_from_dualizable_right(const DualPair<K>& dp, const Bimodule<K>& x) {
  const Bimodule<K>&p = dp.M, &ps = dp.Mstar;
  Bimodule<K> src = tensor_over(x, ps);
  Bimodule<K> dst = hom_right(p, x);
  const auto& h = hom_info(dst, HomSide::right);
  const Mat<K>& eproj = tensor_info(dp.eps.src()).proj;
  const Field f = x.field();
  Mat<K> flat(f, dst.dim(), x.dim() * ps.dim());
  for (std::size_t a = 0; a < x.dim(); ++a)
    for (std::size_t z = 0; z < ps.dim(); ++z) {
      Mat<K> phi(f, x.dim(), p.dim());
      for (std::size_t j = 0; j < p.dim(); ++j) {
        Mat<K> s = dp.eps.map() * eproj.col(z * p.dim() + j);
        phi.set_block(0, j, x.ract_elem(s).col(a));
      }
      flat.set_block(0, a * ps.dim() + z, hom_coords(h, phi));
    }
  return TwoCell<K>(src, dst, flat * tensor_info(src).sect);
}

/// P (.) X -> X <| P*, p (x) x -> (p* -> eps(p* (x) p) x), for a pair (P, P*).
template <class K>
TwoCell<K> hom_from_dualizable_left(const DualPair<K>& dp, const Bimodule<K>& x) {
  const Bimodule<K>&p = dp.M, &ps = dp.Mstar;
  Bimodule<K> src = tensor_over(p, x);
  Bimodule<K> dst = hom_left(x, ps);
  const auto& h = hom_info(dst, HomSide::left);
  const Mat<K>& eproj = tensor_info(dp.eps.src()).proj;
  const Field f = x.field();
  Mat<K> flat(f, dst.dim(), p.dim() * x.dim());
  for (std::size_t j = 0; j < p.dim(); ++j)
    for (std::size_t b = 0; b < x.dim(); ++b) {
      Mat<K> psi(f, x.dim(), ps.dim());
      for (std::size_t z = 0; z < ps.dim(); ++z) {
        Mat<K> s = dp.eps.map() * eproj.col(z * p.dim() + j);
        psi.set_block(0, z, x.lact_elem(s).col(b));
      }
      flat.set_block(0, j * x.dim() + b, hom_coords(h, psi));
    }
  return TwoCell<K>(src, dst, flat * tensor_info(src).sect);
}

/// M (.) (P |> N) -> (M (.) N) (.) P* -> P |> (M (.) N), inverse of mu when P is
/// right dualizable; computed from the isomorphisms above, not by inverting mu.
template <class K>
TwoCell<K> mu_inverse(const Bimodule<K>& m, const DualPair<K>& dp, const Bimodule<K>& n) {
  TwoCell<K> hn = hom_from_dualizable_right(dp, n);
  TwoCell<K> hmn = hom_from_dualizable_right(dp, tensor_over(m, n));
  TwoCell<K> fwd = hmn * assoc_inv(m, n, dp.Mstar) * tensor_map(id(m), hn.inverse());
  return fwd.inverse();
}

// ---------------------------------------------------------------------------
// Mates

/// f: Q (.) M -> N (.) P gives f*: N* (.) Q -> P (.) M*.
template <class K>
TwoCell<K> mate_tensor(const TwoCell<K>& f, const DualPair<K>& dm, const DualPair<K>& dn) {
  const auto& ts = tensor_info(f.src());
  const auto& td = tensor_info(f.dst());
  const Bimodule<K>&q = ts.lhs, &p = td.rhs;
  const Bimodule<K>&m = dm.M, &ms = dm.Mstar, &n = dn.M, &ns = dn.Mstar;
  if (!(ts.rhs == m) || !(td.lhs == n)) throw Error(ErrorKind::Mismatch, "mate: pairs do not match the 2-cell");
  Bimodule<K> nsq = tensor_over(ns, q);
  TwoCell<K> s1 = tensor_map(id(nsq), dm.eta) * unitor_r_inv(nsq);  // -> (N* Q)(M M*)
  Bimodule<K> a2 = tensor_over(tensor_over(ns, f.src()), ms);
  TwoCell<K> s2 = reassoc(s1.dst(), a2, {ns, q, m, ms});
  TwoCell<K> s3 = tensor_map(tensor_map(id(ns), f), id(ms));  // -> (N* (N P)) M*
  Bimodule<K> nsn = tensor_over(ns, n);
  TwoCell<K> s4 = reassoc(s3.dst(), tensor_over(tensor_over(nsn, p), ms), {ns, n, p, ms});
  TwoCell<K> s5 = tensor_map(unitor_l(p) * tensor_map(dn.eps, id(p)), id(ms));
  return s5 * s4 * s3 * s2.retarget(s2.src(), s3.src()) * s1;
}

/// Inverse of mate_tensor: g: N* (.) Q -> P (.) M* gives Q (.) M -> N (.) P.
template <class K>
TwoCell<K> unmate_tensor(const TwoCell<K>& g, const DualPair<K>& dm, const DualPair<K>& dn) {
  const auto& ts = tensor_info(g.src());
  const auto& td = tensor_info(g.dst());
  const Bimodule<K>&q = ts.rhs, &p = td.lhs;
  const Bimodule<K>&m = dm.M, &ms = dm.Mstar, &n = dn.M, &ns = dn.Mstar;
  if (!(ts.lhs == ns) || !(td.rhs == ms)) throw Error(ErrorKind::Mismatch, "mate: pairs do not match the 2-cell");
  Bimodule<K> qm = tensor_over(q, m);
  TwoCell<K> s1 = tensor_map(dn.eta, id(qm)) * unitor_l_inv(qm);  // -> (N N*)(Q M)
  Bimodule<K> a2 = tensor_over(tensor_over(n, g.src()), m);
  TwoCell<K> s2 = reassoc(s1.dst(), a2, {n, ns, q, m});
  TwoCell<K> s3 = tensor_map(tensor_map(id(n), g), id(m));  // -> (N (P M*)) M
  Bimodule<K> np = tensor_over(n, p);
  TwoCell<K> s4 = reassoc(s3.dst(), tensor_over(np, tensor_over(ms, m)), {n, p, ms, m});
  TwoCell<K> s5 = unitor_r(np) * tensor_map(id(np), dm.eps);
  return s5 * s4 * s3 * s2.retarget(s2.src(), s3.src()) * s1;
}

/// f: M |> Q -> P <| N gives f*: Q <| N* -> M* |> P, composed as
/// rbar, eps^*, t, f_*, a, t^{-1}, eta^*, lbar^{-1} under the outer hom.
template <class K>
TwoCell<K> mate_hom(const TwoCell<K>& f, const DualPair<K>& dm, const DualPair<K>& dn) {
  const auto& hs = hom_info(f.src(), HomSide::right);
  const auto& hd = hom_info(f.dst(), HomSide::left);
  const Bimodule<K>&q = hs.target, &p = hd.target;
  const Bimodule<K>&m = dm.M, &ms = dm.Mstar, &n = dn.M, &ns = dn.Mstar;
  if (!(hs.source == m) || !(hd.source == n)) throw Error(ErrorKind::Mismatch, "mate: pairs do not match the 2-cell");
  TwoCell<K> s1 = post_left(rbar(q), ns);
  TwoCell<K> s2 = post_left(pre_right(dm.eps, q), ns);
  TwoCell<K> s3 = post_left(t_right(ms, m, q), ns);
  TwoCell<K> s4 = post_left(post_right(ms, f.retarget(hom_right(m, q), hom_left(p, n))), ns);
  TwoCell<K> s5 = hom_assoc(ms, hom_left(p, n), ns);
  TwoCell<K> s6 = post_right(ms, t_left_inv(n, ns, p));
  TwoCell<K> s7 = post_right(ms, pre_left(p, dn.eta));
  TwoCell<K> s8 = post_right(ms, lbar_inv(p));
  return s8 * s7 * s6 * s5 * s4 * s3 * s2 * s1;
}

namespace detail {

// (Q <| N*) (.) M* -> N (.) (M |> Q), through the homs-from-dualizables.
template <class K>
TwoCell<K> mate_hom_core(const Bimodule<K>& q, const DualPair<K>& dm, const DualPair<K>& dn) {
  const Bimodule<K>&m = dm.M, &ms = dm.Mstar, &n = dn.M, &ns = dn.Mstar;
  TwoCell<K> lq = hom_from_dualizable_left(dn, q);  // N Q -> Q <| N*
  TwoCell<K> rq = hom_from_dualizable_right(dm, q);  // Q M* -> M |> Q
  Bimodule<K> qns = hom_left(q, ns);
  TwoCell<K> s1 = tensor_map(lq.inverse(), id(ms));  // -> (N Q) M*
  TwoCell<K> s2 = assoc(n, q, ms);
  TwoCell<K> s3 = tensor_map(id(n), rq);
  return s3 * s2 * s1;
}

}  // namespace detail

/// The same mate read as the transpose of
/// (Q <| N*) (.) M* = N (.) Q (.) M* = N (.) (M |> Q) -> N (.) (P <| N) -> P.
template <class K>
TwoCell<K> mate_hom_alternate(const TwoCell<K>& f, const DualPair<K>& dm, const DualPair<K>& dn) {
  const auto& hs = hom_info(f.src(), HomSide::right);
  const auto& hd = hom_info(f.dst(), HomSide::left);
  const Bimodule<K>&q = hs.target, &p = hd.target;
  const Bimodule<K>& n = dn.M;
  TwoCell<K> core = detail::mate_hom_core(q, dm, dn);
  TwoCell<K> g = ev_left(n, p) * tensor_map(id(n), f.retarget(hom_right(dm.M, q), hom_left(p, n))) * core;
  return transpose_right(g);
}

/// Inverse of mate_hom: g: Q <| N* -> M* |> P gives M |> Q -> P <| N.
template <class K>
TwoCell<K> unmate_hom(const TwoCell<K>& g, const DualPair<K>& dm, const DualPair<K>& dn) {
  const auto& hs = hom_info(g.src(), HomSide::left);
  const auto& hd = hom_info(g.dst(), HomSide::right);
  const Bimodule<K>&q = hs.target, &p = hd.target;
  const Bimodule<K>& n = dn.M;
  TwoCell<K> core = detail::mate_hom_core(q, dm, dn);
  // N (.) (M |> Q) -> P
  TwoCell<K> flat = untranspose_right(g.retarget(hom_left(q, dn.Mstar), hom_right(dm.Mstar, p)), dm.Mstar) *
                    core.inverse();
  return transpose_left(flat);
}

}  // namespace bicotrace
