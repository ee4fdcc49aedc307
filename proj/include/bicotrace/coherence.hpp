#pragma once

// Two-route checks of the closed-bicategory, shadow, coshadow and pairing
// diagrams. Each returns both composites; equal() is exact matrix equality.

#include "bicotrace/traceengine.hpp"

namespace bicotrace {

// ---------------------------------------------------------------------------
// Bicategory structure

/// ((W X) Y) Z -> W (X (Y Z)) both ways.
template <class K>
EqualityReport<K> tensor_pentagon(const Bimodule<K>& w, const Bimodule<K>& x, const Bimodule<K>& y,
                                  const Bimodule<K>& z) {
  Bimodule<K> wx = tensor_over(w, x), yz = tensor_over(y, z), xy = tensor_over(x, y);
  TwoCell<K> top = assoc(w, x, yz) * assoc(wx, y, z);
  TwoCell<K> bot = tensor_map(id(w), assoc(x, y, z)) * assoc(w, xy, z) * tensor_map(assoc(w, x, y), id(z));
  return compare("tensor pentagon", top.map(), bot.map());
}

/// (M U) N -> M N both ways.
template <class K>
EqualityReport<K> tensor_triangle(const Bimodule<K>& m, const Bimodule<K>& n) {
  Bimodule<K> u = unit_bimodule(m.right());
  TwoCell<K> a = tensor_map(id(m), unitor_l(n)) * assoc(m, u, n);
  return compare("tensor unit triangle", a.map(), tensor_map(unitor_r(m), id(n)).map());
}

/// ((W X) Y) |> Z -> W |> (X |> (Y |> Z))
template <class K>
EqualityReport<K> pentagon_t_right(const Bimodule<K>& w, const Bimodule<K>& x, const Bimodule<K>& y,
                                   const Bimodule<K>& z) {
  Bimodule<K> wx = tensor_over(w, x), xy = tensor_over(x, y), yz = hom_right(y, z);
  TwoCell<K> r1 = t_right(w, x, yz) * t_right(wx, y, z);
  TwoCell<K> r2 = post_right(w, t_right(x, y, z)) * t_right(w, xy, z) * pre_right(assoc_inv(w, x, y), z);
  return compare("pentagon t and a for right homs", r1.map(), r2.map());
}

/// ((W <| X) <| Y) <| Z -> W <| (X (Y Z))
template <class K>
EqualityReport<K> pentagon_t_left(const Bimodule<K>& w, const Bimodule<K>& x, const Bimodule<K>& y,
                                  const Bimodule<K>& z) {
  Bimodule<K> wx = hom_left(w, x), yz = tensor_over(y, z), xy = tensor_over(x, y);
  TwoCell<K> r1 = t_left_inv(x, yz, w) * t_left_inv(y, z, wx);
  TwoCell<K> r2 = pre_left(w, assoc_inv(x, y, z)) * t_left_inv(xy, z, w) * post_left(t_left_inv(x, y, w), z);
  return compare("pentagon t and a for left homs", r1.map(), r2.map());
}

/// ((W X) |> Y) <| Z -> W |> (X |> (Y <| Z))
template <class K>
EqualityReport<K> pentagon_a_right(const Bimodule<K>& w, const Bimodule<K>& x, const Bimodule<K>& y,
                                   const Bimodule<K>& z) {
  Bimodule<K> wx = tensor_over(w, x), xy = hom_right(x, y), yz = hom_left(y, z);
  TwoCell<K> r1 = t_right(w, x, yz) * hom_assoc(wx, y, z);
  TwoCell<K> r2 = post_right(w, hom_assoc(x, y, z)) * hom_assoc(w, xy, z) * post_left(t_right(w, x, y), z);
  return compare("pentagon a and t through right homs", r1.map(), r2.map());
}

/// ((W |> X) <| Y) <| Z -> W |> (X <| (Y Z))
template <class K>
EqualityReport<K> pentagon_a_left(const Bimodule<K>& w, const Bimodule<K>& x, const Bimodule<K>& y,
                                  const Bimodule<K>& z) {
  Bimodule<K> wx = hom_right(w, x), xy = hom_left(x, y), yz = tensor_over(y, z);
  TwoCell<K> r1 = hom_assoc(w, x, yz) * t_left_inv(y, z, wx);
  TwoCell<K> r2 = post_right(w, t_left_inv(y, z, x)) * hom_assoc(w, xy, z) * post_left(hom_assoc(w, x, y), z);
  return compare("pentagon a and t through left homs", r1.map(), r2.map());
}

/// The six unit-iso compatibility triangles for X |> Y and Y <| X.
template <class K>
std::vector<EqualityReport<K>> hom_unit_compatibility(const Bimodule<K>& x, const Bimodule<K>& y) {
  std::vector<EqualityReport<K>> out;
  Bimodule<K> us = unit_bimodule(x.right()), ur = unit_bimodule(x.left());
  Bimodule<K> xy = hom_right(x, y);
  out.push_back(compare("unit iso with t (right hom)", (t_right(x, us, y) * pre_right(unitor_r(x), y)).map(),
                        post_right(x, rbar(y)).map()));
  out.push_back(compare("unit iso with t, outer unit (right hom)",
                        (t_right(ur, x, y) * pre_right(unitor_l(x), y)).map(), rbar(xy).map()));
  out.push_back(compare("unit iso with a (right hom)", (hom_assoc_inv(x, y, unit_bimodule(y.left())) *
                                                        post_right(x, lbar(y))).map(),
                        lbar(xy).map()));
  return out;
}

/// Mirror triangles for Y <| X, X: (R,S), Y: (R,T).
template <class K>
std::vector<EqualityReport<K>> hom_unit_compatibility_left(const Bimodule<K>& x, const Bimodule<K>& y) {
  std::vector<EqualityReport<K>> out;
  Bimodule<K> ur = unit_bimodule(x.left()), us = unit_bimodule(x.right());
  Bimodule<K> yx = hom_left(y, x);
  out.push_back(compare("unit iso with t (left hom)", (t_left(ur, x, y) * pre_left(y, unitor_l(x))).map(),
                        post_left(lbar(y), x).map()));
  out.push_back(compare("unit iso with t, outer unit (left hom)",
                        (t_left(x, us, y) * pre_left(y, unitor_r(x))).map(), lbar(yx).map()));
  out.push_back(compare("unit iso with a (left hom)",
                        (hom_assoc(unit_bimodule(y.right()), y, x) * post_left(rbar(y), x)).map(), rbar(yx).map()));
  return out;
}

/// rbar = rbar_* on U |> M and lbar = lbar_* on M <| U.
template <class K>
std::vector<EqualityReport<K>> hom_unit_equality(const Bimodule<K>& m) {
  Bimodule<K> us = unit_bimodule(m.right()), ur = unit_bimodule(m.left());
  Bimodule<K> um = hom_right(us, m), mu_ = hom_left(m, ur);
  return {compare("rbar equals rbar_*", rbar(um).map(), post_right(us, rbar(m)).map()),
          compare("lbar equals lbar_*", lbar(mu_).map(), post_left(lbar(m), ur).map())};
}

/// Zig-zag identities of the two tensor-hom adjunctions.
template <class K>
std::vector<EqualityReport<K>> adjunction_triangles(const Bimodule<K>& m, const Bimodule<K>& n) {
  // M -> N |> (M N), then tensoring with N and evaluating, is the identity of M N
  Bimodule<K> mn = tensor_over(m, n);
  TwoCell<K> a = ev_right(n, mn) * tensor_map(coev_right(m, n), id(n));
  TwoCell<K> b = ev_left(m, mn) * tensor_map(id(m), coev_left(m, n));
  return {compare("right evaluation after coevaluation", a.map(), id(mn).map()),
          compare("left evaluation after coevaluation", b.map(), id(mn).map())};
}

// ---------------------------------------------------------------------------
// Shadow, coshadow and pairing axioms for HH_0 and HH^0

template <class K>
EqualityReport<K> shadow_hexagon(const Bimodule<K>& m, const Bimodule<K>& n, const Bimodule<K>& p) {
  Bimodule<K> mn = tensor_over(m, n), pm = tensor_over(p, m), np = tensor_over(n, p);
  Mat<K> top = shadow_theta(pm, n) * hh0_map(assoc_inv(p, m, n)) * shadow_theta(mn, p);
  Mat<K> bot = hh0_map(assoc(n, p, m)) * shadow_theta(m, np) * hh0_map(assoc(m, n, p));
  return compare("shadow hexagon", top, bot);
}

template <class K>
std::vector<EqualityReport<K>> shadow_unit(const Bimodule<K>& m) {
  Bimodule<K> u = unit_bimodule(m.left());
  return {compare("shadow unit triangle", hh0_map(unitor_l(m)) * shadow_theta(m, u), hh0_map(unitor_r(m))),
          compare("shadow unit triangle, reversed", hh0_map(unitor_r(m)) * shadow_theta(u, m),
                  hh0_map(unitor_l(m))),
          compare("shadow theta is an involution", shadow_theta(u, m) * shadow_theta(m, u),
                  Mat<K>::identity(m.field(), hh0(tensor_over(m, u)).dim))};
}

/// M: (R,S), N: (S,T), P: (R,T) with the hom objects endo.
template <class K>
EqualityReport<K> coshadow_hexagon(const Bimodule<K>& m, const Bimodule<K>& n, const Bimodule<K>& p) {
  Bimodule<K> mn = tensor_over(m, n), pm = hom_left(p, m), np = hom_right(n, p);
  Mat<K> top = coshadow_theta_inv(n, pm) * cohh0_map(t_left(m, n, p)) * coshadow_theta(mn, p);
  Mat<K> bot = cohh0_map(hom_assoc(n, p, m)) * coshadow_theta(m, np) * cohh0_map(t_right(m, n, p));
  return compare("coshadow hexagon", top, bot);
}

template <class K>
std::vector<EqualityReport<K>> coshadow_unit(const Bimodule<K>& m) {
  Bimodule<K> u = unit_bimodule(m.left());
  return {compare("coshadow unit triangle", cohh0_map(lbar_inv(m)) * coshadow_theta(u, m), cohh0_map(rbar_inv(m))),
          compare("coshadow unit triangle, reversed", cohh0_map(rbar_inv(m)) * coshadow_theta_inv(u, m),
                  cohh0_map(lbar_inv(m)))};
}

/// X: (R,S), Y: (S,R), Z: (R,S).
template <class K>
EqualityReport<K> pairing_square(const Bimodule<K>& x, const Bimodule<K>& y, const Bimodule<K>& z) {
  Bimodule<K> zx = hom_left(z, x), xz = hom_right(x, z);
  Bimodule<K> yx = tensor_over(y, x), xy = tensor_over(x, y);
  // left route
  Bimodule<K> zxy = tensor_over(zx, y);
  Mat<K> l = pairing_rho(zx, yx);
  l = hh0_map(assoc_inv(zx, y, x)) * l;
  l = shadow_theta(zxy, x) * l;
  l = hh0_map(tensor_map(ev_left(x, z), id(y)) * assoc_inv(x, zx, y)) * l;
  // right route
  Mat<K> r = pairing_rho(xz, xy) * kron(coshadow_theta_inv(x, z), shadow_theta(y, x));
  r = hh0_map(tensor_map(ev_right(x, z), id(y)) * assoc_inv(xz, x, y)) * r;
  return compare("pairing compatibility square", l, r);
}

// ---------------------------------------------------------------------------
// Naturality and functoriality

template <class K>
EqualityReport<K> shadow_theta_natural(const TwoCell<K>& f, const TwoCell<K>& g) {
  Mat<K> lhs = shadow_theta(f.dst(), g.dst()) * hh0_map(tensor_map(f, g));
  Mat<K> rhs = hh0_map(tensor_map(g, f)) * shadow_theta(f.src(), g.src());
  return compare("shadow theta is natural", lhs, rhs);
}

template <class K>
std::vector<EqualityReport<K>> functoriality(const TwoCell<K>& f, const TwoCell<K>& g) {
  // g o f with f: A -> B, g: B -> C endo bimodules
  TwoCell<K> gf = g * f;
  return {compare("HH_0 is functorial", hh0_map(gf), hh0_map(g) * hh0_map(f)),
          compare("HH^0 is functorial", cohh0_map(gf), cohh0_map(g) * cohh0_map(f)),
          compare("categorical trace is natural", gk_coshadow(g.dst()).comparison * gk_map(g),
                  cohh0_map(g) * gk_coshadow(g.src()).comparison)};
}

/// (f g)_* = f_* g_* and (f g)^* = g^* f^* on both hom sides, for
/// g: A -> B, f: B -> C, with x the other operand.
template <class K>
std::vector<EqualityReport<K>> hom_functoriality(const TwoCell<K>& f, const TwoCell<K>& g, const Bimodule<K>& x) {
  TwoCell<K> fg = f * g;
  return {compare("post right is functorial", post_right(x, fg).map(), (post_right(x, f) * post_right(x, g)).map()),
          compare("pre right is contravariant", pre_right(fg, x).map(), (pre_right(g, x) * pre_right(f, x)).map())};
}

template <class K>
std::vector<EqualityReport<K>> hom_functoriality_left(const TwoCell<K>& f, const TwoCell<K>& g,
                                                      const Bimodule<K>& x) {
  TwoCell<K> fg = f * g;
  return {compare("post left is functorial", post_left(fg, x).map(), (post_left(f, x) * post_left(g, x)).map()),
          compare("pre left is contravariant", pre_left(x, fg).map(), (pre_left(x, g) * pre_left(x, f)).map())};
}

/// mu against the inverse built from the dual pair of its middle operand.
template <class K>
EqualityReport<K> mu_inverse_check(const Bimodule<K>& m, const DualPair<K>& dp, const Bimodule<K>& n) {
  TwoCell<K> a = mu(m, dp.M, n), b = mu_inverse(m, dp, n);
  return compare("mu composed with its inverse", (b * a).map(), id(a.src()).map());
}

}  // namespace bicotrace
