#pragma once

#include <map>
#include <string>
#include <vector>

#include "bicotrace/duality.hpp"
#include "bicotrace/hhshadow.hpp"

namespace bicotrace {

template <class K>
struct TraceResult {
  Mat<K> value;
  std::map<std::string, std::string> provenance;
};

/// Two routes that should agree, with their difference.
template <class K>
struct EqualityReport {
  std::string name;
  Mat<K> lhs, rhs;
  bool equal() const { return lhs == rhs; }
  Mat<K> residual() const { return lhs - rhs; }
};

template <class K>
EqualityReport<K> compare(std::string name, Mat<K> lhs, Mat<K> rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw Error(ErrorKind::DimensionMismatch, name + ": routes have shapes " + lhs.shape() + " and " + rhs.shape());
  return {std::move(name), std::move(lhs), std::move(rhs)};
}

namespace detail {

inline std::string dimstr(std::size_t d) { return std::to_string(d); }

template <class K>
void require_pair_slot(const Bimodule<K>& got, const Bimodule<K>& want, const char* what) {
  if (!(got == want)) throw Error(ErrorKind::Mismatch, std::string(what) + " does not match the dual pair");
}

}  // namespace detail

/// Trace of f: Q (.) M -> M (.) P with respect to (M, M*), a map HH_0(Q) -> HH_0(P).
template <class K>
TraceResult<K> trace(const TwoCell<K>& f, const DualPair<K>& dp) {
  const auto& ts = tensor_info(f.src());
  const auto& td = tensor_info(f.dst());
  const Bimodule<K>&q = ts.lhs, &p = td.rhs, &m = dp.M, &ms = dp.Mstar;
  detail::require_pair_slot(ts.rhs, m, "source of the 2-cell");
  detail::require_pair_slot(td.lhs, m, "target of the 2-cell");
  TwoCell<K> fr = f.retarget(tensor_over(q, m), tensor_over(m, p));
  Bimodule<K> mp = tensor_over(m, p);
  Mat<K> v = hh0_map(unitor_r_inv(q));
  v = hh0_map(tensor_map(id(q), dp.eta)) * v;
  v = hh0_map(assoc_inv(q, m, ms)) * v;
  v = hh0_map(tensor_map(fr, id(ms))) * v;
  v = shadow_theta(mp, ms) * v;
  v = hh0_map(assoc_inv(ms, m, p)) * v;
  v = hh0_map(tensor_map(dp.eps, id(p))) * v;
  v = hh0_map(unitor_l(p)) * v;
  return {v,
          {{"kind", "trace"},
           {"dualizable_dim", detail::dimstr(m.dim())},
           {"dual_dim", detail::dimstr(ms.dim())},
           {"source_shadow_dim", detail::dimstr(hh0(q).dim)},
           {"target_shadow_dim", detail::dimstr(hh0(p).dim)}}};
}

/// chi(M): the trace of U_R (.) M = M = M (.) U_S.
template <class K>
TraceResult<K> euler_char(const DualPair<K>& dp) {
  TraceResult<K> r = trace(unitor_r_inv(dp.M) * unitor_l(dp.M), dp);
  r.provenance["kind"] = "euler_characteristic";
  return r;
}

/// Trace of an endomorphism g of M. For M a (k, R)-bimodule this is the
/// Hattori-Stallings trace, read off as the image of 1.
template <class K>
TraceResult<K> hattori_stallings(const TwoCell<K>& g, const DualPair<K>& dp) {
  detail::require_pair_slot(g.src(), dp.M, "source of the endomorphism");
  detail::require_pair_slot(g.dst(), dp.M, "target of the endomorphism");
  TraceResult<K> r = trace(unitor_r_inv(dp.M) * g.retarget(dp.M, dp.M) * unitor_l(dp.M), dp);
  r.provenance["kind"] = "hattori_stallings";
  return r;
}

/// Trace of g: M* (.) Q -> P (.) M* using M* as a left dualizable 1-cell with
/// left dual M. Used for the trace of a mate.
template <class K>
TraceResult<K> left_trace(const TwoCell<K>& g, const DualPair<K>& dp) {
  const auto& ts = tensor_info(g.src());
  const auto& td = tensor_info(g.dst());
  const Bimodule<K>&q = ts.rhs, &p = td.lhs, &m = dp.M, &ms = dp.Mstar;
  detail::require_pair_slot(ts.lhs, ms, "source of the 2-cell");
  detail::require_pair_slot(td.rhs, ms, "target of the 2-cell");
  TwoCell<K> gr = g.retarget(tensor_over(ms, q), tensor_over(p, ms));
  Bimodule<K> pms = tensor_over(p, ms);
  Mat<K> v = hh0_map(unitor_l_inv(q));
  v = hh0_map(tensor_map(dp.eta, id(q))) * v;
  v = hh0_map(assoc(m, ms, q)) * v;
  v = hh0_map(tensor_map(id(m), gr)) * v;
  v = shadow_theta(m, pms) * v;
  v = hh0_map(assoc(p, ms, m)) * v;
  v = hh0_map(tensor_map(id(p), dp.eps)) * v;
  v = hh0_map(unitor_r(p)) * v;
  return {v, {{"kind", "left_trace"}, {"dualizable_dim", detail::dimstr(ms.dim())}}};
}

/// Cotrace of f: M |> Q -> P <| M with respect to (M, M*), a map
/// HH^0(Q) -> HH^0(P).
template <class K>
TraceResult<K> cotrace(const TwoCell<K>& f, const DualPair<K>& dp) {
  const auto& hs = hom_info(f.src(), HomSide::right);
  const auto& hd = hom_info(f.dst(), HomSide::left);
  const Bimodule<K>&q = hs.target, &p = hd.target, &m = dp.M, &ms = dp.Mstar;
  detail::require_pair_slot(hs.source, m, "source of the 2-cell");
  detail::require_pair_slot(hd.source, m, "target of the 2-cell");
  Bimodule<K> pm = hom_left(p, m);
  TwoCell<K> fr = f.retarget(hom_right(m, q), pm);
  Mat<K> v = cohh0_map(rbar(q));
  v = cohh0_map(pre_right(dp.eps, q)) * v;
  v = cohh0_map(t_right(ms, m, q)) * v;
  v = cohh0_map(post_right(ms, fr)) * v;
  v = coshadow_theta(ms, pm) * v;
  v = cohh0_map(t_left_inv(m, ms, p)) * v;
  v = cohh0_map(pre_left(p, dp.eta)) * v;
  v = cohh0_map(lbar_inv(p)) * v;
  return {v,
          {{"kind", "cotrace"},
           {"dualizable_dim", detail::dimstr(m.dim())},
           {"dual_dim", detail::dimstr(ms.dim())},
           {"source_coshadow_dim", detail::dimstr(cohh0(q).dim)},
           {"target_coshadow_dim", detail::dimstr(cohh0(p).dim)}}};
}

/// Cotrace of g: Q <| M* -> M* |> P using M* as a left dualizable 1-cell.
/// Used for the cotrace of a mate.
template <class K>
TraceResult<K> left_cotrace(const TwoCell<K>& g, const DualPair<K>& dp) {
  const auto& hs = hom_info(g.src(), HomSide::left);
  const auto& hd = hom_info(g.dst(), HomSide::right);
  const Bimodule<K>&q = hs.target, &p = hd.target, &m = dp.M, &ms = dp.Mstar;
  detail::require_pair_slot(hs.source, ms, "source of the 2-cell");
  detail::require_pair_slot(hd.source, ms, "target of the 2-cell");
  Bimodule<K> msp = hom_right(ms, p);
  TwoCell<K> gr = g.retarget(hom_left(q, ms), msp);
  Mat<K> v = cohh0_map(lbar(q));
  v = cohh0_map(pre_left(q, dp.eps)) * v;
  v = cohh0_map(t_left(ms, m, q)) * v;
  v = cohh0_map(post_left(gr, m)) * v;
  v = coshadow_theta_inv(m, msp) * v;
  v = cohh0_map(t_right_inv(m, ms, p)) * v;
  v = cohh0_map(pre_right(dp.eta, p)) * v;
  v = cohh0_map(rbar_inv(p)) * v;
  return {v, {{"kind", "left_cotrace"}, {"dualizable_dim", detail::dimstr(ms.dim())}}};
}

// ---------------------------------------------------------------------------
// Symmetric monoidal case: symmetric bimodules over a commutative algebra

namespace detail {

template <class K>
void require_symmetric(const Bimodule<K>& b) {
  if (!b.left().is_commutative() || !(b.left() == b.right()))
    throw Error(ErrorKind::NotCommutativeBase, "base algebra is not commutative");
  if (!(b.lacts() == b.racts())) throw Error(ErrorKind::NotCommutativeBase, "bimodule is not symmetric");
}

}  // namespace detail

/// mu_Q: Q (.) [M, U] -> [M, Q (.) U] -> [M, Q]
template <class K>
TwoCell<K> sym_mu(const Bimodule<K>& q, const Bimodule<K>& m) {
  Bimodule<K> u = unit_bimodule(m.right());
  return post_right(m, unitor_r(q)) * mu(q, m, u);
}

/// The composite Q = [I,Q] -> [M* M, Q] -> [M*, [M, Q]] -> [M*, [M, P]] ->
/// [M* M, P] -> [M M*, P] -> [I, P] = P for f: [M, Q] -> [M, P].
template <class K>
TraceResult<K> sym_cotrace(const TwoCell<K>& f, const DualPair<K>& dp) {
  const auto& hs = hom_info(f.src(), HomSide::right);
  const auto& hd = hom_info(f.dst(), HomSide::right);
  const Bimodule<K>&q = hs.target, &p = hd.target, &m = dp.M, &ms = dp.Mstar;
  for (const auto* b : {&q, &p, &m, &ms}) detail::require_symmetric(*b);
  detail::require_pair_slot(hs.source, m, "source of the 2-cell");
  detail::require_pair_slot(hd.source, m, "target of the 2-cell");
  TwoCell<K> fr = f.retarget(hom_right(m, q), hom_right(m, p));
  TwoCell<K> c = rbar_inv(p) * pre_right(dp.eta, p) * pre_right(flip(m, ms), p) * t_right_inv(ms, m, p) *
                 post_right(ms, fr) * t_right(ms, m, q) * pre_right(dp.eps, q) * rbar(q);
  return {c.map(), {{"kind", "symmetric_cotrace"}, {"dualizable_dim", detail::dimstr(m.dim())}}};
}

/// f~: Q (.) M* -> M* (.) P with mu f~ = f mu up to the symmetry, M* = [M, I].
template <class K>
TwoCell<K> sym_tilde(const TwoCell<K>& f) {
  const auto& hs = hom_info(f.src(), HomSide::right);
  const auto& hd = hom_info(f.dst(), HomSide::right);
  const Bimodule<K>&q = hs.target, &p = hd.target, &m = hs.source;
  Bimodule<K> ms = canonical_dual(m);
  TwoCell<K> fr = f.retarget(hom_right(m, q), hom_right(m, p));
  return flip(p, ms) * sym_mu(p, m).inverse() * fr * sym_mu(q, m);
}

/// cotr(f) against tr(f~), both as maps Q -> P (HH_0 and HH^0 are the identity
/// on symmetric bimodules over a commutative algebra).
template <class K>
EqualityReport<K> sym_collapse(const TwoCell<K>& f, const DualPair<K>& dp, const DualPair<K>& dual_dp) {
  TraceResult<K> c = sym_cotrace(f, dp);
  TwoCell<K> ft = sym_tilde(f);
  TraceResult<K> t = trace(ft, dual_dp);
  const auto& q = hom_info(f.src(), HomSide::right).target;
  const auto& p = hom_info(f.dst(), HomSide::right).target;
  Mat<K> tr = hh0(p).sect * t.value * hh0(q).proj;
  return compare("symmetric cotrace equals trace of tilde", c.value, tr);
}

// ---------------------------------------------------------------------------
// Properties of cotrace

/// HH^0(h) cotr(f) HH^0(g) against cotr(h_* f g_*).
template <class K>
EqualityReport<K> tighten(const TwoCell<K>& g, const TwoCell<K>& f, const TwoCell<K>& h, const DualPair<K>& dp) {
  Mat<K> lhs = cohh0_map(h) * cotrace(f, dp).value * cohh0_map(g);
  TwoCell<K> inner = post_left(h, dp.M) * f * post_right(dp.M, g);
  return compare("tightening", lhs, cotrace(inner, dp).value);
}

/// (U_R, U_R) with both structure maps unitors.
template <class K>
DualPair<K> unit_pair(const Algebra<K>& r) {
  Bimodule<K> u = unit_bimodule(r);
  DualPair<K> dp{u, u, unitor_l_inv(u), unitor_l(u)};
  validate_pair(dp);
  return dp;
}

template <class K>
EqualityReport<K> unit_cotrace(const TwoCell<K>& f) {
  const auto& hs = hom_info(f.src(), HomSide::right);
  const auto& hd = hom_info(f.dst(), HomSide::left);
  DualPair<K> up = unit_pair(hs.source.left());
  TwoCell<K> fr = f.retarget(hom_right(up.M, hs.target), hom_left(hd.target, up.M));
  Mat<K> rhs = cohh0_map(lbar_inv(hd.target)) * cohh0_map(fr) * cohh0_map(rbar(hs.target));
  return compare("unit cotrace", cotrace(fr, up).value, rhs);
}

/// (N (.) M) |> Q -> N |> (M |> Q) -> N |> (P <| M) -> (N |> P) <| M
///   -> (L <| N) <| M -> L <| (N (.) M)
template <class K>
TwoCell<K> cotrace_composite_cell(const TwoCell<K>& f, const TwoCell<K>& g, const Bimodule<K>& m,
                                  const Bimodule<K>& n) {
  const Bimodule<K>& q = hom_info(f.src(), HomSide::right).target;
  const Bimodule<K>& p = hom_info(f.dst(), HomSide::left).target;
  const Bimodule<K>& l = hom_info(g.dst(), HomSide::left).target;
  TwoCell<K> fr = f.retarget(hom_right(m, q), hom_left(p, m));
  TwoCell<K> gr = g.retarget(hom_right(n, p), hom_left(l, n));
  return t_left_inv(n, m, l) * post_left(gr, m) * hom_assoc_inv(n, p, m) * post_right(n, fr) * t_right(n, m, q);
}

template <class K>
EqualityReport<K> cotrace_compose(const TwoCell<K>& f, const TwoCell<K>& g, const DualPair<K>& dm,
                                  const DualPair<K>& dn) {
  Mat<K> lhs = cotrace(g, dn).value * cotrace(f, dm).value;
  DualPair<K> nm = compose_pairs(dn, dm);
  return compare("composite of dual pairs", lhs, cotrace(cotrace_composite_cell(f, g, dm.M, dn.M), nm).value);
}

template <class K>
EqualityReport<K> cotrace_of_mate(const TwoCell<K>& f, const DualPair<K>& dp) {
  return compare("cotrace of mate", cotrace(f, dp).value, left_cotrace(mate_hom(f, dp, dp), dp).value);
}

template <class K>
EqualityReport<K> trace_of_mate(const TwoCell<K>& f, const DualPair<K>& dp) {
  return compare("trace of mate", trace(f, dp).value, left_trace(mate_tensor(f, dp, dp), dp).value);
}

/// For f: M |> Q1 -> P1 <| N and g: P2 (.) M -> N (.) Q2, the two cells whose
/// cotraces are conjugate by theta.
template <class K>
struct CyclicCells {
  TwoCell<K> gf;  // M |> (Q1 <| Q2) -> (P1 <| P2) <| M
  TwoCell<K> fg;  // N |> (Q2 |> Q1) -> (P2 |> P1) <| N
  Bimodule<K> q1, q2, p1, p2;
};

template <class K>
CyclicCells<K> cyclic_cells(const TwoCell<K>& f, const TwoCell<K>& g, const Bimodule<K>& m, const Bimodule<K>& n) {
  const Bimodule<K>& q1 = hom_info(f.src(), HomSide::right).target;
  const Bimodule<K>& p1 = hom_info(f.dst(), HomSide::left).target;
  const Bimodule<K>& p2 = tensor_info(g.src()).lhs;
  const Bimodule<K>& q2 = tensor_info(g.dst()).rhs;
  TwoCell<K> fr = f.retarget(hom_right(m, q1), hom_left(p1, n));
  TwoCell<K> gr = g.retarget(tensor_over(p2, m), tensor_over(n, q2));
  TwoCell<K> gf = t_left(p2, m, p1) * pre_left(p1, gr) * t_left_inv(n, q2, p1) * post_left(fr, q2) *
                  hom_assoc_inv(m, q1, q2);
  TwoCell<K> fg = hom_assoc_inv(p2, p1, n) * post_right(p2, fr) * t_right(p2, m, q1) * pre_right(gr, q1) *
                  t_right_inv(n, q2, q1);
  return {gf, fg, q1, q2, p1, p2};
}

template <class K>
EqualityReport<K> cotrace_cyclic(const TwoCell<K>& f, const TwoCell<K>& g, const DualPair<K>& dm,
                                 const DualPair<K>& dn) {
  CyclicCells<K> c = cyclic_cells(f, g, dm.M, dn.M);
  // theta goes HH^0(X2 |> X1) -> HH^0(X1 <| X2) on both ends
  Mat<K> rhs = coshadow_theta(c.p2, c.p1) * cotrace(c.fg, dn).value * coshadow_theta_inv(c.q2, c.q1);
  return compare("cyclicity", cotrace(c.gf, dm).value, rhs);
}

/// Trace of a composite against the composite of traces, for f: Q M -> M P
/// and g: P N -> N L.
template <class K>
EqualityReport<K> trace_compose(const TwoCell<K>& f, const TwoCell<K>& g, const DualPair<K>& dm,
                                const DualPair<K>& dn) {
  const Bimodule<K>&m = dm.M, &n = dn.M;
  const Bimodule<K>& q = tensor_info(f.src()).lhs;
  const Bimodule<K>& p = tensor_info(f.dst()).rhs;
  const Bimodule<K>& l = tensor_info(g.dst()).rhs;
  TwoCell<K> fr = f.retarget(tensor_over(q, m), tensor_over(m, p));
  TwoCell<K> gr = g.retarget(tensor_over(p, n), tensor_over(n, l));
  Bimodule<K> mn = tensor_over(m, n);
  TwoCell<K> h = assoc_inv(m, n, l) * tensor_map(id(m), gr) * assoc(m, p, n) * tensor_map(fr, id(n)) *
                 assoc_inv(q, m, n);
  DualPair<K> mnp = compose_pairs(dm, dn);
  return compare("trace of composite", trace(g, dn).value * trace(f, dm).value, trace(h, mnp).value);
}

// ---------------------------------------------------------------------------
// Trace and cotrace together

template <class K>
struct InterplayData {
  DualPair<K> F, G;
  TwoCell<K> xi;     // Q F -> F P
  TwoCell<K> gamma;  // F |> M -> N <| F
  TwoCell<K> zeta;   // (N Q)(F G) -> (F G) Z
  TwoCell<K> delta;  // (M P) G -> G Z

  const Bimodule<K>& Q() const { return tensor_info(xi.src()).lhs; }
  const Bimodule<K>& P() const { return tensor_info(xi.dst()).rhs; }
  const Bimodule<K>& M() const { return hom_info(gamma.src(), HomSide::right).target; }
  const Bimodule<K>& N() const { return hom_info(gamma.dst(), HomSide::left).target; }
  const Bimodule<K>& Z() const { return tensor_info(zeta.dst()).rhs; }
};

/// Both routes F (F |> M) Q F G -> (F G) Z of the hypothesis square.
template <class K>
EqualityReport<K> interplay_hypothesis(const InterplayData<K>& d) {
  const Bimodule<K>&f = d.F.M, &g = d.G.M, &q = d.Q(), &p = d.P(), &m = d.M(), &n = d.N();
  Bimodule<K> fm = hom_right(f, m), nf = hom_left(n, f);
  TwoCell<K> gamma = d.gamma.retarget(fm, nf);
  Bimodule<K> x0 = tensor_chain<K>({f, fm, q, f, g});
  // ev (1 gamma 1^3), then zeta
  TwoCell<K> a1 = tensor_map_chain<K>({id(f), gamma, id(q), id(f), id(g)});
  TwoCell<K> a2 = tensor_map_chain<K>({ev_left(f, n), id(q), id(f), id(g)});
  TwoCell<K> a3 = reassoc(a2.dst(), d.zeta.src(), {n, q, f, g});
  Mat<K> route_a = (d.zeta * a3 * a2 * a1).map();
  // (1 delta)(1 ev 1^2)(1^2 xi 1)
  Bimodule<K> ffm = tensor_over(f, fm);
  TwoCell<K> b0 = reassoc(x0, tensor_chain<K>({ffm, d.xi.src(), g}), {f, fm, q, f, g});
  TwoCell<K> b1 = tensor_map_chain<K>({id(ffm), d.xi, id(g)});
  Bimodule<K> fmf = tensor_over(fm, f);
  TwoCell<K> b2 = reassoc(b1.dst(), tensor_chain<K>({f, fmf, p, g}), {f, fm, f, p, g});
  TwoCell<K> b3 = tensor_map_chain<K>({id(f), ev_right(f, m), id(p), id(g)});
  TwoCell<K> b4 = reassoc(b3.dst(), tensor_over(f, d.delta.src()), {f, m, p, g});
  TwoCell<K> b5 = tensor_map(id(f), d.delta);
  TwoCell<K> b6 = reassoc(b5.dst(), d.zeta.dst(), {f, g, d.Z()});
  Mat<K> route_b = (b6 * b5 * b4 * b3 * b2 * b1 * b0).map();
  return compare("interplay hypothesis", route_a, route_b);
}

/// tr_G(delta) rho (1 (x) tr_F(xi)) against tr_{FG}(zeta) rho (cotr_F(gamma) (x) 1),
/// both HH^0(M) (x) HH_0(Q) -> HH_0(Z).
template <class K>
EqualityReport<K> interplay_conclusion(const InterplayData<K>& d) {
  const Bimodule<K>&q = d.Q(), &p = d.P(), &m = d.M(), &n = d.N();
  const Field fld = m.field();
  Mat<K> im = Mat<K>::identity(fld, cohh0(m).dim), iq = Mat<K>::identity(fld, hh0(q).dim);
  Mat<K> lhs = trace(d.delta, d.G).value * pairing_rho(m, p) * kron(im, trace(d.xi, d.F).value);
  DualPair<K> fg = compose_pairs(d.F, d.G);
  Mat<K> rhs = trace(d.zeta, fg).value * pairing_rho(n, q) * kron(cotrace(d.gamma, d.F).value, iq);
  return compare("interplay conclusion", lhs, rhs);
}

/// Validates the hypothesis, then compares both routes of the conclusion.
template <class K>
EqualityReport<K> interplay_check(const InterplayData<K>& d) {
  auto h = interplay_hypothesis(d);
  if (!h.equal()) throw Error(ErrorKind::HypothesisFails, "hypothesis square does not commute");
  return interplay_conclusion(d);
}

/// End_R(F) for a right R-module F, with F as an (End_R(F), R)-bimodule.
template <class K>
Bimodule<K> endomorphism_bimodule(const Bimodule<K>& f) {
  const Field fld = f.field();
  const std::size_t d = f.dim();
  Mat<K> idd = Mat<K>::identity(fld, d);
  std::vector<Mat<K>> cons;
  for (std::size_t t = 0; t < f.right().dim(); ++t) cons.push_back(kron(idd, f.ract(t).transpose()) - kron(f.ract(t), idd));
  Mat<K> basis = subspace_with_inclusion(fld, d * d, vstack(cons, fld, d * d));
  Mat<K> linv = left_inverse(basis);
  const std::size_t n = basis.cols();
  std::vector<Mat<K>> el, lm;
  for (std::size_t i = 0; i < n; ++i) el.push_back(Mat<K>::unvec(basis.col(i), d, d));
  for (std::size_t i = 0; i < n; ++i) {
    Mat<K> l(fld, n, n);
    for (std::size_t j = 0; j < n; ++j) l.set_block(0, j, linv * (el[i] * el[j]).vec());
    lm.push_back(std::move(l));
  }
  Algebra<K> s = Algebra<K>::from_lmul(fld, std::move(lm), linv * idd.vec(), {}, true);
  return Bimodule<K>::make(s, f.right(), d, el, f.racts());
}

/// The setup with Q, P, G units, Z = M, N = F |> (F (.) M), gamma the
/// transpose of mu and zeta the evaluation (unitors inserted where needed).
template <class K>
InterplayData<K> lipman_setup(const DualPair<K>& fp, const Bimodule<K>& m) {
  const Bimodule<K>& f = fp.M;
  const Algebra<K>&s = f.left(), &r = f.right();
  Bimodule<K> us = unit_bimodule(s), ur = unit_bimodule(r);
  DualPair<K> gp = unit_pair(r);
  Bimodule<K> fm = tensor_over(f, m);
  Bimodule<K> n = hom_right(f, fm);
  TwoCell<K> xi = unitor_r_inv(f) * unitor_l(f);
  TwoCell<K> gamma = transpose_left(mu(f, f, m));
  TwoCell<K> delta = unitor_l_inv(m) * unitor_r(m) * tensor_map(unitor_r(m), id(ur));
  TwoCell<K> zeta = tensor_map(unitor_r_inv(f), id(m)) * ev_right(f, fm) * tensor_map(unitor_r(n), unitor_r(f));
  return {fp, gp, xi, gamma, zeta, delta};
}

/// tr(mu_r o phi) = r tr(phi) for central r in R and phi in End_R(F), read in
/// HH_0(R).
template <class K>
EqualityReport<K> lipman_scalar(const DualPair<K>& fp) {
  const Bimodule<K>& f = fp.M;
  const Algebra<K>&s = f.left(), &r = f.right();
  const Field fld = f.field();
  Mat<K> t = trace(unitor_r_inv(f) * unitor_l(f), fp).value;  // HH_0(S) -> HH_0(R)
  auto hs = hh0(unit_bimodule(s));
  auto hr = hh0(unit_bimodule(r));
  Mat<K> centre = cohh0(unit_bimodule(r)).incl;
  // lact of S spans End_R(F); solve for mu_r inside it
  std::vector<Mat<K>> cols;
  for (std::size_t i = 0; i < s.dim(); ++i) cols.push_back(f.lact(i).vec());
  Mat<K> span = hstack(cols, fld, f.dim() * f.dim());
  std::vector<Mat<K>> lhs_cols, rhs_cols;
  for (std::size_t c = 0; c < centre.cols(); ++c) {
    Mat<K> rc = centre.col(c);
    auto sol = solve(span, f.ract_elem(rc).vec());
    if (!sol) throw Error(ErrorKind::Mismatch, "right multiplication is not an endomorphism");
    Mat<K> mu_r = sol->particular;
    for (std::size_t j = 0; j < s.dim(); ++j) {
      Mat<K> phi = Mat<K>::unit_vector(fld, s.dim(), j);
      lhs_cols.push_back(t * hs.proj * s.product(mu_r, phi));
      rhs_cols.push_back(hr.proj * r.left_mult(rc) * hr.sect * t * hs.proj * phi);
    }
  }
  const std::size_t rows = hr.dim;
  Mat<K> lhs = lhs_cols.empty() ? Mat<K>(fld, rows, 0) : hstack(lhs_cols, fld, rows);
  Mat<K> rhs = rhs_cols.empty() ? Mat<K>(fld, rows, 0) : hstack(rhs_cols, fld, rows);
  return compare("trace is linear over the centre", lhs, rhs);
}

// ---------------------------------------------------------------------------
// Morita invariance

/// M (.) P -> U (.) (M P) -> (P Q)(M P) -> P ((Q M) P)
template <class K>
TwoCell<K> morita_twist(const MoritaEquivalence<K>& me, const Bimodule<K>& m) {
  const Bimodule<K>&p = me.P(), &q = me.Q();
  Bimodule<K> mp = tensor_over(m, p);
  TwoCell<K> s = tensor_map(me.pair.eta, id(mp)) * unitor_l_inv(mp);
  Bimodule<K> y = tensor_over(tensor_over(q, m), p);
  return reassoc(s.dst(), tensor_over(p, y), {p, q, m, p}) * s;
}

/// HH_0(M) -> HH_0((Q M) P) as the trace with respect to P.
template <class K>
TraceResult<K> morita_shadow_iso(const MoritaEquivalence<K>& me, const Bimodule<K>& m) {
  TraceResult<K> r = trace(morita_twist(me, m), me.pair);
  if (!is_invertible(r.value)) throw Error(ErrorKind::NotInvertible, "shadow comparison is not invertible");
  r.provenance["kind"] = "morita_shadow";
  return r;
}

/// Q |> M = M (.) P -> P ((Q M) P) = ((Q M) P) <| Q
template <class K>
TwoCell<K> morita_cotrace_cell(const MoritaEquivalence<K>& me, const Bimodule<K>& m) {
  DualPair<K> rev = reverse_pair(me);
  const Bimodule<K>&p = me.P(), &q = me.Q();
  Bimodule<K> y = tensor_over(tensor_over(q, m), p);
  TwoCell<K> first = hom_from_dualizable_right(rev, m).inverse();
  TwoCell<K> third = hom_from_dualizable_left(me.pair, y);
  return third * morita_twist(me, m) * first;
}

template <class K>
TraceResult<K> morita_coshadow_iso(const MoritaEquivalence<K>& me, const Bimodule<K>& m) {
  TraceResult<K> r = cotrace(morita_cotrace_cell(me, m), reverse_pair(me));
  if (!is_invertible(r.value)) throw Error(ErrorKind::NotInvertible, "coshadow comparison is not invertible");
  r.provenance["kind"] = "morita_coshadow";
  return r;
}

/// phi: U_R -> M goes to U_S -> Q P = Q U P -> Q M P, on categorical-trace
/// coordinates.
template <class K>
Mat<K> gk_morita_map(const MoritaEquivalence<K>& me, const Bimodule<K>& m) {
  const Bimodule<K>&p = me.P(), &q = me.Q();
  const Algebra<K>& r = m.left();
  Bimodule<K> ur = unit_bimodule(r);
  Bimodule<K> y = tensor_over(tensor_over(q, m), p);
  auto src = gk_coshadow(m), dst = gk_coshadow(y);
  // Q P -> (Q U) P
  TwoCell<K> pad = tensor_map(unitor_r_inv(q), id(p));
  TwoCell<K> einv = me.pair.eps.inverse();
  Mat<K> out(m.field(), dst.dim, src.dim);
  for (std::size_t k = 0; k < src.dim; ++k) {
    TwoCell<K> phi(ur, m, Mat<K>::unvec(src.basis.col(k), m.dim(), r.dim()));
    TwoCell<K> full = tensor_map(tensor_map(id(q), phi), id(p)) * pad * einv;
    out.set_block(0, k, dst.linv * full.map().vec());
  }
  return out;
}

template <class K>
EqualityReport<K> gk_morita_check(const MoritaEquivalence<K>& me, const Bimodule<K>& m) {
  const Bimodule<K>&p = me.P(), &q = me.Q();
  Bimodule<K> y = tensor_over(tensor_over(q, m), p);
  Mat<K> lhs = morita_coshadow_iso(me, m).value * gk_coshadow(m).comparison;
  Mat<K> rhs = gk_coshadow(y).comparison * gk_morita_map(me, m);
  return compare("categorical trace route of the Morita cotrace", lhs, rhs);
}

}  // namespace bicotrace
