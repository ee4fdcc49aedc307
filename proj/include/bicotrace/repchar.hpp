#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "bicotrace/traceengine.hpp"

namespace bicotrace {

struct ClassData {
  GroupTable group;
  std::vector<std::vector<std::size_t>> classes;  // ordered by smallest element
  std::vector<std::size_t> class_of;
};

inline ClassData conjugacy_classes(const GroupTable& g) {
  const std::size_t n = g.order();
  ClassData cd{g, {}, std::vector<std::size_t>(n, n)};
  for (std::size_t x = 0; x < n; ++x) {
    if (cd.class_of[x] != n) continue;
    std::vector<std::size_t> cls;
    for (std::size_t s = 0; s < n; ++s) {
      std::size_t y = g.mul(g.mul(s, x), g.inv(s));
      if (cd.class_of[y] == n) {
        cd.class_of[y] = cd.classes.size();
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    cd.classes.push_back(std::move(cls));
  }
  return cd;
}

/// A representation of G as a (k[G], k)-bimodule; action[g] is lact(g).
template <class K>
struct Representation {
  GroupTable group;
  Bimodule<K> underlying;

  const Mat<K>& action(std::size_t g) const { return underlying.lact(g); }
  std::size_t dim() const { return underlying.dim(); }
};

/// Builds the representation from per-element matrices over the group algebra kg.
template <class K>
Representation<K> make_representation(const Algebra<K>& kg, const GroupTable& g, std::vector<Mat<K>> action) {
  const std::size_t n = g.order();
  if (kg.dim() != n || action.size() != n) throw Error(ErrorKind::Mismatch, "need one matrix per group element");
  const Field f = kg.field();
  const std::size_t d = action.empty() ? 0 : action[0].rows();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!(action[g.mul(a, b)] == action[a] * action[b]))
        throw Error(ErrorKind::InvalidBimodule, "action is not a homomorphism at (" + std::to_string(a) + ", " +
                                                std::to_string(b) + ")",
                    {a, b});
  return {g, Bimodule<K>::make(kg, ground_algebra<K>(f), d, std::move(action), {Mat<K>::identity(f, d)})};
}

/// Reads a (k[G], k)-bimodule as a representation.
template <class K>
Representation<K> as_representation(const GroupTable& g, const Bimodule<K>& b) {
  if (b.left().dim() != g.order() || b.right().dim() != 1)
    throw Error(ErrorKind::Mismatch, "bimodule is not a (k[G], k)-bimodule for this group");
  return {g, b};
}

template <class K>
Representation<K> trivial_representation(const Algebra<K>& kg, const GroupTable& g) {
  return make_representation(kg, g, std::vector<Mat<K>>(g.order(), Mat<K>::identity(kg.field(), 1)));
}

template <class K>
Representation<K> regular_representation(const Algebra<K>& kg, const GroupTable& g) {
  std::vector<Mat<K>> act;
  for (std::size_t i = 0; i < g.order(); ++i) act.push_back(kg.lmul(i));
  return make_representation(kg, g, std::move(act));
}

/// Per-class traces of the action matrices.
template <class K>
std::vector<K> direct_character(const Representation<K>& v, const ClassData& cd) {
  std::vector<K> out;
  for (const auto& cls : cd.classes) out.push_back(v.action(cls.front()).trace());
  return out;
}

namespace detail {

// Value in k of a map HH_0(k[G]) -> HH_0(k) at the class of g.
template <class K>
K read_at(const Mat<K>& chi, const Algebra<K>& kg, std::size_t g) {
  auto hg = hh0(unit_bimodule(kg));
  auto hk = hh0(unit_bimodule(ground_algebra<K>(kg.field())));
  Mat<K> x = hk.sect * chi * hg.proj * Mat<K>::unit_vector(kg.field(), kg.dim(), g);
  return x(0, 0);
}

}  // namespace detail

/// chi(V) from the Euler characteristic of dp, one value per conjugacy class;
/// checked against the direct traces of the action matrices.
template <class K>
std::vector<K> character(const Representation<K>& v, const DualPair<K>& dp, const ClassData& cd) {
  if (!(dp.M == v.underlying)) throw Error(ErrorKind::Mismatch, "dual pair is for a different module");
  Mat<K> chi = euler_char(dp).value;
  std::vector<K> out;
  for (const auto& cls : cd.classes) out.push_back(detail::read_at(chi, v.underlying.left(), cls.front()));
  for (const auto& cls : cd.classes)
    for (auto x : cls)
      if (!(detail::read_at(chi, v.underlying.left(), x) == out[cd.class_of[x]]))
        throw Error(ErrorKind::Mismatch, "character is not a class function", {x});
  if (out != direct_character(v, cd)) throw Error(ErrorKind::Mismatch, "character disagrees with matrix traces");
  return out;
}

template <class K>
std::vector<K> character(const Representation<K>& v, const ClassData& cd) {
  auto dp = solve_dual_pair(v.underlying);
  if (!dp) throw Error(ErrorKind::Mismatch, "representation has no dual");
  return character(v, *dp, cd);
}

/// Res = _phi k[G] (.) V for phi: k[H] -> k[G].
template <class K>
Representation<K> restrict_rep(const AlgebraMorphism<K>& phi, const GroupTable& h, const Representation<K>& v) {
  DualPair<K> rp = restriction_pair(phi);
  return {h, tensor_over(rp.M, v.underlying)};
}

/// Ind = k[G]_phi (.) W for phi: k[H] -> k[G].
template <class K>
Representation<K> induce_rep(const AlgebraMorphism<K>& phi, const GroupTable& g, const Representation<K>& w,
                             const std::vector<std::size_t>& reps) {
  DualPair<K> ip = induction_pair(g, phi, reps);
  return {g, tensor_over(ip.M, w.underlying)};
}

/// The three routes to chi(Ind W), one vector per route over the classes of G.
template <class K>
struct InductionReport {
  std::vector<K> direct, factorized, formula;
  bool modular = false;  // char k divides |H|; formula used the coset sum
  bool equal() const { return direct == factorized && direct == formula; }
};

template <class K>
InductionReport<K> induction_character_check(const AlgebraMorphism<K>& phi, const GroupTable& g,
                                             const Representation<K>& w,
                                             const std::vector<std::size_t>& reps) {
  const Field f = phi.dst.field();
  ClassData cg = conjugacy_classes(g);
  auto hel = detail::subgroup_elements(phi);
  std::vector<std::size_t> hpos(g.order(), g.order());
  for (std::size_t i = 0; i < hel.size(); ++i) hpos[hel[i]] = i;
  InductionReport<K> rep;
  DualPair<K> ip = induction_pair(g, phi, reps);
  Representation<K> ind{g, tensor_over(ip.M, w.underlying)};
  rep.direct = direct_character(ind, cg);
  // chi(W) o chi(k[G]_phi)
  auto dw = solve_dual_pair(w.underlying);
  if (!dw) throw Error(ErrorKind::Mismatch, "representation has no dual");
  Mat<K> chain = euler_char(*dw).value * euler_char(ip).value;
  for (const auto& cls : cg.classes) rep.factorized.push_back(detail::read_at(chain, phi.dst, cls.front()));
  // displayed formula
  auto chi_w = [&](std::size_t x) { return w.action(hpos[x]).trace(); };
  const std::size_t order_h = hel.size();
  rep.modular = f.characteristic() != 0 && order_h % f.characteristic() == 0;
  for (const auto& cls : cg.classes) {
    std::size_t x = cls.front();
    K acc = scalar<K>(f, 0);
    if (!rep.modular) {
      for (std::size_t s = 0; s < g.order(); ++s) {
        std::size_t y = g.mul(g.mul(g.inv(s), x), s);
        if (hpos[y] < g.order()) acc = acc + chi_w(y);
      }
      acc = acc / scalar<K>(f, static_cast<std::int64_t>(order_h));
    } else {
      for (auto r : reps) {
        std::size_t y = g.mul(g.mul(g.inv(r), x), r);
        if (hpos[y] < g.order()) acc = acc + chi_w(y);
      }
    }
    rep.formula.push_back(acc);
  }
  return rep;
}

/// chi(V) o chi(_phi k[G]) against the traces of Res V, per element of H.
template <class K>
EqualityReport<K> restriction_character_check(const AlgebraMorphism<K>& phi, const GroupTable& h,
                                              const Representation<K>& v) {
  const Field f = phi.dst.field();
  Representation<K> res = restrict_rep(phi, h, v);
  auto hel = detail::subgroup_elements(phi);
  DualPair<K> rp = restriction_pair(phi);
  auto dv = solve_dual_pair(v.underlying);
  if (!dv) throw Error(ErrorKind::Mismatch, "representation has no dual");
  Mat<K> chain = euler_char(*dv).value * euler_char(rp).value;
  Mat<K> lhs(f, 1, hel.size()), rhs(f, 1, hel.size());
  for (std::size_t i = 0; i < hel.size(); ++i) {
    lhs(0, i) = detail::read_at(chain, phi.src, i);
    rhs(0, i) = res.action(i).trace();
    if (!(rhs(0, i) == v.action(hel[i]).trace())) throw Error(ErrorKind::Mismatch, "restriction changed a trace", {i});
  }
  return compare("restricted character", lhs, rhs);
}

}  // namespace bicotrace
