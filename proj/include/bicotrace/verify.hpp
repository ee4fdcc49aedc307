#pragma once

// The property suite behind `bicotrace verify` and the acceptance binary.
// Every check belongs to one of twelve numbered criteria. Corpus files supply
// named objects and expected values under "expect"; the rest runs on seeded
// instances over each field context.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bicotrace/coherence.hpp"
#include "bicotrace/workspace.hpp"

namespace bicotrace {

inline const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names = {
      "",        "dual_pairs",       "trace_sanity", "characters", "induction",
      "choice_independence", "cotrace_propositions", "symmetric_collapse", "coshadow_axioms",
      "pairing", "interplay", "morita", "coherence"};
  return names;
}

struct CheckResult {
  int criterion = 0;
  std::string property;  // criterion name, dot, check name
  std::string instance;
  bool pass = false;
  std::string detail;
  Json residual;  // null unless an equality failed
};

struct VerifyOptions {
  std::string corpus = "corpus";
  std::uint64_t seed = 0;
  std::string filter;
};

class Suite {
 public:
  explicit Suite(VerifyOptions opt) : opt_(std::move(opt)) {}

  const VerifyOptions& options() const { return opt_; }
  const std::vector<CheckResult>& results() const { return results_; }

  bool wanted(int c, const std::string& prop) const {
    return opt_.filter.empty() || full(c, prop).find(opt_.filter) != std::string::npos;
  }

  /// Runs fn if the property is selected; engine errors become failures.
  template <class Fn>
  void run(int c, const std::string& prop, const std::string& instance, Fn&& fn) {
    if (!wanted(c, prop)) return;
    try {
      fn();
    } catch (const Error& e) {
      fail(c, prop, instance, Workspace<Rational>::format_error(e));
    } catch (const Json::exception& e) {
      fail(c, prop, instance, std::string("Parse: ") + e.what());
    }
  }

  template <class K>
  void equal(int c, const std::string& prop, const std::string& instance, const EqualityReport<K>& r) {
    CheckResult out{c, full(c, prop), instance, r.equal(), r.name, nullptr};
    if (!out.pass) out.residual = matrix_to_json(r.residual());
    results_.push_back(std::move(out));
  }

  template <class K>
  void equal(int c, const std::string& prop, const std::string& instance, const std::vector<EqualityReport<K>>& rs) {
    for (const auto& r : rs) equal(c, prop, instance, r);
  }

  void truth(int c, const std::string& prop, const std::string& instance, bool ok, std::string detail) {
    results_.push_back({c, full(c, prop), instance, ok, std::move(detail), nullptr});
  }

  void fail(int c, const std::string& prop, const std::string& instance, std::string detail) {
    truth(c, prop, instance, false, std::move(detail));
  }

  bool all_pass() const {
    return std::all_of(results_.begin(), results_.end(), [](const CheckResult& r) { return r.pass; });
  }

  Json to_json() const {
    Json checks = Json::array();
    std::size_t passed = 0;
    for (const auto& r : results_) {
      Json j{{"criterion", r.criterion}, {"property", r.property}, {"instance", r.instance},
             {"pass", r.pass},           {"detail", r.detail}};
      if (!r.residual.is_null()) j["residual"] = r.residual;
      checks.push_back(std::move(j));
      passed += r.pass ? 1 : 0;
    }
    return Json{{"seed", opt_.seed},
                {"checks", checks},
                {"summary", {{"passed", passed}, {"failed", results_.size() - passed}, {"total", results_.size()}}}};
  }

 private:
  static std::string full(int c, const std::string& prop) { return criterion_names().at(c) + "." + prop; }

  VerifyOptions opt_;
  std::vector<CheckResult> results_;
};

// ---------------------------------------------------------------------------
// Seeded instances

namespace detail {

/// Small bimodules over k and k[G] used to fill operand slots.
template <class K>
struct Context {
  Field f;
  std::string label;
  GroupTable g;
  Algebra<K> k, kg;
  std::mt19937_64 rng;

  Context(Field fld, std::string lab, GroupTable grp, std::uint64_t seed)
      : f(fld), label(std::move(lab)), g(std::move(grp)), k(ground_algebra<K>(fld)), kg(group_algebra<K>(g, fld)),
        rng(seed) {}

  const Algebra<K>& alg(int a) const { return a == 0 ? k : kg; }

  Mat<K> sign(std::size_t x) const {
    // parity of the image under the regular permutation action
    Mat<K> p = kg.lmul(x);
    std::vector<bool> seen(p.rows(), false);
    bool odd = false;
    for (std::size_t s = 0; s < p.rows(); ++s) {
      std::size_t len = 0;
      for (std::size_t t = s; !seen[t];) {
        seen[t] = true;
        ++len;
        for (std::size_t r = 0; r < p.rows(); ++r)
          if (!(p(r, t) == scalar<K>(f, 0))) {
            t = r;
            break;
          }
      }
      if (len > 0 && len % 2 == 0) odd = !odd;
    }
    Mat<K> out(f, 1, 1);
    out(0, 0) = scalar<K>(f, odd ? -1 : 1);
    return out;
  }

  std::vector<Mat<K>> ones() const { return std::vector<Mat<K>>(g.order(), Mat<K>::identity(f, 1)); }
  std::vector<Mat<K>> signs() const {
    std::vector<Mat<K>> out;
    for (std::size_t x = 0; x < g.order(); ++x) out.push_back(sign(x));
    return out;
  }

  Bimodule<K> regular_left() const {
    std::vector<Mat<K>> l;
    for (std::size_t i = 0; i < kg.dim(); ++i) l.push_back(kg.lmul(i));
    return Bimodule<K>::make(kg, k, kg.dim(), std::move(l), {Mat<K>::identity(f, kg.dim())});
  }
  Bimodule<K> regular_right() const {
    std::vector<Mat<K>> r;
    for (std::size_t i = 0; i < kg.dim(); ++i) r.push_back(kg.rmul(i));
    return Bimodule<K>::make(k, kg, kg.dim(), {Mat<K>::identity(f, kg.dim())}, std::move(r));
  }

  /// Operands with left algebra a and right algebra b; projective_right keeps
  /// only modules that are projective over b.
  std::vector<Bimodule<K>> pool(int a, int b, bool projective_right = false) const {
    const Mat<K> one = Mat<K>::identity(f, 1);
    if (a == 0 && b == 0) return {vector_space(k, 1), vector_space(k, 2)};
    if (a == 1 && b == 0)
      return {Bimodule<K>::make(kg, k, 1, ones(), {one}), Bimodule<K>::make(kg, k, 1, signs(), {one}), regular_left()};
    if (a == 0 && b == 1) {
      if (projective_right) return {regular_right()};
      return {Bimodule<K>::make(k, kg, 1, {one}, ones()), Bimodule<K>::make(k, kg, 1, {one}, signs()), regular_right()};
    }
    if (projective_right) return {unit_bimodule(kg)};
    return {unit_bimodule(kg), Bimodule<K>::make(kg, kg, 1, ones(), signs())};
  }

  Bimodule<K> pick(int a, int b, bool projective_right = false) {
    auto p = pool(a, b, projective_right);
    return p[std::uniform_int_distribution<std::size_t>(0, p.size() - 1)(rng)];
  }

  int side() { return static_cast<int>(std::uniform_int_distribution<int>(0, 1)(rng)); }

  /// Endo-bimodules over algebra a.
  Bimodule<K> endo(int a) {
    if (a == 0) return pick(0, 0);
    std::vector<Bimodule<K>> p = {unit_bimodule(kg), tensor_over(regular_left(), regular_right())};
    return p[std::uniform_int_distribution<std::size_t>(0, 1)(rng)];
  }

  DualPair<K> pair_for(const Bimodule<K>& m) {
    auto dp = solve_dual_pair(m);
    if (!dp) throw Error(ErrorKind::NotInvertible, "seeded operand has no dual");
    return random_twist(*dp, rng);
  }

  TwoCell<K> cell(const Bimodule<K>& s, const Bimodule<K>& d) { return random_two_cell(s, d, rng); }
};

template <class K>
std::string describe(const Bimodule<K>& b) {
  return "(" + std::to_string(b.left().dim()) + "," + std::to_string(b.right().dim()) + ";" +
         std::to_string(b.dim()) + ")";
}

template <class K>
std::string describe(std::initializer_list<Bimodule<K>> bs) {
  std::string s;
  for (const auto& b : bs) s += describe(b);
  return s;
}

/// R^n with R acting diagonally on both sides; symmetric when R is commutative.
template <class K>
Bimodule<K> free_symmetric(const Algebra<K>& r, std::size_t n) {
  const Field f = r.field();
  std::vector<Mat<K>> l, rt;
  for (std::size_t i = 0; i < r.dim(); ++i) {
    l.push_back(kron(Mat<K>::identity(f, n), r.lmul(i)));
    rt.push_back(kron(Mat<K>::identity(f, n), r.rmul(i)));
  }
  return Bimodule<K>::make(r, r, n * r.dim(), std::move(l), std::move(rt));
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{seed, salt, std::uint64_t{0x5eed}};
  std::uint64_t out = 0;
  std::vector<std::uint32_t> w(2);
  seq.generate(w.begin(), w.end());
  out = (std::uint64_t{w[0]} << 32) | w[1];
  return out;
}

}  // namespace detail

/// Criterion 6: the five cotrace propositions on a group-algebra context.
template <class K>
void seeded_cotrace(Suite& s, detail::Context<K>& c, int instances) {
  auto modules = [&](int i) {
    // alternating among regular left, unit and regular right modules
    switch (i % 3) {
      case 0: return c.regular_left();
      case 1: return unit_bimodule(c.kg);
      default: return c.regular_right();
    }
  };
  auto sidx = [&](const Algebra<K>& a) { return a.dim() == 1 ? 0 : 1; };
  for (int i = 0; i < instances; ++i) {
    const std::string inst = c.label + "#" + std::to_string(i);
    Bimodule<K> m = modules(i);
    const int r = sidx(m.left()), sr = sidx(m.right());
    s.run(6, "tightening", inst, [&] {
      DualPair<K> dp = c.pair_for(m);
      Bimodule<K> q = unit_bimodule(m.right()), p = unit_bimodule(m.left());
      TwoCell<K> f = c.cell(hom_right(m, q), hom_left(p, m));
      s.equal(6, "tightening", inst, tighten(c.cell(q, q), f, c.cell(p, p), dp));
    });
    s.run(6, "unit_cotrace", inst, [&] {
      Bimodule<K> u = unit_bimodule(c.alg(i % 2));
      Bimodule<K> q = c.endo(i % 2), p = c.endo(i % 2);
      s.equal(6, "unit_cotrace", inst, unit_cotrace(c.cell(hom_right(u, q), hom_left(p, u))));
    });
    s.run(6, "composite", inst, [&] {
      Bimodule<K> n = c.pick(c.side(), r, true);
      DualPair<K> dm = c.pair_for(m), dn = c.pair_for(n);
      Bimodule<K> q = unit_bimodule(m.right()), p = unit_bimodule(m.left()), l = unit_bimodule(n.left());
      TwoCell<K> f = c.cell(hom_right(m, q), hom_left(p, m));
      TwoCell<K> g = c.cell(hom_right(n, p), hom_left(l, n));
      s.equal(6, "composite", inst + " N" + detail::describe(n), cotrace_compose(f, g, dm, dn));
    });
    s.run(6, "mate", inst, [&] {
      DualPair<K> dp = c.pair_for(m);
      Bimodule<K> q = c.endo(sr), p = c.endo(r);
      s.equal(6, "mate", inst, cotrace_of_mate(c.cell(hom_right(m, q), hom_left(p, m)), dp));
      Bimodule<K> qt = unit_bimodule(m.left()), pt = unit_bimodule(m.right());
      s.equal(6, "mate", inst, trace_of_mate(c.cell(tensor_over(qt, m), tensor_over(m, pt)), dp));
    });
    s.run(6, "cyclicity", inst, [&] {
      DualPair<K> dm = c.pair_for(m), dn = c.pair_for(m);
      Bimodule<K> q1 = unit_bimodule(m.right()), p1 = unit_bimodule(m.left());
      Bimodule<K> p2 = c.endo(r), q2 = c.endo(sr);
      TwoCell<K> f = c.cell(hom_right(m, q1), hom_left(p1, m));
      TwoCell<K> g = c.cell(tensor_over(p2, m), tensor_over(m, q2));
      s.equal(6, "cyclicity", inst, cotrace_cyclic(f, g, dm, dn));
    });
  }
}

/// Criterion 7 over commutative bases.
template <class K>
void seeded_symmetric(Suite& s, const Field& f, std::mt19937_64& rng, int instances) {
  std::vector<std::pair<std::string, Algebra<K>>> bases = {
      {"k", ground_algebra<K>(f)},
      {"k[C2]", group_algebra<K>(cyclic_group(2), f)},
      {"k[x]/x^2", truncated_polynomial<K>(2, f)},
      {"k[C3]", group_algebra<K>(cyclic_group(3), f)}};
  for (int i = 0; i < instances; ++i) {
    const auto& [name, r] = bases[static_cast<std::size_t>(i) % bases.size()];
    const std::string inst = f.name() + " " + name + "#" + std::to_string(i);
    s.run(7, "collapse", inst, [&] {
      Bimodule<K> m = detail::free_symmetric(r, 1 + static_cast<std::size_t>(i % 2));
      Bimodule<K> q = unit_bimodule(r);
      Bimodule<K> p = i % 3 == 2 ? detail::free_symmetric(r, 1) : unit_bimodule(r);
      auto dp = solve_dual_pair(m);
      auto dual = solve_dual_pair(canonical_dual(m));
      if (!dp || !dual) throw Error(ErrorKind::NotInvertible, "free module without a dual");
      TwoCell<K> fc = random_two_cell(hom_right(m, q), hom_right(m, p), rng);
      s.equal(7, "collapse", inst, sym_collapse(fc, random_twist(*dp, rng), *dual));
    });
  }
}

/// Criteria 8, 9 and 12 on random operand tuples of a context.
template <class K>
void seeded_structure(Suite& s, detail::Context<K>& c, int instances) {
  for (int i = 0; i < instances; ++i) {
    const std::string inst = c.label + "#" + std::to_string(i);
    int a = c.side(), b = c.side(), d = c.side(), e = c.side(), g = c.side(), h = c.side();

    s.run(8, "hexagon", inst, [&] {
      Bimodule<K> m = c.pick(a, b), n = c.pick(b, d), p = c.pick(a, d);
      s.equal(8, "hexagon", inst + " " + detail::describe({m, n, p}), coshadow_hexagon(m, n, p));
    });
    s.run(8, "unit_triangle", inst, [&] {
      Bimodule<K> m = c.endo(a);
      s.equal(8, "unit_triangle", inst + " " + detail::describe(m), coshadow_unit(m));
    });
    s.run(8, "categorical_trace_natural", inst, [&] {
      Bimodule<K> m = c.endo(a);
      TwoCell<K> f = c.cell(m, m), g2 = c.cell(m, m);
      s.equal(8, "categorical_trace_natural", inst + " " + detail::describe(m), functoriality(f, g2));
    });
    s.run(9, "square", inst, [&] {
      Bimodule<K> x = c.pick(a, b), y = c.pick(b, a), z = c.pick(a, b);
      s.equal(9, "square", inst + " " + detail::describe({x, y, z}), pairing_square(x, y, z));
    });

    s.run(12, "tensor_pentagon", inst, [&] {
      Bimodule<K> w = c.pick(a, b), x = c.pick(b, d), y = c.pick(d, e), z = c.pick(e, g);
      s.equal(12, "tensor_pentagon", inst, tensor_pentagon(w, x, y, z));
      s.equal(12, "tensor_pentagon", inst, tensor_triangle(w, x));
    });
    s.run(12, "pentagon_t_right", inst, [&] {
      Bimodule<K> w = c.pick(a, b), x = c.pick(b, d), y = c.pick(d, e), z = c.pick(g, e);
      s.equal(12, "pentagon_t_right", inst + " " + detail::describe({w, x, y, z}), pentagon_t_right(w, x, y, z));
    });
    s.run(12, "pentagon_t_left", inst, [&] {
      Bimodule<K> x = c.pick(a, b), w = c.pick(a, h), y = c.pick(b, d), z = c.pick(d, e);
      s.equal(12, "pentagon_t_left", inst + " " + detail::describe({w, x, y, z}), pentagon_t_left(w, x, y, z));
    });
    s.run(12, "pentagon_a_right", inst, [&] {
      Bimodule<K> w = c.pick(a, b), x = c.pick(b, d), y = c.pick(e, d), z = c.pick(e, g);
      s.equal(12, "pentagon_a_right", inst + " " + detail::describe({w, x, y, z}), pentagon_a_right(w, x, y, z));
    });
    s.run(12, "pentagon_a_left", inst, [&] {
      Bimodule<K> w = c.pick(a, b), x = c.pick(e, b), y = c.pick(e, d), z = c.pick(d, g);
      s.equal(12, "pentagon_a_left", inst + " " + detail::describe({w, x, y, z}), pentagon_a_left(w, x, y, z));
    });
    s.run(12, "unit_isos", inst, [&] {
      Bimodule<K> x = c.pick(a, b), y = c.pick(d, b), yl = c.pick(a, d);
      s.equal(12, "unit_isos", inst, hom_unit_compatibility(x, y));
      s.equal(12, "unit_isos", inst, hom_unit_compatibility_left(x, yl));
      s.equal(12, "unit_isos", inst, hom_unit_equality(x));
      s.equal(12, "unit_isos", inst, shadow_unit(c.endo(a)));
    });
    s.run(12, "adjunction", inst, [&] {
      Bimodule<K> m = c.pick(a, b), n = c.pick(b, d);
      s.equal(12, "adjunction", inst, adjunction_triangles(m, n));
    });
    s.run(12, "mu_inverse", inst, [&] {
      Bimodule<K> m = c.pick(a, b), p = c.pick(d, e, true), n = c.pick(b, e);
      s.equal(12, "mu_inverse", inst, mu_inverse_check(m, c.pair_for(p), n));
    });
    s.run(12, "naturality", inst, [&] {
      Bimodule<K> m = c.pick(a, b), n = c.pick(b, a), m2 = c.pick(a, b), x = c.pick(d, b), xl = c.pick(a, d);
      s.equal(12, "naturality", inst, shadow_theta_natural(c.cell(m, m), c.cell(n, n)));
      s.equal(12, "naturality", inst, shadow_hexagon(m, n, c.endo(a)));
      s.equal(12, "naturality", inst, hom_functoriality(c.cell(m, m2), c.cell(m2, m), x));
      s.equal(12, "naturality", inst, hom_functoriality_left(c.cell(m, m2), c.cell(m2, m), xl));
    });
  }
}

// ---------------------------------------------------------------------------
// Corpus expectations

namespace detail {

template <class K>
std::vector<K> scalars(const Workspace<K>& ws, const Json& j) {
  std::vector<K> out;
  for (const auto& x : j) out.push_back(ws.scalar_of(x));
  return out;
}

template <class K>
Mat<K> row(const Field& f, const std::vector<K>& v) {
  Mat<K> m(f, 1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m(0, i) = v[i];
  return m;
}

template <class K>
void check_pair(Suite& s, const std::string& inst, const DualPair<K>& dp) {
  s.truth(1, "triangles", inst, triangles_hold(dp), "triangle identities");
}

}  // namespace detail

/// One "expect" entry of a corpus workspace.
template <class K>
void run_expectation(Suite& s, Workspace<K>& ws, const Json& e, const std::string& inst, std::mt19937_64& rng) {
  const Field f = ws.field();
  const std::string check = e.at("check").get<std::string>();
  auto name = [&](const char* k) { return e.at(k).get<std::string>(); };
  if (check == "dual_pair") {
    s.run(1, "solver", inst, [&] {
      auto dp = solve_dual_pair(ws.bimodule(name("module")));
      s.truth(1, "solver", inst, dp.has_value(), "solver returned a dual pair");
      if (dp) detail::check_pair(s, inst, *dp);
    });
  } else if (check == "pair") {
    s.run(1, "triangles", inst, [&] { detail::check_pair(s, inst, ws.pair(name("pair"))); });
  } else if (check == "no_dual") {
    s.run(1, "solver", inst, [&] {
      s.truth(1, "solver", inst, !solve_dual_pair(ws.bimodule(name("module"))).has_value(),
              "solver returned none");
    });
  } else if (check == "euler") {
    s.run(2, "euler", inst, [&] {
      const DualPair<K>& dp = ws.pair(name("pair"));
      s.equal(2, "euler", inst, compare("euler characteristic", euler_char(dp).value, ws.matrix_of(e.at("value"))));
    });
  } else if (check == "hattori_stallings") {
    s.run(2, "hattori_stallings", inst, [&] {
      const DualPair<K>& dp = ws.pair(name("pair"));
      s.equal(2, "hattori_stallings", inst,
              compare("Hattori-Stallings trace", hattori_stallings(ws.cell(name("cell")), dp).value,
                      ws.matrix_of(e.at("value"))));
    });
  } else if (check == "cotrace") {
    s.run(2, "cotrace_value", inst, [&] {
      const TwoCell<K>& c = ws.cell(name("cell"));
      Mat<K> v = cotrace(c, ws.pair(name("pair"))).value;
      // read out in the coordinates of the target bimodule
      v = cohh0(hom_info(c.dst(), HomSide::left).target).incl * v;
      s.equal(2, "cotrace_value", inst, compare("cotrace read-out", v, ws.matrix_of(e.at("value"))));
    });
  } else if (check == "character") {
    s.run(3, "character", inst, [&] {
      const Representation<K>& v = ws.representation(name("representation"));
      ClassData cd = conjugacy_classes(v.group);
      s.equal(3, "character", inst,
              compare("character", detail::row(f, character(v, cd)), detail::row(f, detail::scalars(ws, e.at("value")))));
      s.equal(3, "character", inst,
              compare("brute-force traces", detail::row(f, direct_character(v, cd)),
                      detail::row(f, detail::scalars(ws, e.at("value")))));
    });
  } else if (check == "induction") {
    s.run(4, "three_routes", inst, [&] {
      const AlgebraMorphism<K>& phi = ws.morphism(name("morphism"));
      const GroupTable& g = ws.group(name("group"));
      const Representation<K>& w = ws.representation(name("representation"));
      auto reps = e.at("reps").get<std::vector<std::size_t>>();
      InductionReport<K> r = induction_character_check(phi, g, w, reps);
      Mat<K> want = detail::row(f, detail::scalars(ws, e.at("value")));
      const std::string tag = r.modular ? " (coset-sum form)" : "";
      s.equal(4, "three_routes", inst, compare("direct module character" + tag, detail::row(f, r.direct), want));
      s.equal(4, "three_routes", inst, compare("factorization" + tag, detail::row(f, r.factorized), want));
      s.equal(4, "three_routes", inst, compare("displayed formula" + tag, detail::row(f, r.formula), want));
    });
    if (e.contains("restrict")) {
      s.run(4, "restriction", inst, [&] {
        const Representation<K>& v = ws.representation(name("restrict"));
        s.equal(4, "restriction", inst,
                restriction_character_check(ws.morphism(name("morphism")), ws.group(name("subgroup")), v));
      });
    }
  } else if (check == "independence") {
    s.run(5, "trace_and_cotrace", inst, [&] {
      const Bimodule<K>& m = ws.bimodule(name("module"));
      auto dp = solve_dual_pair(m);
      if (!dp) throw Error(ErrorKind::NotInvertible, "module has no dual");
      DualPair<K> other = random_twist(*dp, rng);
      s.truth(5, "trace_and_cotrace", inst, !(other.eta.map() == dp->eta.map()) || m.dim() == 0,
              "the two dual pairs are distinct");
      Bimodule<K> ul = unit_bimodule(m.left()), ur = unit_bimodule(m.right());
      for (int t = 0; t < 2; ++t) {
        TwoCell<K> tf = random_two_cell(tensor_over(ul, m), tensor_over(m, ur), rng);
        s.equal(5, "trace_and_cotrace", inst, compare("trace", trace(tf, *dp).value, trace(tf, other).value));
        TwoCell<K> cf = random_two_cell(hom_right(m, ur), hom_left(ul, m), rng);
        s.equal(5, "trace_and_cotrace", inst, compare("cotrace", cotrace(cf, *dp).value, cotrace(cf, other).value));
      }
    });
  } else if (check == "categorical_trace") {
    s.run(8, "categorical_trace", inst, [&] {
      const Bimodule<K>& m = ws.bimodule(name("module"));
      GkValue<K> gk = gk_coshadow(m);
      s.truth(8, "categorical_trace", inst, is_invertible(gk.comparison) && gk.dim == cohh0(m).dim,
              "comparison with HH^0 is invertible");
      TwoCell<K> g = random_two_cell(m, m, rng);
      s.equal(8, "categorical_trace", inst,
              compare("natural in the bimodule", gk.comparison * gk_map(g), cohh0_map(g) * gk.comparison));
    });
  } else if (check == "lipman") {
    s.run(10, "interplay", inst, [&] {
      const DualPair<K>& fp = ws.pair(name("pair"));
      InterplayData<K> d = lipman_setup(fp, ws.bimodule(name("module")));
      s.equal(10, "interplay", inst, interplay_hypothesis(d));
      s.equal(10, "interplay", inst, interplay_conclusion(d));
      s.equal(10, "interplay", inst, lipman_scalar(fp));
    });
  } else if (check == "morita") {
    s.run(11, "invariance", inst, [&] {
      const MoritaEquivalence<K>& me = ws.morita(name("morita"));
      const Bimodule<K>& m = ws.bimodule(name("module"));
      Mat<K> sh = morita_shadow_iso(me, m).value, co = morita_coshadow_iso(me, m).value;
      s.truth(11, "invariance", inst, is_invertible(sh), "shadow iso " + sh.shape() + " is invertible");
      s.truth(11, "invariance", inst, is_invertible(co), "coshadow iso " + co.shape() + " is invertible");
      Bimodule<K> moved = tensor_over(tensor_over(me.Q(), m), me.P());
      s.truth(11, "invariance", inst, hh0(m).dim == hh0(moved).dim && cohh0(m).dim == cohh0(moved).dim,
              "HH_0 and HH^0 dimensions match");
      if (e.contains("dims")) {
        auto dims = e.at("dims").get<std::vector<std::size_t>>();
        s.truth(11, "invariance", inst, dims.size() == 2 && hh0(m).dim == dims[0] && cohh0(m).dim == dims[1],
                "expected HH dimensions");
      }
      s.equal(11, "invariance", inst, gk_morita_check(me, m));
    });
  } else {
    s.fail(0, "unknown", inst, "unknown check '" + check + "'");
  }
}

/// Loads one corpus file and runs its expectations.
inline void run_corpus_file(Suite& s, const std::filesystem::path& path) {
  const std::string file = path.filename().string();
  Json doc;
  try {
    doc = read_json_file(path.string());
  } catch (const Error& e) {
    s.fail(0, "load", file, e.what());
    return;
  }
  if (!doc.contains("expect")) return;
  Field f = Field::rationals();
  try {
    f = workspace_field(doc);
  } catch (const Error& e) {
    s.fail(0, "load", file, e.what());
    return;
  }
  with_field(f, [&]<class K>() {
    Workspace<K> ws(doc, f);
    std::mt19937_64 rng(detail::mix(s.options().seed, std::hash<std::string>{}(file)));
    const Json& ex = doc.at("expect");
    for (std::size_t i = 0; i < ex.size(); ++i) {
      std::string inst = file + "#" + std::to_string(i);
      if (ex[i].contains("label")) inst += " " + ex[i].at("label").get<std::string>();
      try {
        run_expectation(s, ws, ex[i], inst, rng);
      } catch (const Json::exception& e) {
        s.fail(0, "load", inst, std::string("Parse: ") + e.what());
      }
    }
  });
}

/// Seeded-run parameters, read from corpus/seeded.json when present.
struct SeededPlan {
  int instances = 5;
  std::vector<std::string> fields = {"Q", "F5", "F2"};
};

inline SeededPlan read_plan(const std::filesystem::path& dir) {
  SeededPlan p;
  auto file = dir / "seeded.json";
  if (!std::filesystem::exists(file)) return p;
  Json j = read_json_file(file.string());
  p.instances = j.value("instances", p.instances);
  if (j.contains("fields")) p.fields = j.at("fields").get<std::vector<std::string>>();
  return p;
}

/// The full suite: corpus expectations, then seeded properties per field.
inline Suite run_verify(const VerifyOptions& opt) {
  Suite s(opt);
  namespace fs = std::filesystem;
  const fs::path dir(opt.corpus);
  if (!fs::is_directory(dir)) throw Error(ErrorKind::Io, "corpus directory not found: " + opt.corpus);
  std::vector<fs::path> files;
  for (const auto& ent : fs::directory_iterator(dir))
    if (ent.path().extension() == ".json") files.push_back(ent.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) run_corpus_file(s, p);

  SeededPlan plan = read_plan(dir);
  std::uint64_t salt = 0;
  for (const auto& fname : plan.fields) {
    Field f = Field::parse(fname);
    with_field(f, [&]<class K>() {
      // C2 carries the modular case in characteristic 2; C3 adds a second group elsewhere
      detail::Context<K> c2(f, f.name() + " C2", cyclic_group(2), detail::mix(opt.seed, ++salt));
      seeded_cotrace(s, c2, plan.instances);
      if (f.characteristic() != 2) {
        detail::Context<K> c3(f, f.name() + " C3", cyclic_group(3), detail::mix(opt.seed, ++salt));
        seeded_cotrace(s, c3, plan.instances);
      }
      std::mt19937_64 rng(detail::mix(opt.seed, ++salt));
      if (f.characteristic() == 0) seeded_symmetric<K>(s, f, rng, plan.instances + 3);
      seeded_structure(s, c2, plan.instances);
    });
  }
  return s;
}

}  // namespace bicotrace
