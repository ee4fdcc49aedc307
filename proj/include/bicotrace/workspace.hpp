#pragma once

// JSON workspaces: named groups, algebras, morphisms, bimodules, 2-cells,
// dual pairs, Morita equivalences and representations. Entries are resolved
// on first use, validated as they are built, and may refer to each other in
// any order.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bicotrace/json_io.hpp"
#include "bicotrace/repchar.hpp"

namespace bicotrace {

/// Field named by the workspace, unless overridden.
inline Field workspace_field(const Json& doc, const std::string& override_name = "") {
  if (!override_name.empty()) return Field::parse(override_name);
  if (doc.contains("field")) return Field::parse(doc.at("field").get<std::string>());
  return Field::rationals();
}

/// Calls fn.template operator()<K>() with K matching the field.
template <class Fn>
decltype(auto) with_field(const Field& f, Fn&& fn) {
  if (f.kind == FieldKind::rationals) return fn.template operator()<Rational>();
  return fn.template operator()<Fp>();
}

/// e A as a (k, A)-bimodule for an idempotent e of A.
template <class K>
Bimodule<K> right_ideal(const Algebra<K>& a, const Algebra<K>& ground, const Mat<K>& e) {
  const Field f = a.field();
  Mat<K> le = a.left_mult(e);
  if (!(le * e == e)) throw Error(ErrorKind::Mismatch, "element is not an idempotent");
  // image of x -> e x
  Mat<K> incl = subspace_with_inclusion(f, a.dim(), vstack<K>({Mat<K>::identity(f, a.dim()) - le}, f, a.dim()));
  Mat<K> linv = left_inverse(incl);
  std::vector<Mat<K>> r;
  for (std::size_t j = 0; j < a.dim(); ++j) r.push_back(linv * a.rmul(j) * incl);
  return Bimodule<K>::make(ground, a, incl.cols(), {Mat<K>::identity(f, incl.cols())}, std::move(r));
}

template <class K>
class Workspace {
 public:
  Workspace(Json doc, Field f) : doc_(std::move(doc)), field_(f), ground_(ground_algebra<K>(f)) {}

  const Field& field() const { return field_; }
  const Json& doc() const { return doc_; }
  const Algebra<K>& ground() const { return ground_; }

  const GroupTable& group(const std::string& n) { return get(groups_, "groups", n, [&](const Json& j) { return make_group(j); }); }
  const Algebra<K>& algebra(const std::string& n) {
    return get(algebras_, "algebras", n, [&](const Json& j) { return make_algebra(j); });
  }
  const AlgebraMorphism<K>& morphism(const std::string& n) {
    return get(morphisms_, "morphisms", n, [&](const Json& j) { return make_morphism_entry(j); });
  }
  const Bimodule<K>& bimodule(const std::string& n) {
    return get(bimodules_, "bimodules", n, [&](const Json& j) { return make_bimodule(j); });
  }
  const TwoCell<K>& cell(const std::string& n) {
    return get(cells_, "cells", n, [&](const Json& j) { return make_cell(j); });
  }
  const DualPair<K>& pair(const std::string& n) {
    return get(pairs_, "pairs", n, [&](const Json& j) { return make_pair_entry(j); });
  }
  const MoritaEquivalence<K>& morita(const std::string& n) {
    return get(moritas_, "morita", n, [&](const Json& j) { return make_morita_entry(j); });
  }
  const Representation<K>& representation(const std::string& n) {
    return get(reps_, "representations", n, [&](const Json& j) { return make_rep(j); });
  }

  bool has(const std::string& section, const std::string& n) const {
    return doc_.contains(section) && doc_.at(section).contains(n);
  }

  std::vector<std::string> names(const std::string& section) const {
    std::vector<std::string> out;
    if (doc_.contains(section))
      for (auto it = doc_.at(section).begin(); it != doc_.at(section).end(); ++it) out.push_back(it.key());
    return out;
  }

  /// Resolves every entry; each failure is reported once, prefixed by its path.
  std::vector<std::string> check_all() {
    std::vector<std::string> errors;
    auto run = [&](const std::string& section, auto&& fn) {
      for (const auto& n : names(section)) {
        try {
          fn(n);
        } catch (const Error& e) {
          errors.push_back(format_error(e));
        }
      }
    };
    run("groups", [&](const std::string& n) { group(n); });
    run("algebras", [&](const std::string& n) { algebra(n); });
    run("morphisms", [&](const std::string& n) { morphism(n); });
    run("bimodules", [&](const std::string& n) { bimodule(n); });
    run("representations", [&](const std::string& n) { representation(n); });
    run("cells", [&](const std::string& n) { cell(n); });
    run("pairs", [&](const std::string& n) { pair(n); });
    run("morita", [&](const std::string& n) { morita(n); });
    return errors;
  }

  static std::string format_error(const Error& e) {
    std::string s = e.what();
    if (!e.indices().empty()) {
      s += " [indices";
      for (auto i : e.indices()) s += " " + std::to_string(i);
      s += "]";
    }
    return s;
  }

  K scalar_of(const Json& j) const { return scalar_from_json<K>(field_, j); }
  Mat<K> matrix_of(const Json& j, std::size_t cols_hint = 0) const { return matrix_from_json<K>(field_, j, cols_hint); }

 private:
  template <class T, class Make>
  const T& get(std::map<std::string, T>& store, const char* section, const std::string& n, Make&& make) {
    auto it = store.find(n);
    if (it != store.end()) return it->second;
    if (!has(section, n)) throw Error(ErrorKind::Reference, std::string("unknown ") + section + " entry '" + n + "'");
    const std::string key = std::string(section) + "." + n;
    if (!resolving_.insert(key).second) throw Error(ErrorKind::Reference, "circular reference through " + key);
    try {
      T v = make(doc_.at(section).at(n));
      resolving_.erase(key);
      return store.emplace(n, std::move(v)).first->second;
    } catch (const Error& e) {
      resolving_.erase(key);
      std::string what = e.what();
      const std::string prefix = std::string(kind_name(e.kind())) + ": ";
      if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
      if (what.rfind(key + ": ", 0) != 0 && what.find(" <- ") == std::string::npos) what = key + ": " + what;
      throw Error(e.kind(), what, e.indices());
    } catch (const Json::exception& e) {
      resolving_.erase(key);
      throw Error(ErrorKind::Parse, key + ": " + e.what());
    }
  }

  static std::string str(const Json& j, const char* k) {
    if (!j.contains(k) || !j.at(k).is_string())
      throw Error(ErrorKind::Parse, std::string("missing string field '") + k + "'");
    return j.at(k).get<std::string>();
  }

  GroupTable make_group(const Json& j) {
    if (j.contains("cyclic")) return cyclic_group(j.at("cyclic").get<std::size_t>());
    if (j.contains("symmetric")) {
      if (j.at("symmetric").get<int>() != 3) throw Error(ErrorKind::Parse, "only the symmetric group on 3 letters");
      return symmetric_group_3();
    }
    if (j.contains("table")) return GroupTable(j.at("table").get<std::vector<std::vector<std::size_t>>>());
    if (j.contains("subgroup_of"))
      return subgroup_table(group(j.at("subgroup_of").get<std::string>()), j.at("elements").get<std::vector<std::size_t>>());
    throw Error(ErrorKind::Parse, "group needs cyclic, symmetric, table or subgroup_of");
  }

  Algebra<K> make_algebra(const Json& j) {
    if (j.contains("ground")) return ground_;
    if (j.contains("group")) return group_algebra<K>(group(j.at("group").get<std::string>()), field_);
    if (j.contains("matrix")) {
      const Algebra<K>& over = j.contains("over") ? algebra(j.at("over").get<std::string>()) : ground_;
      return matrix_algebra_over(over, j.at("matrix").get<std::size_t>());
    }
    if (j.contains("truncated_polynomial")) return truncated_polynomial<K>(j.at("truncated_polynomial").get<std::size_t>(), field_);
    if (j.contains("upper_triangular")) return upper_triangular_2<K>(field_);
    if (j.contains("opposite")) return opposite(algebra(j.at("opposite").get<std::string>()));
    if (j.contains("mul")) {
      const std::size_t d = j.at("dim").get<std::size_t>();
      std::vector<std::vector<std::vector<K>>> mul(d, std::vector<std::vector<K>>(d));
      const Json& m = j.at("mul");
      if (m.size() != d) throw Error(ErrorKind::DimensionMismatch, "mul has " + std::to_string(m.size()) + " rows");
      for (std::size_t a = 0; a < d; ++a) {
        if (m[a].size() != d) throw Error(ErrorKind::DimensionMismatch, "mul row has the wrong length", {a});
        for (std::size_t b = 0; b < d; ++b)
          for (const auto& x : m[a][b]) mul[a][b].push_back(scalar_of(x));
      }
      std::vector<K> unit;
      for (const auto& x : j.at("unit")) unit.push_back(scalar_of(x));
      std::vector<std::string> labels;
      if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
      return Algebra<K>::make(field_, d, mul, unit, std::move(labels));
    }
    throw Error(ErrorKind::Parse, "unrecognised algebra description");
  }

  AlgebraMorphism<K> make_morphism_entry(const Json& j) {
    const Algebra<K>& src = algebra(str(j, "src"));
    const Algebra<K>& dst = algebra(str(j, "dst"));
    if (j.contains("elements")) return subgroup_inclusion(src, dst, j.at("elements").get<std::vector<std::size_t>>());
    return make_morphism(src, dst, matrix_of(j.at("map"), src.dim()));
  }

  std::vector<Mat<K>> matrices(const Json& j, std::size_t d) {
    std::vector<Mat<K>> out;
    for (const auto& m : j) {
      Mat<K> x = matrix_of(m, d);
      if (x.rows() != d || x.cols() != d)
        throw Error(ErrorKind::DimensionMismatch, "action matrix is " + x.shape() + ", expected " + std::to_string(d) +
                                                      "x" + std::to_string(d));
      out.push_back(std::move(x));
    }
    return out;
  }

  std::pair<std::string, std::string> two(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Parse, "expected a pair of names");
    return {j[0].get<std::string>(), j[1].get<std::string>()};
  }

  Bimodule<K> make_bimodule(const Json& j) {
    if (j.contains("unit")) return unit_bimodule(algebra(j.at("unit").get<std::string>()));
    if (j.contains("vector_space")) return vector_space(ground_, j.at("vector_space").get<std::size_t>());
    if (j.contains("tensor")) {
      auto [a, b] = two(j.at("tensor"));
      return tensor_over(bimodule(a), bimodule(b));
    }
    if (j.contains("hom_right")) {
      auto [a, b] = two(j.at("hom_right"));
      return hom_right(bimodule(a), bimodule(b));
    }
    if (j.contains("hom_left")) {
      auto [a, b] = two(j.at("hom_left"));
      return hom_left(bimodule(a), bimodule(b));
    }
    if (j.contains("canonical_dual")) return canonical_dual(bimodule(j.at("canonical_dual").get<std::string>()));
    if (j.contains("endomorphism")) return endomorphism_bimodule(bimodule(j.at("endomorphism").get<std::string>()));
    if (j.contains("representation")) return representation(j.at("representation").get<std::string>()).underlying;
    if (j.contains("pair")) {
      const DualPair<K>& p = pair(j.at("pair").get<std::string>());
      return j.value("side", std::string("M")) == "dual" ? p.Mstar : p.M;
    }
    if (j.contains("right_ideal")) {
      const Algebra<K>& a = algebra(j.at("right_ideal").get<std::string>());
      return right_ideal(a, ground_, matrix_of(j.at("idempotent"), 1));
    }
    const Algebra<K>& l = algebra(str(j, "left"));
    const Algebra<K>& r = algebra(str(j, "right"));
    const std::size_t d = j.at("dim").get<std::size_t>();
    return Bimodule<K>::make(l, r, d, matrices(j.at("lact"), d), matrices(j.at("ract"), d));
  }

  Representation<K> make_rep(const Json& j) {
    const GroupTable& g = group(str(j, "group"));
    const Algebra<K>& kg = algebra(str(j, "algebra"));
    if (j.contains("regular")) return regular_representation(kg, g);
    if (j.contains("trivial")) return trivial_representation(kg, g);
    const std::size_t d = j.at("dim").get<std::size_t>();
    return make_representation(kg, g, matrices(j.at("action"), d));
  }

  std::vector<Bimodule<K>> modules(const Json& j) {
    std::vector<Bimodule<K>> out;
    for (const auto& x : j) out.push_back(bimodule(x.get<std::string>()));
    return out;
  }

  TwoCell<K> make_cell(const Json& j) {
    if (j.contains("identity")) return id(bimodule(j.at("identity").get<std::string>()));
    if (j.contains("compose")) {
      // listed in application order, last applied first as in f o g
      const Json& c = j.at("compose");
      if (c.empty()) throw Error(ErrorKind::Parse, "empty composite");
      TwoCell<K> out = cell(c[c.size() - 1].get<std::string>());
      for (std::size_t i = c.size() - 1; i-- > 0;) out = cell(c[i].get<std::string>()) * out;
      return out;
    }
    if (j.contains("tensor")) {
      auto [a, b] = two(j.at("tensor"));
      return tensor_map(cell(a), cell(b));
    }
    if (j.contains("scale")) return cell(str(j, "cell")).scaled(scalar_of(j.at("scale")));
    if (j.contains("post_right")) {
      auto [m, f] = two(j.at("post_right"));
      return post_right(bimodule(m), cell(f));
    }
    if (j.contains("pre_right")) {
      auto [f, m] = two(j.at("pre_right"));
      return pre_right(cell(f), bimodule(m));
    }
    if (j.contains("post_left")) {
      auto [f, m] = two(j.at("post_left"));
      return post_left(cell(f), bimodule(m));
    }
    if (j.contains("pre_left")) {
      auto [m, f] = two(j.at("pre_left"));
      return pre_left(bimodule(m), cell(f));
    }
    if (j.contains("structural")) return structural(str(j, "structural"), modules(j.at("operands")));
    const Bimodule<K>& s = bimodule(str(j, "src"));
    const Bimodule<K>& d = bimodule(str(j, "dst"));
    if (j.contains("ambient")) {
      // hom objects as matrices vec'd row-major, tensors as pairs of basis indices
      auto [in, in_dim] = to_ambient(s);
      auto [out, out_dim] = from_ambient(d);
      Mat<K> a = matrix_of(j.at("ambient"), in_dim);
      if (a.rows() != out_dim || a.cols() != in_dim)
        throw Error(ErrorKind::DimensionMismatch, "ambient map is " + a.shape() + ", expected " +
                                                      std::to_string(out_dim) + "x" + std::to_string(in_dim));
      Mat<K> m = out * a * in;
      if (d.hom() && !(d.hom()->incl * m == a * in))
        throw Error(ErrorKind::NotBimoduleMap, "ambient map leaves the target hom space");
      return TwoCell<K>::make(s, d, std::move(m));
    }
    Mat<K> m = matrix_of(j.at("map"), s.dim());
    if (m.rows() != d.dim() || m.cols() != s.dim())
      throw Error(ErrorKind::DimensionMismatch, "map is " + m.shape() + " for " + std::to_string(s.dim()) + " -> " +
                                                    std::to_string(d.dim()));
    return TwoCell<K>::make(s, d, std::move(m));
  }

  std::pair<Mat<K>, std::size_t> to_ambient(const Bimodule<K>& b) const {
    if (b.hom()) return {b.hom()->incl, b.hom()->incl.rows()};
    if (b.tensor()) return {b.tensor()->sect, b.tensor()->sect.rows()};
    return {Mat<K>::identity(field_, b.dim()), b.dim()};
  }
  std::pair<Mat<K>, std::size_t> from_ambient(const Bimodule<K>& b) const {
    if (b.hom()) return {b.hom()->linv, b.hom()->linv.cols()};
    if (b.tensor()) return {b.tensor()->proj, b.tensor()->proj.cols()};
    return {Mat<K>::identity(field_, b.dim()), b.dim()};
  }

 public:
  /// The named structural 2-cells, operands in the order of their definitions.
  static TwoCell<K> structural(const std::string& kind, const std::vector<Bimodule<K>>& o) {
    auto need = [&](std::size_t n) {
      if (o.size() != n)
        throw Error(ErrorKind::Parse, kind + " takes " + std::to_string(n) + " operands, got " + std::to_string(o.size()));
    };
    using F1 = TwoCell<K> (*)(const Bimodule<K>&);
    using F2 = TwoCell<K> (*)(const Bimodule<K>&, const Bimodule<K>&);
    using F3 = TwoCell<K> (*)(const Bimodule<K>&, const Bimodule<K>&, const Bimodule<K>&);
    static const std::map<std::string, F1> one = {
        {"unitor_l", &unitor_l<K>}, {"unitor_l_inv", &unitor_l_inv<K>}, {"unitor_r", &unitor_r<K>},
        {"unitor_r_inv", &unitor_r_inv<K>}, {"lbar", &lbar<K>}, {"lbar_inv", &lbar_inv<K>},
        {"rbar", &rbar<K>}, {"rbar_inv", &rbar_inv<K>}};
    static const std::map<std::string, F2> twos = {{"ev_right", &ev_right<K>}, {"ev_left", &ev_left<K>},
                                                   {"coev_right", &coev_right<K>}, {"coev_left", &coev_left<K>},
                                                   {"flip", &flip<K>}};
    static const std::map<std::string, F3> three = {
        {"assoc", &assoc<K>}, {"assoc_inv", &assoc_inv<K>}, {"t_right", &t_right<K>},
        {"t_right_inv", &t_right_inv<K>}, {"t_left", &t_left<K>}, {"t_left_inv", &t_left_inv<K>},
        {"hom_assoc", &hom_assoc<K>}, {"hom_assoc_inv", &hom_assoc_inv<K>}, {"mu", &mu<K>}, {"nu", &nu<K>}};
    if (auto it = one.find(kind); it != one.end()) return need(1), it->second(o[0]);
    if (auto it = twos.find(kind); it != twos.end()) return need(2), it->second(o[0], o[1]);
    if (auto it = three.find(kind); it != three.end()) return need(3), it->second(o[0], o[1], o[2]);
    throw Error(ErrorKind::Parse, "unknown structural map '" + kind + "'");
  }

 private:
  DualPair<K> make_pair_entry(const Json& j) {
    if (j.contains("solve")) {
      const std::string m = j.at("solve").get<std::string>();
      auto dp = solve_dual_pair(bimodule(m));
      if (!dp) throw Error(ErrorKind::NotInvertible, "'" + m + "' is not finitely generated projective on the right");
      return *dp;
    }
    if (j.contains("restriction")) return restriction_pair(morphism(j.at("restriction").get<std::string>()));
    if (j.contains("induction"))
      return induction_pair(group(str(j, "group")), morphism(j.at("induction").get<std::string>()),
                            j.at("reps").get<std::vector<std::size_t>>());
    if (j.contains("compose")) {
      auto [a, b] = two(j.at("compose"));
      return compose_pairs(pair(a), pair(b));
    }
    if (j.contains("unit")) return unit_pair(algebra(j.at("unit").get<std::string>()));
    if (j.contains("morita")) {
      const MoritaEquivalence<K>& me = morita(j.at("morita").get<std::string>());
      return j.value("reverse", false) ? reverse_pair(me) : me.pair;
    }
    return make_pair(bimodule(str(j, "module")), bimodule(str(j, "dual")), cell(str(j, "eta")), cell(str(j, "eps")));
  }

  MoritaEquivalence<K> make_morita_entry(const Json& j) {
    if (j.contains("matrix")) return morita_matrix(algebra(j.at("matrix").get<std::string>()), j.at("n").get<std::size_t>());
    return make_morita(pair(str(j, "pair")));
  }

  Json doc_;
  Field field_;
  Algebra<K> ground_;
  std::set<std::string> resolving_;
  std::map<std::string, GroupTable> groups_;
  std::map<std::string, Algebra<K>> algebras_;
  std::map<std::string, AlgebraMorphism<K>> morphisms_;
  std::map<std::string, Bimodule<K>> bimodules_;
  std::map<std::string, TwoCell<K>> cells_;
  std::map<std::string, DualPair<K>> pairs_;
  std::map<std::string, MoritaEquivalence<K>> moritas_;
  std::map<std::string, Representation<K>> reps_;
};

}  // namespace bicotrace
