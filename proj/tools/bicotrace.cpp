// bicotrace: command-line front end. Exit codes: 0 ok, 1 validation
// failure, 2 I/O or parse failure.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bicotrace/verify.hpp"

namespace bt = bicotrace;

namespace {

struct Args {
  std::string workspace, out, field, module, map, pair, side = "shadow";
  std::string corpus = "corpus", filter;
  std::uint64_t seed = 0;
};

int exit_code(const bt::Error& e) {
  return e.kind() == bt::ErrorKind::Parse || e.kind() == bt::ErrorKind::Io ? 2 : 1;
}

void emit(const Args& a, const bt::Json& j) {
  const std::string text = bt::canonical_dump(j);
  if (a.out.empty())
    std::cout << text;
  else
    bt::write_text_file(a.out, text);
}

bt::Json load(const Args& a) {
  if (a.workspace.empty()) throw bt::Error(bt::ErrorKind::Io, "--workspace is required");
  return bt::read_json_file(a.workspace);
}

std::string need(const std::string& v, const char* flag) {
  if (v.empty()) throw bt::Error(bt::ErrorKind::Reference, std::string(flag) + " is required");
  return v;
}

template <class K>
bt::DualPair<K> pair_or_solve(bt::Workspace<K>& ws, const Args& a, const bt::Bimodule<K>* m) {
  if (!a.pair.empty()) return ws.pair(a.pair);
  if (!m) throw bt::Error(bt::ErrorKind::Reference, "--pair or --module is required");
  auto dp = bt::solve_dual_pair(*m);
  if (!dp) throw bt::Error(bt::ErrorKind::NotInvertible, "module has no dual pair");
  return *dp;
}

template <class K>
bt::Json row_result(const bt::Field& f, const std::vector<K>& v, std::map<std::string, std::string> prov) {
  bt::Mat<K> m(f, 1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m(0, i) = v[i];
  return bt::result_json(m, prov);
}

std::string classes_text(const bt::ClassData& cd) {
  std::string s;
  for (const auto& c : cd.classes) {
    s += s.empty() ? "{" : " {";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    s += "}";
  }
  return s;
}

// The induction entry behind --pair, for its group, morphism and coset representatives.
const bt::Json& induction_entry(const bt::Json& doc, const std::string& name) {
  if (!doc.contains("pairs") || !doc.at("pairs").contains(name))
    throw bt::Error(bt::ErrorKind::Reference, "pairs: unknown entry '" + name + "'");
  const bt::Json& j = doc.at("pairs").at(name);
  if (!j.contains("induction")) throw bt::Error(bt::ErrorKind::Mismatch, "pair '" + name + "' is not an induction pair");
  return j;
}

template <class K>
int run_command(const std::string& cmd, const Args& a, const bt::Json& doc, const bt::Field& f) {
  bt::Workspace<K> ws(doc, f);
  if (cmd == "check") {
    auto errors = ws.check_all();
    emit(a, bt::Json{{"field", f.name()}, {"ok", errors.empty()}, {"errors", errors}});
    return errors.empty() ? 0 : 1;
  }
  if (cmd == "trace") {
    if (a.map.empty()) {
      const bt::Bimodule<K>* m = a.module.empty() ? nullptr : &ws.bimodule(a.module);
      auto r = bt::euler_char(pair_or_solve(ws, a, m));
      emit(a, bt::result_json(r.value, r.provenance));
      return 0;
    }
    const bt::TwoCell<K>& c = ws.cell(a.map);
    const bt::Bimodule<K>* m = a.module.empty() ? nullptr : &ws.bimodule(a.module);
    bt::DualPair<K> dp = pair_or_solve(ws, a, m);
    auto r = c.src() == dp.M && c.dst() == dp.M ? bt::hattori_stallings(c, dp) : bt::trace(c, dp);
    emit(a, bt::result_json(r.value, r.provenance));
    return 0;
  }
  if (cmd == "cotrace") {
    const bt::TwoCell<K>& c = ws.cell(need(a.map, "--map"));
    const bt::Bimodule<K>* m = a.module.empty() ? nullptr : &ws.bimodule(a.module);
    auto r = bt::cotrace(c, pair_or_solve(ws, a, m));
    r.provenance["readout_basis"] = "HH^0 coordinates";
    emit(a, bt::result_json(r.value, r.provenance));
    return 0;
  }
  if (cmd == "character") {
    const bt::Representation<K>& v = ws.representation(need(a.module, "--module"));
    bt::ClassData cd = bt::conjugacy_classes(v.group);
    std::vector<K> chi = a.pair.empty() ? bt::character(v, cd) : bt::character(v, ws.pair(a.pair), cd);
    emit(a, row_result(f, chi, {{"kind", "character"}, {"classes", classes_text(cd)}}));
    return 0;
  }
  if (cmd == "induce") {
    const bt::Json& ent = induction_entry(doc, need(a.pair, "--pair"));
    const bt::Representation<K>& w = ws.representation(need(a.module, "--module"));
    const bt::GroupTable& g = ws.group(ent.at("group").get<std::string>());
    const auto& phi = ws.morphism(ent.at("induction").get<std::string>());
    auto reps = ent.at("reps").get<std::vector<std::size_t>>();
    bt::InductionReport<K> r = bt::induction_character_check(phi, g, w, reps);
    bt::Representation<K> ind = bt::induce_rep(phi, g, w, reps);
    bt::ClassData cd = bt::conjugacy_classes(g);
    emit(a, row_result(f, r.direct,
                       {{"kind", "induced_character"},
                        {"classes", classes_text(cd)},
                        {"induced_dim", std::to_string(ind.dim())},
                        {"routes_agree", r.equal() ? "true" : "false"},
                        {"formula", r.modular ? "coset_sum" : "average_over_subgroup"}}));
    return r.equal() ? 0 : 1;
  }
  if (cmd == "restrict") {
    const bt::Json& pj = doc.at("pairs").at(need(a.pair, "--pair"));
    if (!pj.contains("restriction")) throw bt::Error(bt::ErrorKind::Mismatch, "pair is not a restriction pair");
    const std::string mname = pj.at("restriction").get<std::string>();
    const auto& phi = ws.morphism(mname);
    const bt::Representation<K>& v = ws.representation(need(a.module, "--module"));
    auto el = doc.at("morphisms").at(mname).at("elements").get<std::vector<std::size_t>>();
    bt::GroupTable h = bt::subgroup_table(v.group, el);
    bt::Representation<K> res = bt::restrict_rep(phi, h, v);
    bt::ClassData cd = bt::conjugacy_classes(h);
    auto check = bt::restriction_character_check(phi, h, v);
    emit(a, row_result(f, bt::character(res, cd),
                       {{"kind", "restricted_character"},
                        {"classes", classes_text(cd)},
                        {"routes_agree", check.equal() ? "true" : "false"}}));
    return check.equal() ? 0 : 1;
  }
  if (cmd == "morita") {
    const bt::MoritaEquivalence<K>& me = ws.morita(need(a.pair, "--pair"));
    const bt::Bimodule<K>& m = ws.bimodule(need(a.module, "--module"));
    if (a.side != "shadow" && a.side != "coshadow")
      throw bt::Error(bt::ErrorKind::Parse, "--side must be shadow or coshadow");
    auto r = a.side == "shadow" ? bt::morita_shadow_iso(me, m) : bt::morita_coshadow_iso(me, m);
    const bool inv = bt::is_invertible(r.value);
    r.provenance["invertible"] = inv ? "true" : "false";
    emit(a, bt::result_json(r.value, r.provenance));
    return inv ? 0 : 1;
  }
  throw bt::Error(bt::ErrorKind::Parse, "unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traces and cotraces of bimodules over finite-dimensional algebras"};
  app.require_subcommand(1);
  Args a;
  const char* names[] = {"check", "trace", "cotrace", "character", "induce", "restrict", "morita", "verify"};
  const char* help[] = {"validate every object in a workspace",
                        "trace of a 2-cell, or the Euler characteristic with --module/--pair only",
                        "cotrace of a 2-cell with respect to a dual pair",
                        "character of a representation over its conjugacy classes",
                        "character of an induced representation, checked three ways",
                        "character of a restricted representation",
                        "Morita invariance isomorphism on HH_0 or HH^0",
                        "run the property suite over a corpus"};
  for (std::size_t i = 0; i < 8; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--out", a.out, "write the result here instead of stdout");
    sub->add_option("--seed", a.seed, "seed for pseudo-random 2-cells")->default_val(0);
    if (std::string(names[i]) == "verify") {
      sub->add_option("--corpus", a.corpus, "corpus directory")->default_val("corpus");
      sub->add_option("--filter", a.filter, "run only properties whose name contains this");
      continue;
    }
    sub->add_option("--workspace", a.workspace, "workspace JSON file")->required();
    sub->add_option("--field", a.field, "override the workspace field")->check(CLI::IsMember({"Q", "F2", "F5"}));
    sub->add_option("--module", a.module, "bimodule or representation name");
    sub->add_option("--map", a.map, "2-cell name");
    sub->add_option("--pair", a.pair, "dual pair or Morita equivalence name");
    if (std::string(names[i]) == "morita")
      sub->add_option("--side", a.side, "shadow or coshadow")->default_val("shadow");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "verify") {
      bt::Suite s = bt::run_verify({a.corpus, a.seed, a.filter});
      emit(a, s.to_json());
      return s.all_pass() ? 0 : 1;
    }
    bt::Json doc = load(a);
    bt::Field f = bt::workspace_field(doc, a.field);
    return bt::with_field(f, [&]<class K>() { return run_command<K>(cmd, a, doc, f); });
  } catch (const bt::Error& e) {
    std::cerr << bt::canonical_dump(bt::Json{{"error", bt::kind_name(e.kind())}, {"message", e.what()}});
    return exit_code(e);
  } catch (const bt::Json::exception& e) {
    std::cerr << bt::canonical_dump(bt::Json{{"error", "Parse"}, {"message", e.what()}});
    return 2;
  }
}
