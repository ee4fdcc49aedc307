// Dual pairs, Hochschild shadows, traces, cotraces and characters.

#include <array>

#include <gtest/gtest.h>

#include "bicotrace/coherence.hpp"
#include "bicotrace/repchar.hpp"

using namespace bicotrace;
using Q = Rational;

namespace {

const Field kQ = Field::rationals();

template <class K>
Bimodule<K> regular_left(const Algebra<K>& kg) {
  std::vector<Mat<K>> l;
  for (std::size_t i = 0; i < kg.dim(); ++i) l.push_back(kg.lmul(i));
  return Bimodule<K>::make(kg, ground_algebra<K>(kg.field()), kg.dim(), l, {Mat<K>::identity(kg.field(), kg.dim())});
}

template <class K>
Bimodule<K> regular_right(const Algebra<K>& kg) {
  std::vector<Mat<K>> r;
  for (std::size_t i = 0; i < kg.dim(); ++i) r.push_back(kg.rmul(i));
  return Bimodule<K>::make(ground_algebra<K>(kg.field()), kg, kg.dim(), {Mat<K>::identity(kg.field(), kg.dim())}, r);
}

// permutations of {0,1,2} in the element order of symmetric_group_3()
const std::array<std::array<int, 3>, 6> kPerms = {{{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}}};

// the sum-zero plane of the permutation representation, basis e0-e1, e1-e2
template <class K>
Representation<K> standard_rep(const Algebra<K>& kg, const GroupTable& g) {
  const Field f = kg.field();
  std::vector<Mat<K>> act;
  for (const auto& p : kPerms) {
    Mat<K> m(f, 2, 2);
    for (int c = 0; c < 2; ++c) {
      std::array<int, 3> v{};
      v[p[c]] += 1;
      v[p[c + 1]] -= 1;
      m(0, c) = scalar<K>(f, v[0]);
      m(1, c) = scalar<K>(f, v[0] + v[1]);
    }
    act.push_back(m);
  }
  return make_representation(kg, g, act);
}

template <class K>
std::vector<std::int64_t> ints(const std::vector<K>& v);

template <>
std::vector<std::int64_t> ints(const std::vector<Q>& v) {
  std::vector<std::int64_t> out;
  for (const auto& x : v) out.push_back(static_cast<std::int64_t>(boost::multiprecision::numerator(x)));
  return out;
}

template <>
std::vector<std::int64_t> ints(const std::vector<Fp>& v) {
  std::vector<std::int64_t> out;
  for (const auto& x : v) out.push_back(x.value());
  return out;
}

// f(phi)(v) = sum_g phi(g^-1 v) g as a cell V |> k -> k[G] <| V, written in
// the ambient coordinates of both hom spaces
template <class K>
TwoCell<K> averaging_map(const Representation<K>& v) {
  const Algebra<K>& kg = v.underlying.left();
  const Field f = kg.field();
  const std::size_t n = v.dim(), order = v.group.order();
  Bimodule<K> src = hom_right(v.underlying, unit_bimodule(v.underlying.right()));
  Bimodule<K> dst = hom_left(unit_bimodule(kg), v.underlying);
  Mat<K> amb(f, order * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t g = 0; g < order; ++g)
      for (std::size_t x = 0; x < n; ++x) amb(g * n + x, j) = v.action(v.group.inv(g))(j, x);
  const auto& hs = hom_info(src, HomSide::right);
  const auto& hd = hom_info(dst, HomSide::left);
  return TwoCell<K>::make(src, dst, hd.linv * amb * hs.incl);
}

}  // namespace

// ---------------------------------------------------------------------------
// dual pairs

TEST(DualPairs, VectorSpaceHasDualOfSameDimension) {
  auto k = ground_algebra<Q>(kQ);
  auto dp = solve_dual_pair(vector_space(k, 3));
  ASSERT_TRUE(dp.has_value());
  EXPECT_EQ(dp->Mstar.dim(), 3u);
  EXPECT_TRUE(triangles_hold(*dp));
}

TEST(DualPairs, NonProjectiveWitnessHasNone) {
  auto k = ground_algebra<Q>(kQ);
  auto d = truncated_polynomial<Q>(2, kQ);
  Mat<Q> one = Mat<Q>::identity(kQ, 1), zero(kQ, 1, 1);
  auto w = Bimodule<Q>::make(k, d, 1, {one}, {one, zero});
  EXPECT_FALSE(solve_dual_pair(w).has_value());
  EXPECT_TRUE(solve_dual_pair(unit_bimodule(d)).has_value());
}

TEST(DualPairs, RegularModulesOnBothSides) {
  auto kg = group_algebra<Q>(symmetric_group_3(), kQ);
  for (const auto& m : {regular_left(kg), regular_right(kg), unit_bimodule(kg)}) {
    auto dp = solve_dual_pair(m);
    ASSERT_TRUE(dp.has_value());
    EXPECT_TRUE(triangles_hold(*dp));
  }
}

TEST(DualPairs, ModularGroupAlgebraOverItself) {
  const Field f2 = Field::prime(2);
  auto kg = group_algebra<Fp>(cyclic_group(2), f2);
  auto dp = solve_dual_pair(regular_right(kg));
  ASSERT_TRUE(dp.has_value());
  EXPECT_TRUE(triangles_hold(*dp));
  // the trivial right module is not projective in characteristic 2
  auto k = ground_algebra<Fp>(f2);
  Mat<Fp> one = Mat<Fp>::identity(f2, 1);
  EXPECT_FALSE(solve_dual_pair(Bimodule<Fp>::make(k, kg, 1, {one}, {one, one})).has_value());
}

TEST(DualPairs, RestrictionAndInductionForAlternatingSubgroup) {
  auto g = symmetric_group_3();
  auto kg = group_algebra<Q>(g, kQ);
  std::vector<std::size_t> a3 = {0, 4, 5};
  auto kh = group_algebra<Q>(subgroup_table(g, a3), kQ);
  auto phi = subgroup_inclusion(kh, kg, a3);
  EXPECT_TRUE(triangles_hold(restriction_pair(phi)));
  auto ip = induction_pair(g, phi, {0, 1});
  EXPECT_TRUE(triangles_hold(ip));
  EXPECT_EQ(ip.M.dim(), 6u);
  // 0 and 4 lie in the same coset
  try {
    induction_pair(g, phi, {0, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadCosetSystem);
  }
}

TEST(DualPairs, TwistedPairIsDistinctButValid) {
  auto k = ground_algebra<Q>(kQ);
  auto dp = *solve_dual_pair(vector_space(k, 2));
  std::mt19937_64 rng(3);
  auto tw = random_twist(dp, rng);
  EXPECT_TRUE(triangles_hold(tw));
  EXPECT_FALSE(tw.eta.map() == dp.eta.map());
}

TEST(DualPairs, MoritaPairForMatrixAlgebra) {
  auto k = ground_algebra<Q>(kQ);
  auto me = morita_matrix(k, 2);
  EXPECT_EQ(me.P().dim(), 2u);
  EXPECT_EQ(me.Q().dim(), 2u);
  EXPECT_TRUE(is_invertible(me.pair.eta.map()));
  EXPECT_TRUE(is_invertible(me.pair.eps.map()));
  EXPECT_TRUE(triangles_hold(reverse_pair(me)));
}

// ---------------------------------------------------------------------------
// shadows

TEST(Shadows, ZerothHomologyDimensions) {
  // classes of S3; commutators span sl2 in M2; commutative k[x]/x^2; upper
  // triangular 2x2 modulo its one commutator e12
  EXPECT_EQ(hh0(unit_bimodule(group_algebra<Q>(symmetric_group_3(), kQ))).dim, 3u);
  EXPECT_EQ(hh0(unit_bimodule(matrix_algebra<Q>(2, kQ))).dim, 1u);
  EXPECT_EQ(hh0(unit_bimodule(truncated_polynomial<Q>(2, kQ))).dim, 2u);
  EXPECT_EQ(hh0(unit_bimodule(upper_triangular_2<Q>(kQ))).dim, 2u);
}

TEST(Shadows, CentreDimensions) {
  EXPECT_EQ(cohh0(unit_bimodule(group_algebra<Q>(symmetric_group_3(), kQ))).dim, 3u);
  EXPECT_EQ(cohh0(unit_bimodule(matrix_algebra<Q>(2, kQ))).dim, 1u);
  EXPECT_EQ(cohh0(unit_bimodule(upper_triangular_2<Q>(kQ))).dim, 1u);
  EXPECT_EQ(cohh0(unit_bimodule(group_algebra<Q>(cyclic_group(6), kQ))).dim, 6u);
}

TEST(Shadows, ConjugatesAreIdentified) {
  auto kg = group_algebra<Q>(symmetric_group_3(), kQ);
  auto h = hh0(unit_bimodule(kg));
  // the three transpositions have the same class
  EXPECT_EQ(h.proj * Mat<Q>::unit_vector(kQ, 6, 1), h.proj * Mat<Q>::unit_vector(kQ, 6, 3));
  EXPECT_FALSE(h.proj * Mat<Q>::unit_vector(kQ, 6, 1) == h.proj * Mat<Q>::unit_vector(kQ, 6, 4));
}

TEST(Shadows, CategoricalTraceMatchesCentre) {
  for (const auto& a : {upper_triangular_2<Q>(kQ), matrix_algebra<Q>(2, kQ), truncated_polynomial<Q>(3, kQ)}) {
    auto gk = gk_coshadow(unit_bimodule(a));
    EXPECT_EQ(gk.dim, cohh0(unit_bimodule(a)).dim);
    EXPECT_TRUE(is_invertible(gk.comparison));
  }
}

TEST(Shadows, ThetaIsAnInvolutionOnUnits) {
  auto u = unit_bimodule(group_algebra<Q>(symmetric_group_3(), kQ));
  for (const auto& r : shadow_unit(u)) EXPECT_TRUE(r.equal()) << r.name;
  for (const auto& r : coshadow_unit(u)) EXPECT_TRUE(r.equal()) << r.name;
}

// ---------------------------------------------------------------------------
// traces

TEST(Traces, EulerCharacteristicOfVectorSpaceIsItsDimension) {
  auto k = ground_algebra<Q>(kQ);
  for (std::size_t n = 1; n <= 4; ++n) {
    auto chi = euler_char(*solve_dual_pair(vector_space(k, n))).value;
    ASSERT_EQ(chi.rows(), 1u);
    EXPECT_EQ(chi(0, 0), Q(static_cast<std::int64_t>(n)));
  }
}

TEST(Traces, IdempotentHasTraceOne) {
  auto k = ground_algebra<Q>(kQ);
  auto v = vector_space(k, 2);
  auto e = TwoCell<Q>::make(v, v, Mat<Q>::from_ints(kQ, {{1, 0}, {0, 0}}));
  EXPECT_EQ(hattori_stallings(e, *solve_dual_pair(v)).value, Mat<Q>::from_ints(kQ, {{1}}));
}

TEST(Traces, EndomorphismTraceMatchesDiagonalSum) {
  auto k = ground_algebra<Q>(kQ);
  auto v = vector_space(k, 3);
  auto dp = *solve_dual_pair(v);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 4; ++i) {
    auto f = random_two_cell(v, v, rng);
    Q diag = f.map()(0, 0) + f.map()(1, 1) + f.map()(2, 2);
    EXPECT_EQ(hattori_stallings(f, dp).value(0, 0), diag);
  }
}

TEST(Traces, LeftMultiplicationOnFreeModuleTracesToItsClass) {
  // F = k[C3] as a right module; x -> a x has trace [a] in HH_0(k[C3]) = k[C3]
  auto kc = group_algebra<Q>(cyclic_group(3), kQ);
  auto f = regular_right(kc);
  auto dp = *solve_dual_pair(f);
  Mat<Q> a = Mat<Q>::from_ints(kQ, {{2}, {-1}, {5}});
  auto la = TwoCell<Q>::make(f, f, kc.left_mult(a));
  Mat<Q> t = hattori_stallings(la, dp).value;
  EXPECT_EQ(hh0(unit_bimodule(kc)).sect * t, a);
}

TEST(Traces, TraceIsIndependentOfDualPair) {
  auto kg = group_algebra<Q>(symmetric_group_3(), kQ);
  auto m = regular_right(kg);
  auto dp = *solve_dual_pair(m);
  std::mt19937_64 rng(5);
  auto other = random_twist(dp, rng);
  auto tf = random_two_cell(tensor_over(unit_bimodule(m.left()), m), tensor_over(m, unit_bimodule(kg)), rng);
  EXPECT_EQ(trace(tf, dp).value, trace(tf, other).value);
  auto cf = random_two_cell(hom_right(m, unit_bimodule(kg)), hom_left(unit_bimodule(m.left()), m), rng);
  EXPECT_EQ(cotrace(cf, dp).value, cotrace(cf, other).value);
}

TEST(Traces, EulerCharacteristicOfCompositeComposes) {
  auto g = symmetric_group_3();
  auto kg = group_algebra<Q>(g, kQ);
  std::vector<std::size_t> a3 = {0, 4, 5};
  auto kh = group_algebra<Q>(subgroup_table(g, a3), kQ);
  auto rp = restriction_pair(subgroup_inclusion(kh, kg, a3));
  auto vp = *solve_dual_pair(regular_left(kg));
  EXPECT_EQ(euler_char(compose_pairs(rp, vp)).value, euler_char(vp).value * euler_char(rp).value);
}

TEST(Traces, TraceOfCompositeOnVectorSpaces) {
  auto k = ground_algebra<Q>(kQ);
  auto u = unit_bimodule(k);
  auto v2 = vector_space(k, 2), v3 = vector_space(k, 3);
  auto d2 = *solve_dual_pair(v2), d3 = *solve_dual_pair(v3);
  std::mt19937_64 rng(9);
  auto f = random_two_cell(tensor_over(u, v2), tensor_over(v2, u), rng);
  auto g = random_two_cell(tensor_over(u, v3), tensor_over(v3, u), rng);
  auto r = trace_compose(f, g, d2, d3);
  EXPECT_TRUE(r.equal());
  // over a field the trace of f (x) g is the product of traces
  EXPECT_EQ(r.lhs(0, 0), trace(f, d2).value(0, 0) * trace(g, d3).value(0, 0));
}

// ---------------------------------------------------------------------------
// cotraces

TEST(Cotraces, AveragingMapOfRegularC2) {
  auto g = cyclic_group(2);
  auto kg = group_algebra<Q>(g, kQ);
  auto v = regular_representation(kg, g);
  auto f = averaging_map(v);
  Mat<Q> c = cotrace(f, *solve_dual_pair(v.underlying)).value;
  // 2e + 0g
  EXPECT_EQ(cohh0(unit_bimodule(kg)).incl * c, Mat<Q>::from_ints(kQ, {{2}, {0}}));
}

TEST(Cotraces, AveragingMapRecoversCharacter) {
  // cotr(f)(1) = sum_g chi(g^-1) g, with chi taken from brute-force traces
  auto g = symmetric_group_3();
  auto kg = group_algebra<Q>(g, kQ);
  auto v = standard_rep(kg, g);
  Mat<Q> c = cohh0(unit_bimodule(kg)).incl * cotrace(averaging_map(v), *solve_dual_pair(v.underlying)).value;
  Mat<Q> want(kQ, 6, 1);
  for (std::size_t x = 0; x < 6; ++x) want(x, 0) = v.action(g.inv(x)).trace();
  EXPECT_EQ(c, want);
  EXPECT_EQ(want, Mat<Q>::from_ints(kQ, {{2}, {0}, {0}, {0}, {-1}, {-1}}));
}

TEST(Cotraces, PropositionsOnOneInstance) {
  auto kc = group_algebra<Q>(cyclic_group(2), kQ);
  auto k = ground_algebra<Q>(kQ);
  auto m = regular_left(kc);
  auto dm = *solve_dual_pair(m);
  auto uk = unit_bimodule(k), ug = unit_bimodule(kc);
  std::mt19937_64 rng(21);
  auto f = random_two_cell(hom_right(m, uk), hom_left(ug, m), rng);
  EXPECT_TRUE(tighten(random_two_cell(uk, uk, rng), f, random_two_cell(ug, ug, rng), dm).equal());
  EXPECT_TRUE(cotrace_of_mate(f, dm).equal());
  EXPECT_TRUE(unit_cotrace(random_two_cell(hom_right(ug, ug), hom_left(ug, ug), rng)).equal());
  auto g = random_two_cell(tensor_over(ug, m), tensor_over(m, uk), rng);
  EXPECT_TRUE(cotrace_cyclic(f, g, dm, random_twist(dm, rng)).equal());
  auto dn = unit_pair(kc);
  auto h = random_two_cell(hom_right(ug, ug), hom_left(ug, ug), rng);
  EXPECT_TRUE(cotrace_compose(f, h, dm, dn).equal());
}

TEST(Cotraces, SymmetricCollapseOverDualNumbers) {
  auto d = truncated_polynomial<Q>(2, kQ);
  auto u = unit_bimodule(d);
  auto dp = *solve_dual_pair(u);
  auto dual = *solve_dual_pair(canonical_dual(u));
  std::mt19937_64 rng(4);
  for (int i = 0; i < 3; ++i) {
    auto f = random_two_cell(hom_right(u, u), hom_right(u, u), rng);
    auto r = sym_collapse(f, dp, dual);
    EXPECT_TRUE(r.equal());
  }
}

TEST(Cotraces, SymmetricCotraceRejectsNoncommutativeBase) {
  auto u = unit_bimodule(matrix_algebra<Q>(2, kQ));
  auto dp = *solve_dual_pair(u);
  std::mt19937_64 rng(1);
  auto f = random_two_cell(hom_right(u, u), hom_right(u, u), rng);
  try {
    sym_cotrace(f, dp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCommutativeBase);
  }
}

// ---------------------------------------------------------------------------
// interplay and Morita

TEST(Interplay, RowModuleOverMatrixAlgebra) {
  auto m2 = matrix_algebra<Q>(2, kQ);
  auto k = ground_algebra<Q>(kQ);
  // E11 M2(k), spanned by E11 and E12
  std::vector<Mat<Q>> r;
  Mat<Q> incl(kQ, 4, 2);
  incl(0, 0) = 1;
  incl(1, 1) = 1;
  Mat<Q> linv = left_inverse(incl);
  for (std::size_t j = 0; j < 4; ++j) r.push_back(linv * m2.rmul(j) * incl);
  auto row = Bimodule<Q>::make(k, m2, 2, {Mat<Q>::identity(kQ, 2)}, r);
  auto fp = *solve_dual_pair(endomorphism_bimodule(row));
  auto d = lipman_setup(fp, unit_bimodule(m2));
  EXPECT_TRUE(interplay_hypothesis(d).equal());
  EXPECT_TRUE(interplay_conclusion(d).equal());
  EXPECT_TRUE(lipman_scalar(fp).equal());
}

TEST(Interplay, FreeModuleOverCyclicGroup) {
  auto kc = group_algebra<Q>(cyclic_group(3), kQ);
  auto fp = *solve_dual_pair(endomorphism_bimodule(regular_right(kc)));
  EXPECT_EQ(fp.M.left().dim(), 3u);
  EXPECT_NO_THROW(interplay_check(lipman_setup(fp, unit_bimodule(kc))));
  EXPECT_TRUE(lipman_scalar(fp).equal());
}

TEST(Morita, GroundFieldAndMatrices) {
  auto k = ground_algebra<Q>(kQ);
  auto me = morita_matrix(k, 2);
  auto u = unit_bimodule(k);
  Mat<Q> sh = morita_shadow_iso(me, u).value, co = morita_coshadow_iso(me, u).value;
  EXPECT_EQ(sh.rows(), 1u);
  EXPECT_EQ(sh.cols(), 1u);
  EXPECT_TRUE(is_invertible(sh));
  EXPECT_TRUE(is_invertible(co));
  EXPECT_TRUE(gk_morita_check(me, u).equal());
}

TEST(Morita, CyclicGroupAlgebra) {
  auto kc = group_algebra<Q>(cyclic_group(2), kQ);
  auto me = morita_matrix(kc, 2);
  auto u = unit_bimodule(kc);
  Mat<Q> sh = morita_shadow_iso(me, u).value;
  EXPECT_EQ(sh.rows(), 2u);
  EXPECT_TRUE(is_invertible(sh));
  EXPECT_TRUE(is_invertible(morita_coshadow_iso(me, u).value));
  EXPECT_EQ(hh0(unit_bimodule(matrix_algebra_over(kc, 2))).dim, 2u);
}

// ---------------------------------------------------------------------------
// characters

TEST(Characters, ConjugacyClassSizes) {
  auto cd = conjugacy_classes(symmetric_group_3());
  ASSERT_EQ(cd.classes.size(), 3u);
  EXPECT_EQ(cd.classes[0].size(), 1u);
  EXPECT_EQ(cd.classes[1].size(), 3u);
  EXPECT_EQ(cd.classes[2].size(), 2u);
  EXPECT_EQ(conjugacy_classes(cyclic_group(3)).classes.size(), 3u);
}

TEST(Characters, RegularAndStandard) {
  auto c2 = cyclic_group(2);
  auto kc = group_algebra<Q>(c2, kQ);
  EXPECT_EQ(ints(character(regular_representation(kc, c2), conjugacy_classes(c2))),
            (std::vector<std::int64_t>{2, 0}));
  auto s3 = symmetric_group_3();
  auto kg = group_algebra<Q>(s3, kQ);
  auto cd = conjugacy_classes(s3);
  auto v = standard_rep(kg, s3);
  EXPECT_EQ(ints(character(v, cd)), (std::vector<std::int64_t>{2, 0, -1}));
  EXPECT_EQ(ints(direct_character(v, cd)), (std::vector<std::int64_t>{2, 0, -1}));
  EXPECT_EQ(ints(character(trivial_representation(kg, s3), cd)), (std::vector<std::int64_t>{1, 1, 1}));
}

TEST(Characters, NonHomomorphismIsRejected) {
  auto c2 = cyclic_group(2);
  auto kc = group_algebra<Q>(c2, kQ);
  Mat<Q> two = Mat<Q>::from_ints(kQ, {{2}});
  EXPECT_THROW(make_representation(kc, c2, {Mat<Q>::identity(kQ, 1), two}), Error);
}

TEST(Characters, InductionFromTrivialSubgroup) {
  auto c2 = cyclic_group(2);
  auto kc = group_algebra<Q>(c2, kQ);
  auto e = subgroup_table(c2, {0});
  auto ke = group_algebra<Q>(e, kQ);
  auto phi = subgroup_inclusion(ke, kc, {0});
  auto r = induction_character_check(phi, c2, trivial_representation(ke, e), {0, 1});
  EXPECT_TRUE(r.equal());
  EXPECT_FALSE(r.modular);
  EXPECT_EQ(ints(r.direct), (std::vector<std::int64_t>{2, 0}));
}

TEST(Characters, InductionOfRotationFromAlternatingSubgroup) {
  auto s3 = symmetric_group_3();
  auto kg = group_algebra<Q>(s3, kQ);
  std::vector<std::size_t> a3 = {0, 4, 5};
  auto h = subgroup_table(s3, a3);
  auto kh = group_algebra<Q>(h, kQ);
  auto phi = subgroup_inclusion(kh, kg, a3);
  Mat<Q> rot = Mat<Q>::from_ints(kQ, {{0, -1}, {1, -1}});
  auto w = make_representation(kh, h, {Mat<Q>::identity(kQ, 2), rot, rot * rot});
  auto r = induction_character_check(phi, s3, w, {0, 1});
  EXPECT_TRUE(r.equal());
  // twice the standard character
  EXPECT_EQ(ints(r.formula), (std::vector<std::int64_t>{4, 0, -2}));
  EXPECT_EQ(induce_rep(phi, s3, w, {0, 1}).dim(), 4u);
}

TEST(Characters, InductionOfLinearCharacterOverF7) {
  const Field f7 = Field::prime(7);
  auto s3 = symmetric_group_3();
  auto kg = group_algebra<Fp>(s3, f7);
  std::vector<std::size_t> a3 = {0, 4, 5};
  auto h = subgroup_table(s3, a3);
  auto kh = group_algebra<Fp>(h, f7);
  auto phi = subgroup_inclusion(kh, kg, a3);
  auto c = [&](int x) { return Mat<Fp>::from_ints(f7, {{x}}); };
  auto w = make_representation(kh, h, {c(1), c(2), c(4)});
  auto r = induction_character_check(phi, s3, w, {0, 1});
  EXPECT_TRUE(r.equal());
  EXPECT_EQ(ints(r.direct), (std::vector<std::int64_t>{2, 0, 6}));  // (2, 0, -1)
}

TEST(Characters, ModularInductionUsesCosetSum) {
  const Field f3 = Field::prime(3);
  auto s3 = symmetric_group_3();
  auto kg = group_algebra<Fp>(s3, f3);
  std::vector<std::size_t> a3 = {0, 4, 5};
  auto h = subgroup_table(s3, a3);
  auto kh = group_algebra<Fp>(h, f3);
  auto phi = subgroup_inclusion(kh, kg, a3);
  auto r = induction_character_check(phi, s3, trivial_representation(kh, h), {0, 1});
  EXPECT_TRUE(r.modular);
  EXPECT_TRUE(r.equal());
  // trivial plus sign
  EXPECT_EQ(ints(r.direct), (std::vector<std::int64_t>{2, 0, 2}));
}

TEST(Characters, RestrictionToAlternatingSubgroup) {
  auto s3 = symmetric_group_3();
  auto kg = group_algebra<Q>(s3, kQ);
  std::vector<std::size_t> a3 = {0, 4, 5};
  auto h = subgroup_table(s3, a3);
  auto kh = group_algebra<Q>(h, kQ);
  auto phi = subgroup_inclusion(kh, kg, a3);
  auto v = standard_rep(kg, s3);
  EXPECT_TRUE(restriction_character_check(phi, h, v).equal());
  auto res = restrict_rep(phi, h, v);
  EXPECT_EQ(ints(direct_character(res, conjugacy_classes(h))), (std::vector<std::int64_t>{2, -1, -1}));
}
