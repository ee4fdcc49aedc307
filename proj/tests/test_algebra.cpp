// Exact linear algebra, algebras and bimodules against values worked out by hand.

#include <gtest/gtest.h>

#include "bicotrace/bimodule.hpp"

using namespace bicotrace;
using Q = Rational;

namespace {

const Field kQ = Field::rationals();
const Field kF5 = Field::prime(5);

Mat<Q> mq(std::initializer_list<std::initializer_list<std::int64_t>> rows) { return Mat<Q>::from_ints(kQ, rows); }

template <class Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

// naive check that m intertwines both actions
template <class K>
bool intertwines(const TwoCell<K>& c) {
  for (std::size_t i = 0; i < c.src().left().dim(); ++i)
    if (!(c.map() * c.src().lact(i) == c.dst().lact(i) * c.map())) return false;
  for (std::size_t i = 0; i < c.src().right().dim(); ++i)
    if (!(c.map() * c.src().ract(i) == c.dst().ract(i) * c.map())) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// scalars

TEST(Scalars, RationalArithmeticIsExact) {
  Q a = ScalarTraits<Q>::parse(kQ, "1/3"), b = ScalarTraits<Q>::parse(kQ, "1/6");
  EXPECT_EQ(to_string(a + b), "1/2");
  EXPECT_EQ(to_string(a * b), "1/18");
  EXPECT_EQ(to_string(Q(-4) / Q(6)), "-2/3");
  EXPECT_EQ(to_string(Q(5)), "5/1");
}

TEST(Scalars, PrimeFieldInverseAndNegatives) {
  Fp three(3, 5);
  EXPECT_EQ(three.inverse().value(), 2u);
  EXPECT_EQ(Fp(-1, 5).value(), 4u);
  EXPECT_EQ(to_string(Fp(7, 5)), "2/1");
  EXPECT_EQ(ScalarTraits<Fp>::parse(kF5, "1/3").value(), 2u);
  EXPECT_EQ(kind_of([] { Fp(0, 5).inverse(); }), ErrorKind::DivisionByZero);
  EXPECT_EQ(kind_of([] { (void)(Fp(1, 5) + Fp(1, 7)); }), ErrorKind::FieldMismatch);
}

TEST(Scalars, FieldNamesParse) {
  EXPECT_EQ(Field::parse("Q").characteristic(), 0u);
  EXPECT_EQ(Field::parse("F2").characteristic(), 2u);
  EXPECT_EQ(Field::parse("F5").name(), "F5");
  EXPECT_EQ(kind_of([] { Field::parse("R"); }), ErrorKind::InvalidField);
}

TEST(Scalars, BadTextIsAParseError) {
  EXPECT_EQ(kind_of([] { ScalarTraits<Q>::parse(kQ, "1/0"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { ScalarTraits<Q>::parse(kQ, "x"); }), ErrorKind::Parse);
}

// ---------------------------------------------------------------------------
// matrices

TEST(Linalg, InverseOfSmallMatrix) {
  Mat<Q> a = mq({{2, 1}, {1, 1}});
  EXPECT_EQ(inverse(a), mq({{1, -1}, {-1, 2}}));
  EXPECT_FALSE(is_invertible(mq({{1, 2}, {2, 4}})));
  EXPECT_EQ(kind_of([] { inverse(mq({{1, 2}, {2, 4}})); }), ErrorKind::NotInvertible);
}

TEST(Linalg, RankAndKernel) {
  Mat<Q> a = mq({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  EXPECT_EQ(rank(a), 2u);
  Mat<Q> k = kernel(a);
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_TRUE((a * k).is_zero());
}

TEST(Linalg, SolveReturnsParticularAndKernel) {
  // x + y = 3, x - y = 1
  auto s = solve(mq({{1, 1}, {1, -1}}), mq({{3}, {1}}));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->particular, mq({{2}, {1}}));
  EXPECT_EQ(s->kernel.cols(), 0u);
  EXPECT_FALSE(solve(mq({{1, 1}, {2, 2}}), mq({{1}, {3}})).has_value());
}

TEST(Linalg, SolveOverF5) {
  // 2x = 1 in F5 gives x = 3
  Mat<Fp> a = Mat<Fp>::from_ints(kF5, {{2}});
  auto s = solve(a, Mat<Fp>::from_ints(kF5, {{1}}));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->particular(0, 0).value(), 3u);
}

TEST(Linalg, KroneckerAndVec) {
  Mat<Q> a = mq({{1, 2}, {3, 4}}), b = mq({{0, 1}, {1, 0}});
  Mat<Q> k = kron(a, b);
  EXPECT_EQ(k.rows(), 4u);
  EXPECT_EQ(k(0, 1), Q(1));
  EXPECT_EQ(k(3, 2), Q(4));
  EXPECT_EQ(a.vec(), mq({{1}, {2}, {3}, {4}}));
  EXPECT_EQ(Mat<Q>::unvec(a.vec(), 2, 2), a);
  EXPECT_EQ(a.trace(), Q(5));
}

TEST(Linalg, ShapeMismatchIsReported) {
  EXPECT_EQ(kind_of([] { (void)(mq({{1, 2}}) * mq({{1, 2}})); }), ErrorKind::DimensionMismatch);
}

// ---------------------------------------------------------------------------
// algebras

TEST(Algebras, CyclicGroupMultiplication) {
  auto a = group_algebra<Q>(cyclic_group(3), kQ);
  // g * g = g^2
  EXPECT_EQ(a.product(Mat<Q>::unit_vector(kQ, 3, 1), Mat<Q>::unit_vector(kQ, 3, 1)), Mat<Q>::unit_vector(kQ, 3, 2));
  EXPECT_TRUE(a.is_commutative());
  EXPECT_EQ(a.unit(), Mat<Q>::unit_vector(kQ, 3, 0));
}

TEST(Algebras, SymmetricGroupIsNotCommutative) {
  auto g = symmetric_group_3();
  EXPECT_EQ(g.order(), 6u);
  // two transpositions do not commute, and (12)(13) is inverse to (13)(12)
  EXPECT_NE(g.mul(1, 2), g.mul(2, 1));
  EXPECT_EQ(g.mul(g.mul(1, 2), g.mul(2, 1)), 0u);
  EXPECT_FALSE(group_algebra<Q>(g, kQ).is_commutative());
}

TEST(Algebras, BadGroupTableNamesIndices) {
  try {
    GroupTable({{0, 1}, {1, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidGroupTable);
  }
}

TEST(Algebras, AssociativityViolationListsTriple) {
  // basis e, a, b with a a = b, a b = 0, b a = b: (a a) a = b but a (a a) = 0
  std::vector<std::vector<std::vector<Q>>> mul(3, std::vector<std::vector<Q>>(3, std::vector<Q>(3, Q(0))));
  for (std::size_t i = 0; i < 3; ++i) {
    mul[0][i][i] = 1;
    mul[i][0][i] = 1;
  }
  mul[1][1][2] = 1;
  mul[2][1][2] = 1;
  try {
    Algebra<Q>::make(kQ, 3, mul, {Q(1), Q(0), Q(0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AssociativityViolation);
    EXPECT_EQ(e.indices().size(), 3u);
  }
}

TEST(Algebras, MatrixAlgebraUnitAndDimension) {
  auto m2 = matrix_algebra<Q>(2, kQ);
  EXPECT_EQ(m2.dim(), 4u);
  EXPECT_FALSE(m2.is_commutative());
  // E11 E12 = E12, E12 E11 = 0
  Mat<Q> e11 = Mat<Q>::unit_vector(kQ, 4, 0), e12 = Mat<Q>::unit_vector(kQ, 4, 1);
  EXPECT_EQ(m2.product(e11, e12), e12);
  EXPECT_TRUE(m2.product(e12, e11).is_zero());
}

TEST(Algebras, OppositeReversesProducts) {
  auto m2 = matrix_algebra<Q>(2, kQ);
  auto op = opposite(m2);
  Mat<Q> e11 = Mat<Q>::unit_vector(kQ, 4, 0), e12 = Mat<Q>::unit_vector(kQ, 4, 1);
  EXPECT_EQ(op.product(e12, e11), m2.product(e11, e12));
}

TEST(Algebras, TruncatedPolynomialIsNilpotent) {
  auto d = truncated_polynomial<Q>(2, kQ);
  Mat<Q> x = Mat<Q>::unit_vector(kQ, 2, 1);
  EXPECT_TRUE(d.product(x, x).is_zero());
}

TEST(Algebras, MorphismMustPreserveUnitAndProducts) {
  auto k = ground_algebra<Q>(kQ);
  auto kc = group_algebra<Q>(cyclic_group(2), kQ);
  EXPECT_EQ(kind_of([&] { make_morphism(k, kc, mq({{0}, {1}})); }), ErrorKind::UnitNotPreserved);
  // g -> e + g: (e + g)^2 = 2e + 2g is not the image of e
  EXPECT_EQ(kind_of([&] { make_morphism(kc, kc, mq({{1, 1}, {0, 1}})); }), ErrorKind::NotMultiplicative);
}

// ---------------------------------------------------------------------------
// bimodules

TEST(Bimodules, InvalidActionIsRejected) {
  auto k = ground_algebra<Q>(kQ);
  auto kc = group_algebra<Q>(cyclic_group(2), kQ);
  // g acting by 2 does not square to 1
  EXPECT_EQ(kind_of([&] { Bimodule<Q>::make(kc, k, 1, {mq({{1}}), mq({{2}})}, {mq({{1}})}); }),
            ErrorKind::InvalidBimodule);
}

TEST(Bimodules, TensorOverGroupAlgebraDimensions) {
  auto kc = group_algebra<Q>(cyclic_group(3), kQ);
  auto u = unit_bimodule(kc);
  EXPECT_EQ(tensor_over(u, u).dim(), 3u);
  auto k = ground_algebra<Q>(kQ);
  std::vector<Mat<Q>> l, r;
  for (std::size_t i = 0; i < 3; ++i) {
    l.push_back(kc.lmul(i));
    r.push_back(kc.rmul(i));
  }
  auto left = Bimodule<Q>::make(kc, k, 3, l, {Mat<Q>::identity(kQ, 3)});
  auto right = Bimodule<Q>::make(k, kc, 3, {Mat<Q>::identity(kQ, 3)}, r);
  EXPECT_EQ(tensor_over(left, right).dim(), 9u);  // over k
  EXPECT_EQ(tensor_over(right, left).dim(), 3u);  // k[C3] (x) k[C3] over k[C3]
  EXPECT_EQ(kind_of([&] { tensor_over(left, left); }), ErrorKind::MismatchedMiddleAlgebra);
}

TEST(Bimodules, HomDimensions) {
  auto k = ground_algebra<Q>(kQ);
  auto kc = group_algebra<Q>(cyclic_group(2), kQ);
  auto v = Bimodule<Q>::make(kc, k, 2, {kc.lmul(0), kc.lmul(1)}, {Mat<Q>::identity(kQ, 2)});
  // Hom_k(V, k) is 2-dimensional; Hom_{k[C2]}(V, k[C2]) = End(k[C2]) is 2-dimensional
  EXPECT_EQ(hom_right(v, unit_bimodule(k)).dim(), 2u);
  EXPECT_EQ(hom_left(unit_bimodule(kc), v).dim(), 2u);
  // trivial to sign over Q has no maps
  auto triv = Bimodule<Q>::make(kc, k, 1, {mq({{1}}), mq({{1}})}, {mq({{1}})});
  auto sign = Bimodule<Q>::make(kc, k, 1, {mq({{1}}), mq({{-1}})}, {mq({{1}})});
  EXPECT_EQ(hom_left(triv, sign).dim(), 0u);
}

TEST(Bimodules, TwoCellValidation) {
  auto k = ground_algebra<Q>(kQ);
  auto kc = group_algebra<Q>(cyclic_group(2), kQ);
  auto v = Bimodule<Q>::make(kc, k, 2, {kc.lmul(0), kc.lmul(1)}, {Mat<Q>::identity(kQ, 2)});
  EXPECT_EQ(kind_of([&] { TwoCell<Q>::make(v, v, mq({{1, 0}, {0, 0}})); }), ErrorKind::NotBimoduleMap);
  auto swap = TwoCell<Q>::make(v, v, mq({{0, 1}, {1, 0}}));
  EXPECT_TRUE(intertwines(swap));
}

TEST(Bimodules, RandomCellsAreBimoduleMapsAndSeeded) {
  auto kg = group_algebra<Q>(symmetric_group_3(), kQ);
  auto u = unit_bimodule(kg);
  std::mt19937_64 a(11), b(11);
  auto f = random_two_cell(u, u, a), g = random_two_cell(u, u, b);
  EXPECT_TRUE(intertwines(f));
  EXPECT_EQ(f.map(), g.map());
  // End of U over a non-commutative algebra is its centre: dimension 3
  EXPECT_EQ(rank(two_cell_space(u, u)), 3u);
}

TEST(Bimodules, UnitorsAndAssociatorAreInverse) {
  auto kc = group_algebra<Q>(cyclic_group(2), kQ);
  auto k = ground_algebra<Q>(kQ);
  auto v = Bimodule<Q>::make(kc, k, 2, {kc.lmul(0), kc.lmul(1)}, {Mat<Q>::identity(kQ, 2)});
  EXPECT_EQ((unitor_l(v) * unitor_l_inv(v)).map(), Mat<Q>::identity(kQ, 2));
  EXPECT_EQ((unitor_r_inv(v) * unitor_r(v)).map(), Mat<Q>::identity(kQ, tensor_over(v, unit_bimodule(k)).dim()));
  auto u = unit_bimodule(kc);
  auto a = assoc(u, u, v);
  EXPECT_EQ((assoc_inv(u, u, v) * a).map(), Mat<Q>::identity(kQ, a.src().dim()));
  EXPECT_TRUE(intertwines(a));
}

TEST(Bimodules, HomAdjunctionMapsAreInvertible) {
  auto kc = group_algebra<Q>(cyclic_group(2), kQ);
  auto u = unit_bimodule(kc);
  auto t = t_right(u, u, u);
  EXPECT_TRUE(is_invertible(t.map()));
  EXPECT_EQ((t_right_inv(u, u, u) * t).map(), Mat<Q>::identity(kQ, t.src().dim()));
  auto h = hom_assoc(u, u, u);
  EXPECT_EQ((hom_assoc_inv(u, u, u) * h).map(), Mat<Q>::identity(kQ, h.src().dim()));
}
