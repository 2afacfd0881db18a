#include <gtest/gtest.h>

#include "jk/jk.hpp"

using namespace jk;

namespace {

struct LieRow {
  const char* spec;
  int str, co, compact;
};

// conformal algebras: so(k+1,2), sp(6,R), su(3,3), so*(12), e7(-25);
// compact parts: so(k+1)+so(2), u(3), s(u(3)+u(3)), u(6), e6+so(2)
const LieRow kLie[] = {
    {"gamma:2", 4, 10, 4}, {"gamma:3", 7, 15, 7},  {"gamma:5", 16, 28, 16}, {"h:1:R", 1, 3, 1},
    {"h:3:R", 9, 21, 9},    {"h:3:C", 17, 35, 17}, {"h:3:H", 36, 66, 36},   {"h:3:O", 79, 133, 79},
};

}  // namespace

class LieDims : public ::testing::TestWithParam<LieRow> {};

TEST_P(LieDims, StructureAndConformal) {
  const LieRow& r = GetParam();
  auto alg = make_algebra(r.spec);
  EXPECT_EQ(dim_str(alg), r.str);
  EXPECT_EQ(dim_co(alg), r.co);
  EXPECT_EQ(dim_str_numeric(alg), r.str);
}

TEST_P(LieDims, CartanDecomposition) {
  const LieRow& r = GetParam();
  auto alg = make_algebra(r.spec);
  auto u = compact_span(alg), p = noncompact_span(alg);
  for (const auto& c : u) EXPECT_EQ(cartan_involution(c), c);
  for (const auto& c : p) EXPECT_EQ(cartan_involution(c), -c);
  EXPECT_EQ(co_rank(u), r.compact);
  EXPECT_EQ(co_rank(p), r.co - r.compact);
  std::vector<QCo> all = u;
  all.insert(all.end(), p.begin(), p.end());
  EXPECT_EQ(co_rank(all), r.co);
}

INSTANTIATE_TEST_SUITE_P(Table, LieDims, ::testing::ValuesIn(kLie));

class Bracket : public ::testing::TestWithParam<const char*> {};

TEST_P(Bracket, LieAxiomsAndInvolution) {
  auto alg = make_algebra(GetParam());
  StrBasis sb(alg);
  std::mt19937_64 eng(77);
  for (int t = 0; t < 4; ++t) {
    QCo a = random_co_element(alg, eng), b = random_co_element(alg, eng), c = random_co_element(alg, eng);
    QCo ab = co_bracket(a, b, &sb);
    EXPECT_TRUE((ab + co_bracket(b, a)).is_zero());
    QCo jac = co_bracket(a, co_bracket(b, c, &sb), &sb) + co_bracket(b, co_bracket(c, a)) + co_bracket(c, ab);
    EXPECT_TRUE(jac.is_zero());
    EXPECT_EQ(cartan_involution(cartan_involution(a)), a);
    EXPECT_EQ(cartan_involution(ab), co_bracket(cartan_involution(a), cartan_involution(b)));
  }
}

TEST_P(Bracket, GradingAndUnitRelation) {
  auto alg = make_algebra(GetParam());
  std::mt19937_64 eng(3);
  QElement u = random_element(alg, eng), v = random_element(alg, eng);
  // [X_u, X_v] = 0, [Y_u, Y_v] = 0, [A, X_u] = X_{Au}
  EXPECT_TRUE(co_bracket(QCo::X(u), QCo::X(v)).is_zero());
  EXPECT_TRUE(co_bracket(QCo::Y(u), QCo::Y(v)).is_zero());
  QCo A = QCo::Str(alg, mult_matrix(v));
  EXPECT_EQ(co_bracket(A, QCo::X(u)), QCo::X(product(v, u)));
  QElement e = QElement::identity(alg);
  QCo want = QCo::Str(alg, Matrix<Rational>::identity(alg->dim()));
  want.a.scale(Rational(-2));
  EXPECT_EQ(co_bracket(QCo::X(e), QCo::Y(e)), want);
  // L_e is the grading element: [L_e, X] = X, [L_e, Y] = -Y
  QCo Le = QCo::Str(alg, Matrix<Rational>::identity(alg->dim()));
  EXPECT_EQ(co_bracket(Le, QCo::X(u)), QCo::X(u));
  EXPECT_EQ(co_bracket(Le, QCo::Y(u)), Rational(-1) * QCo::Y(u));
}

TEST_P(Bracket, Sl2Triples) {
  auto alg = make_algebra(GetParam());
  RootData rd = root_data(alg, jordan_frame(alg));
  auto sl2 = [](const CCo& h, const CCo& ep, const CCo& em) {
    EXPECT_EQ(co_bracket(h, ep), CRational(2) * ep);
    EXPECT_EQ(co_bracket(h, em), CRational(-2) * em);
    EXPECT_EQ(co_bracket(ep, em), -h);
  };
  sl2(rd.H_e, rd.E_plus, rd.E_minus);
  sl2(rd.H_alpha0, rd.E_plus_alpha0, rd.E_minus_alpha0);
  EXPECT_EQ(cartan_involution(rd.H_e), rd.H_e);
  // H_e commutes with H_alpha0 (same Cartan)
  EXPECT_TRUE(co_bracket(rd.H_e, rd.H_alpha0).is_zero());
}

INSTANTIATE_TEST_SUITE_P(Families, Bracket, ::testing::Values("gamma:2", "gamma:4", "h:1:R", "h:3:R", "h:3:C", "h:3:H", "h:3:O"));

TEST(StrBasis, MembershipIsExact) {
  auto alg = make_algebra("gamma:3");
  StrBasis sb(alg);
  std::mt19937_64 eng(4);
  QElement u = random_element(alg, eng), v = random_element(alg, eng);
  EXPECT_TRUE(sb.contains(mult_matrix(u)));
  EXPECT_TRUE(sb.contains(smul_matrix(u, v)));
  Matrix<Rational> unit(alg->dim(), alg->dim());
  unit(0, 1) = Rational(1);
  EXPECT_FALSE(sb.contains(unit));
  QCo bad = QCo::Str(alg, unit);
  EXPECT_THROW(co_bracket(bad, QCo::Str(alg, mult_matrix(u)), &sb), StrMembershipError);
}
