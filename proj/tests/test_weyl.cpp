#include <gtest/gtest.h>

#include "jk/jk.hpp"

using namespace jk;

namespace {

bool all_pass(const std::vector<Check>& cs) {
  for (const auto& c : cs)
    if (c.status != Status::Pass) return false;
  return true;
}

WeylOp random_op(std::size_t n, std::mt19937_64& eng) {
  WeylOp out(n);
  for (int t = 0; t < 4; ++t) {
    Monomial xa(n, 0), db(n, 0);
    xa[uniform_int(eng, 0, n - 1)] += uniform_int(eng, 0, 2);
    db[uniform_int(eng, 0, n - 1)] += uniform_int(eng, 0, 2);
    out += WeylOp::term(xa, db, CRational(random_rational(eng, 3, 2), random_rational(eng, 3, 2)));
  }
  return out;
}

}  // namespace

TEST(Weyl, CanonicalCommutator) {
  const std::size_t n = 3;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      WeylOp c = commutator(WeylOp::d(n, a), WeylOp::x(n, b));
      EXPECT_EQ(c, WeylOp::scalar(n, CRational(a == b ? 1 : 0)));
    }
  // d x = x d + 1 in normal order
  EXPECT_EQ(compose(WeylOp::d(1, 0), WeylOp::x(1, 0)), compose(WeylOp::x(1, 0), WeylOp::d(1, 0)) + WeylOp::scalar(1, CRational(1)));
}

TEST(Weyl, CompositionIsAssociative) {
  std::mt19937_64 eng(31);
  for (int t = 0; t < 5; ++t) {
    WeylOp a = random_op(2, eng), b = random_op(2, eng), c = random_op(2, eng);
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
  }
}

TEST(Weyl, ActionIsAModule) {
  std::mt19937_64 eng(8);
  WeylOp a = random_op(2, eng), b = random_op(2, eng);
  StatePoly p = StatePoly::monomial({2, 3}, CRational(1)) + StatePoly::monomial({1, 0}, CRational(Rational(-2)));
  EXPECT_EQ(apply(compose(a, b), p), apply(a, apply(b, p)));
}

TEST(Weyl, EulerOperatorCountsDegree) {
  const std::size_t n = 3;
  WeylOp euler(n);
  for (std::size_t a = 0; a < n; ++a) euler += compose(WeylOp::x(n, a), WeylOp::d(n, a));
  for (unsigned d = 0; d <= 4; ++d)
    for (const auto& m : monomials_of_degree(n, d)) {
      StatePoly p = StatePoly::monomial(m);
      StatePoly want = p;
      want.scale(CRational(Rational(d)));
      EXPECT_EQ(apply(euler, p), want);
    }
}

TEST(Weyl, GaussianConjugation) {
  auto alg = make_algebra("gamma:3");
  AcuteRealization R(alg, Rational(1));
  const std::size_t n = alg->dim();
  std::mt19937_64 eng(4);
  WeylOp a = random_op(n, eng), b = random_op(n, eng);
  EXPECT_EQ(R.gaussian_conjugate(R.gaussian_conjugate(a, 1), -1), a);
  EXPECT_EQ(R.gaussian_conjugate(compose(a, b)), compose(R.gaussian_conjugate(a), R.gaussian_conjugate(b)));
  // d_a -> d_a - dr/dx^a; r = <e|x> = x^0 here
  EXPECT_EQ(R.gaussian_conjugate(WeylOp::d(n, 0)), WeylOp::d(n, 0) - WeylOp::scalar(n, CRational(1)));
  EXPECT_EQ(R.gaussian_conjugate(WeylOp::d(n, 1)), WeylOp::d(n, 1));
}

TEST(Wallach, ParseAndClassify) {
  auto g3 = make_algebra("gamma:3");
  auto h3 = make_algebra("h:3:R");
  auto o3 = make_algebra("h:3:O");
  EXPECT_EQ(parse_nu("d:1", *g3), Rational(1));
  EXPECT_EQ(parse_nu("2*delta/2", *h3), Rational(1));
  EXPECT_EQ(parse_nu("d:2", *o3), Rational(8));
  EXPECT_EQ(parse_nu("0.75", *h3), ratio(3, 4));
  EXPECT_THROW(parse_nu("d:x", *h3), std::invalid_argument);

  auto w = WallachParam::classify(*h3, ratio(1, 2));
  EXPECT_EQ(w.kind, WallachParam::Kind::Discrete);
  EXPECT_EQ(w.rho_of_nu, 1);
  w = WallachParam::classify(*h3, Rational(1));
  EXPECT_EQ(w.kind, WallachParam::Kind::Discrete);
  EXPECT_EQ(w.rho_of_nu, 2);
  w = WallachParam::classify(*h3, ratio(11, 10));
  EXPECT_EQ(w.kind, WallachParam::Kind::Continuous);
  EXPECT_EQ(w.rho_of_nu, 3);
  EXPECT_THROW(WallachParam::classify(*h3, ratio(1, 4)), WallachDomainError);
  EXPECT_THROW(WallachParam::classify(*h3, Rational(0)), WallachDomainError);
  EXPECT_THROW(WallachParam::classify(*o3, Rational(5)), WallachDomainError);
  EXPECT_EQ(WallachParam::classify(*o3, Rational(4)).rho_of_nu, 1);
}

TEST(BoundSpectrum, KnownValues) {
  auto g3 = make_algebra("gamma:3");
  auto h3 = make_algebra("h:3:R");
  EXPECT_EQ(bound_spectrum(*g3, Rational(1), 0), ratio(-1, 2));
  EXPECT_EQ(bound_spectrum(*g3, Rational(1), 3), ratio(-1, 32));
  EXPECT_EQ(bound_spectrum(*h3, ratio(1, 2), 0), ratio(-8, 9));
  EXPECT_THROW(bound_spectrum(*h3, ratio(1, 4), 0), WallachDomainError);
}

class OperatorRelations : public ::testing::TestWithParam<std::pair<const char*, const char*>> {};

TEST_P(OperatorRelations, TkkGradingLowestWeight) {
  auto [spec, nu_text] = GetParam();
  auto alg = make_algebra(spec);
  Rational nu = parse_rational(nu_text);
  std::mt19937_64 eng(6);
  EXPECT_TRUE(all_pass(verify_tkk_ops(alg, nu, 2, eng)));
  for (unsigned I = 0; I <= 2; ++I) EXPECT_EQ(he_grading_check(alg, nu, I).status, Status::Pass) << I;
  EXPECT_TRUE(all_pass(lowest_weight_check(alg, nu)));
}

INSTANTIATE_TEST_SUITE_P(Samples, OperatorRelations,
                         ::testing::Values(std::make_pair("gamma:3", "1"), std::make_pair("gamma:3", "7/3"),
                                           std::make_pair("h:1:R", "1/2"), std::make_pair("h:3:R", "1/2"),
                                           std::make_pair("h:3:C", "0"), std::make_pair("gamma:2", "3/2")));

TEST(OperatorRelations, WrongNuBreaksLowestWeight) {
  auto alg = make_algebra("gamma:3");
  AcuteRealization R(alg, Rational(2));
  RootData rd = root_data(alg, jordan_frame(alg));
  StatePoly one = StatePoly::constant(alg->dim(), CRational(1));
  StatePoly h0 = apply(R.gaussian_conjugate(R.realize(rd.H_alpha0)), one);
  EXPECT_NE(h0, StatePoly::constant(alg->dim(), CRational(1)));
}
