#include <gtest/gtest.h>

#include "jk/jk.hpp"

using namespace jk;

namespace {

bool all_pass(const std::vector<Check>& cs) {
  for (const auto& c : cs)
    if (c.status != Status::Pass) return false;
  return true;
}

const Check& find(const std::vector<Check>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name == name) return c;
  throw std::runtime_error("missing check " + name);
}

}  // namespace

TEST(PhaseSpace, CanonicalBrackets) {
  PhaseSpace ps(make_algebra("h:3:R"));
  for (int a = 0; a < ps.dim(); ++a)
    for (int b = 0; b < ps.dim(); ++b) {
      EXPECT_EQ(ps.poisson(ps.x(a), ps.p(b)), ps.constant(Rational(a == b ? 1 : 0)));
      EXPECT_TRUE(ps.poisson(ps.x(a), ps.x(b)).is_zero());
      EXPECT_TRUE(ps.poisson(ps.p(a), ps.p(b)).is_zero());
    }
}

TEST(PhaseSpace, LeibnizRule) {
  PhaseSpace ps(make_algebra("gamma:3"));
  std::mt19937_64 eng(12);
  QElement u = random_element(ps.algebra(), eng), v = random_element(ps.algebra(), eng);
  PhasePoly f = ps.x_quadratic(u), g = ps.pair_x(v), h = ps.pair_op(mult_matrix(u));
  EXPECT_EQ(ps.poisson(f, g * h), ps.poisson(f, g) * h + g * ps.poisson(f, h));
}

TEST(PhaseSpace, QuadraticMomentMatchesJordanSquare) {
  for (auto s : {"gamma:4", "h:3:C", "h:3:O"}) {
    auto alg = make_algebra(s);
    PhaseSpace ps(alg);
    std::mt19937_64 eng(5);
    const int n = alg->dim();
    FElement x = random_float_element(alg, eng), pi = FElement::zero(alg);
    std::vector<double> pt(2 * n);
    for (int a = 0; a < n; ++a) {
      pt[a] = x[a];
      pt[n + a] = uniform_real(eng, -1.0, 1.0);
      pi[a] = pt[n + a] / alg->gram()[a].get_d();
    }
    double want = inner(x, product(pi, pi));
    EXPECT_NEAR(ps.x_pi_squared().evaluate(pt), want, 1e-12 * std::max(1.0, std::abs(want))) << s;
  }
}

TEST(PhaseSpace, MomentRelations) {
  for (auto s : {"gamma:2", "gamma:3", "h:1:R", "h:3:R", "h:3:C"}) {
    std::mt19937_64 eng(9);
    EXPECT_TRUE(all_pass(verify_poisson_tkk(make_algebra(s), 4, eng))) << s;
  }
}

TEST(PhaseSpace, MutationIsDetected) {
  std::mt19937_64 eng(9);
  auto cs = verify_poisson_tkk(make_algebra("gamma:3"), 3, eng, Mutation::FlipS);
  EXPECT_EQ(find(cs, "poisson.XX").status, Status::Pass);
  EXPECT_EQ(find(cs, "poisson.XY").status, Status::Fail);
  EXPECT_EQ(find(cs, "poisson.SS").status, Status::Fail);
  EXPECT_FALSE(find(cs, "poisson.XY").witness.is_null());
}

TEST(PhaseCalculus, QuotientRule) {
  auto alg = make_algebra("gamma:2");
  PhaseCalculus pc(alg);
  const PhaseSpace& ps = pc.space();
  PhasePoly f = ps.x(1) * ps.p(0);
  // {f/r, r} = {f, r}/r
  PhaseRational lhs = pc.poisson(pc.make(f, 1), pc.make(pc.r()));
  EXPECT_EQ(lhs, pc.make(ps.poisson(f, pc.r()), 1));
  EXPECT_EQ(pc.make(pc.r() * f, 1), pc.make(f));
}

TEST(PhaseCalculus, HamiltonianOnTheLine) {
  auto alg = make_algebra("h:1:R");
  PhaseCalculus pc(alg);
  const PhaseSpace& ps = pc.space();
  PhaseRational H = classical_hamiltonian(pc);
  PhasePoly want = (ps.x(0) * ps.p(0) * ps.p(0)).scale(Rational(1, 2)) - ps.constant(Rational(1));
  EXPECT_EQ(H.r_power, 1);
  EXPECT_EQ(H.numerator, want);
}

TEST(Lenz, ConservationAndSign) {
  for (auto s : {"gamma:2", "gamma:3", "h:1:R"}) {
    auto cs = lenz_checks(make_algebra(s), true);
    EXPECT_EQ(find(cs, "poisson.lenz.H_A").status, Status::Pass) << s;
    EXPECT_EQ(find(cs, "poisson.lenz.H_L").status, Status::Pass) << s;
    EXPECT_EQ(find(cs, "poisson.lenz.AA-2HL").status, Status::Pass) << s;
    EXPECT_EQ(find(cs, "poisson.lenz.equivariance").status, Status::Pass) << s;
  }
  // with a nonzero angular momentum the opposite sign is violated
  auto cs = lenz_checks(make_algebra("gamma:3"), true);
  EXPECT_EQ(find(cs, "poisson.lenz.AA+2HL").status, Status::Fail);
}

TEST(Lenz, BracketIsIndependentOfSign) {
  auto alg = make_algebra("gamma:2");
  PhaseCalculus pc(alg);
  QElement u = QElement::basis(alg, 1), v = QElement::basis(alg, 2);
  PhaseRational plus = pc.poisson(classical_lenz(pc, u, 1), classical_lenz(pc, v, 1));
  PhaseRational minus = pc.poisson(classical_lenz(pc, u, -1), classical_lenz(pc, v, -1));
  EXPECT_EQ(plus, minus);
  EXPECT_FALSE(plus.is_zero());
}

TEST(Lenz, AngularMomentumCommutesWithRadius) {
  auto alg = make_algebra("h:3:R");
  PhaseCalculus pc(alg);
  std::mt19937_64 eng(2);
  QElement u = random_element(alg, eng), v = random_element(alg, eng);
  EXPECT_TRUE(pc.poisson(angular(pc, u, v), pc.make(pc.r())).is_zero());
}
