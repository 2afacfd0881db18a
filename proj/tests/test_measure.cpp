#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>

#include "jk/jk.hpp"

using namespace jk;

namespace {

long choose(long a, long b) { return b < 0 || b > a ? 0 : static_cast<long>(binomial(a, b)); }

}  // namespace

TEST(Rank, NumericalRank) {
  Eigen::MatrixXd m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 1, 0, 1;
  EXPECT_EQ(numerical_rank(m), 2);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd::Zero(4, 2)), 0);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd::Identity(5, 5)), 5);
}

TEST(Rank, PolynomialsOnALine) {
  // points (t, 2t): degree <= J restrictions are spanned by 1, t, ..., t^J
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 30; ++i) {
    double t = 0.1 + 0.05 * i;
    pts.push_back({t, 2 * t});
  }
  auto ranks = evaluation_ranks(pts, 2, 4);
  EXPECT_EQ(ranks, (std::vector<int>{1, 2, 3, 4, 5}));
  EXPECT_EQ(monomials_up_to(3, 4).size(), binomial(7, 4));
}

struct DegCase {
  const char* spec;
  const char* nu;
  unsigned I;
  std::vector<int> (*oracle)(unsigned);
};

std::vector<int> hydrogen(unsigned I) {
  std::vector<int> d;
  for (unsigned j = 0; j <= I; ++j) d.push_back((j + 1) * (j + 1));
  return d;
}
std::vector<int> gamma5_light_cone(unsigned I) {
  // harmonic polynomials in 6 variables restricted to the null cone
  std::vector<int> d;
  for (long j = 0; j <= I; ++j) d.push_back(choose(j + 5, 5) - choose(j + 3, 5));
  return d;
}
std::vector<int> sym3_rank1(unsigned I) {
  // x x^T: even polynomials of degree 2j in three variables
  std::vector<int> d;
  for (long j = 0; j <= I; ++j) d.push_back(choose(2 * j + 2, 2));
  return d;
}
std::vector<int> sym3_rank2(unsigned I) {
  // hypersurface det = 0 of degree 3 in six variables
  std::vector<int> d;
  for (long j = 0; j <= I; ++j) d.push_back(choose(j + 5, 5) - choose(j + 2, 5));
  return d;
}
std::vector<int> sym3_full(unsigned I) {
  std::vector<int> d;
  for (long j = 0; j <= I; ++j) d.push_back(choose(j + 5, 5));
  return d;
}
std::vector<int> herm3_rank1(unsigned I) {
  // z z*: bidegree (j, j) in three complex variables
  std::vector<int> d;
  for (long j = 0; j <= I; ++j) d.push_back(choose(j + 2, 2) * choose(j + 2, 2));
  return d;
}

class Degeneracy : public ::testing::TestWithParam<DegCase> {};

TEST_P(Degeneracy, MatchesClassicalCounts) {
  const DegCase& c = GetParam();
  auto alg = make_algebra(c.spec);
  Rational nu = parse_nu(c.nu, *alg);
  DegeneracyTable t = degeneracy_table(alg, nu, c.I, 0, 2024);
  EXPECT_EQ(t.degeneracies, c.oracle(c.I)) << c.spec << " nu=" << c.nu;
  EXPECT_GE(t.samples_per_set, static_cast<int>(3 * binomial(alg->dim() + c.I, c.I)));
}

INSTANTIATE_TEST_SUITE_P(Oracles, Degeneracy,
                         ::testing::Values(DegCase{"gamma:3", "1", 5, hydrogen}, DegCase{"gamma:5", "d:1", 4, gamma5_light_cone},
                                           DegCase{"h:3:R", "1/2", 4, sym3_rank1}, DegCase{"h:3:R", "1", 4, sym3_rank2},
                                           DegCase{"h:3:R", "2", 3, sym3_full}, DegCase{"h:3:C", "1", 3, herm3_rank1}));

TEST(Degeneracy, ResultIsSeedIndependent) {
  auto alg = make_algebra("gamma:3");
  EXPECT_EQ(degeneracy_table(alg, Rational(1), 3, 0, 1).degeneracies,
            degeneracy_table(alg, Rational(1), 3, 0, 99).degeneracies);
  EXPECT_EQ(restriction_degeneracy(alg, Rational(1), 2, 0, 5), 9);
}

TEST(Measure, CrosscheckPasses) {
  for (auto s : {"gamma:3", "h:3:R", "h:3:C"}) {
    auto alg = make_algebra(s);
    std::mt19937_64 eng(3);
    for (int k = 1; k <= alg->rank(); ++k) EXPECT_EQ(measure_crosscheck(alg, k, 5, eng).status, Status::Pass) << s << k;
  }
}

TEST(Integrability, RankOneSlabIsIncompleteGamma) {
  for (double nu : {0.5, 1.0, 2.5}) {
    IntegrabilityProbe probe(1, 1, nu);
    auto lower = [&](double x) { return std::pow(2.0, -nu) * boost::math::tgamma_lower(nu, 2 * x); };
    double want = lower(0.1) - lower(0.01);
    EXPECT_NEAR(probe.slab(0.01, 0.1), want, 1e-8 * want) << nu;
  }
}

TEST(Integrability, ThresholdAndExponent) {
  struct Case {
    const char* spec;
    double nu;
    bool finite;
  };
  for (auto c : {Case{"gamma:3", 0.75, false}, Case{"gamma:3", 1.5, true}, Case{"h:3:R", 0.5, false},
                 Case{"h:3:R", 1.5, true}, Case{"h:1:R", 0.3, true}}) {
    auto alg = make_algebra(c.spec);
    IntegrabilityProbe probe(alg->rank(), alg->degree(), c.nu);
    EXPECT_EQ(probe.finite_predicted(), c.finite);
    auto r = probe.probe();
    EXPECT_EQ(r.finite_numeric, c.finite) << c.spec << " nu=" << c.nu;
    double predicted = c.nu - 0.5 * (alg->rank() - 1) * alg->degree();
    EXPECT_NEAR(r.decay_exponent, predicted, 1e-2) << c.spec << " nu=" << c.nu;
  }
}
