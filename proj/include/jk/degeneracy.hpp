#pragma once
// Dimensions of graded pieces of polynomials restricted to C_rho(nu), from
// numerical ranks of evaluation matrices at sampled cone points.

#include <Eigen/SVD>

#include "jk/cone.hpp"

namespace jk {

/// Raised when two disjoint sample sets give different ranks.
class RankInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative singular-value cutoff; independent of user tolerances.
inline constexpr double kRankThreshold = 1e-8;

inline int numerical_rank(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > kRankThreshold * s[0]) ++r;
  return r;
}

/// Monomials of degree <= I, ordered by degree.
inline std::vector<Monomial> monomials_up_to(std::size_t n, unsigned I) {
  std::vector<Monomial> out;
  for (unsigned d = 0; d <= I; ++d) {
    auto md = monomials_of_degree(n, d);
    out.insert(out.end(), md.begin(), md.end());
  }
  return out;
}

/// ranks[J] = rank of the evaluation matrix of degree <= J monomials, J = 0..I.
inline std::vector<int> evaluation_ranks(const std::vector<std::vector<double>>& points, std::size_t n, unsigned I) {
  auto mons = monomials_up_to(n, I);
  Eigen::MatrixXd m(points.size(), mons.size());
  for (std::size_t p = 0; p < points.size(); ++p)
    for (std::size_t j = 0; j < mons.size(); ++j) {
      double v = 1;
      for (std::size_t a = 0; a < n; ++a)
        for (unsigned e = 0; e < mons[j][a]; ++e) v *= points[p][a];
      m(p, j) = v;
    }
  // unit columns; rank is unchanged and conditioning improves
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    double c = m.col(j).norm();
    if (c > 0) m.col(j) /= c;
  }
  std::vector<int> ranks;
  std::size_t cols = 0;
  for (unsigned J = 0; J <= I; ++J) {
    cols += monomials_of_degree(n, J).size();
    ranks.push_back(numerical_rank(m.leftCols(static_cast<Eigen::Index>(cols))));
  }
  return ranks;
}

inline std::size_t binomial(std::size_t a, std::size_t b) {
  if (b > a) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

struct DegeneracyTable {
  std::vector<int> degeneracies;  // index J
  std::vector<int> ranks;         // cumulative, index J
  int samples_per_set = 0;
};

/// Degeneracies for J = 0..I; `samples` per set is raised to at least three
/// times the number of degree <= I monomials.
inline DegeneracyTable degeneracy_table(const AlgebraPtr& alg, const Rational& nu, unsigned I, int samples,
                                        std::uint64_t seed) {
  WallachParam w = WallachParam::classify(*alg, nu);
  const std::size_t n = alg->dim();
  const int need = static_cast<int>(3 * binomial(n + I, I));
  const int m = std::max(samples, need);
  ConeGeometry geo(alg, w.rho_of_nu);
  std::mt19937_64 eng(seed);
  auto draw = [&] {
    std::vector<std::vector<double>> pts;
    pts.reserve(m);
    for (int i = 0; i < m; ++i) pts.push_back(geo.sample(eng).y);
    return pts;
  };
  auto A = draw();
  auto B = draw();
  auto ra = evaluation_ranks(A, n, I), rb = evaluation_ranks(B, n, I);
  if (ra != rb) {
    std::ostringstream os;
    os << "evaluation rank differs between disjoint sample sets (";
    for (std::size_t J = 0; J < ra.size(); ++J) os << (J ? "," : "") << ra[J] << "/" << rb[J];
    os << "); increase the sample count above " << m;
    throw RankInstability(os.str());
  }
  DegeneracyTable t;
  t.ranks = ra;
  t.samples_per_set = m;
  for (std::size_t J = 0; J < ra.size(); ++J) t.degeneracies.push_back(ra[J] - (J ? ra[J - 1] : 0));
  return t;
}

/// dim(restriction of degree <= I) - dim(restriction of degree <= I-1).
inline int restriction_degeneracy(const AlgebraPtr& alg, const Rational& nu, unsigned I, int samples,
                                  std::uint64_t seed) {
  return degeneracy_table(alg, nu, I, samples, seed).degeneracies.at(I);
}

}  // namespace jk
