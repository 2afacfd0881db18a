#pragma once
// Polar-chart measure checks and the integrability threshold of
// e^{-2r} det^{nu - rho delta/2} against the invariant measure on Omega.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "jk/cone.hpp"

namespace jk {

/// Ratio of the chart-computed density to radial_density at `points`
/// random radial points; passes when max/min - 1 <= tol.
template <class Engine>
Check measure_crosscheck(const AlgebraPtr& alg, int k, int points, Engine& eng, double tol = 1e-2) {
  ConeGeometry geo(alg, k);
  PolarChart chart(geo);
  if (chart.generator_count() != geo.dimension() - k)
    return Check::exact("measure.generators", false,
                        json{{"count", chart.generator_count()}, {"expected", geo.dimension() - k}});
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  json samples = json::array();
  for (int t = 0; t < points; ++t) {
    std::vector<double> a(k);
    for (auto& v : a) v = uniform_real(eng, 0.3, 3.0);
    std::sort(a.begin(), a.end(), std::greater<>());
    double q = chart.measure_density(a) / radial_density(alg->rank(), alg->degree(), a);
    lo = std::min(lo, q), hi = std::max(hi, q);
    samples.push_back({{"a", a}, {"ratio", q}});
  }
  double spread = hi > 0 ? hi / lo - 1 : std::numeric_limits<double>::quiet_NaN();
  return Check::numeric("measure.k=" + std::to_string(k), spread, tol, json{{"samples", samples}});
}

/// Integral of e^{-2r} det^{nu-rho delta/2} dmu over Omega, in polar
/// coordinates a_1 > ... > a_rho, restricted to a_rho in [lo, hi).
class IntegrabilityProbe {
 public:
  IntegrabilityProbe(int rho, int delta, double nu) : rho_(rho), delta_(delta), nu_(nu) {
    if (rho < 1) throw std::invalid_argument("IntegrabilityProbe: rho must be positive");
  }

  /// Exponent of each a_i in the radial integrand.
  double exponent() const { return nu_ - 0.5 * rho_ * delta_ + 0.5 * delta_ - 1; }

  /// Analytic criterion.
  bool finite_predicted() const { return nu_ > 0.5 * (rho_ - 1) * delta_; }

  /// Slab integral over a_rho in [lo, hi], t = ln a_rho substitution.
  double slab(double lo, double hi) const {
    auto f = [&](double t) {
      double a = std::exp(t);
      std::vector<double> pts(rho_, 0.0);
      pts[rho_ - 1] = a;
      return a * outer_weight(a) * inner(rho_ - 2, pts);
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, std::log(lo), std::log(hi), 8, 1e-10);
  }

  /// Slab sizes on [10^{-j-1}, 10^{-j}] for j = 1..decades, then the decay
  /// exponent p estimated from the last two: finite iff p > 0.
  struct Result {
    std::vector<double> slabs;
    double decay_exponent;
    bool finite_numeric;
    bool finite_predicted;
  };

  Result probe(int decades = 6, double margin = 0.01) const {
    Result r;
    for (int j = 1; j <= decades; ++j) r.slabs.push_back(slab(std::pow(10.0, -j - 1), std::pow(10.0, -j)));
    double s1 = r.slabs[decades - 2], s2 = r.slabs[decades - 1];
    r.decay_exponent = std::log10(s1 / s2);
    r.finite_numeric = r.decay_exponent > margin;
    r.finite_predicted = finite_predicted();
    return r;
  }

 private:
  double outer_weight(double a) const { return std::pow(a, exponent()) * std::exp(-2 * a / rho_); }

  // integrate a_i over (a_{i+1}, inf) for i = level..0, pts[level+1..] fixed
  double inner(int level, std::vector<double>& pts) const {
    if (level < 0) {
      double v = 1;
      for (int i = 0; i < rho_; ++i)
        for (int j = i + 1; j < rho_; ++j) v *= std::pow(pts[i] - pts[j], delta_);
      return v;
    }
    boost::math::quadrature::exp_sinh<double> es;
    double lower = pts[level + 1];
    auto f = [&, level](double s) {
      double a = lower + s;
      double w = outer_weight(a);
      if (w == 0 || !std::isfinite(a)) return 0.0;  // far tail underflows
      pts[level] = a;
      return w * inner(level - 1, pts);
    };
    return es.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-9);
  }

  int rho_, delta_;
  double nu_;
};

/// Two checks: finiteness classification against nu > (rho-1)delta/2, and
/// the measured decay exponent against nu - (rho-1)delta/2.
inline std::vector<Check> integrability_check(const Algebra& alg, double nu, double exponent_tol = 1e-2) {
  IntegrabilityProbe probe(alg.rank(), alg.degree(), nu);
  auto r = probe.probe();
  std::ostringstream name;
  name << "integrability.nu=" << nu;
  json wit{{"slabs", r.slabs},
           {"decay_exponent", r.decay_exponent},
           {"predicted_exponent", probe.exponent() + 1},
           {"finite_predicted", r.finite_predicted}};
  return {Check::exact(name.str() + ".finite", r.finite_numeric == r.finite_predicted, wit),
          Check::numeric(name.str() + ".exponent", std::abs(r.decay_exponent - probe.exponent() - 1), exponent_tol, wit)};
}

}  // namespace jk
