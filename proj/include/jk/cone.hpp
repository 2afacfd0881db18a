#pragma once
// Canonical cones C_k (semi-positive elements of rank k) as Riemannian
// manifolds. Numerics run in orthonormal coordinates X^a = sqrt(g_a) y^a,
// where y are the coordinates in the algebra basis; there every L_u is a
// symmetric matrix.

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <random>

#include "jk/report.hpp"
#include "jk/spectral.hpp"
#include "jk/weyl.hpp"

namespace jk {

/// Raised for evaluations outside the open cone (vanishing log arguments,
/// boundary points, rank mismatches).
class ConeDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// D_k = k[1 + (rho - (k+1)/2) delta].
inline int cone_dimension(int rho, int delta, int k) { return k * (2 + (2 * rho - k - 1) * delta) / 2; }

/// Scalar function on V built from exact polynomials: sum_i w_i * T_i with
/// T_i either P_i or ln P_i. Gradients and Hessians come from exact
/// polynomial differentiation.
class ScalarField {
 public:
  explicit ScalarField(int n) : n_(n) {}

  ScalarField& add_poly(CoordPoly p, double w = 1.0) {
    terms_.push_back(make_term(std::move(p), w, false));
    return *this;
  }
  ScalarField& add_log(CoordPoly p, double w = 1.0, std::string name = "") {
    auto t = make_term(std::move(p), w, true);
    t.name = std::move(name);
    terms_.push_back(std::move(t));
    return *this;
  }
  ScalarField& add_constant(double c) {
    constant_ += c;
    return *this;
  }

  int n() const { return n_; }

  /// Value, gradient and Hessian in algebra-basis coordinates y.
  struct Jet {
    double value = 0;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
  };

  Jet jet(const std::vector<double>& y) const {
    Jet j;
    j.value = constant_;
    j.grad = Eigen::VectorXd::Zero(n_);
    j.hess = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& t : terms_) {
      double p = t.p.evaluate(y);
      Eigen::VectorXd g(n_);
      for (int a = 0; a < n_; ++a) g[a] = t.grad[a].evaluate(y);
      Eigen::MatrixXd h(n_, n_);
      for (int a = 0; a < n_; ++a)
        for (int b = a; b < n_; ++b) h(a, b) = h(b, a) = t.hess[a][b].evaluate(y);
      if (t.log) {
        if (!(p > 0))
          throw ConeDomainError("log of non-positive polynomial" + (t.name.empty() ? "" : " (" + t.name + ")") +
                                " at the evaluation point");
        j.value += t.w * std::log(p);
        j.grad += t.w * g / p;
        j.hess += t.w * (h / p - g * g.transpose() / (p * p));
      } else {
        j.value += t.w * p;
        j.grad += t.w * g;
        j.hess += t.w * h;
      }
    }
    return j;
  }

 private:
  struct Term {
    CoordPoly p;
    double w;
    bool log;
    std::vector<CoordPoly> grad;
    std::vector<std::vector<CoordPoly>> hess;
    std::string name;
  };

  Term make_term(CoordPoly p, double w, bool log) const {
    if (static_cast<int>(p.nvars()) != n_) throw std::invalid_argument("ScalarField: polynomial arity mismatch");
    Term t{std::move(p), w, log, {}, {}, {}};
    t.grad.reserve(n_);
    for (int a = 0; a < n_; ++a) t.grad.push_back(t.p.derivative(a));
    t.hess.assign(n_, std::vector<CoordPoly>(n_, CoordPoly(n_)));
    for (int a = 0; a < n_; ++a)
      for (int b = a; b < n_; ++b) t.hess[a][b] = t.grad[a].derivative(b);
    return t;
  }

  int n_;
  double constant_ = 0;
  std::vector<Term> terms_;
};

/// A point of C_k with cached operators, all in orthonormal coordinates.
struct ConePoint {
  int k = 0;
  Eigen::VectorXd X;           // orthonormal coordinates of x
  std::vector<double> y;       // algebra-basis coordinates of x
  std::vector<double> a;       // nonzero eigenvalues, descending (empty if unknown)
  std::vector<Eigen::VectorXd> frame;  // transported idempotents (may be empty)
  Eigen::MatrixXd Lx, projector, pinv;
  double r = 0;
  int rank = 0;                // numerical rank of L_x
};

class ConeGeometry {
 public:
  ConeGeometry(AlgebraPtr alg, int k) : alg_(std::move(alg)), k_(k) {
    rho_ = alg_->rank();
    delta_ = alg_->degree();
    n_ = alg_->dim();
    if (k < 1 || k > rho_) throw std::out_of_range("ConeGeometry: rank k outside 1..rho");
    Dk_ = cone_dimension(rho_, delta_, k);
    sqrtg_.resize(n_);
    for (int a = 0; a < n_; ++a) sqrtg_[a] = std::sqrt(alg_->gram()[a].get_d());
    // L of each orthonormal basis vector b_a / sqrt(g_a)
    for (int a = 0; a < n_; ++a) {
      Eigen::MatrixXd l = mult_matrix(FElement::basis(alg_, a)).to_eigen();
      Eigen::MatrixXd lo = sqrtg_.asDiagonal() * l * sqrtg_.cwiseInverse().asDiagonal();
      Lbasis_.push_back(lo / sqrtg_[a]);
    }
    e_ = to_ortho(cast_element<double>(QElement::identity(alg_)).coords);
    frame_ = jordan_frame(alg_);
  }

  const AlgebraPtr& algebra() const { return alg_; }
  int k() const { return k_; }
  int rank_of_algebra() const { return rho_; }
  int dimension() const { return Dk_; }
  int n() const { return n_; }
  const Eigen::VectorXd& identity() const { return e_; }
  const Eigen::VectorXd& sqrt_gram() const { return sqrtg_; }

  Eigen::VectorXd to_ortho(const std::vector<double>& y) const {
    Eigen::VectorXd X(n_);
    for (int a = 0; a < n_; ++a) X[a] = sqrtg_[a] * y[a];
    return X;
  }
  std::vector<double> from_ortho(const Eigen::VectorXd& X) const {
    std::vector<double> y(n_);
    for (int a = 0; a < n_; ++a) y[a] = X[a] / sqrtg_[a];
    return y;
  }
  Eigen::VectorXd to_ortho(const FElement& u) const { return to_ortho(u.coords); }

  /// L_u for u in orthonormal coordinates.
  Eigen::MatrixXd L(const Eigen::VectorXd& u) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
    for (int a = 0; a < n_; ++a)
      if (u[a] != 0) m += u[a] * Lbasis_[a];
    return m;
  }
  Eigen::VectorXd mul(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const { return L(u) * v; }
  double tr(const Eigen::VectorXd& u) const { return rho_ * e_.dot(u); }

  /// Orthonormal Jordan-frame idempotent e_ii.
  Eigen::VectorXd frame_vector(int i) const { return to_ortho(cast_element<double>(frame_[i]).coords); }

  /// Point g(sum_i a_i e_ii) with g in Aut(V) (orthonormal matrix given in
  /// algebra-basis form, as returned by automorphism_sample).
  ConePoint at(const std::vector<double>& a, const Eigen::MatrixXd& g_basis) const {
    if (static_cast<int>(a.size()) != k_) throw std::invalid_argument("ConeGeometry::at: need k radial coordinates");
    for (int i = 0; i < k_; ++i) {
      if (!(a[i] > 0)) throw ConeDomainError("radial coordinates must be positive");
      if (i + 1 < k_ && !(a[i] >= a[i + 1])) throw std::invalid_argument("radial coordinates must be non-increasing");
    }
    Eigen::MatrixXd g = sqrtg_.asDiagonal() * g_basis * sqrtg_.cwiseInverse().asDiagonal();
    std::vector<Eigen::VectorXd> frame;
    Eigen::VectorXd X = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < k_; ++i) {
      frame.push_back(g * frame_vector(i));
      X += a[i] * frame.back();
    }
    ConePoint p = from_ortho_point(X);
    p.a = a;
    p.frame = std::move(frame);
    return p;
  }

  /// Reconstruct cached operators for a point assumed to lie on C_k.
  ConePoint from_ortho_point(const Eigen::VectorXd& X) const {
    ConePoint p;
    p.k = k_;
    p.X = X;
    p.y = from_ortho(X);
    p.r = e_.dot(X);
    p.Lx = L(X);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.Lx);
    const auto& ev = es.eigenvalues();
    double top = ev.cwiseAbs().maxCoeff();
    p.rank = 0;
    for (int i = 0; i < n_; ++i)
      if (std::abs(ev[i]) > 1e-8 * top) ++p.rank;
    // image of L_x: the D_k eigenvectors of largest eigenvalue
    p.projector = Eigen::MatrixXd::Zero(n_, n_);
    p.pinv = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = n_ - Dk_; i < n_; ++i) {
      Eigen::VectorXd v = es.eigenvectors().col(i);
      p.projector += v * v.transpose();
      p.pinv += v * v.transpose() / ev[i];
    }
    return p;
  }

  /// Random point: automorphism-transported radial point with a_i in [lo, hi].
  template <class Engine>
  ConePoint sample(Engine& eng, double lo = 0.5, double hi = 2.0) const {
    std::vector<double> a(k_);
    for (auto& v : a) v = uniform_real(eng, lo, hi);
    std::sort(a.begin(), a.end(), std::greater<>());
    Eigen::MatrixXd g = automorphism_sample(alg_, eng);
    return at(a, g);
  }

  // -- metric ---------------------------------------------------------------

  /// r <u| 1/L_x |v> on projected tangent vectors.
  double canonical_metric(const ConePoint& p, const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    require_rank(p);
    return p.r * (p.projector * u).dot(p.pinv * (p.projector * v));
  }
  /// <pi| L_x |pi'> / r.
  double co_metric(const ConePoint& p, const Eigen::VectorXd& pi1, const Eigen::VectorXd& pi2) const {
    require_rank(p);
    return pi1.dot(p.Lx * pi2) / p.r;
  }
  Eigen::MatrixXd metric_operator(const ConePoint& p) const { return p.r * p.pinv; }
  Eigen::MatrixXd co_metric_operator(const ConePoint& p) const { return p.Lx / p.r; }

  // -- lambda_u ---------------------------------------------------------------

  /// Route A: 2 lambda_u = -Tr(L_x^{-1} L_{ux})/2 + Tr(P_x L_u) + (<u|x>/<e|x>)(Tr P_x/2 - 1).
  double lambda_direct(const ConePoint& p, const Eigen::VectorXd& u) const {
    Eigen::MatrixXd Lu = L(u);
    Eigen::VectorXd ux = Lu * p.X;
    double t1 = -0.5 * (p.pinv * L(ux)).trace();
    double t2 = (p.projector * Lu).trace();
    double t3 = u.dot(p.X) / p.r * (p.projector.trace() / 2 - 1);
    return 0.5 * (t1 + t2 + t3);
  }

  /// ln phi_k as a field (unnormalized).
  ScalarField log_phi_field(int k) const {
    ScalarField f(n_);
    auto cs = symbolic_c(*alg_);
    if (k > 1 && delta_ != 0) f.add_log(symbolic_tau(*alg_, k), delta_, "tau_k");
    if (delta_ != 1) f.add_log(cs[k], delta_ - 1, "c_k");
    f.add_log(r_poly(), 2 - cone_dimension(rho_, delta_, k), "r");
    return f;
  }

  CoordPoly r_poly() const {
    CoordPoly r(n_);
    for (int a = 0; a < n_; ++a)
      if (sgn(alg_->identity_coords()[a]) != 0)
        r += CoordPoly::variable(n_, a, alg_->gram()[a] * alg_->identity_coords()[a]);
    return r;
  }

  /// Gradient of a field in orthonormal coordinates.
  Eigen::VectorXd grad_ortho(const ScalarField::Jet& j) const { return sqrtg_.cwiseInverse().asDiagonal() * j.grad; }
  Eigen::MatrixXd hess_ortho(const ScalarField::Jet& j) const {
    return sqrtg_.cwiseInverse().asDiagonal() * j.hess * sqrtg_.cwiseInverse().asDiagonal();
  }

  /// Route B: 4 lambda_u = L_u^(ln phi_k) + delta k tr u, with the vector
  /// field L_u^ = -<ux|grad>.
  double lambda_phi(const ConePoint& p, const Eigen::VectorXd& u, const ScalarField& log_phi) const {
    auto j = log_phi.jet(p.y);
    Eigen::VectorXd ux = L(u) * p.X;
    double lie = -ux.dot(grad_ortho(j));
    return (lie + delta_ * k_ * tr(u)) / 4;
  }

  /// lambda of each orthonormal basis vector.
  Eigen::VectorXd lambda_basis(const ConePoint& p) const {
    Eigen::VectorXd lam(n_);
    for (int a = 0; a < n_; ++a) lam[a] = lambda_direct(p, Eigen::VectorXd::Unit(n_, a));
    return lam;
  }

  // -- r Laplace ---------------------------------------------------------------

  /// (r Delta f)(x) = Tr(L_x Hess f) + 2 sum_a lambda_{e_a} d_a f.
  double r_laplace_apply(const ScalarField& f, const ConePoint& p) const {
    auto j = f.jet(p.y);
    return (p.Lx * hess_ortho(j)).trace() + 2 * lambda_basis(p).dot(grad_ortho(j));
  }

  /// |d f|^2 via the co-metric on the projected gradient.
  double one_form_norm2(const ScalarField& f, const ConePoint& p) const {
    auto j = f.jet(p.y);
    Eigen::VectorXd g = p.projector * grad_ortho(j);
    return co_metric(p, g, g);
  }

  void require_rank(const ConePoint& p) const {
    if (p.r <= 0) throw ConeDomainError("zero-rank or non-positive point");
  }

 private:
  AlgebraPtr alg_;
  int k_, rho_ = 0, delta_ = 0, n_ = 0, Dk_ = 0;
  Eigen::VectorXd sqrtg_, e_;
  std::vector<Eigen::MatrixXd> Lbasis_;
  JordanFrame frame_;
};

// ---------------------------------------------------------------------------
// phi functions and the quantum-correction potential

/// ln phi(nu) with normalization phi = 1 at e[rho(nu)] = e_11 + ... + e_kk.
struct PhiFunction {
  ScalarField log_phi;
  int k;
  double log_norm;  // subtracted
};

inline double log_phi_at_partial_identity(const ConeGeometry& geo, int k, const ScalarField& f) {
  Eigen::VectorXd X = Eigen::VectorXd::Zero(geo.n());
  for (int i = 0; i < k; ++i) X += geo.frame_vector(i);
  return f.jet(geo.from_ortho(X)).value;
}

inline PhiFunction phi_function(const ConeGeometry& geo, const Rational& nu) {
  const Algebra& alg = *geo.algebra();
  WallachParam w = WallachParam::classify(alg, nu);
  if (w.rho_of_nu != geo.k())
    throw ConeDomainError("phi(nu) lives on the cone of rank " + std::to_string(w.rho_of_nu) +
                          ", geometry has rank " + std::to_string(geo.k()));
  ScalarField f = geo.log_phi_field(geo.k());
  if (w.kind == WallachParam::Kind::Continuous) {
    double ex = 2 * nu.get_d() - alg.rank() * alg.degree();
    if (ex != 0) f.add_log(symbolic_c(alg)[alg.rank()], ex, "det");
  }
  double ln0 = log_phi_at_partial_identity(geo, geo.k(), f);
  f.add_constant(-ln0);
  return {f, geo.k(), ln0};
}

/// phi_k normalized at e[k].
inline PhiFunction phi_k_function(const ConeGeometry& geo) {
  ScalarField f = geo.log_phi_field(geo.k());
  double ln0 = log_phi_at_partial_identity(geo, geo.k(), f);
  f.add_constant(-ln0);
  return {f, geo.k(), ln0};
}

/// phi(nu) at a point, strictly positive.
inline double phi_value(const ConeGeometry& geo, const Rational& nu, const ConePoint& p) {
  if (p.k != geo.k()) throw ConeDomainError("phi_value: point rank does not match rho(nu)");
  return std::exp(phi_function(geo, nu).log_phi.jet(p.y).value);
}

/// phi_k from eigenvalues a_1..a_k (unnormalized closed form).
inline double phi_k_closed_form(int rho, int delta, const std::vector<double>& a) {
  const int k = static_cast<int>(a.size());
  double r = std::accumulate(a.begin(), a.end(), 0.0) / rho;
  return std::pow(tau_from_eigenvalues(a, k), delta) * std::pow(elementary_from_eigenvalues(a, k), delta - 1) *
         std::pow(r, 2 - cone_dimension(rho, delta, k));
}

struct Potential {
  double U, V;
};

/// U(nu) = (r/4)(Delta ln phi + |d ln phi|^2/4) [+ (rho/4)((nu-n/rho)^2-(delta/2-1)^2) tr x^{-1}], V = U/(2r).
inline Potential quantum_potential(const ConeGeometry& geo, const Rational& nu, const ConePoint& p) {
  const Algebra& alg = *geo.algebra();
  WallachParam w = WallachParam::classify(alg, nu);
  if (w.rho_of_nu != p.k || geo.k() != p.k) throw ConeDomainError("quantum_potential: point must lie on C_rho(nu)");
  for (double ai : p.a)
    if (!(ai > 1e-12)) throw ConeDomainError("quantum_potential: point on the boundary of the cone");
  PhiFunction phi = phi_k_function(geo);
  double U = 0.25 * (geo.r_laplace_apply(phi.log_phi, p) + 0.25 * p.r * geo.one_form_norm2(phi.log_phi, p));
  if (w.kind == WallachParam::Kind::Continuous) {
    const double rho = alg.rank(), n = alg.dim(), delta = alg.degree(), v = nu.get_d();
    // tr x^{-1} = c_{rho-1}/c_rho via the characteristic polynomial
    auto c = sym_c_all(FElement(geo.algebra(), p.y));
    double trinv = c[alg.rank() - 1] / c[alg.rank()];
    U += rho / 4 * ((v - n / rho) * (v - n / rho) - (delta / 2 - 1) * (delta / 2 - 1)) * trinv;
  }
  return {U, U / (2 * p.r)};
}

/// Independent route: U = -phi^{1/4} (<x|d^2> + nu tr d) phi^{-1/4}, the
/// conjugated -i X_e(nu) applied to the constant function.
inline double quantum_potential_conjugation(const ConeGeometry& geo, const Rational& nu, const ConePoint& p) {
  PhiFunction phi = phi_function(geo, nu);
  auto j = phi.log_phi.jet(p.y);
  Eigen::VectorXd g = geo.grad_ortho(j);
  Eigen::MatrixXd h = geo.hess_ortho(j);
  double trgrad = geo.tr(g);
  return 0.25 * (p.Lx * h).trace() - g.dot(p.Lx * g) / 16 + nu.get_d() / 4 * trgrad;
}

// ---------------------------------------------------------------------------
// Polar chart and measure

/// Radial density prod_{i<j}(a_i-a_j)^delta prod_i a_i^{(delta/2)(rho-k+1)-1}.
inline double radial_density(int rho, int delta, const std::vector<double>& a) {
  const int k = static_cast<int>(a.size());
  for (int i = 0; i + 1 < k; ++i)
    if (a[i] < a[i + 1]) throw std::invalid_argument("radial_density: coordinates must be non-increasing");
  for (double v : a)
    if (v < 0) throw std::invalid_argument("radial_density: coordinates must be non-negative");
  double d = 1;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) d *= std::pow(a[i] - a[j], delta);
  double ex = 0.5 * delta * (rho - k + 1) - 1;
  for (double v : a) d *= std::pow(v, ex);
  return d;
}

class PolarChart {
 public:
  PolarChart(const ConeGeometry& geo) : geo_(geo) {
    const AlgebraPtr& alg = geo.algebra();
    auto basis = jordan_basis(alg, jordan_frame(alg));
    for (const auto& b : basis) {
      if (b.i == b.j || b.i >= geo.k()) continue;
      Eigen::VectorXd eii = geo.frame_vector(b.i);
      Eigen::VectorXd xi = geo.to_ortho(b.unit);
      generators_.push_back(geo.L(eii) * geo.L(xi) - geo.L(xi) * geo.L(eii));
    }
  }

  const std::vector<Eigen::MatrixXd>& generators() const { return generators_; }
  int generator_count() const { return static_cast<int>(generators_.size()); }

  /// sqrt(det h) of the canonical metric in chart coordinates (a_i, x_ij^alpha) at x_ij = 0.
  double volume_density(const std::vector<double>& a) const {
    ConePoint p = geo_.at(a, Eigen::MatrixXd::Identity(geo_.n(), geo_.n()));
    const int k = geo_.k();
    Eigen::MatrixXd J(geo_.n(), k + generator_count());
    for (int i = 0; i < k; ++i) J.col(i) = geo_.frame_vector(i);
    for (int t = 0; t < generator_count(); ++t) J.col(k + t) = generators_[t] * p.X;
    Eigen::MatrixXd h = J.transpose() * geo_.metric_operator(p) * J;
    return std::sqrt(h.determinant());
  }

  /// sqrt(phi_k)/r * sqrt(det h).
  double measure_density(const std::vector<double>& a) const {
    ConePoint p = geo_.at(a, Eigen::MatrixXd::Identity(geo_.n(), geo_.n()));
    PhiFunction phi = phi_k_function(geo_);
    double ph = std::exp(phi.log_phi.jet(p.y).value);
    return std::sqrt(ph) / p.r * volume_density(a);
  }

 private:
  const ConeGeometry& geo_;
  std::vector<Eigen::MatrixXd> generators_;
};

}  // namespace jk
