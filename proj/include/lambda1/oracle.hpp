#pragma once
#include <functional>

#include "lambda1/scheme.hpp"

namespace lambda1 {

// Radial ground truth u(z) = chi(|z|^2) on the ball of radius R, built from a
// profile f(t). With t = |z|^2 the complex Hessian of u has eigenvalues
// chi'(t) (multiplicity n-1) and chi'(t) + t chi''(t) = (t chi')' = f(t), so
// choosing chi'(t) = (1/t) \int_0^t f makes the largest-branch eigenvalue
// exactly f. The profile is admissible for Lambda_1 = f when chi'' <= 0
// (f below its running average) and chi' >= 0 (plurisubharmonicity).
struct RadialSolution {
  int n = 2;
  double radius = 1;
  Expr f_expr;
  bool admissible = false;
  double worst_chi_second = 0;  // max of chi'' over the scanned range
  double worst_t = 0;

  double tmax = 1;  // R^2
  double dt = 0;    // fine-grid spacing
  std::vector<double> f_vals;    // f at fine nodes
  std::vector<double> cum_f;     // F(t) = \int_0^t f at fine nodes
  std::vector<double> chi_p;     // chi' at fine nodes
  std::vector<double> chi_vals;  // chi at fine nodes

  double f_of(double t) const;
  double chi(double t) const;        // cubic Hermite between fine nodes
  double chi_prime(double t) const;  // cubic Hermite between fine nodes
  double chi_second(double t) const;
  double value(const Pt& p) const;   // u(z) = chi(|z|^2)
  // (chi', (t chi')') = (chi', f); the least eigenvalue is their min
  std::pair<double, double> eigenvalues(double t) const;

  // sup over interior fine nodes of |(t chi')' - f| by central differences
  double round_trip_sup_error() const;
};

// Composite-Simpson construction with `panels` >= 10^4 uniform panels.
RadialSolution radial_solution(const Expr& f_expr, double radius, int n,
                               int panels = 20000);

// Closed-form eigenvalues of a 2x2 Hermitian [[a, b], [conj(b), c]]:
// m -+ d with m = (a + c)/2, d = sqrt((a - c)^2/4 + |b|^2).
Spectrum brute_eig2(const Hermitian& h);

// Constant-Hessian exact pair: u(z) = sum_jk H0[j][k] z_j conj(z_k) and
// f = G(Lambda(H0)). Throws ConeDomainError when H0 leaves the cone.
struct QuadraticSolution {
  Hermitian h0{1};
  double f_value = 0;
  std::function<double(const Pt&)> u;
};
QuadraticSolution quadratic_solution(const Hermitian& h0, const OperatorSpec& spec);

// One local least-squares quadratic model of u around a node (both-sided fit
// over the radius-2h lattice ball).
struct JetProbe {
  int node = -1;
  std::array<double, 8> gradient{};
  SymmetricForm q{2};
  double fit_residual = 0;  // rms residual of the fit
};

// Fits the probe when every lattice node within Euclidean radius 2h is
// interior; nullopt otherwise.
std::optional<JetProbe> jet_probe(const GridFunction& u, int node);

struct JetVerification {
  int probed = 0;
  int passed = 0;
  int failed = 0;    // out of band, or fit residual above the cap
  int excluded = 0;  // subset of failed: fit residual above the cap
  int skipped = 0;   // no full radius-2h neighborhood
  double pass_rate = 0;
  double max_dev = 0;
  int worst_node = -1;
  double tol = 0;
};

// Jet-probe verification of Lambda_1(Q^{1,1}) = f at every probeable node:
// pass when |Lambda_1 - f| <= tol * (1 + fit_residual / h^2).
JetVerification verify_viscosity(const GridFunction& u, const GridFunction& f,
                                 double tol, double fit_cap = 1e-2);

}  // namespace lambda1
