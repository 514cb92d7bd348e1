#pragma once
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lambda1/hermitian.hpp"

namespace lambda1 {

// The signal for "H lies outside the operator's closed cone": the operator is
// simply not defined there, which is distinct from any numeric failure.
struct ConeDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class OperatorKind {
  lambda1,            // smallest eigenvalue, cone {L1 > 0}
  lambda_k,           // k-th eigenvalue, cone {Lk > 0}
  eigen_combination,  // sum a_k L_k, a_k >= 0, sum > 0, cone {sum > 0}
  monge_ampere,       // (prod L_i)^{1/n}, cone {all L_i > 0}
  k_hessian,          // sigma_k^{1/k}, cone {sigma_l > 0 for l <= k}
  k_monge_ampere,     // (prod of k-fold partial sums)^{1/C(n,k)}
  interpolated_s,     // n=2: ((1-s)^2 L1 L2 + s (L1+L2)^2)^{1/2}
};

struct OperatorSpec {
  OperatorKind kind;
  int n;                    // ambient dimension
  int k = 0;                // for lambda_k / k_hessian / k_monge_ampere
  double s = 0;             // for interpolated_s
  std::array<double, kMaxDim> a{};  // for eigen_combination

  static OperatorSpec make_lambda1(int n);
  static OperatorSpec make_lambda_k(int n, int k);
  static OperatorSpec make_eigen_combination(int n, std::span<const double> a);
  static OperatorSpec make_monge_ampere(int n);
  static OperatorSpec make_k_hessian(int n, int k);
  static OperatorSpec make_k_monge_ampere(int n, int k);
  static OperatorSpec make_interpolated(double s);  // n = 2

  std::string name() const;
};

struct ComparabilityReport {
  int samples = 0;
  double empirical_c = 0;  // min over samples of (G(A+P)-G(A)) / Lambda_1(P)
  Hermitian worst_a{1}, worst_p{1};
  std::optional<double> analytic_c;
  std::vector<double> ratios;  // per-sample, in draw order
};

// Strict cone membership: Lambda(H) in the open cone Gamma.
bool in_cone(const OperatorSpec& spec, const Hermitian& h);

// Closure membership with a 1e-12 tolerance on each defining inequality.
bool in_closed_cone(const OperatorSpec& spec, const Hermitian& h, double tol = 1e-12);

// G(Lambda(H)); requires closed-cone membership, else throws ConeDomainError.
double evaluate(const OperatorSpec& spec, const Hermitian& h);

// Convenience: evaluate directly from an eigenvalue vector.
double evaluate_eigen(const OperatorSpec& spec, std::span<const double> lam);
bool eigen_in_cone(const OperatorSpec& spec, std::span<const double> lam, double tol);

// Empirical comparability constant for assumption c):
//   samples A in the cone (resampled random Hermitian) and P = M M* + 1e-6 I,
//   ratio = (G(A+P) - G(A)) / Lambda_1(P). Deterministic in (spec, count, seed).
ComparabilityReport comparability_estimate(const OperatorSpec& spec, int sample_count,
                                           std::uint64_t seed);

// min over positive definite samples of G(P) / Lambda_1(P); this is the
// "comparable to the first eigenvalue on the positive cone" form.
double positive_cone_ratio(const OperatorSpec& spec, int sample_count,
                           std::uint64_t seed);

// Analytic comparability constant where derivable; absent for interpolated_s.
std::optional<double> known_constant(const OperatorSpec& spec);

// Witness pair (A, B, alpha) violating midpoint concavity of Lambda_k, k >= 2.
struct ConcavityWitness {
  Hermitian a, b;
  double alpha;
};
ConcavityWitness lambda_k_concavity_witness();

double binomial(int n, int k);

}  // namespace lambda1
