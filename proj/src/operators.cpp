#include "lambda1/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lambda1 {

namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxDim)
    throw std::invalid_argument("OperatorSpec: n must be in [1, 4]");
}

// sigma_l for l = 0..n from the eigenvalue list
std::array<double, kMaxDim + 1> elementary_symmetric(std::span<const double> lam) {
  std::array<double, kMaxDim + 1> e{};
  e[0] = 1.0;
  int m = 0;
  for (double x : lam) {
    ++m;
    for (int l = m; l >= 1; --l) e[l] = e[l] + x * e[l - 1];
  }
  return e;
}

// all k-element subset sums of lam
std::vector<double> subset_sums(std::span<const double> lam, int k) {
  const int n = static_cast<int>(lam.size());
  std::vector<double> out;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    double s = 0;
    for (int i : idx) s += lam[i];
    out.push_back(s);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

}  // namespace

double binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

OperatorSpec OperatorSpec::make_lambda1(int n) {
  check_n(n);
  return {OperatorKind::lambda1, n};
}

OperatorSpec OperatorSpec::make_lambda_k(int n, int k) {
  check_n(n);
  if (k < 1 || k > n) throw std::invalid_argument("lambda_k: k out of range");
  OperatorSpec s{OperatorKind::lambda_k, n};
  s.k = k;
  return s;
}

OperatorSpec OperatorSpec::make_eigen_combination(int n, std::span<const double> a) {
  check_n(n);
  if (static_cast<int>(a.size()) != n)
    throw std::invalid_argument("eigen_combination: need n coefficients");
  double sum = 0;
  for (double c : a) {
    if (c < 0) throw std::invalid_argument("eigen_combination: coefficients must be >= 0");
    sum += c;
  }
  if (sum <= 0) throw std::invalid_argument("eigen_combination: coefficient sum must be > 0");
  OperatorSpec s{OperatorKind::eigen_combination, n};
  std::copy(a.begin(), a.end(), s.a.begin());
  return s;
}

OperatorSpec OperatorSpec::make_monge_ampere(int n) {
  check_n(n);
  return {OperatorKind::monge_ampere, n};
}

OperatorSpec OperatorSpec::make_k_hessian(int n, int k) {
  check_n(n);
  if (k < 1 || k > n) throw std::invalid_argument("k_hessian: k out of range");
  OperatorSpec s{OperatorKind::k_hessian, n};
  s.k = k;
  return s;
}

OperatorSpec OperatorSpec::make_k_monge_ampere(int n, int k) {
  check_n(n);
  if (k < 1 || k > n) throw std::invalid_argument("k_monge_ampere: k out of range");
  OperatorSpec s{OperatorKind::k_monge_ampere, n};
  s.k = k;
  return s;
}

OperatorSpec OperatorSpec::make_interpolated(double s) {
  if (s < 0 || s > 1) throw std::invalid_argument("interpolated_s: s must be in [0, 1]");
  OperatorSpec sp{OperatorKind::interpolated_s, 2};
  sp.s = s;
  return sp;
}

std::string OperatorSpec::name() const {
  switch (kind) {
    case OperatorKind::lambda1: return "lambda1";
    case OperatorKind::lambda_k: return "lambda_k:" + std::to_string(k);
    case OperatorKind::eigen_combination: {
      std::string r = "eigen_combination:";
      for (int i = 0; i < n; ++i) r += (i ? ";" : "") + std::to_string(a[i]);
      return r;
    }
    case OperatorKind::monge_ampere: return "monge_ampere";
    case OperatorKind::k_hessian: return "k_hessian:" + std::to_string(k);
    case OperatorKind::k_monge_ampere: return "k_monge_ampere:" + std::to_string(k);
    case OperatorKind::interpolated_s: return "interpolated_s:" + std::to_string(s);
  }
  return "?";
}

bool eigen_in_cone(const OperatorSpec& spec, std::span<const double> lam, double tol) {
  const int n = spec.n;
  switch (spec.kind) {
    case OperatorKind::lambda1:
      return lam[0] > -tol;
    case OperatorKind::lambda_k:
      return lam[spec.k - 1] > -tol;
    case OperatorKind::eigen_combination: {
      double s = 0;
      for (int i = 0; i < n; ++i) s += spec.a[i] * lam[i];
      return s > -tol;
    }
    case OperatorKind::monge_ampere:
      for (int i = 0; i < n; ++i)
        if (lam[i] <= -tol) return false;
      return true;
    case OperatorKind::k_hessian: {
      auto e = elementary_symmetric(lam);
      for (int l = 1; l <= spec.k; ++l)
        if (e[l] <= -tol) return false;
      return true;
    }
    case OperatorKind::k_monge_ampere: {
      for (double s : subset_sums(lam, spec.k))
        if (s <= -tol) return false;
      return true;
    }
    case OperatorKind::interpolated_s:
      return lam[0] + spec.s * lam[1] > -tol && spec.s * lam[0] + lam[1] > -tol;
  }
  return false;
}

bool in_cone(const OperatorSpec& spec, const Hermitian& h) {
  if (h.dim() != spec.n)
    throw std::invalid_argument("in_cone: matrix dimension does not match operator");
  auto sp = eig_hermitian(h);
  return eigen_in_cone(spec, std::span<const double>(sp.values.data(), spec.n), 0.0);
}

bool in_closed_cone(const OperatorSpec& spec, const Hermitian& h, double tol) {
  if (h.dim() != spec.n)
    throw std::invalid_argument("in_closed_cone: matrix dimension does not match operator");
  auto sp = eig_hermitian(h);
  return eigen_in_cone(spec, std::span<const double>(sp.values.data(), spec.n), tol);
}

double evaluate_eigen(const OperatorSpec& spec, std::span<const double> lam) {
  if (!eigen_in_cone(spec, lam, 1e-12))
    throw ConeDomainError("evaluate: eigenvalues outside the closed cone of " +
                          spec.name());
  const int n = spec.n;
  auto clamp0 = [](double x) { return x > 0 ? x : 0.0; };
  switch (spec.kind) {
    case OperatorKind::lambda1:
      return lam[0];
    case OperatorKind::lambda_k:
      return lam[spec.k - 1];
    case OperatorKind::eigen_combination: {
      double s = 0;
      for (int i = 0; i < n; ++i) s += spec.a[i] * lam[i];
      return s;
    }
    case OperatorKind::monge_ampere: {
      double p = 1;
      for (int i = 0; i < n; ++i) p *= clamp0(lam[i]);
      return std::pow(p, 1.0 / n);
    }
    case OperatorKind::k_hessian: {
      auto e = elementary_symmetric(lam);
      return std::pow(clamp0(e[spec.k]), 1.0 / spec.k);
    }
    case OperatorKind::k_monge_ampere: {
      double p = 1;
      for (double s : subset_sums(lam, spec.k)) p *= clamp0(s);
      return std::pow(p, 1.0 / binomial(n, spec.k));
    }
    case OperatorKind::interpolated_s: {
      const double s = spec.s;
      const double q =
          (1 - s) * (1 - s) * lam[0] * lam[1] + s * (lam[0] + lam[1]) * (lam[0] + lam[1]);
      return std::sqrt(clamp0(q));
    }
  }
  throw std::logic_error("evaluate_eigen: unknown kind");
}

double evaluate(const OperatorSpec& spec, const Hermitian& h) {
  if (h.dim() != spec.n)
    throw std::invalid_argument("evaluate: matrix dimension does not match operator");
  auto sp = eig_hermitian(h);
  return evaluate_eigen(spec, std::span<const double>(sp.values.data(), spec.n));
}

ComparabilityReport comparability_estimate(const OperatorSpec& spec, int sample_count,
                                           std::uint64_t seed) {
  if (sample_count < 1)
    throw std::invalid_argument("comparability_estimate: sample_count must be >= 1");
  Rng rng(seed);
  ComparabilityReport rep;
  rep.samples = sample_count;
  rep.worst_a = Hermitian(spec.n);
  rep.worst_p = Hermitian(spec.n);
  rep.ratios.reserve(sample_count);
  constexpr int kDrawCap = 100000;
  for (int i = 0; i < sample_count; ++i) {
    Hermitian a(spec.n);
    bool found = false;
    for (int d = 0; d < kDrawCap; ++d) {
      a = random_hermitian(rng, spec.n);
      if (in_cone(spec, a)) {
        found = true;
        break;
      }
    }
    if (!found)
      throw std::runtime_error("comparability_estimate: no cone sample found for " +
                               spec.name() + " in 1e5 draws");
    Hermitian p = random_posdef(rng, spec.n);
    const double l1p = lambda_min(p);
    const double ratio = (evaluate(spec, a + p) - evaluate(spec, a)) / l1p;
    rep.ratios.push_back(ratio);
    if (rep.ratios.size() == 1 || ratio < rep.empirical_c) {
      rep.empirical_c = ratio;
      rep.worst_a = a;
      rep.worst_p = p;
    }
  }
  rep.analytic_c = known_constant(spec);
  return rep;
}

double positive_cone_ratio(const OperatorSpec& spec, int sample_count,
                           std::uint64_t seed) {
  if (sample_count < 1)
    throw std::invalid_argument("positive_cone_ratio: sample_count must be >= 1");
  Rng rng(seed);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < sample_count; ++i) {
    Hermitian p = random_posdef(rng, spec.n);
    worst = std::min(worst, evaluate(spec, p) / lambda_min(p));
  }
  return worst;
}

std::optional<double> known_constant(const OperatorSpec& spec) {
  switch (spec.kind) {
    case OperatorKind::lambda1:
    case OperatorKind::lambda_k:
      return 1.0;  // Weyl
    case OperatorKind::eigen_combination: {
      double s = 0;
      for (int i = 0; i < spec.n; ++i) s += spec.a[i];
      return s;
    }
    case OperatorKind::monge_ampere:
      return 1.0;  // geometric mean >= minimum on the positive cone
    case OperatorKind::k_hessian:
      return std::pow(binomial(spec.n, spec.k), 1.0 / spec.k);
    case OperatorKind::k_monge_ampere:
      return static_cast<double>(spec.k);
    case OperatorKind::interpolated_s:
      return std::nullopt;  // no derived bound claimed
  }
  return std::nullopt;
}

ConcavityWitness lambda_k_concavity_witness() {
  // Lambda_2(diag(0,1)) = Lambda_2(diag(1,0)) = 1 but Lambda_2 of the
  // midpoint diag(1/2,1/2) is 1/2 < 1.
  return {Hermitian::diag({0.0, 1.0}), Hermitian::diag({1.0, 0.0}), 0.5};
}

}  // namespace lambda1
