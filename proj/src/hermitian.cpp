#include "lambda1/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lambda1 {

namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxDim)
    throw std::invalid_argument("Hermitian: dimension must be in [1, 4], got " +
                                std::to_string(n));
}

}  // namespace

Hermitian::Hermitian(int n) : n_(n) { check_dim(n); }

Hermitian Hermitian::from_entries(int n, std::span<const cplx> row_major) {
  check_dim(n);
  if (static_cast<int>(row_major.size()) != n * n)
    throw std::invalid_argument("Hermitian::from_entries: wrong entry count");
  constexpr double tol = 1e-14;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k <= j; ++k) {
      cplx d = row_major[j * n + k] - std::conj(row_major[k * n + j]);
      if (std::abs(d) > tol) {
        std::ostringstream os;
        os << "Hermitian::from_entries: entry (" << j << "," << k
           << ") violates Hermiticity by " << std::abs(d);
        throw std::invalid_argument(os.str());
      }
    }
  Hermitian h(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k <= j; ++k) {
      cplx v = 0.5 * (row_major[j * n + k] + std::conj(row_major[k * n + j]));
      h.set(j, k, v);
    }
  return h;
}

Hermitian Hermitian::identity(int n) {
  Hermitian h(n);
  for (int j = 0; j < n; ++j) h.set(j, j, 1.0);
  return h;
}

Hermitian Hermitian::diag(std::span<const double> d) {
  Hermitian h(static_cast<int>(d.size()));
  for (int j = 0; j < h.n_; ++j) h.set(j, j, d[j]);
  return h;
}

Hermitian Hermitian::diag(std::initializer_list<double> d) {
  return diag(std::span<const double>(d.begin(), d.size()));
}

void Hermitian::set(int j, int k, cplx v) {
  if (j == k) {
    a_[j][j] = cplx(v.real(), 0.0);
  } else {
    a_[j][k] = v;
    a_[k][j] = std::conj(v);
  }
}

Hermitian Hermitian::operator+(const Hermitian& o) const {
  if (n_ != o.n_) throw std::invalid_argument("Hermitian: dimension mismatch");
  Hermitian r(n_);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k) r.a_[j][k] = a_[j][k] + o.a_[j][k];
  return r;
}

Hermitian Hermitian::operator-(const Hermitian& o) const {
  if (n_ != o.n_) throw std::invalid_argument("Hermitian: dimension mismatch");
  Hermitian r(n_);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k) r.a_[j][k] = a_[j][k] - o.a_[j][k];
  return r;
}

Hermitian Hermitian::operator*(double s) const {
  Hermitian r(n_);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k) r.a_[j][k] = a_[j][k] * s;
  return r;
}

double Hermitian::frobenius() const {
  double s = 0;
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k) s += std::norm(a_[j][k]);
  return std::sqrt(s);
}

double Hermitian::trace() const {
  double s = 0;
  for (int j = 0; j < n_; ++j) s += a_[j][j].real();
  return s;
}

SymmetricForm::SymmetricForm(int m) : m_(m) {
  if (m < 1 || m > 2 * kMaxDim)
    throw std::invalid_argument("SymmetricForm: dimension out of range");
}

SymmetricForm SymmetricForm::from_entries(int m, std::span<const double> row_major) {
  SymmetricForm q(m);
  if (static_cast<int>(row_major.size()) != m * m)
    throw std::invalid_argument("SymmetricForm::from_entries: wrong entry count");
  for (int j = 0; j < m; ++j)
    for (int k = 0; k <= j; ++k)
      q.set(j, k, 0.5 * (row_major[j * m + k] + row_major[k * m + j]));
  return q;
}

SymmetricForm SymmetricForm::diag(std::initializer_list<double> d) {
  SymmetricForm q(static_cast<int>(d.size()));
  int j = 0;
  for (double v : d) {
    q.set(j, j, v);
    ++j;
  }
  return q;
}

SymmetricForm SymmetricForm::operator+(const SymmetricForm& o) const {
  if (m_ != o.m_) throw std::invalid_argument("SymmetricForm: dimension mismatch");
  SymmetricForm r(m_);
  for (int j = 0; j < m_; ++j)
    for (int k = 0; k < m_; ++k) r.q_[j][k] = q_[j][k] + o.q_[j][k];
  return r;
}

SymmetricForm SymmetricForm::operator*(double s) const {
  SymmetricForm r(m_);
  for (int j = 0; j < m_; ++j)
    for (int k = 0; k < m_; ++k) r.q_[j][k] = q_[j][k] * s;
  return r;
}

namespace {

using Mat = std::array<std::array<cplx, kMaxDim>, kMaxDim>;

// C = A^H * B * A restricted to dimension n (A unitary rotation carrier).
Mat conj_transform(const Mat& b, const Mat& a, int n) {
  Mat t{}, c{};
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      cplx s = 0;
      for (int l = 0; l < n; ++l) s += b[j][l] * a[l][k];
      t[j][k] = s;
    }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      cplx s = 0;
      for (int l = 0; l < n; ++l) s += std::conj(a[l][j]) * t[l][k];
      c[j][k] = s;
    }
  return c;
}

Mat multiply(const Mat& a, const Mat& b, int n) {
  Mat c{};
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      cplx s = 0;
      for (int l = 0; l < n; ++l) s += a[j][l] * b[l][k];
      c[j][k] = s;
    }
  return c;
}

double offdiag_norm(const Mat& a, int n) {
  double s = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (j != k) s += std::norm(a[j][k]);
  return std::sqrt(s);
}

}  // namespace

Spectrum eig_hermitian(const Hermitian& h, bool want_vectors) {
  const int n = h.dim();
  Mat a{}, v{};
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) a[j][k] = h(j, k);
  for (int j = 0; j < n; ++j) v[j][j] = 1.0;

  const double fro = h.frobenius();
  const double tol = 1e-13 * fro;

  for (int sweep = 0; sweep < 50 && offdiag_norm(a, n) > tol; ++sweep) {
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = std::abs(a[p][q]);
        if (apq <= 1e-300) continue;
        const cplx ph = a[p][q] / apq;  // phase making the pivot real
        const double app = a[p][p].real(), aqq = a[q][q].real();
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = D * J with D = diag(..., conj(ph) at q) and J the real rotation
        Mat g{};
        for (int j = 0; j < n; ++j) g[j][j] = 1.0;
        g[p][p] = c;
        g[q][p] = -s * std::conj(ph);
        g[p][q] = s;
        g[q][q] = c * std::conj(ph);
        a = conj_transform(a, g, n);
        a[p][q] = a[q][p] = 0.0;  // pivot is zero by construction
        if (want_vectors) v = multiply(v, g, n);
      }
  }

  std::array<int, kMaxDim> idx{};
  std::iota(idx.begin(), idx.begin() + n, 0);
  std::stable_sort(idx.begin(), idx.begin() + n,
                   [&](int i, int j) { return a[i][i].real() < a[j][j].real(); });

  Spectrum sp;
  sp.n = n;
  sp.has_vectors = want_vectors;
  for (int k = 0; k < n; ++k) {
    sp.values[k] = a[idx[k]][idx[k]].real();
    if (want_vectors)
      for (int j = 0; j < n; ++j) sp.vectors[k][j] = v[j][idx[k]];
  }
  return sp;
}

double lambda_k(const Hermitian& h, int k) {
  if (k < 1 || k > h.dim())
    throw std::invalid_argument("lambda_k: index k=" + std::to_string(k) +
                                " out of range for n=" + std::to_string(h.dim()));
  return eig_hermitian(h).values[k - 1];
}

double rayleigh(const Hermitian& h, std::span<const cplx> v) {
  const int n = h.dim();
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument("rayleigh: vector dimension mismatch");
  double vv = 0;
  for (int j = 0; j < n; ++j) vv += std::norm(v[j]);
  if (vv == 0.0) throw std::invalid_argument("rayleigh: zero vector");
  cplx vhv = 0;
  for (int j = 0; j < n; ++j) {
    cplx row = 0;
    for (int k = 0; k < n; ++k) row += h(j, k) * v[k];
    vhv += std::conj(v[j]) * row;
  }
  return vhv.real() / vv;
}

Hermitian q11_part(const SymmetricForm& q) {
  const int m = q.dim();
  if (m % 2 != 0)
    throw std::invalid_argument("q11_part: form dimension must be even, got " +
                                std::to_string(m));
  const int n = m / 2;
  Hermitian h(n);
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      const int xj = 2 * j, yj = 2 * j + 1, xk = 2 * k, yk = 2 * k + 1;
      const double re = 0.25 * (q(xj, xk) + q(yj, yk));
      const double im = 0.25 * (q(xj, yk) - q(yj, xk));
      h.set(j, k, cplx(re, im));
    }
  return h;
}

std::vector<std::pair<double, double>> weyl_margins(const Hermitian& a,
                                                    const Hermitian& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("weyl_margins: dimension mismatch");
  const int n = a.dim();
  Spectrum sa = eig_hermitian(a), sb = eig_hermitian(b), sab = eig_hermitian(a + b);
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k)
    out.emplace_back(sab.values[k] - sa.values[k] - sb.values[0],
                     sa.values[k] + sb.values[n - 1] - sab.values[k]);
  return out;
}

Hermitian random_hermitian(Rng& rng, int n) {
  Hermitian h(n);
  // (M + M*)/2 with M entries uniform in [-1,1]^2
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      cplx mjk(rng.uniform(-1, 1), rng.uniform(-1, 1));
      if (k > j) {
        h.set(j, k, h(j, k) + 0.5 * mjk);
      } else if (k < j) {
        h.set(k, j, h(k, j) + 0.5 * std::conj(mjk));
      } else {
        h.set(j, j, h(j, j).real() + mjk.real());
      }
    }
  return h;
}

Hermitian random_posdef(Rng& rng, int n, double floor) {
  Mat m{};
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m[j][k] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  Hermitian h(n);
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      cplx s = 0;
      for (int l = 0; l < n; ++l) s += m[j][l] * std::conj(m[k][l]);
      if (j == k) s += floor;
      h.set(j, k, s);
    }
  return h;
}

}  // namespace lambda1
