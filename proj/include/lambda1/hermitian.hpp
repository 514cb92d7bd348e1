#pragma once
#include <array>
#include <complex>
#include <span>
#include <vector>

#include "lambda1/rng.hpp"

namespace lambda1 {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 4;

// Hermitian n x n matrix, 1 <= n <= 4. Storage is kept exactly Hermitian:
// set() writes both (j,k) and (k,j), diagonal entries are forced real.
class Hermitian {
 public:
  explicit Hermitian(int n);

  // Validates the raw row-major entries against the 1e-14 Hermiticity
  // tolerance, then symmetrizes. Throws std::invalid_argument otherwise.
  static Hermitian from_entries(int n, std::span<const cplx> row_major);
  static Hermitian identity(int n);
  static Hermitian diag(std::span<const double> d);
  static Hermitian diag(std::initializer_list<double> d);

  int dim() const { return n_; }
  cplx operator()(int j, int k) const { return a_[j][k]; }
  void set(int j, int k, cplx v);

  Hermitian operator+(const Hermitian& o) const;
  Hermitian operator-(const Hermitian& o) const;
  Hermitian operator*(double s) const;

  double frobenius() const;
  double trace() const;

 private:
  int n_;
  std::array<std::array<cplx, kMaxDim>, kMaxDim> a_{};
};

struct Spectrum {
  int n = 0;
  std::array<double, kMaxDim> values{};  // ascending
  bool has_vectors = false;
  // vectors[k] is the (orthonormal) eigenvector for values[k]
  std::array<std::array<cplx, kMaxDim>, kMaxDim> vectors{};
};

// Symmetric 2n x 2n real form, coordinate ordering (x1, y1, x2, y2, ...).
// Construction symmetrizes, so entries[j][k] == entries[k][j] exactly.
class SymmetricForm {
 public:
  explicit SymmetricForm(int m);
  static SymmetricForm from_entries(int m, std::span<const double> row_major);
  static SymmetricForm diag(std::initializer_list<double> d);

  int dim() const { return m_; }
  double operator()(int j, int k) const { return q_[j][k]; }
  void set(int j, int k, double v) { q_[j][k] = q_[k][j] = v; }

  SymmetricForm operator+(const SymmetricForm& o) const;
  SymmetricForm operator*(double s) const;

 private:
  int m_;
  std::array<std::array<double, 2 * kMaxDim>, 2 * kMaxDim> q_{};
};

// Cyclic Jacobi diagonalization (row-cyclic sweeps, hard cap 50 sweeps).
// Post: off-diagonal Frobenius norm <= 1e-13 * ||H||_F, values ascending.
Spectrum eig_hermitian(const Hermitian& h, bool want_vectors = false);

// k is 1-based; returns the k-th smallest eigenvalue.
double lambda_k(const Hermitian& h, int k);
inline double lambda_min(const Hermitian& h) { return lambda_k(h, 1); }
inline double lambda_max(const Hermitian& h) { return lambda_k(h, h.dim()); }

// <v, Hv> / <v, v>; rejects the zero vector.
double rayleigh(const Hermitian& h, std::span<const cplx> v);

// Hermitian (1,1)-part of a real quadratic form on C^n:
// H[j][k] = 1/4 [ (Q_{x_j x_k} + Q_{y_j y_k}) + i (Q_{x_j y_k} - Q_{y_j x_k}) ].
Hermitian q11_part(const SymmetricForm& q);

// Per-k Weyl margins for (A, B):
//   first  = Lambda_k(A+B) - Lambda_k(A) - Lambda_1(B)
//   second = Lambda_k(A) + Lambda_n(B) - Lambda_k(A+B)
// Both are nonnegative up to roundoff (Weyl's inequalities).
std::vector<std::pair<double, double>> weyl_margins(const Hermitian& a,
                                                    const Hermitian& b);

// (M + M*)/2 with entries of M uniform in [-1,1]^2.
Hermitian random_hermitian(Rng& rng, int n);

// Random positive definite matrix M M* + floor * I.
Hermitian random_posdef(Rng& rng, int n, double floor = 1e-6);

}  // namespace lambda1
