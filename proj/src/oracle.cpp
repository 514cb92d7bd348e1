#include "lambda1/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lambda1 {

namespace {

// cubic Hermite on the uniform fine grid
double hermite(const std::vector<double>& val, const std::vector<double>& der,
               double dt, double t) {
  const int last = int(val.size()) - 1;
  double s = t / dt;
  int i = std::clamp(int(std::floor(s)), 0, last - 1);
  s -= i;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * val[i] + h10 * dt * der[i] + h01 * val[i + 1] + h11 * dt * der[i + 1];
}

// cumulative integral of the fine-node samples: composite Simpson on whole
// panels, the 5-8-(-1) quadratic rule for the half-panel endpoints
std::vector<double> cumulative(const std::vector<double>& f, double dt) {
  std::vector<double> out(f.size(), 0.0);
  long double acc = 0;
  for (std::size_t i = 0; i + 2 < f.size(); i += 2) {
    out[i + 1] = double(acc + (long double)(dt) / 12.0L * (5.0L * f[i] + 8.0L * f[i + 1] - f[i + 2]));
    acc += (long double)(dt) / 3.0L * (f[i] + 4.0L * f[i + 1] + f[i + 2]);
    out[i + 2] = double(acc);
  }
  return out;
}

}  // namespace

double RadialSolution::f_of(double t) const { return f_expr.eval(Env::with_t(t)); }

double RadialSolution::chi(double t) const { return hermite(chi_vals, chi_p, dt, t); }

double RadialSolution::chi_prime(double t) const {
  // derivative samples for the Hermite fit: chi'' = (f - chi')/t
  static thread_local std::vector<double> der;
  der.resize(chi_p.size());
  for (std::size_t i = 0; i < chi_p.size(); ++i) {
    double ti = i * dt;
    der[i] = i == 0 ? (f_vals[1] - f_vals[0]) / (2 * dt) : (f_vals[i] - chi_p[i]) / ti;
  }
  return hermite(chi_p, der, dt, t);
}

double RadialSolution::chi_second(double t) const {
  if (t <= 0) return (f_vals[1] - f_vals[0]) / (2 * dt);
  return (f_of(t) - chi_prime(t)) / t;
}

double RadialSolution::value(const Pt& p) const {
  double t = 0;
  for (int i = 0; i < 2 * n; ++i) t += p[i] * p[i];
  return chi(t);
}

std::pair<double, double> RadialSolution::eigenvalues(double t) const {
  return {chi_prime(t), f_of(t)};
}

double RadialSolution::round_trip_sup_error() const {
  // t chi' = F exactly, so this differentiates the quadrature output
  double worst = 0;
  for (std::size_t i = 1; i + 1 < chi_p.size(); ++i) {
    const double tm = (i - 1) * dt, tp = (i + 1) * dt;
    const double deriv = (tp * chi_p[i + 1] - tm * chi_p[i - 1]) / (2 * dt);
    worst = std::max(worst, std::abs(deriv - f_vals[i]));
  }
  return worst;
}

RadialSolution radial_solution(const Expr& f_expr, double radius, int n, int panels) {
  if (radius <= 0) throw std::invalid_argument("radial_solution: radius must be > 0");
  if (n < 1 || n > 2) throw std::invalid_argument("radial_solution: n must be 1 or 2");
  panels = std::max(panels, 10000);

  RadialSolution rs;
  rs.n = n;
  rs.radius = radius;
  rs.f_expr = f_expr;
  rs.tmax = radius * radius;
  const int fine = 2 * panels;  // fine nodes at half-panel spacing
  rs.dt = rs.tmax / fine;

  rs.f_vals.resize(fine + 1);
  for (int i = 0; i <= fine; ++i) {
    rs.f_vals[i] = f_expr.eval(Env::with_t(i * rs.dt));
    if (!(rs.f_vals[i] > 0))
      throw std::invalid_argument("radial_solution: f must be positive on [0, R^2]; f(" +
                                  std::to_string(i * rs.dt) + ") = " +
                                  std::to_string(rs.f_vals[i]));
  }
  rs.cum_f = cumulative(rs.f_vals, rs.dt);

  rs.chi_p.resize(fine + 1);
  rs.chi_p[0] = rs.f_vals[0];
  for (int i = 1; i <= fine; ++i) rs.chi_p[i] = rs.cum_f[i] / (i * rs.dt);
  rs.chi_vals = cumulative(rs.chi_p, rs.dt);

  rs.admissible = true;
  rs.worst_chi_second = -std::numeric_limits<double>::infinity();
  const double t_floor = 0.01 * rs.tmax;
  for (int i = 0; i <= fine; ++i) {
    const double ti = i * rs.dt;
    if (rs.chi_p[i] < -1e-12) rs.admissible = false;
    if (ti < t_floor) continue;
    const double cs = (rs.f_vals[i] - rs.chi_p[i]) / ti;
    if (cs > rs.worst_chi_second) {
      rs.worst_chi_second = cs;
      rs.worst_t = ti;
    }
  }
  if (rs.worst_chi_second > 1e-12) rs.admissible = false;
  return rs;
}

Spectrum brute_eig2(const Hermitian& h) {
  if (h.dim() != 2) throw std::invalid_argument("brute_eig2: matrix must be 2x2");
  const double a = h(0, 0).real();
  const double c = h(1, 1).real();
  const cplx b = h(0, 1);
  const double m = 0.5 * (a + c);
  const double d = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(b));
  Spectrum sp;
  sp.n = 2;
  sp.values[0] = m - d;
  sp.values[1] = m + d;
  return sp;
}

QuadraticSolution quadratic_solution(const Hermitian& h0, const OperatorSpec& spec) {
  QuadraticSolution qs;
  qs.h0 = h0;
  qs.f_value = evaluate(spec, h0);  // throws ConeDomainError outside the cone
  const int n = h0.dim();
  qs.u = [h0, n](const Pt& p) {
    std::array<cplx, kMaxDim> z{};
    for (int j = 0; j < n; ++j) z[j] = cplx(p[2 * j], p[2 * j + 1]);
    cplx s = 0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s += h0(j, k) * z[j] * std::conj(z[k]);
    return s.real();
  };
  return qs;
}

namespace {

// dense symmetric-system solve by Gaussian elimination with partial pivoting
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b, int m) {
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(a[r * m + col]) > std::abs(a[piv * m + col])) piv = r;
    if (piv != col) {
      for (int k = 0; k < m; ++k) std::swap(a[col * m + k], a[piv * m + k]);
      std::swap(b[col], b[piv]);
    }
    const double d = a[col * m + col];
    if (d == 0) throw std::runtime_error("jet fit: singular normal equations");
    for (int r = col + 1; r < m; ++r) {
      const double fac = a[r * m + col] / d;
      if (fac == 0) continue;
      for (int k = col; k < m; ++k) a[r * m + k] -= fac * a[col * m + k];
      b[r] -= fac * b[col];
    }
  }
  std::vector<double> x(m);
  for (int r = m - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < m; ++k) s -= a[r * m + k] * x[k];
    x[r] = s / a[r * m + r];
  }
  return x;
}

}  // namespace

std::optional<JetProbe> jet_probe(const GridFunction& u, int node) {
  const GridDomain& dom = *u.dom;
  const int d = dom.d();
  const double h = dom.h();
  auto mi = dom.multi_index(node);

  // all lattice offsets with |o|^2 <= 4, every target interior
  std::vector<std::array<int, 4>> offs;
  std::array<int, 4> o{};
  auto rec = [&](auto&& self, int axis) -> void {
    if (axis == d) {
      int n2 = 0;
      for (int i = 0; i < d; ++i) n2 += o[i] * o[i];
      if (n2 <= 4) offs.push_back(o);
      return;
    }
    for (int v = -2; v <= 2; ++v) {
      o[axis] = v;
      self(self, axis + 1);
    }
    o[axis] = 0;
  };
  rec(rec, 0);

  std::vector<double> rhs;
  std::vector<std::array<int, 4>> used;
  for (auto& off : offs) {
    auto mj = mi;
    for (int i = 0; i < d; ++i) mj[i] += off[i];
    int nb = dom.node_at(mj);
    if (nb < 0 || !dom.is_interior(nb)) return std::nullopt;
    used.push_back(off);
    rhs.push_back(u.values[nb]);
  }

  // model u ~ c + p.x + sum_{a<=b} q_ab x_a x_b over x = h * offset
  const int m = 1 + d + d * (d + 1) / 2;
  const int rows = int(used.size());
  std::vector<double> design(std::size_t(rows) * m);
  for (int r = 0; r < rows; ++r) {
    double* row = &design[std::size_t(r) * m];
    int c = 0;
    row[c++] = 1;
    for (int a = 0; a < d; ++a) row[c++] = h * used[r][a];
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) row[c++] = (h * used[r][a]) * (h * used[r][b]);
  }
  std::vector<double> gram(std::size_t(m) * m, 0.0), atb(m, 0.0);
  for (int r = 0; r < rows; ++r) {
    const double* row = &design[std::size_t(r) * m];
    for (int i = 0; i < m; ++i) {
      atb[i] += row[i] * rhs[r];
      for (int j = 0; j < m; ++j) gram[std::size_t(i) * m + j] += row[i] * row[j];
    }
  }
  std::vector<double> coef = solve_dense(std::move(gram), std::move(atb), m);

  JetProbe probe;
  probe.node = node;
  for (int a = 0; a < d; ++a) probe.gradient[a] = coef[1 + a];
  probe.q = SymmetricForm(d);
  {
    int c = 1 + d;
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) {
        probe.q.set(a, b, a == b ? 2.0 * coef[c] : coef[c]);
        ++c;
      }
  }
  double ss = 0;
  for (int r = 0; r < rows; ++r) {
    const double* row = &design[std::size_t(r) * m];
    double pred = 0;
    for (int i = 0; i < m; ++i) pred += row[i] * coef[i];
    ss += (pred - rhs[r]) * (pred - rhs[r]);
  }
  probe.fit_residual = std::sqrt(ss / rows);
  return probe;
}

JetVerification verify_viscosity(const GridFunction& u, const GridFunction& f,
                                 double tol, double fit_cap) {
  JetVerification rep;
  rep.tol = tol;
  const double h2 = u.dom->h() * u.dom->h();
  for (int node : u.dom->interior_nodes()) {
    auto probe = jet_probe(u, node);
    if (!probe) {
      ++rep.skipped;
      continue;
    }
    ++rep.probed;
    if (probe->fit_residual > fit_cap) {
      ++rep.failed;
      ++rep.excluded;
      continue;
    }
    const double lam = lambda_min(q11_part(probe->q));
    const double dev = std::abs(lam - f.values[node]);
    if (dev > rep.max_dev) {
      rep.max_dev = dev;
      rep.worst_node = node;
    }
    if (dev <= tol * (1.0 + probe->fit_residual / h2))
      ++rep.passed;
    else
      ++rep.failed;
  }
  rep.pass_rate = rep.probed ? double(rep.passed) / rep.probed : 0.0;
  return rep;
}

}  // namespace lambda1
