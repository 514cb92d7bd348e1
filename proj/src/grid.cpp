#include "lambda1/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lambda1 {

namespace {

GaussInt g_mul(GaussInt a, GaussInt b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
GaussInt g_neg(GaussInt a) { return {-a.re, -a.im}; }
GaussInt g_i(GaussInt a) { return {-a.im, a.re}; }  // multiply by i
long g_norm(GaussInt a) { return long(a.re) * a.re + long(a.im) * a.im; }

// Gaussian integer gcd via Euclid with rounded division.
GaussInt g_gcd(GaussInt a, GaussInt b) {
  while (g_norm(b) != 0) {
    // q = round(a / b)
    long n = g_norm(b);
    long re_num = long(a.re) * b.re + long(a.im) * b.im;
    long im_num = long(a.im) * b.re - long(a.re) * b.im;
    GaussInt q{int(std::lround(double(re_num) / n)), int(std::lround(double(im_num) / n))};
    GaussInt r{a.re - (q.re * b.re - q.im * b.im), a.im - (q.re * b.im + q.im * b.re)};
    a = b;
    b = r;
  }
  return a;
}

std::array<int, 4> dir_tuple(const Direction& w) {
  return {w[0].re, w[0].im, w[1].re, w[1].im};
}

}  // namespace

double direction_norm2(const Direction& w, int n) {
  double s = 0;
  for (int j = 0; j < n; ++j) s += double(g_norm(w[j]));
  return s;
}

Direction canonical_direction(Direction w, int n) {
  // primitive representative: divide out the Gaussian gcd of the components
  GaussInt g = w[0];
  for (int j = 1; j < n; ++j) g = g_gcd(g, w[j]);
  if (g_norm(g) == 0) throw std::invalid_argument("canonical_direction: zero vector");
  if (g_norm(g) > 1) {
    long gn = g_norm(g);
    for (int j = 0; j < n; ++j) {
      long re = long(w[j].re) * g.re + long(w[j].im) * g.im;
      long im = long(w[j].im) * g.re - long(w[j].re) * g.im;
      w[j] = {int(re / gn), int(im / gn)};
    }
  }
  // lexicographically greatest representative of the unit orbit
  Direction best = w;
  Direction cur = w;
  for (int u = 0; u < 3; ++u) {
    for (int j = 0; j < n; ++j) cur[j] = g_i(cur[j]);
    if (dir_tuple(cur) > dir_tuple(best)) best = cur;
  }
  return best;
}

DirectionSet direction_set(int n, int width) {
  if (n < 1 || n > 2) throw std::invalid_argument("direction_set: n must be 1 or 2");
  if (width < 1) throw std::invalid_argument("direction_set: width must be >= 1");
  // entries of modulus <= width
  std::vector<GaussInt> entries;
  for (int re = -width; re <= width; ++re)
    for (int im = -width; im <= width; ++im)
      if (re * re + im * im <= width * width) entries.push_back({re, im});

  std::vector<Direction> out;
  auto add = [&](Direction w) {
    bool zero = true;
    for (int j = 0; j < n; ++j)
      if (g_norm(w[j]) != 0) zero = false;
    if (zero) return;
    Direction c = canonical_direction(w, n);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };

  if (n == 1) {
    for (auto e : entries) add({e, GaussInt{}});
  } else {
    for (auto e1 : entries)
      for (auto e2 : entries) add({e1, e2});
  }
  std::sort(out.begin(), out.end(), [](const Direction& a, const Direction& b) {
    return dir_tuple(a) > dir_tuple(b);
  });
  return {n, width, std::move(out)};
}

GridDomain::GridDomain(int n, double h, Expr level, const Box& box)
    : n_(n), d_(2 * n), h_(h), box_(box), level_(std::move(level)) {
  if (n < 1 || n > 2) throw std::invalid_argument("GridDomain: n must be 1 or 2");
  if (h <= 0) throw std::invalid_argument("GridDomain: h must be > 0");
  if (!level_.valid_for_dimension(n))
    throw std::invalid_argument("GridDomain: level references coordinates beyond dimension");
  total_ = 1;
  for (int i = 0; i < d_; ++i) {
    if (box_.hi[i] <= box_.lo[i])
      throw std::invalid_argument("GridDomain: empty box on axis " + std::to_string(i));
    dims_[i] = int(std::floor((box_.hi[i] - box_.lo[i]) / h + 1e-9)) + 1;
    total_ *= dims_[i];
  }
  cls_.assign(total_, NodeClass::exterior);
  for (int node = 0; node < total_; ++node)
    if (level_at(point(node)) < 0) {
      cls_[node] = NodeClass::interior;
      interior_.push_back(node);
    }
  interior_count_ = int(interior_.size());
  if (interior_count_ == 0)
    throw std::invalid_argument("GridDomain: empty interior ({level < 0} contains no node)");
  // exterior nodes one lattice step away from an interior node
  for (int node : interior_) {
    auto mi = multi_index(node);
    for (int ax = 0; ax < d_; ++ax)
      for (int sgn : {-1, 1}) {
        auto mj = mi;
        mj[ax] += sgn;
        int nb = node_at(mj);
        if (nb >= 0 && cls_[nb] == NodeClass::exterior)
          cls_[nb] = NodeClass::boundary_adjacent;
      }
  }
}

Pt GridDomain::point(int node) const {
  auto mi = multi_index(node);
  Pt p{};
  for (int i = 0; i < d_; ++i) p[i] = box_.lo[i] + h_ * mi[i];
  return p;
}

std::array<int, 4> GridDomain::multi_index(int node) const {
  std::array<int, 4> mi{};
  for (int i = 0; i < d_; ++i) {
    mi[i] = node % dims_[i];
    node /= dims_[i];
  }
  return mi;
}

int GridDomain::node_at(const std::array<int, 4>& mi) const {
  int node = 0, stride = 1;
  for (int i = 0; i < d_; ++i) {
    if (mi[i] < 0 || mi[i] >= dims_[i]) return -1;
    node += mi[i] * stride;
    stride *= dims_[i];
  }
  return node;
}

double GridDomain::level_at(const Pt& p) const { return level_.eval(Env::at_point(p)); }

double GridDomain::boundary_crossing(const Pt& z, const Pt& dvec) const {
  const double f0 = level_at(z);
  Pt z1 = z;
  for (int i = 0; i < d_; ++i) z1[i] += dvec[i];
  const double f1 = level_at(z1);
  if (!(f0 < 0 && f1 >= 0))
    throw std::invalid_argument("boundary_crossing: no sign change along the arm");
  double lo = 0, hi = 1;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    Pt zm = z;
    for (int i = 0; i < d_; ++i) zm[i] += mid * dvec[i];
    double fm = level_at(zm);
    if (std::abs(fm) <= 1e-10) return mid;
    (fm < 0 ? lo : hi) = mid;
  }
  return hi;
}

double GridDomain::cached_crossing(int node, const std::array<int, 4>& step) const {
  std::uint64_t key = std::uint64_t(node);
  for (int i = 0; i < 4; ++i)
    key = key * 1031 + std::uint64_t(std::uint8_t(step[i] + 128));
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = crossing_cache_.find(key);
    if (it != crossing_cache_.end()) return it->second;
  }
  Pt z = point(node), dvec{};
  for (int i = 0; i < d_; ++i) dvec[i] = h_ * step[i];
  double rho = boundary_crossing(z, dvec);
  std::lock_guard<std::mutex> lk(cache_mu_);
  crossing_cache_.emplace(key, rho);  // idempotent: recomputation agrees
  return rho;
}

ArmSet arms(const GridDomain& dom, int node, const Direction& w) {
  if (!dom.is_interior(node))
    throw std::invalid_argument("arms: node is not interior");
  const int n = dom.n();
  ArmSet as;
  as.w = w;
  as.wnorm2 = direction_norm2(w, n);

  // lattice steps for +w and +iw in real coordinates (x1, y1, x2, y2)
  std::array<int, 4> step_w{}, step_iw{};
  for (int j = 0; j < n; ++j) {
    step_w[2 * j] = w[j].re;
    step_w[2 * j + 1] = w[j].im;
    GaussInt iw{-w[j].im, w[j].re};
    step_iw[2 * j] = iw.re;
    step_iw[2 * j + 1] = iw.im;
  }
  const std::array<std::array<int, 4>, 4> steps = {
      step_w,
      {-step_w[0], -step_w[1], -step_w[2], -step_w[3]},
      step_iw,
      {-step_iw[0], -step_iw[1], -step_iw[2], -step_iw[3]}};

  auto mi = dom.multi_index(node);
  const Pt z = dom.point(node);
  for (int a = 0; a < 4; ++a) {
    auto mj = mi;
    for (int i = 0; i < dom.d(); ++i) mj[i] += steps[a][i];
    int target = dom.node_at(mj);
    Arm arm;
    if (target >= 0 && dom.is_interior(target)) {
      arm.target = target;
    } else {
      arm.to_boundary = true;
      arm.rho = dom.cached_crossing(node, steps[a]);
      if (arm.rho < 1e-8) {
        arm.rho = 1e-8;
        arm.clamped = true;
      }
      for (int i = 0; i < dom.d(); ++i)
        arm.boundary_point[i] = z[i] + arm.rho * dom.h() * steps[a][i];
    }
    as.arms[a] = arm;
  }
  return as;
}

}  // namespace lambda1
