#pragma once
#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "lambda1/expr.hpp"

namespace lambda1 {

using Pt = std::array<double, 4>;  // (x1, y1, x2, y2); unused axes are 0

struct Box {
  std::array<double, 4> lo{}, hi{};
  static Box cube(int d, double lo, double hi) {
    Box b;
    for (int i = 0; i < d; ++i) {
      b.lo[i] = lo;
      b.hi[i] = hi;
    }
    return b;
  }
};

enum class NodeClass : std::uint8_t { interior, boundary_adjacent, exterior };

// Gaussian integer a + b i
struct GaussInt {
  int re = 0, im = 0;
  friend bool operator==(GaussInt, GaussInt) = default;
};

// Lattice direction w in Z[i]^n (second component unused for n = 1).
using Direction = std::array<GaussInt, 2>;

// Canonical direction sets: entries of modulus <= W, Z[i]-primitive,
// one representative per unit orbit {w, -w, iw, -iw}.
struct DirectionSet {
  int n = 1;
  int width = 1;
  std::vector<Direction> members;
};

DirectionSet direction_set(int n, int width);
Direction canonical_direction(Direction w, int n);
double direction_norm2(const Direction& w, int n);

// Masked uniform lattice over R^{2n} for Omega = {level < 0}.
class GridDomain {
 public:
  // throws on empty interior
  GridDomain(int n, double h, Expr level, const Box& box);

  int n() const { return n_; }
  int d() const { return d_; }
  double h() const { return h_; }
  const Box& box() const { return box_; }
  const Expr& level() const { return level_; }

  int total_nodes() const { return total_; }
  int interior_count() const { return interior_count_; }
  NodeClass cls(int node) const { return cls_[node]; }
  bool is_interior(int node) const { return cls_[node] == NodeClass::interior; }
  const std::vector<int>& interior_nodes() const { return interior_; }

  Pt point(int node) const;
  std::array<int, 4> multi_index(int node) const;
  // -1 when the multi-index leaves the box
  int node_at(const std::array<int, 4>& mi) const;
  int dims(int axis) const { return dims_[axis]; }

  double level_at(const Pt& p) const;

  // First crossing of {level = 0} along z + s*dvec, s in (0, 1]; bisection,
  // <= 60 iterations. Requires level(z) < 0 <= level(z + dvec).
  double boundary_crossing(const Pt& z, const Pt& dvec) const;

  // As above but cached per (node, lattice step); idempotent concurrent fills.
  double cached_crossing(int node, const std::array<int, 4>& step) const;

 private:
  int n_, d_;
  double h_;
  Box box_;
  Expr level_;
  std::array<int, 4> dims_{1, 1, 1, 1};
  int total_ = 0;
  int interior_count_ = 0;
  std::vector<NodeClass> cls_;
  std::vector<int> interior_;

  mutable std::mutex cache_mu_;
  mutable std::unordered_map<std::uint64_t, double> crossing_cache_;
};

// One stencil arm from an interior node: either a full lattice arm (rho = 1,
// target grid node) or a shortened arm ending at a boundary point.
struct Arm {
  bool to_boundary = false;
  double rho = 1.0;  // fraction of the full arm length, in (0, 1]
  bool clamped = false;  // rho hit the 1e-8 clamp
  int target = -1;   // grid node when !to_boundary
  Pt boundary_point{};
};

// The four arms (+w, -w, +iw, -iw) of the complex line through a node.
struct ArmSet {
  Direction w;
  double wnorm2 = 1;
  std::array<Arm, 4> arms;
};

ArmSet arms(const GridDomain& dom, int node, const Direction& w);

}  // namespace lambda1
