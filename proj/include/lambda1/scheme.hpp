#pragma once
#include <functional>
#include <optional>

#include "lambda1/grid.hpp"
#include "lambda1/hermitian.hpp"
#include "lambda1/operators.hpp"

namespace lambda1 {

using BoundaryFn = std::function<double(const Pt&)>;

// Real values on the nodes of a GridDomain plus a boundary datum evaluated
// at arm crossing points. Values are meaningful on interior nodes.
struct GridFunction {
  std::shared_ptr<const GridDomain> dom;
  std::vector<double> values;  // size dom->total_nodes()
  BoundaryFn boundary;

  double at(int node) const { return values[node]; }
  double boundary_at(const Pt& p) const { return boundary(p); }
};

GridFunction sample(std::shared_ptr<const GridDomain> dom, const Expr& e);
GridFunction sample(std::shared_ptr<const GridDomain> dom,
                    const std::function<double(const Pt&)>& f);

// u + c, boundary datum shifted consistently
GridFunction shift(const GridFunction& u, double c);
// u - (eps/2) |z - z0|^2, boundary datum shifted consistently
GridFunction quadratic_shift(const GridFunction& u, double eps, const Pt& z0);

struct DirectionalEstimate {
  Direction w;
  double value = 0;          // E_w
  double center_coeff = 0;   // c_w > 0
  double neighbor_sum = 0;   // A_w, so E_w = A_w - c_w * u(center)
  bool full_arms = true;
};

// Discrete Rayleigh quotient along the complex line through `node` in
// direction w: second differences along +-w and +-iw with Shortley-Weller
// shortened boundary arms. Exact on quadratics.
DirectionalEstimate directional_value(const GridFunction& u, int node, const ArmSet& as);

// (S_h u)(z) = min_w E_w(u, z) on every interior node; non-interior entries
// of the result are zero.
std::vector<double> apply_lambda1(const GridFunction& u, const DirectionSet& dirs);

// Exact per-node Gauss-Seidel update: the value u* with min_w E_w = f_value.
double node_solve(const GridFunction& u, int node, double f_value,
                  const DirectionSet& dirs);

// Central-difference complex Hessian; nullopt when the full central stencil
// does not fit inside the interior.
std::optional<Hermitian> central_hessian(const GridFunction& u, int node);

struct ResidualReport {
  double wide_max_abs = 0;
  double wide_mean_abs = 0;
  int wide_nodes = 0;
  double spectral_max_abs = 0;
  double spectral_mean_abs = 0;
  int spectral_nodes = 0;     // nodes with a full central stencil
  bool subsolution = false;   // S_h u >= f - tol everywhere
  bool supersolution = false; // [S_h u]^+ <= f + tol everywhere
  double worst_sub_violation = 0;
  double worst_super_violation = 0;
  int worst_sub_node = -1;
  int worst_super_node = -1;
  double tol = 0;
};

ResidualReport residual_report(const GridFunction& u, const GridFunction& f,
                               const OperatorSpec& spec, const DirectionSet& dirs,
                               double tol = 1e-9);

// ---- precomputed stencil for fast sweeps -------------------------------

// Flattened arm tables for a (domain, direction set) pair: per interior node
// and direction, the four arm weights, the center coefficient, and either a
// neighbor node id or an index into the boundary-value table.
class WideStencil {
 public:
  WideStencil(std::shared_ptr<const GridDomain> dom, DirectionSet dirs);

  const GridDomain& dom() const { return *dom_; }
  const DirectionSet& dirs() const { return dirs_; }
  int ndirs() const { return int(dirs_.members.size()); }
  int interior_count() const { return int(dom_->interior_nodes().size()); }

  // boundary values aligned with the internal arm slots
  std::vector<double> boundary_values(const BoundaryFn& f) const;
  const std::vector<Pt>& boundary_points() const { return bpoints_; }

  // E_w and the node_solve root using precomputed tables; `bvals` from
  // boundary_values of the same GridFunction's datum.
  double stencil_min(std::span<const double> u, std::span<const double> bvals,
                     int compact) const;
  double solve_value(std::span<const double> u, std::span<const double> bvals,
                     int compact, double f_value) const;

  int node_of_compact(int c) const { return dom_->interior_nodes()[c]; }
  int compact_of_node(int node) const { return compact_[node]; }
  bool has_clamped_arm(int compact) const { return clamped_[compact]; }
  // boundary value slaved to a clamped arm, or -1
  int clamp_slot(int compact) const { return clamp_slot_[compact]; }

 private:
  struct ArmRef {
    double weight;  // contribution weight to A_w
    int node;       // grid node, or -1 when boundary
    int bslot;      // index into the boundary table when node == -1
  };
  struct DirEntry {
    double cw;
    std::array<ArmRef, 4> arms;
  };

  std::shared_ptr<const GridDomain> dom_;
  DirectionSet dirs_;
  std::vector<int> compact_;
  std::vector<DirEntry> table_;  // interior_count * ndirs
  std::vector<Pt> bpoints_;
  std::vector<bool> clamped_;
  std::vector<int> clamp_slot_;
};

}  // namespace lambda1
