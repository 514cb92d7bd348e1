#pragma once
#include <optional>

#include "lambda1/scheme.hpp"

namespace lambda1 {

// Full description of one Dirichlet problem on a masked grid.
struct ProblemSpec {
  std::shared_ptr<const GridDomain> domain;
  Expr f;                         // right-hand side, must sample > 0
  Expr phi;                       // boundary data
  std::optional<Expr> phi_tilde;  // psh extension of phi, when known
  std::optional<Expr> psi;        // exhaustion with Lambda_1(D^2 psi) >= 1
  OperatorSpec op = OperatorSpec::make_lambda1(1);
  int width = 1;                  // direction set width W
  double tol = 1e-10;             // max-update stopping tolerance
  int max_sweeps = 100000;
  double barrier_margin = 0.1;    // B = (max f) * (1 + margin)
  bool red_black = false;         // red-black sweep order (requires W = 1)
};

struct SolveReport {
  GridFunction solution;
  int sweeps = 0;
  double final_max_update = 0;
  bool converged = false;
  bool experimental = false;  // produced by the general-G damped iteration
  ResidualReport residual;
  std::vector<double> sweep_min_update;  // monotonicity log
  std::vector<double> sweep_max_update;
  int cone_projections = 0;  // general-G only
  double wall_seconds = 0;
};

struct ComparisonReport {
  double boundary_gap = 0;        // max(u - v) over boundary data points
  double interior_violation = 0;  // max(u - v)^+ over interior nodes
  int violation_node = -1;
  bool u_certified = false;       // u passes the subsolution verdict
  bool v_certified = false;       // v passes the supersolution verdict
  bool ordering_pass = false;     // violation <= max(gap, 0) + tol
  bool strictness_ok = false;     // discrete eps/2 shift identity held
  bool pass = false;              // certified && ordering_pass
  double tol = 0;
};

// B psi + phi_tilde with B = (max sampled f) * (1 + margin). Rejects when no
// exhaustion is configured, when the discrete check S_h psi >= 1 fails, or
// when phi_tilde (or phi used in its place) fails the discrete psh check.
GridFunction barrier_subsolution(const ProblemSpec& p, double margin);
inline GridFunction barrier_subsolution(const ProblemSpec& p) {
  return barrier_subsolution(p, p.barrier_margin);
}

// Discrete harmonic function with the problem's boundary data (2n-arm star
// stencil, Shortley-Weller boundary arms).
GridFunction harmonic_supersolution(const ProblemSpec& p);

// Monotone Gauss-Seidel Perron iteration for Lambda_1(D^2_C u) = f.
SolveReport solve_lambda1(const ProblemSpec& p,
                          const GridFunction* initial = nullptr);

// Damped explicit iteration for general G in the operator family; delegates
// to solve_lambda1 when the operator reduces to Lambda_1 identically.
SolveReport solve_general(const ProblemSpec& p,
                          const GridFunction* initial = nullptr);

// Discrete comparison harness: certifies (u sub, v super), measures the
// boundary gap and interior violation, and runs the eps/2 strictness probe.
ComparisonReport comparison_check(const GridFunction& u, const GridFunction& v,
                                  const GridFunction& f, const DirectionSet& dirs,
                                  double tol = 1e-9);

// max(u, v) on the masked subregion G, v elsewhere. Requires u <= v on the
// discrete boundary layer of G and both inputs to be subsolutions.
GridFunction glue_max(const GridFunction& u, const std::vector<std::uint8_t>& in_g,
                      const GridFunction& v, const GridFunction& f,
                      const DirectionSet& dirs, double tol = 1e-9);

// Samples an expression and rejects nonpositive values (f must be positive).
GridFunction sample_positive(std::shared_ptr<const GridDomain> dom, const Expr& f);

}  // namespace lambda1
