#include "lambda1/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lambda1 {

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

// S_h u per interior node plus a flag for arms short enough that the huge
// stencil weights make the value numerically meaningless.
struct NodeEval {
  double shu = 0;
  bool tiny_arm = false;
};

std::vector<NodeEval> eval_all(const GridFunction& u, const DirectionSet& dirs,
                               double rho_floor = 1e-6) {
  std::vector<NodeEval> out(u.dom->total_nodes());
  for (int node : u.dom->interior_nodes()) {
    NodeEval ne;
    double best = std::numeric_limits<double>::infinity();
    for (const Direction& w : dirs.members) {
      ArmSet as = arms(*u.dom, node, w);
      for (const Arm& a : as.arms)
        if (a.to_boundary && a.rho < rho_floor) ne.tiny_arm = true;
      best = std::min(best, directional_value(u, node, as).value);
    }
    ne.shu = best;
    out[node] = ne;
  }
  return out;
}

std::string node_label(const GridDomain& dom, int node) {
  Pt p = dom.point(node);
  std::ostringstream os;
  os << "node " << node << " at (";
  for (int i = 0; i < dom.d(); ++i) os << (i ? ", " : "") << p[i];
  os << ")";
  return os.str();
}

}  // namespace

GridFunction sample_positive(std::shared_ptr<const GridDomain> dom, const Expr& f) {
  GridFunction g = sample(dom, f);
  for (int node : dom->interior_nodes())
    if (!(g.values[node] > 0))
      throw std::invalid_argument("right-hand side must be positive; f = " +
                                  std::to_string(g.values[node]) + " at " +
                                  node_label(*dom, node));
  return g;
}

namespace {

GridFunction barrier_impl(const ProblemSpec& p, const std::vector<double>& fvals,
                          double margin, const DirectionSet& dirs) {
  if (!p.psi || p.psi->empty())
    throw std::invalid_argument("barrier_subsolution: no exhaustion psi configured");
  auto dom = p.domain;
  GridFunction psi = sample(dom, *p.psi);
  const Expr& pt_expr = (p.phi_tilde && !p.phi_tilde->empty()) ? *p.phi_tilde : p.phi;
  GridFunction phit = sample(dom, pt_expr);

  const double check_tol = 1e-8;
  auto psi_eval = eval_all(psi, dirs);
  for (int node : dom->interior_nodes()) {
    if (psi_eval[node].tiny_arm) continue;
    if (psi_eval[node].shu < 1.0 - check_tol)
      throw std::invalid_argument("barrier_subsolution: exhaustion check S_h psi >= 1 fails (" +
                                  std::to_string(psi_eval[node].shu) + " at " +
                                  node_label(*dom, node) + ")");
  }
  auto phit_eval = eval_all(phit, dirs);
  for (int node : dom->interior_nodes()) {
    if (phit_eval[node].tiny_arm) continue;
    if (phit_eval[node].shu < -check_tol)
      throw std::invalid_argument("barrier_subsolution: psh check S_h phi_tilde >= 0 fails (" +
                                  std::to_string(phit_eval[node].shu) + " at " +
                                  node_label(*dom, node) + ")");
  }

  double fmax = 0;
  for (int node : dom->interior_nodes()) fmax = std::max(fmax, fvals[node]);
  const double big = fmax * (1.0 + margin);

  GridFunction u;
  u.dom = dom;
  u.values.assign(dom->total_nodes(), 0.0);
  for (int node : dom->interior_nodes())
    u.values[node] = big * psi.values[node] + phit.values[node];
  BoundaryFn psib = psi.boundary, phtb = phit.boundary;
  u.boundary = [big, psib, phtb](const Pt& z) { return big * psib(z) + phtb(z); };
  return u;
}

}  // namespace

GridFunction barrier_subsolution(const ProblemSpec& p, double margin) {
  DirectionSet dirs = direction_set(p.domain->n(), p.width);
  GridFunction f = sample_positive(p.domain, p.f);
  return barrier_impl(p, f.values, margin, dirs);
}

GridFunction harmonic_supersolution(const ProblemSpec& p) {
  auto dom = p.domain;
  const int n = dom->n();
  const double h = dom->h();

  std::vector<Direction> axes;
  for (int j = 0; j < n; ++j) {
    Direction w{};
    w[j] = GaussInt{1, 0};
    axes.push_back(w);
  }

  // flat star-stencil tables: per interior node, arm weights and the total
  // center coefficient of sum_j (L_x + L_y)/4 = Delta_h / 4
  struct Slot {
    double weight;
    int node;   // -1 when boundary
    int bslot;  // index into bvals when node == -1
  };
  const auto& interior = dom->interior_nodes();
  std::vector<std::vector<Slot>> slots(interior.size());
  std::vector<double> center(interior.size(), 0.0);
  std::vector<int> clamp(interior.size(), -1);
  std::vector<Pt> bpoints;

  for (int c = 0; c < int(interior.size()); ++c) {
    for (const Direction& w : axes) {
      ArmSet as = arms(*dom, interior[c], w);
      for (int line = 0; line < 2; ++line) {
        const Arm& plus = as.arms[2 * line];
        const Arm& minus = as.arms[2 * line + 1];
        const double a = plus.rho * h;
        const double b = minus.rho * h;
        center[c] += 2.0 / (a * b);
        const Arm* pair[2] = {&plus, &minus};
        const double wt[2] = {2.0 / (a * (a + b)), 2.0 / (b * (a + b))};
        for (int s = 0; s < 2; ++s) {
          Slot slot;
          slot.weight = wt[s];
          if (pair[s]->to_boundary) {
            slot.node = -1;
            slot.bslot = int(bpoints.size());
            bpoints.push_back(pair[s]->boundary_point);
            if (pair[s]->clamped) clamp[c] = slot.bslot;
          } else {
            slot.node = pair[s]->target;
            slot.bslot = -1;
          }
          slots[c].push_back(slot);
        }
      }
    }
  }

  GridFunction u = sample(dom, p.phi);  // boundary datum phi; phi values as init
  std::vector<double> bvals(bpoints.size());
  for (std::size_t i = 0; i < bpoints.size(); ++i) bvals[i] = u.boundary(bpoints[i]);

  const double tol = std::min(p.tol, 1e-10);
  for (int sweep = 0; sweep < p.max_sweeps; ++sweep) {
    double max_update = 0;
    const bool forward = (sweep % 2 == 0);
    for (int idx = 0; idx < int(interior.size()); ++idx) {
      const int c = forward ? idx : int(interior.size()) - 1 - idx;
      const int node = interior[c];
      double next;
      if (clamp[c] >= 0) {
        next = bvals[clamp[c]];
      } else {
        double num = 0;
        for (const Slot& s : slots[c])
          num += s.weight * (s.node >= 0 ? u.values[s.node] : bvals[s.bslot]);
        next = num / center[c];
      }
      max_update = std::max(max_update, std::abs(next - u.values[node]));
      u.values[node] = next;
    }
    if (max_update <= tol) break;
  }
  return u;
}

namespace {

SolveReport run_lambda1(const ProblemSpec& p, const std::vector<double>& fvals,
                        const GridFunction* initial) {
  const double t0 = now_seconds();
  auto dom = p.domain;
  DirectionSet dirs = direction_set(dom->n(), p.width);
  if (p.red_black && p.width > 1)
    throw std::invalid_argument("red-black ordering requires width 1");
  WideStencil st(dom, dirs);

  GridFunction u;
  if (initial) {
    u = *initial;
  } else {
    u = barrier_impl(p, fvals, p.barrier_margin, dirs);
  }
  u.boundary = sample(dom, p.phi).boundary;
  std::vector<double> bvals = st.boundary_values(u.boundary);

  // red-black ordering: color by the parity of the multi-index sum
  std::vector<int> order(st.interior_count());
  if (p.red_black) {
    int pos = 0;
    for (int color = 0; color < 2; ++color)
      for (int c = 0; c < st.interior_count(); ++c) {
        auto mi = dom->multi_index(st.node_of_compact(c));
        int par = (mi[0] + mi[1] + mi[2] + mi[3]) & 1;
        if (par == color) order[pos++] = c;
      }
  } else {
    for (int c = 0; c < st.interior_count(); ++c) order[c] = c;
  }

  SolveReport rep;
  rep.sweeps = 0;
  for (int sweep = 0; sweep < p.max_sweeps; ++sweep) {
    const bool forward = p.red_black || (sweep % 2 == 0);
    double max_update = 0;
    double min_update = std::numeric_limits<double>::infinity();
    for (int idx = 0; idx < st.interior_count(); ++idx) {
      const int c = forward ? order[idx] : order[st.interior_count() - 1 - idx];
      const int node = st.node_of_compact(c);
      const double next = st.solve_value(u.values, bvals, c, fvals[node]);
      const double delta = next - u.values[node];
      max_update = std::max(max_update, std::abs(delta));
      min_update = std::min(min_update, delta);
      u.values[node] = next;
    }
    rep.sweep_max_update.push_back(max_update);
    rep.sweep_min_update.push_back(min_update == std::numeric_limits<double>::infinity()
                                       ? 0
                                       : min_update);
    ++rep.sweeps;
    rep.final_max_update = max_update;
    if (max_update <= p.tol) {
      rep.converged = true;
      break;
    }
  }

  rep.solution = std::move(u);
  rep.wall_seconds = now_seconds() - t0;
  return rep;
}

// operator specs that coincide with c * Lambda_1; returns the factor c
std::optional<double> lambda1_factor(const OperatorSpec& op) {
  switch (op.kind) {
    case OperatorKind::lambda1:
      return 1.0;
    case OperatorKind::lambda_k:
      if (op.k == 1) return 1.0;
      return std::nullopt;
    case OperatorKind::eigen_combination: {
      if (!(op.a[0] > 0)) return std::nullopt;
      for (int i = 1; i < op.n; ++i)
        if (op.a[i] != 0) return std::nullopt;
      return op.a[0];
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

SolveReport solve_lambda1(const ProblemSpec& p, const GridFunction* initial) {
  GridFunction f = sample_positive(p.domain, p.f);
  SolveReport rep = run_lambda1(p, f.values, initial);
  DirectionSet dirs = direction_set(p.domain->n(), p.width);
  rep.residual = residual_report(rep.solution, f,
                                 OperatorSpec::make_lambda1(p.domain->n()), dirs, 1e-9);
  return rep;
}

SolveReport solve_general(const ProblemSpec& p, const GridFunction* initial) {
  auto dom = p.domain;
  GridFunction f = sample_positive(dom, p.f);
  DirectionSet dirs = direction_set(dom->n(), p.width);

  if (auto factor = lambda1_factor(p.op)) {
    std::vector<double> scaled = f.values;
    for (double& v : scaled) v /= *factor;
    SolveReport rep = run_lambda1(p, scaled, initial);
    rep.residual = residual_report(rep.solution, f, p.op, dirs, 1e-9);
    return rep;
  }

  const double t0 = now_seconds();
  const double h = dom->h();
  WideStencil st(dom, dirs);

  GridFunction u;
  if (initial) {
    u = *initial;
  } else {
    u = barrier_impl(p, f.values, p.barrier_margin, dirs);
  }
  u.boundary = sample(dom, p.phi).boundary;
  std::vector<double> bvals = st.boundary_values(u.boundary);

  // nodes with a full central stencil take the damped spectral update; the
  // remaining boundary layer is slaved to the monotone Lambda_1 stencil
  std::vector<int> eligible, layer;
  for (int c = 0; c < st.interior_count(); ++c) {
    const int node = st.node_of_compact(c);
    if (central_hessian(u, node))
      eligible.push_back(node);
    else
      layer.push_back(c);
  }
  if (eligible.empty())
    throw std::invalid_argument("solve_general: no node has a full central stencil");

  // Each layer node is slaved to the Lambda_1 stencil. Using f as its
  // right-hand side would force S_h u = f there, which is inconsistent
  // whenever G != Lambda_1; instead borrow the consistent value
  // Lambda_1(central Hessian) from the nearest eligible donor node.
  std::vector<int> donor(layer.size(), -1);
  {
    const int d = dom->d();
    for (std::size_t li = 0; li < layer.size(); ++li) {
      auto mi = dom->multi_index(st.node_of_compact(layer[li]));
      int best = -1, best_dist = std::numeric_limits<int>::max();
      for (int node : eligible) {
        auto mj = dom->multi_index(node);
        int dist = 0;
        for (int i = 0; i < d; ++i) dist += std::abs(mi[i] - mj[i]);
        if (dist < best_dist) {
          best_dist = dist;
          best = node;
        }
      }
      donor[li] = best;
    }
  }

  SolveReport rep;
  rep.experimental = true;
  double tau = 0.125 * h * h;
  const double tau_floor = 1e-6 * h * h;
  double prev_res = std::numeric_limits<double>::infinity();
  std::vector<double> resid(eligible.size(), 0.0);

  for (int sweep = 0; sweep < p.max_sweeps; ++sweep) {
    for (std::size_t li = 0; li < layer.size(); ++li) {
      const int c = layer[li];
      const int node = st.node_of_compact(c);
      const double rhs = lambda_min(*central_hessian(u, donor[li]));
      u.values[node] = st.solve_value(u.values, bvals, c, rhs);
    }
    double max_res = 0;
    for (std::size_t i = 0; i < eligible.size(); ++i) {
      const int node = eligible[i];
      Hermitian hess = *central_hessian(u, node);
      if (!in_closed_cone(p.op, hess)) {
        // lift by the least mu with H + mu I in the closed cone
        ++rep.cone_projections;
        double hi = 1.0;
        int guard = 0;
        Hermitian lifted = hess + Hermitian::identity(hess.dim()) * hi;
        while (!in_closed_cone(p.op, lifted) && guard++ < 60) {
          hi *= 2;
          lifted = hess + Hermitian::identity(hess.dim()) * hi;
        }
        double lo = 0;
        for (int it = 0; it < 50; ++it) {
          double mid = 0.5 * (lo + hi);
          if (in_closed_cone(p.op, hess + Hermitian::identity(hess.dim()) * mid))
            hi = mid;
          else
            lo = mid;
        }
        hess = hess + Hermitian::identity(hess.dim()) * hi;
      }
      resid[i] = evaluate(p.op, hess) - f.values[node];
      max_res = std::max(max_res, std::abs(resid[i]));
    }
    for (std::size_t i = 0; i < eligible.size(); ++i)
      u.values[eligible[i]] += tau * resid[i];

    rep.sweep_max_update.push_back(tau * max_res);
    rep.sweep_min_update.push_back(0.0);
    ++rep.sweeps;
    rep.final_max_update = max_res;
    if (!std::isfinite(max_res) || max_res > 1e10) break;  // diverged
    if (max_res <= p.tol) {
      rep.converged = true;
      break;
    }
    if (max_res > prev_res) tau = std::max(0.5 * tau, tau_floor);
    prev_res = max_res;
  }

  rep.solution = std::move(u);
  rep.residual = residual_report(rep.solution, f, p.op, dirs, 1e-9);
  rep.wall_seconds = now_seconds() - t0;
  return rep;
}

ComparisonReport comparison_check(const GridFunction& u, const GridFunction& v,
                                  const GridFunction& f, const DirectionSet& dirs,
                                  double tol) {
  if (u.dom != v.dom || u.dom != f.dom)
    throw std::invalid_argument("comparison_check: all inputs must share one domain");
  auto dom = u.dom;
  ComparisonReport rep;
  rep.tol = tol;

  OperatorSpec l1 = OperatorSpec::make_lambda1(dom->n());
  rep.u_certified = residual_report(u, f, l1, dirs, tol).subsolution;
  rep.v_certified = residual_report(v, f, l1, dirs, tol).supersolution;

  WideStencil st(dom, dirs);
  double gap = -std::numeric_limits<double>::infinity();
  for (const Pt& z : st.boundary_points())
    gap = std::max(gap, u.boundary_at(z) - v.boundary_at(z));
  rep.boundary_gap = st.boundary_points().empty() ? 0.0 : gap;

  double worst = -std::numeric_limits<double>::infinity();
  for (int node : dom->interior_nodes()) {
    const double d = u.values[node] - v.values[node];
    if (d > worst) {
      worst = d;
      rep.violation_node = node;
    }
  }
  rep.interior_violation = std::max(0.0, worst);
  rep.ordering_pass = rep.interior_violation <= std::max(rep.boundary_gap, 0.0) + tol;

  // eps/2 strictness probe: S_h(u - (eps/2)|z - z0|^2) = S_h u - eps/2 must
  // hold to rounding at nodes whose full stencil stays interior
  rep.strictness_ok = true;
  const Pt z0 = dom->point(rep.violation_node);
  std::vector<int> deep;
  for (int node : dom->interior_nodes()) {
    bool full = true;
    for (const Direction& w : dirs.members) {
      ArmSet as = arms(*dom, node, w);
      for (const Arm& a : as.arms) full = full && !a.to_boundary;
    }
    if (full) deep.push_back(node);
  }
  auto shu = apply_lambda1(u, dirs);
  for (double eps : {1e-2, 1e-1}) {
    GridFunction ue = quadratic_shift(u, eps, z0);
    auto shue = apply_lambda1(ue, dirs);
    for (int node : deep)
      if (std::abs(shue[node] - (shu[node] - 0.5 * eps)) > 1e-12)
        rep.strictness_ok = false;
  }

  rep.pass = rep.u_certified && rep.v_certified && rep.ordering_pass;
  return rep;
}

GridFunction glue_max(const GridFunction& u, const std::vector<std::uint8_t>& in_g,
                      const GridFunction& v, const GridFunction& f,
                      const DirectionSet& dirs, double tol) {
  if (u.dom != v.dom || u.dom != f.dom)
    throw std::invalid_argument("glue_max: all inputs must share one domain");
  auto dom = u.dom;
  if (int(in_g.size()) != dom->total_nodes())
    throw std::invalid_argument("glue_max: mask size mismatch");

  OperatorSpec l1 = OperatorSpec::make_lambda1(dom->n());
  if (!residual_report(v, f, l1, dirs, tol).subsolution)
    throw std::invalid_argument("glue_max: v is not a certified subsolution");

  // discrete interior of G: every stencil arm is full and lands in G
  std::vector<std::uint8_t> g_int(dom->total_nodes(), 0);
  for (int node : dom->interior_nodes()) {
    if (!in_g[node]) continue;
    bool inside = true;
    for (const Direction& w : dirs.members) {
      ArmSet as = arms(*dom, node, w);
      for (const Arm& a : as.arms)
        inside = inside && !a.to_boundary && in_g[a.target];
    }
    g_int[node] = inside;
  }

  auto shu = apply_lambda1(u, dirs);
  for (int node : dom->interior_nodes())
    if (g_int[node] && shu[node] < f.values[node] - tol)
      throw std::invalid_argument("glue_max: u is not a subsolution on G at " +
                                  node_label(*dom, node));
  for (int node : dom->interior_nodes())
    if (in_g[node] && !g_int[node] && u.values[node] > v.values[node] + tol)
      throw std::invalid_argument("glue_max: boundary ordering u <= v fails on dG at " +
                                  node_label(*dom, node));

  GridFunction out = v;
  for (int node : dom->interior_nodes())
    if (in_g[node]) out.values[node] = std::max(u.values[node], v.values[node]);

  ResidualReport cert = residual_report(out, f, l1, dirs, tol);
  if (!cert.subsolution)
    throw std::runtime_error("glue_max: glued function failed subsolution certification at " +
                             node_label(*dom, cert.worst_sub_node));
  return out;
}

}  // namespace lambda1
