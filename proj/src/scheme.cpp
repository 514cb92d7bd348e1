#include "lambda1/scheme.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lambda1 {

GridFunction sample(std::shared_ptr<const GridDomain> dom, const Expr& e) {
  GridFunction g;
  g.dom = dom;
  g.values.assign(dom->total_nodes(), 0.0);
  for (int node : dom->interior_nodes()) g.values[node] = e.eval(Env::at_point(dom->point(node)));
  g.boundary = [e](const Pt& p) { return e.eval(Env::at_point(p)); };
  return g;
}

GridFunction sample(std::shared_ptr<const GridDomain> dom,
                    const std::function<double(const Pt&)>& f) {
  GridFunction g;
  g.dom = dom;
  g.values.assign(dom->total_nodes(), 0.0);
  for (int node : dom->interior_nodes()) g.values[node] = f(dom->point(node));
  g.boundary = f;
  return g;
}

GridFunction shift(const GridFunction& u, double c) {
  GridFunction g = u;
  for (int node : u.dom->interior_nodes()) g.values[node] += c;
  BoundaryFn base = u.boundary;
  g.boundary = [base, c](const Pt& p) { return base(p) + c; };
  return g;
}

GridFunction quadratic_shift(const GridFunction& u, double eps, const Pt& z0) {
  auto bump = [eps, z0](const Pt& p) {
    double s = 0;
    for (int i = 0; i < 4; ++i) s += (p[i] - z0[i]) * (p[i] - z0[i]);
    return 0.5 * eps * s;
  };
  GridFunction g = u;
  for (int node : u.dom->interior_nodes()) g.values[node] -= bump(u.dom->point(node));
  BoundaryFn base = u.boundary;
  g.boundary = [base, bump](const Pt& p) { return base(p) - bump(p); };
  return g;
}

namespace {

double arm_value(const GridFunction& u, const Arm& a) {
  if (a.to_boundary) return u.boundary_at(a.boundary_point);
  if (a.target < 0) throw std::invalid_argument("directional_value: missing arm value");
  return u.values[a.target];
}

}  // namespace

DirectionalEstimate directional_value(const GridFunction& u, int node, const ArmSet& as) {
  const double h = u.dom->h();
  const double wn = std::sqrt(as.wnorm2);
  DirectionalEstimate de;
  de.w = as.w;
  const double u0 = u.values[node];

  double neighbor = 0, center = 0;
  for (int line = 0; line < 2; ++line) {
    const Arm& plus = as.arms[2 * line];
    const Arm& minus = as.arms[2 * line + 1];
    const double a = plus.rho * h * wn;
    const double b = minus.rho * h * wn;
    const double up = arm_value(u, plus);
    const double um = arm_value(u, minus);
    neighbor += 2.0 * (up / (a * (a + b)) + um / (b * (a + b)));
    center += 2.0 / (a * b);
    de.full_arms = de.full_arms && !plus.to_boundary && !minus.to_boundary;
  }
  de.neighbor_sum = neighbor / 4.0;
  de.center_coeff = center / 4.0;
  de.value = de.neighbor_sum - de.center_coeff * u0;
  return de;
}

std::vector<double> apply_lambda1(const GridFunction& u, const DirectionSet& dirs) {
  std::vector<double> out(u.dom->total_nodes(), 0.0);
  for (int node : u.dom->interior_nodes()) {
    double best = std::numeric_limits<double>::infinity();
    for (const Direction& w : dirs.members) {
      DirectionalEstimate de = directional_value(u, node, arms(*u.dom, node, w));
      best = std::min(best, de.value);
    }
    out[node] = best;
  }
  return out;
}

double node_solve(const GridFunction& u, int node, double f_value,
                  const DirectionSet& dirs) {
  double best = std::numeric_limits<double>::infinity();
  for (const Direction& w : dirs.members) {
    DirectionalEstimate de = directional_value(u, node, arms(*u.dom, node, w));
    best = std::min(best, (de.neighbor_sum - f_value) / de.center_coeff);
  }
  return best;
}

std::optional<Hermitian> central_hessian(const GridFunction& u, int node) {
  const GridDomain& dom = *u.dom;
  const int d = dom.d();
  const double h = dom.h();
  auto mi = dom.multi_index(node);

  auto value_at = [&](std::array<int, 4> off) -> std::optional<double> {
    auto mj = mi;
    for (int i = 0; i < d; ++i) mj[i] += off[i];
    int nb = dom.node_at(mj);
    if (nb < 0 || !dom.is_interior(nb)) return std::nullopt;
    return u.values[nb];
  };

  SymmetricForm q(d);
  const double u0 = u.values[node];
  for (int p = 0; p < d; ++p) {
    std::array<int, 4> off{};
    off[p] = 1;
    auto up = value_at(off);
    off[p] = -1;
    auto um = value_at(off);
    if (!up || !um) return std::nullopt;
    q.set(p, p, (*up + *um - 2.0 * u0) / (h * h));
  }
  for (int p = 0; p < d; ++p)
    for (int r = p + 1; r < d; ++r) {
      std::array<int, 4> off{};
      off[p] = 1;
      off[r] = 1;
      auto upp = value_at(off);
      off[r] = -1;
      auto upm = value_at(off);
      off[p] = -1;
      off[r] = 1;
      auto ump = value_at(off);
      off[r] = -1;
      auto umm = value_at(off);
      if (!upp || !upm || !ump || !umm) return std::nullopt;
      q.set(p, r, (*upp - *upm - *ump + *umm) / (4.0 * h * h));
    }
  return q11_part(q);
}

ResidualReport residual_report(const GridFunction& u, const GridFunction& f,
                               const OperatorSpec& spec, const DirectionSet& dirs,
                               double tol) {
  if (u.dom != f.dom && u.dom->total_nodes() != f.dom->total_nodes())
    throw std::invalid_argument("residual_report: domain mismatch");
  ResidualReport rep;
  rep.tol = tol;
  auto shu = apply_lambda1(u, dirs);

  double wide_sum = 0, spec_sum = 0;
  double min_sub = std::numeric_limits<double>::infinity();
  double max_super = -std::numeric_limits<double>::infinity();
  for (int node : u.dom->interior_nodes()) {
    const double fv = f.values[node];
    const double res = shu[node] - fv;
    rep.wide_max_abs = std::max(rep.wide_max_abs, std::abs(res));
    wide_sum += std::abs(res);
    ++rep.wide_nodes;
    if (res < min_sub) {
      min_sub = res;
      rep.worst_sub_node = node;
    }
    const double super = std::max(shu[node], 0.0) - fv;  // [S_h u]^+ - f
    if (super > max_super) {
      max_super = super;
      rep.worst_super_node = node;
    }
    if (auto hess = central_hessian(u, node)) {
      try {
        const double g = evaluate(spec, *hess);
        const double sres = g - fv;
        rep.spectral_max_abs = std::max(rep.spectral_max_abs, std::abs(sres));
        spec_sum += std::abs(sres);
        ++rep.spectral_nodes;
      } catch (const ConeDomainError&) {
        // Hessian outside the operator's closed cone: no spectral residual
      }
    }
  }
  rep.wide_mean_abs = rep.wide_nodes ? wide_sum / rep.wide_nodes : 0;
  rep.spectral_mean_abs = rep.spectral_nodes ? spec_sum / rep.spectral_nodes : 0;
  rep.worst_sub_violation = std::max(0.0, -min_sub);
  rep.worst_super_violation = std::max(0.0, max_super);
  rep.subsolution = min_sub >= -tol;
  rep.supersolution = max_super <= tol;
  return rep;
}

WideStencil::WideStencil(std::shared_ptr<const GridDomain> dom, DirectionSet dirs)
    : dom_(std::move(dom)), dirs_(std::move(dirs)) {
  const auto& interior = dom_->interior_nodes();
  const int nd = ndirs();
  const double h = dom_->h();
  compact_.assign(dom_->total_nodes(), -1);
  for (int c = 0; c < int(interior.size()); ++c) compact_[interior[c]] = c;
  table_.resize(interior.size() * nd);
  clamped_.assign(interior.size(), false);
  clamp_slot_.assign(interior.size(), -1);

  for (int c = 0; c < int(interior.size()); ++c) {
    const int node = interior[c];
    for (int di = 0; di < nd; ++di) {
      ArmSet as = arms(*dom_, node, dirs_.members[di]);
      const double wn = std::sqrt(as.wnorm2);
      DirEntry entry;
      double center = 0;
      for (int line = 0; line < 2; ++line) {
        const Arm& plus = as.arms[2 * line];
        const Arm& minus = as.arms[2 * line + 1];
        const double a = plus.rho * h * wn;
        const double b = minus.rho * h * wn;
        center += 2.0 / (a * b);
        const double wplus = 2.0 / (a * (a + b)) / 4.0;
        const double wminus = 2.0 / (b * (a + b)) / 4.0;
        for (auto [arm, weight] : {std::pair{&plus, wplus}, std::pair{&minus, wminus}}) {
          ArmRef ref;
          ref.weight = weight;
          if (arm->to_boundary) {
            ref.node = -1;
            ref.bslot = int(bpoints_.size());
            bpoints_.push_back(arm->boundary_point);
            if (arm->clamped) {
              clamped_[c] = true;
              clamp_slot_[c] = ref.bslot;
            }
          } else {
            ref.node = arm->target;
            ref.bslot = -1;
          }
          entry.arms[2 * line + (arm == &minus ? 1 : 0)] = ref;
        }
      }
      entry.cw = center / 4.0;
      table_[std::size_t(c) * nd + di] = entry;
    }
  }
}

std::vector<double> WideStencil::boundary_values(const BoundaryFn& f) const {
  std::vector<double> out(bpoints_.size());
  for (std::size_t i = 0; i < bpoints_.size(); ++i) out[i] = f(bpoints_[i]);
  return out;
}

double WideStencil::stencil_min(std::span<const double> u, std::span<const double> bvals,
                                int compact) const {
  const int nd = ndirs();
  const DirEntry* row = &table_[std::size_t(compact) * nd];
  const double u0 = u[node_of_compact(compact)];
  double best = std::numeric_limits<double>::infinity();
  for (int di = 0; di < nd; ++di) {
    const DirEntry& e = row[di];
    double aw = 0;
    for (const ArmRef& ref : e.arms)
      aw += ref.weight * (ref.node >= 0 ? u[ref.node] : bvals[ref.bslot]);
    best = std::min(best, aw - e.cw * u0);
  }
  return best;
}

double WideStencil::solve_value(std::span<const double> u, std::span<const double> bvals,
                                int compact, double f_value) const {
  if (clamp_slot_[compact] >= 0) return bvals[clamp_slot_[compact]];
  const int nd = ndirs();
  const DirEntry* row = &table_[std::size_t(compact) * nd];
  double best = std::numeric_limits<double>::infinity();
  for (int di = 0; di < nd; ++di) {
    const DirEntry& e = row[di];
    double aw = 0;
    for (const ArmRef& ref : e.arms)
      aw += ref.weight * (ref.node >= 0 ? u[ref.node] : bvals[ref.bslot]);
    best = std::min(best, (aw - f_value) / e.cw);
  }
  return best;
}

}  // namespace lambda1
