#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lambda1/solver.hpp"

using namespace lambda1;

namespace {
std::shared_ptr<GridDomain> ball4(double h = 0.25) {
  return std::make_shared<GridDomain>(2, h, parse("t - 1"), Box::cube(4, -1.25, 1.25));
}
std::shared_ptr<GridDomain> disk2(double h = 0.125) {
  return std::make_shared<GridDomain>(1, h, parse("t - 1"), Box::cube(2, -1.25, 1.25));
}

ProblemSpec ball_problem(double h = 0.25) {
  ProblemSpec p;
  p.domain = ball4(h);
  p.f = parse("1");
  p.phi = parse("t");
  p.phi_tilde = parse("t");
  p.psi = parse("t - 1");
  p.op = OperatorSpec::make_lambda1(2);
  return p;
}

double linf_vs(const GridFunction& u, const std::function<double(const Pt&)>& ref) {
  double worst = 0;
  for (int node : u.dom->interior_nodes())
    worst = std::max(worst, std::abs(u.at(node) - ref(u.dom->point(node))));
  return worst;
}
}  // namespace

TEST_CASE("barrier: ball, f = 1, phi = t, margin 0 gives S_h u0 = 2") {
  ProblemSpec p = ball_problem();
  GridFunction u0 = barrier_subsolution(p, 0.0);
  // u0 = psi + phi_tilde = 2t - 1
  for (int node : p.domain->interior_nodes()) {
    Pt z = p.domain->point(node);
    double t = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
    CHECK(u0.at(node) == doctest::Approx(2 * t - 1).epsilon(1e-12));
  }
  DirectionSet ds = direction_set(2, 1);
  std::vector<double> s = apply_lambda1(u0, ds);
  for (int node : p.domain->interior_nodes())
    CHECK(s[node] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("barrier rejects a non-psh phi_tilde") {
  ProblemSpec p = ball_problem();
  p.phi_tilde = parse("-t");
  CHECK_THROWS_AS(barrier_subsolution(p), std::invalid_argument);
}

TEST_CASE("barrier rejects a missing or invalid exhaustion") {
  ProblemSpec p = ball_problem();
  p.psi.reset();
  CHECK_THROWS_AS(barrier_subsolution(p), std::invalid_argument);
  p = ball_problem();
  p.psi = parse("0 - 1");  // constant, S_h psi = 0 < 1
  CHECK_THROWS_AS(barrier_subsolution(p), std::invalid_argument);
}

TEST_CASE("barrier scales with max f and the margin") {
  ProblemSpec p = ball_problem();
  p.f = parse("3");
  GridFunction u0 = barrier_subsolution(p, 0.5);
  // B = 3 * 1.5 = 4.5, u0 = 4.5 (t - 1) + t
  Pt origin{0, 0, 0, 0};
  int node = p.domain->node_at({5, 5, 5, 5});
  REQUIRE(p.domain->is_interior(node));
  CHECK(u0.at(node) == doctest::Approx(-4.5).epsilon(1e-12));
  (void)origin;
}

TEST_CASE("harmonic supersolution with constant data is the constant") {
  ProblemSpec p = ball_problem();
  p.phi = parse("2.5");
  GridFunction hs = harmonic_supersolution(p);
  for (int node : p.domain->interior_nodes())
    CHECK(hs.at(node) == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("harmonic supersolution reproduces a harmonic polynomial (n=1)") {
  ProblemSpec p;
  p.domain = disk2();
  p.f = parse("1");
  p.phi = parse("x1");
  p.op = OperatorSpec::make_lambda1(1);
  GridFunction hs = harmonic_supersolution(p);
  double worst = linf_vs(hs, [](const Pt& z) { return z[0]; });
  CHECK(worst <= 1e-9);
}

TEST_CASE("solve: quadratic exactness on the ball") {
  ProblemSpec p = ball_problem();
  p.tol = 1e-12;
  SolveReport rep = solve_lambda1(p);
  CHECK(rep.converged);
  CHECK_FALSE(rep.experimental);
  double worst = linf_vs(rep.solution, [](const Pt& z) {
    return z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
  });
  CHECK(worst <= 1e-9);
  CHECK(rep.residual.subsolution);
  CHECK(rep.residual.supersolution);
}

TEST_CASE("solve: per-sweep updates never decrease the iterate") {
  ProblemSpec p = ball_problem();
  p.tol = 1e-12;
  SolveReport rep = solve_lambda1(p);
  REQUIRE_FALSE(rep.sweep_min_update.empty());
  for (double m : rep.sweep_min_update) CHECK(m >= -1e-14);
}

TEST_CASE("solve: barrier below, harmonic above") {
  ProblemSpec p = ball_problem();
  p.tol = 1e-12;
  SolveReport rep = solve_lambda1(p);
  GridFunction lo = barrier_subsolution(p);
  GridFunction hi = harmonic_supersolution(p);
  for (int node : p.domain->interior_nodes()) {
    CHECK(rep.solution.at(node) >= lo.at(node) - 1e-9);
    CHECK(rep.solution.at(node) <= hi.at(node) + 1e-9);
  }
}

TEST_CASE("solve: red-black ordering agrees with lexicographic") {
  ProblemSpec p = ball_problem();
  p.tol = 1e-12;
  SolveReport a = solve_lambda1(p);
  p.red_black = true;
  SolveReport b = solve_lambda1(p);
  for (int node : p.domain->interior_nodes())
    CHECK(std::abs(a.solution.at(node) - b.solution.at(node)) <= 1e-8);
  p.width = 2;
  CHECK_THROWS_AS(solve_lambda1(p), std::invalid_argument);
}

TEST_CASE("solve: n=1 Poisson-type problem on the disk") {
  ProblemSpec p;
  p.domain = disk2();
  p.f = parse("1");
  p.phi = parse("0");
  p.phi_tilde = parse("t - 1");
  p.psi = parse("t - 1");
  p.op = OperatorSpec::make_lambda1(1);
  p.tol = 1e-12;
  SolveReport rep = solve_lambda1(p);
  CHECK(rep.converged);
  double worst = linf_vs(rep.solution, [](const Pt& z) {
    return z[0] * z[0] + z[1] * z[1] - 1;
  });
  CHECK(worst <= 1e-8);
}

TEST_CASE("solve rejects nonpositive f") {
  ProblemSpec p = ball_problem();
  p.f = parse("0");
  CHECK_THROWS_AS(solve_lambda1(p), std::invalid_argument);
  p.f = parse("x1");  // changes sign on the ball
  CHECK_THROWS_AS(solve_lambda1(p), std::invalid_argument);
}

TEST_CASE("solve_general delegates for Lambda_1-equivalent operators") {
  ProblemSpec p = ball_problem();
  p.tol = 1e-10;
  double a[2] = {1, 0};
  p.op = OperatorSpec::make_eigen_combination(2, a);
  SolveReport rep = solve_general(p);
  CHECK_FALSE(rep.experimental);
  SolveReport direct = solve_lambda1(ball_problem());
  for (int node : p.domain->interior_nodes())
    CHECK(std::abs(rep.solution.at(node) - direct.solution.at(node)) <= 1e-6);
}

TEST_CASE("solve_general: scaled delegation for a_1 > 0") {
  // G = 2 Lambda_1 with f = 2 has the same solution as Lambda_1 with f = 1
  ProblemSpec p = ball_problem();
  p.tol = 1e-10;
  double a[2] = {2, 0};
  p.op = OperatorSpec::make_eigen_combination(2, a);
  p.f = parse("2");
  SolveReport rep = solve_general(p);
  CHECK_FALSE(rep.experimental);
  double worst = linf_vs(rep.solution, [](const Pt& z) {
    return z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
  });
  CHECK(worst <= 1e-7);
}

TEST_CASE("solve_general: Monge-Ampere recovers an anisotropic quadratic") {
  ProblemSpec p = ball_problem();
  p.op = OperatorSpec::make_monge_ampere(2);
  // u = |z1|^2 + 2 |z2|^2 has MA value sqrt(2)
  p.f = parse("1.4142135623730951");
  p.phi = parse("x1^2 + y1^2 + 2*(x2^2 + y2^2)");
  p.phi_tilde = p.phi;
  p.tol = 1e-10;
  SolveReport rep = solve_general(p);
  CHECK(rep.experimental);
  CHECK(rep.residual.spectral_max_abs <= 1e-5);
  double worst = linf_vs(rep.solution, [](const Pt& z) {
    return z[0] * z[0] + z[1] * z[1] + 2 * (z[2] * z[2] + z[3] * z[3]);
  });
  CHECK(worst <= 1e-4);
}

TEST_CASE("comparison: barrier vs harmonic passes on the ball") {
  ProblemSpec p = ball_problem();
  GridFunction u = barrier_subsolution(p);
  GridFunction v = harmonic_supersolution(p);
  GridFunction f = sample_positive(p.domain, p.f);
  DirectionSet ds = direction_set(2, 1);
  ComparisonReport rep = comparison_check(u, v, f, ds);
  CHECK(rep.u_certified);
  CHECK(rep.v_certified);
  CHECK(rep.ordering_pass);
  CHECK(rep.strictness_ok);
  CHECK(rep.pass);
  CHECK(rep.interior_violation <= std::max(rep.boundary_gap, 0.0) + rep.tol);
}

TEST_CASE("comparison: shifted subsolution fails the ordering") {
  // raise u above v in the interior while keeping equal boundary data
  ProblemSpec p = ball_problem();
  GridFunction v = harmonic_supersolution(p);
  GridFunction u = barrier_subsolution(p);
  for (int node : p.domain->interior_nodes()) u.values[node] += 10.0;
  GridFunction f = sample_positive(p.domain, p.f);
  DirectionSet ds = direction_set(2, 1);
  ComparisonReport rep = comparison_check(u, v, f, ds);
  CHECK_FALSE(rep.pass);
  CHECK(rep.interior_violation > 0);
  CHECK(rep.violation_node >= 0);
}

TEST_CASE("comparison: solution is both sub- and supersolution") {
  ProblemSpec p = ball_problem();
  p.tol = 1e-12;
  SolveReport rep = solve_lambda1(p);
  GridFunction f = sample_positive(p.domain, p.f);
  DirectionSet ds = direction_set(2, 1);
  ComparisonReport c = comparison_check(rep.solution, rep.solution, f, ds);
  CHECK(c.pass);
  CHECK(c.interior_violation == doctest::Approx(0.0));
}

TEST_CASE("glue: max of sub- and strict subsolution on a concentric ball") {
  auto dom = ball4();
  GridFunction v = sample(dom, parse("t"));
  GridFunction u = sample(dom, parse("0.5 * t + 0.05"));
  GridFunction f = sample(dom, parse("0.5"));
  DirectionSet ds = direction_set(2, 1);
  std::vector<std::uint8_t> in_g(dom->total_nodes(), 0);
  for (int node : dom->interior_nodes()) {
    Pt z = dom->point(node);
    double t = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
    if (t < 0.5) in_g[node] = 1;
  }
  GridFunction glued = glue_max(u, in_g, v, f, ds);
  int origin = dom->node_at({5, 5, 5, 5});
  REQUIRE(dom->is_interior(origin));
  CHECK(glued.at(origin) == doctest::Approx(0.05));
  for (int node : dom->interior_nodes()) {
    CHECK(glued.at(node) >= v.at(node) - 1e-15);
    if (!in_g[node]) CHECK(glued.at(node) == v.at(node));
  }
}

TEST_CASE("glue: identical inputs return v") {
  auto dom = ball4();
  GridFunction v = sample(dom, parse("t"));
  GridFunction f = sample(dom, parse("1"));
  DirectionSet ds = direction_set(2, 1);
  std::vector<std::uint8_t> in_g(dom->total_nodes(), 1);
  GridFunction glued = glue_max(v, in_g, v, f, ds);
  for (int node : dom->interior_nodes()) CHECK(glued.at(node) == v.at(node));
}

TEST_CASE("glue rejects a layer-ordering violation") {
  auto dom = ball4();
  GridFunction v = sample(dom, parse("t"));
  GridFunction u = sample(dom, parse("t + 0.1"));
  GridFunction f = sample(dom, parse("0.5"));
  DirectionSet ds = direction_set(2, 1);
  std::vector<std::uint8_t> in_g(dom->total_nodes(), 0);
  for (int node : dom->interior_nodes()) {
    Pt z = dom->point(node);
    double t = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
    if (t < 0.5) in_g[node] = 1;
  }
  CHECK_THROWS_AS(glue_max(u, in_g, v, f, ds), std::invalid_argument);
}

TEST_CASE("glue rejects u failing the subsolution bound on G") {
  auto dom = ball4();
  GridFunction v = sample(dom, parse("t"));
  GridFunction u = sample(dom, parse("0.25 * t - 1"));  // S_h u = 0.25 < 0.5
  GridFunction f = sample(dom, parse("0.5"));
  DirectionSet ds = direction_set(2, 1);
  std::vector<std::uint8_t> in_g(dom->total_nodes(), 0);
  for (int node : dom->interior_nodes()) {
    Pt z = dom->point(node);
    double t = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
    if (t < 0.5) in_g[node] = 1;
  }
  CHECK_THROWS_AS(glue_max(u, in_g, v, f, ds), std::invalid_argument);
}

TEST_CASE("sample_positive rejects nonpositive expressions") {
  auto dom = ball4();
  CHECK_THROWS_AS(sample_positive(dom, parse("0")), std::invalid_argument);
  CHECK_THROWS_AS(sample_positive(dom, parse("x1")), std::invalid_argument);
  GridFunction f = sample_positive(dom, parse("2 - t"));
  CHECK(f.at(dom->interior_nodes()[0]) > 0);
}
