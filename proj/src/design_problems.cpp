#include "ctsopt/design_problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ctsopt::design {

ConstraintReport make_report(Vec g) {
  ConstraintReport r;
  for (double gi : g) r.violation += std::max(0.0, gi);
  r.feasible = r.violation == 0.0;
  r.values = std::move(g);
  return r;
}

double welded_beam_cost(const WeldedBeamDesign& d) {
  return 1.10471 * d.h * d.h * d.l + 0.04811 * d.t * d.b * (14.0 + d.l);
}

ConstraintReport welded_beam_constraints(const WeldedBeamDesign& d) {
  using C = WeldedBeamConstants;
  if (!(d.h > 0.0 && d.l > 0.0 && d.t > 0.0 && d.b > 0.0)) {
    throw ContractViolation("welded beam: design variables must be strictly positive");
  }
  const double x1 = d.h, x2 = d.l, x3 = d.t, x4 = d.b;

  // Shear stress terms, in the printed grouping (moment arm 14 + l/2, 2J denominator).
  const double tau_p = C::P / (std::sqrt(2.0) * x1 * x2);
  const double R = std::sqrt(0.25 * (x2 * x2 + (x1 + x3) * (x1 + x3)));
  const double J = 2.0 * std::sqrt(2.0) * x1 * x2 * (x2 * x2 / 12.0 + (x1 + x3) * (x1 + x3) / 4.0);
  const double tau_pp = C::P * (C::L + x2 / 2.0) * R / (2.0 * J);
  const double tau = std::sqrt(tau_p * tau_p + 2.0 * tau_p * tau_pp * x2 / (2.0 * R) + tau_pp * tau_pp);

  const double sigma = 504000.0 / (x3 * x3 * x4);
  const double delta = 65.0 * C::P * C::L * C::L * C::L / (30.0 * C::E * std::pow(x3, 4) * x4);
  const double pc = 4.013 * C::E * std::sqrt(x3 * x3 * std::pow(x4, 6) / 36.0) / (C::L * C::L) *
                    (1.0 - x3 / (2.0 * C::L) * std::sqrt(C::E / (4.0 * C::G)));

  return make_report({
      x1 - x4,
      tau - 13600.0,
      sigma - 30000.0,
      0.125 - x1,
      delta - 0.25,
      C::P - pc,
  });
}

double pressure_vessel_cost(const PressureVesselDesign& d) {
  return 0.6224 * d.Ts * d.R * d.L + 1.7781 * d.Th * d.R * d.R + 3.1661 * d.Ts * d.Ts * d.L +
         19.84 * d.Ts * d.Ts * d.R;
}

ConstraintReport pressure_vessel_constraints(const PressureVesselDesign& d) {
  constexpr double pi = std::numbers::pi;
  return make_report({
      -d.Ts + 0.0193 * d.R,
      -d.Th + 0.00954 * d.R,
      -pi * d.R * d.R * d.L - 4.0 / 3.0 * pi * d.R * d.R * d.R + 1296000.0,
      d.L - 240.0,
  });
}

std::string problem_id(Problem p) {
  return p == Problem::WeldedBeam ? "welded_beam" : "pressure_vessel";
}

SearchSpace problem_space(Problem p) {
  if (p == Problem::WeldedBeam) return SearchSpace({0.1, 0.1, 0.1, 0.1}, {2.0, 10.0, 10.0, 2.0});
  return SearchSpace({0.0, 0.0, 10.0, 10.0}, {99.0, 99.0, 200.0, 200.0});
}

namespace {
void check_dim(std::span<const double> x) {
  if (x.size() != 4) throw ContractViolation("design problems take exactly 4 variables");
}
}  // namespace

double problem_cost(Problem p, std::span<const double> x) {
  check_dim(x);
  if (p == Problem::WeldedBeam) return welded_beam_cost({x[0], x[1], x[2], x[3]});
  return pressure_vessel_cost({x[0], x[1], x[2], x[3]});
}

ConstraintReport problem_constraints(Problem p, std::span<const double> x) {
  check_dim(x);
  if (p == Problem::WeldedBeam) return welded_beam_constraints({x[0], x[1], x[2], x[3]});
  return pressure_vessel_constraints({x[0], x[1], x[2], x[3]});
}

double penalized_objective(Problem p, std::span<const double> x, double lambda) {
  if (!(lambda > 0.0)) throw ContractViolation("penalty coefficient must be positive");
  const ConstraintReport r = problem_constraints(p, x);
  const double cost = problem_cost(p, x);
  return r.feasible ? cost : cost + lambda * r.violation;
}

Objective make_design_objective(Problem p, double lambda) {
  Objective obj{problem_id(p), problem_space(p), std::nullopt, false, {}};
  obj.fn = [p, lambda](std::span<const double> x, RandomStream*) { return penalized_objective(p, x, lambda); };
  return obj;
}

}  // namespace ctsopt::design
