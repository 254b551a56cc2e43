#pragma once

#include <span>
#include <string>

#include "ctsopt/core.hpp"

namespace ctsopt::design {

/// Welded beam: x = (h, l, t, b) in inches.
struct WeldedBeamDesign {
  double h;  // weld thickness
  double l;  // weld length
  double t;  // bar height
  double b;  // bar thickness
};

struct WeldedBeamConstants {
  static constexpr double E = 30e6;  // psi
  static constexpr double G = 12e6;  // psi
  static constexpr double P = 6000.0;  // lbf
  static constexpr double L = 14.0;  // in
};

/// Pressure vessel: x = (Ts, Th, R, L) in inches.
struct PressureVesselDesign {
  double Ts;  // shell thickness
  double Th;  // head thickness
  double R;  // inner radius
  double L;  // cylinder length
};

/// Signed constraint values, g_i <= 0 meaning satisfied.
struct ConstraintReport {
  Vec values;
  bool feasible = true;
  double violation = 0.0;  // sum of max(0, g_i)
};

ConstraintReport make_report(Vec g);

double welded_beam_cost(const WeldedBeamDesign& d);
ConstraintReport welded_beam_constraints(const WeldedBeamDesign& d);

double pressure_vessel_cost(const PressureVesselDesign& d);
ConstraintReport pressure_vessel_constraints(const PressureVesselDesign& d);

enum class Problem { WeldedBeam, PressureVessel };

constexpr double kDefaultPenalty = 1e6;

std::string problem_id(Problem p);
SearchSpace problem_space(Problem p);
double problem_cost(Problem p, std::span<const double> x);
ConstraintReport problem_constraints(Problem p, std::span<const double> x);

/// cost + lambda * violation; exactly the cost on feasible points.
double penalized_objective(Problem p, std::span<const double> x, double lambda = kDefaultPenalty);

Objective make_design_objective(Problem p, double lambda = kDefaultPenalty);

}  // namespace ctsopt::design
