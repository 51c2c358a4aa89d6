#pragma once

#include <memory>
#include <string>

#include "divstokes/analysis.hpp"
#include "divstokes/geometry.hpp"

namespace divstokes {

/// A benchmark problem: geometry, data, and (when manufactured) the
/// exact fields the error study compares against.
struct CaseDefinition {
  std::string name;
  std::shared_ptr<const GeometricMap> map;
  double nu = 1.0;
  bool has_exact = false;
  ExactFields exact;
  std::function<Vec2(Vec2)> body_force;            // empty = zero
  std::function<Vec2(Side, Vec2)> dirichlet_data;  // empty = zero

  ProblemConfig problem_config(double c_pen = 0.0, int quad_points = 0) const {
    ProblemConfig config;
    config.nu = nu;
    config.c_pen = c_pen;
    config.quad_points = quad_points;
    config.body_force = body_force;
    config.dirichlet_data = dirichlet_data;
    return config;
  }
};

// Unit square, identity map, the exponential/polynomial manufactured
// solution with no-slip boundary; f = -div(2 nu grad_s u) + grad p.
CaseDefinition case_square(double nu = 1.0);

// 1/8 annulus (radii 1..2, angle pi/4), no-slip, manufactured from the
// stream function (r-1)^2 (r-2)^2 sin^2(4 theta) so u and grad u vanish
// on the whole boundary; smooth non-polynomial pressure.
CaseDefinition case_annulus(bool nurbs_parameterization, double nu = 1.0);

// Lid-driven cavity: unit square, f = 0, nu = 1, tangential velocity
// (1,0) on the top lid.
CaseDefinition case_cavity();

CaseDefinition make_case(const std::string& name, double nu);

}  // namespace divstokes
