#pragma once

#include "zermelo/finsler.hpp"

namespace zermelo {

/// Integrated path with per-step metric values; F is constant along true
/// geodesics, so F_values drift measures integrator error.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::pair<Vec, Vec>> states;  // (x, xdot)
  std::vector<double> F_values;
  bool exited = false;  // left the strongly convex domain before t_end
};

/// Classic fixed-step RK4 on xddot = -2 G(x, xdot).  Leaving the domain
/// truncates the trajectory and sets `exited`.
Trajectory geodesic_ivp(const Metric& F, const Vec& x0, const Vec& y0, double t_end,
                        double dt);

struct ShootResult {
  Vec direction;      // F-unit initial velocity
  double time;        // arrival time
  double miss;        // terminal distance to the goal
};

/// Time-optimal path search by shooting over F-unit initial directions:
/// golden-section over the angle for n = 2, Nelder-Mead on direction angles
/// for n = 3, with a budget of 500 trajectory evaluations.
ShootResult shortest_time(const Metric& F, const Vec& x_start, const Vec& x_goal,
                          double tol_pos);

/// Trajectory rows as CSV with header t,x1..xn,F.
std::string trajectory_csv(const Trajectory& t);

}  // namespace zermelo
