#include "zermelo/geodesic.hpp"

#include <cmath>
#include <sstream>

namespace zermelo {

namespace {

struct State {
  Vec x;
  Vec v;
};

State rk4_step(const Metric& F, const State& s, double dt) {
  auto acc = [&](const Vec& x, const Vec& v) -> Vec { return -2.0 * spray_coefficients(F, x, v); };
  const Vec k1x = s.v, k1v = acc(s.x, s.v);
  const Vec k2x = s.v + 0.5 * dt * k1v, k2v = acc(s.x + 0.5 * dt * k1x, s.v + 0.5 * dt * k1v);
  const Vec k3x = s.v + 0.5 * dt * k2v, k3v = acc(s.x + 0.5 * dt * k2x, s.v + 0.5 * dt * k2v);
  const Vec k4x = s.v + dt * k3v, k4v = acc(s.x + dt * k3x, s.v + dt * k3v);
  return {s.x + (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
          s.v + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

}  // namespace

Trajectory geodesic_ivp(const Metric& F, const Vec& x0, const Vec& y0, double t_end,
                        double dt) {
  if (y0.norm() == 0.0) throw ValidationError("geodesic_ivp: initial velocity must be nonzero");
  if (!(dt > 0.0) || !(t_end > 0.0))
    throw ValidationError("geodesic_ivp: t_end and dt must be positive");
  Trajectory out;
  State s{x0, y0};
  double t = 0.0;
  out.times.push_back(t);
  out.states.emplace_back(s.x, s.v);
  out.F_values.push_back(F.value(s.x, s.v));
  const int steps = static_cast<int>(std::llround(t_end / dt));
  for (int i = 0; i < steps; ++i) {
    State next;
    try {
      next = rk4_step(F, s, dt);
      if (!next.x.allFinite() || !next.v.allFinite())
        throw DomainError("geodesic state became non-finite");
      out.F_values.push_back(F.value(next.x, next.v));
    } catch (const DomainError&) {
      out.exited = true;
      break;
    } catch (const ConvexityError&) {
      out.exited = true;
      break;
    }
    s = next;
    t += dt;
    out.times.push_back(t);
    out.states.emplace_back(s.x, s.v);
  }
  return out;
}

namespace {

/// Miss distance and arrival time of the closest approach to the goal, with
/// parabolic refinement between steps.
struct ShootEval {
  double miss;
  double time;
};

ShootEval evaluate_shot(const Metric& F, const Vec& x_start, const Vec& dir,
                        const Vec& x_goal, double t_max, double dt) {
  const double f = F.value(x_start, dir);
  const Trajectory traj = geodesic_ivp(F, x_start, dir / f, t_max, dt);
  double best = std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const double d = (traj.states[i].first - x_goal).norm();
    if (d < best) {
      best = d;
      best_i = static_cast<int>(i);
    }
  }
  double t = traj.times[best_i];
  // quadratic interpolation of the squared distance around the best step
  if (best_i > 0 && best_i + 1 < static_cast<int>(traj.states.size())) {
    auto d2 = [&](int i) { return (traj.states[i].first - x_goal).squaredNorm(); };
    const double dm = d2(best_i - 1), d0 = d2(best_i), dp = d2(best_i + 1);
    const double denom = dm - 2.0 * d0 + dp;
    if (denom > 0.0) {
      const double shift = 0.5 * (dm - dp) / denom;
      t += shift * dt;
      const double refined = d0 - 0.25 * (dm - dp) * shift;
      best = std::sqrt(std::max(0.0, refined));
    }
  }
  return {best, t};
}

Vec angles_to_dir(const Vec& ang) {
  if (ang.size() == 1) {
    Vec d(2);
    d << std::cos(ang[0]), std::sin(ang[0]);
    return d;
  }
  Vec d(3);
  d << std::cos(ang[0]) * std::cos(ang[1]), std::sin(ang[0]) * std::cos(ang[1]),
      std::sin(ang[1]);
  return d;
}

}  // namespace

ShootResult shortest_time(const Metric& F, const Vec& x_start, const Vec& x_goal,
                          double tol_pos) {
  const int n = F.dim;
  if (n != 2 && n != 3)
    throw ValidationError("shortest_time supports n = 2 and n = 3 only");
  const Vec disp = x_goal - x_start;
  if (disp.norm() == 0.0) return {Vec::Zero(n), 0.0, 0.0};

  const double t_scale = F.value(x_start, disp);
  const double t_max = 3.0 * t_scale + 0.5;
  const double dt = t_max / 400.0;
  int budget = 500;

  auto objective = [&](const Vec& ang) -> ShootEval {
    if (budget <= 0) throw SearchError("shooting budget exhausted", -1.0);
    --budget;
    return evaluate_shot(F, x_start, angles_to_dir(ang), x_goal, t_max, dt);
  };

  // Coarse scan.
  Vec best_ang;
  ShootEval best{std::numeric_limits<double>::infinity(), 0.0};
  if (n == 2) {
    for (int i = 0; i < 64; ++i) {
      Vec ang(1);
      ang << 2.0 * M_PI * i / 64.0;
      const auto e = objective(ang);
      if (e.miss < best.miss) {
        best = e;
        best_ang = ang;
      }
    }
    // Golden-section refinement on the bracketing interval.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = best_ang[0] - 2.0 * M_PI / 64.0;
    double hi = best_ang[0] + 2.0 * M_PI / 64.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    Vec vc(1), vd(1);
    vc << c;
    vd << d;
    ShootEval ec = objective(vc), ed = objective(vd);
    for (int it = 0; it < 60 && (hi - lo) > 1e-12 && budget > 2; ++it) {
      if (ec.miss < ed.miss) {
        hi = d;
        d = c;
        ed = ec;
        c = hi - gr * (hi - lo);
        vc[0] = c;
        ec = objective(vc);
      } else {
        lo = c;
        c = d;
        ec = ed;
        d = lo + gr * (hi - lo);
        vd[0] = d;
        ed = objective(vd);
      }
      const ShootEval& e = ec.miss < ed.miss ? ec : ed;
      if (e.miss < best.miss) {
        best = e;
        best_ang[0] = ec.miss < ed.miss ? c : d;
      }
      if (best.miss <= 0.25 * tol_pos) break;
    }
  } else {
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 6; ++j) {
        Vec ang(2);
        ang << 2.0 * M_PI * i / 12.0, -M_PI / 2.0 + M_PI * (j + 0.5) / 6.0;
        const auto e = objective(ang);
        if (e.miss < best.miss) {
          best = e;
          best_ang = ang;
        }
      }
    // Nelder-Mead on the two direction angles.
    const double step0 = 0.25;
    std::vector<Vec> simplex = {best_ang, best_ang, best_ang};
    simplex[1][0] += step0;
    simplex[2][1] += step0;
    std::vector<ShootEval> val(3);
    for (int i = 0; i < 3; ++i) val[i] = objective(simplex[i]);
    for (int it = 0; it < 200 && budget > 4; ++it) {
      std::array<int, 3> order = {0, 1, 2};
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return val[a].miss < val[b].miss; });
      if (val[order[0]].miss <= 0.25 * tol_pos) break;
      const Vec centroid = 0.5 * (simplex[order[0]] + simplex[order[1]]);
      const Vec worst = simplex[order[2]];
      const Vec refl = centroid + (centroid - worst);
      ShootEval er = objective(refl);
      if (er.miss < val[order[0]].miss) {
        const Vec exp_pt = centroid + 2.0 * (centroid - worst);
        ShootEval ee = objective(exp_pt);
        if (ee.miss < er.miss) {
          simplex[order[2]] = exp_pt;
          val[order[2]] = ee;
        } else {
          simplex[order[2]] = refl;
          val[order[2]] = er;
        }
      } else if (er.miss < val[order[1]].miss) {
        simplex[order[2]] = refl;
        val[order[2]] = er;
      } else {
        const Vec cont = centroid + 0.5 * (worst - centroid);
        ShootEval ec = objective(cont);
        if (ec.miss < val[order[2]].miss) {
          simplex[order[2]] = cont;
          val[order[2]] = ec;
        } else {
          for (int i : {order[1], order[2]}) {
            simplex[i] = simplex[order[0]] + 0.5 * (simplex[i] - simplex[order[0]]);
            val[i] = objective(simplex[i]);
          }
        }
      }
      for (int i = 0; i < 3; ++i)
        if (val[i].miss < best.miss) {
          best = val[i];
          best_ang = simplex[i];
        }
    }
  }

  if (best.miss > tol_pos)
    throw SearchError("shooting did not reach the goal within tolerance", best.miss);
  const Vec dir = angles_to_dir(best_ang);
  return {dir / F.value(x_start, dir), best.time, best.miss};
}

std::string trajectory_csv(const Trajectory& t) {
  std::ostringstream os;
  const int n = t.states.empty() ? 0 : static_cast<int>(t.states.front().first.size());
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  os << ",F\n";
  char buf[64];
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", t.times[i]);
    os << buf;
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", t.states[i].first[j]);
      os << "," << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", t.F_values[i]);
    os << "," << buf << "\n";
  }
  return os.str();
}

}  // namespace zermelo
