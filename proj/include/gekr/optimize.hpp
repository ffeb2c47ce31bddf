#ifndef GEKR_OPTIMIZE_HPP
#define GEKR_OPTIMIZE_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gekr/bounds.hpp"

namespace gekr {

/// Golden-section minimization of a unimodal f on [lo, hi] until the bracket is narrower than tol.
template <class F>
double golden_section_min(F&& f, double lo, double hi, double tol = 1e-9) {
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

/// Points lo + i*step covering [lo, hi], optionally dropping the endpoints.
inline std::vector<double> alpha_grid(double lo, double hi, double step, bool with_lo = true, bool with_hi = true) {
  if (!(step > 0)) throw Error("grid step must be positive");
  std::vector<double> out;
  const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::int64_t i = 0; i <= count; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    if (!with_lo && std::abs(x - lo) < 1e-12) continue;
    if (!with_hi && std::abs(x - hi) < 1e-12) continue;
    out.push_back(x);
  }
  return out;
}

struct Minimum {
  double alpha = 0;
  double objective = 0;
};

/// Grid scan followed by golden-section refinement between the best point's neighbours.
template <class F>
Minimum grid_then_golden(F&& f, const std::vector<double>& grid, double tol) {
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v < best_value) {  // strict: ties keep the smallest alpha
      best_value = v;
      best = i;
    }
  }
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[best + 1 < grid.size() ? best + 1 : best];
  const double x = golden_section_min(f, lo, hi, tol);
  const double fx = f(x);
  if (fx < best_value) return {x, fx};
  return {grid[best], best_value};
}

struct IndependentOptimum {
  double alpha = 0;
  LogMagnitude p;
};

/// Minimizer of p_n(alpha) over (0, 1): 1e-3 grid, then golden section to 1e-7.
inline IndependentOptimum argmin_independent(std::int64_t n, double grid_step = 1e-3) {
  auto f = [n](double a) { return p_independent(a, n).log10(); };
  const Minimum m = grid_then_golden(f, alpha_grid(0, 1, grid_step, false, false), 1e-7);
  return {m.alpha, p_independent(m.alpha, n)};
}

struct MuOptimum {
  double alpha = 0;
  double mu = 0;
};

/// Minimizer of mu(alpha) over (0, 1): xi branch on (0, 1/2], theta branch on (1/2, 1).
inline MuOptimum argmin_mu(double grid_step = 1e-4) {
  std::vector<double> grid = alpha_grid(0, 0.5, grid_step, false, true);
  for (double a : alpha_grid(0.5, 1, grid_step, false, false)) grid.push_back(a);
  const Minimum m = grid_then_golden([](double a) { return log_mu(a); }, grid, 1e-7);
  return {m.alpha, std::exp(m.objective)};
}

/// Curve samples for one figure; NaN marks a value outside its curve's domain.
struct FigureData {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline FigureData figure_data(int figure, double grid_step) {
  if (!(grid_step > 0 && grid_step <= 0.1)) throw Error("grid step must lie in (0, 0.1]");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  FigureData out;
  switch (figure) {
    case 1:
      // Summation limits of the 111-missing sum against the phi ratio roots.
      out.columns = {"alpha", "lower_limit", "upper_limit", "u1_over_n", "u2_over_n"};
      for (double a : alpha_grid(0, 1, grid_step, false, false))
        out.rows.push_back({a, std::max(0.0, 2 * a - 1), std::min(a, 1 - a), beta_of(a), u2_over_n(a)});
      break;
    case 2:
      out.columns = {"alpha", "v1_over_n", "v2_over_n", "alpha_line", "two_alpha_minus_one"};
      for (double a : alpha_grid(0, 1, grid_step, false, true))
        out.rows.push_back({a, kappa_of(a), v2_over_n(a), a, 2 * a - 1});
      break;
    case 3:
      out.columns = {"alpha", "xi", "theta"};
      for (double a : alpha_grid(0, 1, grid_step, false, true))
        out.rows.push_back({a, a <= 2.0 / 3.0 + 1e-12 ? std::exp(log_xi(a)) : nan, std::exp(log_theta(a))});
      break;
    case 4:
      out.columns = {"alpha", "theta"};
      for (double a : alpha_grid(0.70, 0.78, grid_step)) out.rows.push_back({a, std::exp(log_theta(a))});
      break;
    default:
      throw Error("figure must be 1, 2, 3 or 4");
  }
  return out;
}

}  // namespace gekr

#endif  // GEKR_OPTIMIZE_HPP
